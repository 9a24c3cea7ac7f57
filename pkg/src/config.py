"""
配置管理模块
支持从环境变量读取默认值，再由 JSON 配置文件和命令行参数逐层覆盖
"""

import math
import os
from dataclasses import dataclass, field, asdict, replace
from pathlib import Path
from typing import Any, Dict, Literal, Optional

from .errors import ConfigError

# 尝试加载 .env 文件
try:
    from dotenv import load_dotenv
    load_dotenv()
except ImportError:
    pass


def _env_float(name: str, default: float) -> float:
    """读取浮点型环境变量"""
    raw = os.getenv(name, "")
    if not raw:
        return default
    try:
        return float(raw)
    except ValueError:
        raise ConfigError(f"环境变量 {name} 不是合法的浮点数: {raw}")


def _env_int(name: str, default: int) -> int:
    """读取整型环境变量"""
    raw = os.getenv(name, "")
    if not raw:
        return default
    try:
        return int(raw)
    except ValueError:
        raise ConfigError(f"环境变量 {name} 不是合法的整数: {raw}")


@dataclass(frozen=True)
class GridConfig:
    """空间网格配置：截断长度 x_max 与节点数 n_x"""
    x_max: float = field(
        default_factory=lambda: _env_float("SCATTER_X_MAX", 16.0)
    )
    n_x: int = field(
        default_factory=lambda: _env_int("SCATTER_N_X", 2048)
    )


@dataclass(frozen=True)
class SpectralConfig:
    """
    频域配置

    - k_max / n_k: 对称 k 网格 ±(j+½)Δk 的半宽与节点数
    - n_zeta: F 在 ζ ≥ 0 一侧的采样点数（负半轴对称取同样多）
    """
    k_max: float = field(
        default_factory=lambda: _env_float("SCATTER_K_MAX", 64.0)
    )
    n_k: int = field(
        default_factory=lambda: _env_int("SCATTER_N_K", 4096)
    )
    n_zeta: int = field(
        default_factory=lambda: _env_int("SCATTER_N_ZETA", 2048)
    )


@dataclass(frozen=True)
class Tolerances:
    """数值容差与诊断阈值"""
    unimodularity: float = 1e-6
    tail_spread: float = 0.2
    limit_gap: float = 0.1
    phase_step: float = math.pi / 2
    denominator: float = 1e-12
    tail_mass_ratio: float = 1e-8
    marchenko_residual: float = 1e-8
    conjugate_pair: float = 1e-8
    fixed_point: float = 1e-12
    max_iterations: int = 200
    algebraic: float = 1e-10
    roundtrip: float = field(
        default_factory=lambda: _env_float("SCATTER_TOL_ROUNDTRIP", 5e-2)
    )
    alpha: float = 1e-3


@dataclass(frozen=True)
class InverseConfig:
    """
    反问题流水线配置

    - n_recon: 重构网格 [0, x_max] 上的节点数
    - n_marchenko: Nyström 节点数，区间为 [0, marchenko_length_factor·x_max]
    - v_extraction: "collocation" 取 ζ = 0 节点，"extrapolate" 由两个最小正节点线性外推
    - contraction_threshold: find_x0 的尾部阈值（严格小于），不超过 ¼
    - tail_correction: F 反演前是否减去 S 的渐近尾项
    - band_fraction: 估计 γ 与尾项时使用的外带比例
    """
    n_recon: int = field(
        default_factory=lambda: _env_int("SCATTER_N_RECON", 513)
    )
    n_marchenko: int = field(
        default_factory=lambda: _env_int("SCATTER_N_MARCHENKO", 512)
    )
    marchenko_length_factor: float = 2.0
    v_extraction: Literal["collocation", "extrapolate"] = "collocation"
    contraction_threshold: float = 0.2
    tail_correction: bool = True
    band_fraction: float = 0.1


@dataclass(frozen=True)
class Config:
    """应用配置"""

    env: Literal["development", "production"] = field(
        default_factory=lambda: os.getenv("ENV", "development")
    )

    log_level: str = field(
        default_factory=lambda: os.getenv("LOG_LEVEL", "INFO")
    )

    log_path: str = field(
        default_factory=lambda: os.getenv("LOG_PATH", "./logs")
    )

    grid: GridConfig = field(default_factory=GridConfig)
    spectral: SpectralConfig = field(default_factory=SpectralConfig)
    tolerances: Tolerances = field(default_factory=Tolerances)
    inverse: InverseConfig = field(default_factory=InverseConfig)

    def validate(self) -> "Config":
        """
        检查配置的不变量

        Returns:
            自身，便于链式调用

        Raises:
            ConfigError: 任一不变量不成立
        """
        if not self.grid.x_max > 0:
            raise ConfigError(f"x_max 必须为正: {self.grid.x_max}")
        if self.grid.n_x < 2:
            raise ConfigError(f"n_x 至少为 2: {self.grid.n_x}")
        if not self.spectral.k_max > 0:
            raise ConfigError(f"k_max 必须为正: {self.spectral.k_max}")
        if self.spectral.n_k < 2 or self.spectral.n_k % 2:
            raise ConfigError(f"n_k 必须为不小于 2 的偶数: {self.spectral.n_k}")
        if self.spectral.n_zeta < 2:
            raise ConfigError(f"n_zeta 至少为 2: {self.spectral.n_zeta}")
        if self.inverse.n_recon < 2 or self.inverse.n_marchenko < 3:
            raise ConfigError("n_recon 至少为 2，n_marchenko 至少为 3")
        if not 0 < self.inverse.contraction_threshold <= 0.25:
            raise ConfigError(
                f"contraction_threshold 必须在 (0, 1/4] 内: {self.inverse.contraction_threshold}"
            )
        if self.inverse.v_extraction not in ("collocation", "extrapolate"):
            raise ConfigError(f"未知的 v_extraction: {self.inverse.v_extraction}")
        if not 0 < self.inverse.band_fraction < 0.5:
            raise ConfigError(f"band_fraction 必须在 (0, 0.5) 内: {self.inverse.band_fraction}")
        return self

    def updated(self, overrides: Dict[str, Any]) -> "Config":
        """
        按分组覆盖配置项，返回新实例

        Args:
            overrides: 形如 {"grid": {"x_max": 8}, "tolerances": {...}} 的字典，
                       值为 None 的项被忽略

        Returns:
            新的 Config
        """
        groups = {
            "grid": self.grid,
            "spectral": self.spectral,
            "tolerances": self.tolerances,
            "inverse": self.inverse,
        }
        changes: Dict[str, Any] = {}
        for name, values in overrides.items():
            if values is None:
                continue
            if name in groups:
                if not isinstance(values, dict):
                    raise ConfigError(f"配置分组 {name} 必须是对象")
                clean = {k: v for k, v in values.items() if v is not None}
                try:
                    changes[name] = replace(groups[name], **clean)
                except TypeError as e:
                    raise ConfigError(f"配置分组 {name} 含未知字段: {e}")
            elif name in ("env", "log_level", "log_path"):
                changes[name] = values
            else:
                raise ConfigError(f"未知的配置项: {name}")
        return replace(self, **changes)

    def to_dict(self) -> Dict[str, Any]:
        """转换为字典（写入元数据）"""
        return asdict(self)


@dataclass(frozen=True)
class RunConfig:
    """
    一次命令行运行的配置

    problem 为问题定义 JSON（见 transform.profiles），settings 为数值配置，
    output_path 为输出文件前缀
    """
    problem: Optional[Dict[str, Any]]
    settings: Config
    output_path: Path

    @property
    def k_max(self) -> float:
        return self.settings.spectral.k_max

    @property
    def n_k(self) -> int:
        return self.settings.spectral.n_k

    @property
    def x_max(self) -> float:
        return self.settings.grid.x_max

    @property
    def n_x(self) -> int:
        return self.settings.grid.n_x

    @property
    def tolerances(self) -> Tolerances:
        return self.settings.tolerances


# 全局配置实例
config = Config()
