"""
文件存储模块 - CSV + JSON
数值数组写 CSV（pandas），元数据写 JSON；列名与列顺序固定
"""

import json
import math
from pathlib import Path
from typing import Any, Dict, Optional, Union

import numpy as np
import pandas as pd

from ..direct.scattering import ScatteringSamples
from ..errors import ConfigError, DataFormatError
from ..utils.logger import get_logger

logger = get_logger("storage")

SCATTERING_COLUMNS = ["k", "re_S", "im_S"]
RECONSTRUCTION_COLUMNS = ["x", "u", "p", "re_v", "im_v", "phi"]


def _clean(value: Any) -> Any:
    """把 numpy 标量、复数与非有限浮点数转换为 JSON 可写的值"""
    if isinstance(value, dict):
        return {str(k): _clean(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_clean(v) for v in value]
    if isinstance(value, np.ndarray):
        return _clean(value.tolist())
    if isinstance(value, (np.bool_, bool)):
        return bool(value)
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, (complex, np.complexfloating)):
        return [_clean(float(value.real)), _clean(float(value.imag))]
    if isinstance(value, (float, np.floating)):
        value = float(value)
        return value if math.isfinite(value) else None
    if isinstance(value, Path):
        return str(value)
    return value


def write_json(path: Path, data: Dict[str, Any]) -> Path:
    """写 JSON 文件（缩进 2，保留中文）"""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(_clean(data), indent=2, ensure_ascii=False), encoding="utf-8")
    logger.debug(f"写入 {path}")
    return path


def read_json(path: Union[str, Path], error=ConfigError) -> Dict[str, Any]:
    """
    读取 JSON 对象

    Args:
        path: 文件路径
        error: 失败时抛出的异常类型

    Raises:
        error: 文件不存在、不是合法 JSON 或不是对象
    """
    path = Path(path)
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except FileNotFoundError:
        raise error(f"文件不存在: {path}")
    except (OSError, UnicodeDecodeError) as e:
        raise error(f"无法读取 {path}: {e}")
    except json.JSONDecodeError as e:
        raise error(f"{path} 不是合法的 JSON: {e}")
    if not isinstance(data, dict):
        raise error(f"{path} 的顶层必须是 JSON 对象")
    return data


def _read_csv(path: Union[str, Path], columns: list) -> pd.DataFrame:
    """读取 CSV 并检查表头与数值"""
    path = Path(path)
    if not path.exists():
        raise DataFormatError(f"文件不存在: {path}")
    try:
        frame = pd.read_csv(path)
    except pd.errors.EmptyDataError:
        raise DataFormatError(f"文件为空: {path}")
    except (pd.errors.ParserError, UnicodeDecodeError) as e:
        raise DataFormatError(f"无法解析 {path}: {e}")

    missing = [c for c in columns if c not in frame.columns]
    if missing:
        raise DataFormatError(f"{path} 缺少列 {missing}（表头应为 {','.join(columns)}）")
    if frame.empty:
        raise DataFormatError(f"{path} 没有数据行")
    try:
        frame = frame[columns].astype(float)
    except ValueError as e:
        raise DataFormatError(f"{path} 含非数值数据: {e}")
    return frame


def write_scattering_csv(path: Path, S: ScatteringSamples) -> Path:
    """写散射数据 CSV：k,re_S,im_S"""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    frame = pd.DataFrame({
        "k": S.k_grid,
        "re_S": S.values.real,
        "im_S": S.values.imag,
    }, columns=SCATTERING_COLUMNS)
    frame.to_csv(path, index=False, float_format="%.17g")
    logger.info(f"散射数据已写入 {path}（{len(frame)} 行）")
    return path


def read_scattering_csv(path: Union[str, Path]) -> ScatteringSamples:
    """
    读取散射数据 CSV

    Raises:
        DataFormatError: 表头缺失、空文件、k 不严格递增或不对称
    """
    frame = _read_csv(path, SCATTERING_COLUMNS)
    return ScatteringSamples.from_arrays(
        frame["k"].to_numpy(), frame["re_S"].to_numpy(), frame["im_S"].to_numpy()
    )


def write_reconstruction_csv(path: Path, result) -> Path:
    """写重构结果 CSV：x,u,p,re_v,im_v,phi"""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    v = result.v.values.astype(complex)
    frame = pd.DataFrame({
        "x": result.u.grid.nodes,
        "u": result.u.values,
        "p": result.p.values,
        "re_v": v.real,
        "im_v": v.imag,
        "phi": result.phi.values,
    }, columns=RECONSTRUCTION_COLUMNS)
    frame.to_csv(path, index=False, float_format="%.17g")
    logger.info(f"重构结果已写入 {path}（{len(frame)} 行）")
    return path


class ResultStore:
    """
    输出文件命名

    --output 为目录时使用默认文件名前缀，否则视为文件前缀（去掉扩展名）
    """

    def __init__(self, output: Optional[Union[str, Path]], default_stem: str):
        if output is None:
            self.stem = Path(".") / default_stem
        else:
            output = Path(output)
            if output.is_dir() or str(output).endswith(("/", "\\")):
                self.stem = output / default_stem
            else:
                self.stem = output.with_suffix("") if output.suffix in (".csv", ".json") else output

    def path(self, suffix: str) -> Path:
        """前缀加后缀，例如 .csv、.meta.json"""
        return self.stem.parent / f"{self.stem.name}{suffix}"

    def ensure_dir(self) -> None:
        self.stem.parent.mkdir(parents=True, exist_ok=True)
