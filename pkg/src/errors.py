"""
异常定义模块
所有数值阶段的错误都带有阶段标签和退出码，命令行据此返回稳定的退出码：
0 成功，1 数值阶段失败，2 输入输出或解析失败，3 类 𝒮 校验拒绝
"""

from typing import Any, Dict, Optional


class ScatteringError(Exception):
    """散射计算错误基类"""

    exit_code: int = 1

    def __init__(self, message: str, stage: Optional[str] = None):
        super().__init__(message)
        self.message = message
        self.stage = stage

    def with_stage(self, stage: str) -> "ScatteringError":
        """补充阶段标签（已有标签时保留最内层的）"""
        if self.stage is None:
            self.stage = stage
        return self

    def __str__(self) -> str:
        if self.stage:
            return f"[{self.stage}] {self.message}"
        return self.message


class DomainError(ScatteringError, ValueError):
    """定义域错误：区间越界、网格不匹配、k = 0、截断长度不足等"""


class SingularMatrixError(ScatteringError):
    """稠密线性方程组数值奇异"""

    def __init__(self, message: str, pivot: float, stage: Optional[str] = None):
        super().__init__(message, stage)
        self.pivot = pivot


class IntegrationError(ScatteringError):
    """常微分方程积分失败（非有限值或步数溢出）"""


class UnderResolvedError(ScatteringError):
    """k 网格无法分辨相位变化"""


class TailNotSettledError(ScatteringError):
    """S 在 k 网格外带尚未收敛到极限（k_max 过小）"""


class ContractionError(ScatteringError):
    """不动点迭代未收敛"""


class InconsistencyError(ScatteringError):
    """内部一致性断言失败"""


class MarchenkoSolveError(ScatteringError):
    """Marchenko 方程组求解失败"""

    def __init__(self, message: str, condition: float, stage: Optional[str] = None):
        super().__init__(message, stage)
        self.condition = condition


class ConfigError(ScatteringError, ValueError):
    """配置解析失败"""

    exit_code = 2


class DataFormatError(ScatteringError, ValueError):
    """数据文件格式错误"""

    exit_code = 2


class ClassSRejection(ScatteringError):
    """输入散射函数不属于类 𝒮，附带校验报告"""

    exit_code = 3

    def __init__(self, message: str, report: Any, stage: Optional[str] = "validate"):
        super().__init__(message, stage)
        self.report = report

    def report_dict(self) -> Dict[str, Any]:
        """校验报告的字典形式"""
        if hasattr(self.report, "to_dict"):
            return self.report.to_dict()
        return dict(self.report or {})
