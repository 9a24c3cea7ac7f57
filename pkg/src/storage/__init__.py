# 存储模块 - CSV / JSON 读写
from .files import (
    RECONSTRUCTION_COLUMNS,
    SCATTERING_COLUMNS,
    ResultStore,
    read_json,
    read_scattering_csv,
    write_json,
    write_reconstruction_csv,
    write_scattering_csv,
)

__all__ = [
    "RECONSTRUCTION_COLUMNS",
    "SCATTERING_COLUMNS",
    "ResultStore",
    "read_json",
    "read_scattering_csv",
    "write_json",
    "write_reconstruction_csv",
    "write_scattering_csv",
]
