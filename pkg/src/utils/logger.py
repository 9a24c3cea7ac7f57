"""
日志工具模块
所有模块的 logger 都挂在 "scatter" 之下，控制台与文件处理器只装在这个父 logger 上
"""

import logging
import os
import sys
from logging.handlers import RotatingFileHandler
from pathlib import Path
from typing import Optional


ROOT_NAME = "scatter"
LOG_FILE = "miura-scatter.log"

_FORMAT = "%(asctime)s | %(levelname)-8s | %(name)s | %(message)s"
_DATEFMT = "%Y-%m-%d %H:%M:%S"


def _level_value(level: Optional[str]) -> int:
    name = (level or os.getenv("LOG_LEVEL", "INFO")).upper()
    return getattr(logging, name, logging.INFO)


def _file_handler() -> Optional[RotatingFileHandler]:
    """在 LOG_PATH 下创建轮转文件处理器，失败时返回 None"""
    try:
        log_dir = Path(os.getenv("LOG_PATH", "./logs"))
        log_dir.mkdir(parents=True, exist_ok=True)
        # 单文件最大 10MB，保留 5 个备份
        handler = RotatingFileHandler(
            log_dir / LOG_FILE,
            maxBytes=10 * 1024 * 1024,
            backupCount=5,
            encoding="utf-8"
        )
    except OSError as e:
        print(f"警告: 无法创建日志文件: {e}", file=sys.stderr)
        return None
    handler.setLevel(logging.DEBUG)
    return handler


def _root_logger() -> logging.Logger:
    """取得父 logger，首次调用时装配处理器"""
    root = logging.getLogger(ROOT_NAME)
    if root.handlers:
        return root

    root.setLevel(_level_value(None))
    root.propagate = False
    formatter = logging.Formatter(fmt=_FORMAT, datefmt=_DATEFMT)

    # stdout 留给命令行的 JSON 输出
    console = logging.StreamHandler(sys.stderr)
    console.setLevel(logging.DEBUG)
    console.setFormatter(formatter)
    root.addHandler(console)

    file_handler = _file_handler()
    if file_handler is not None:
        file_handler.setFormatter(formatter)
        root.addHandler(file_handler)
    return root


def get_logger(name: Optional[str] = None, level: Optional[str] = None) -> logging.Logger:
    """
    获取日志记录器

    Args:
        name: 模块名，如 "direct"、"marchenko"；为空时返回父 logger
        level: 日志级别，给出时只作用于这个子 logger

    Returns:
        "scatter.<name>" 日志记录器
    """
    root = _root_logger()
    if not name or name == ROOT_NAME:
        return root

    logger = root.getChild(name)
    if level:
        logger.setLevel(_level_value(level))
    return logger


def set_level(level: str) -> None:
    """
    调整整个 "scatter" 层级的日志级别（命令行 --log-level 使用）

    Args:
        level: 日志级别名称
    """
    root = _root_logger()
    root.setLevel(_level_value(level))
    prefix = ROOT_NAME + "."
    for name, logger in logging.Logger.manager.loggerDict.items():
        if name.startswith(prefix) and isinstance(logger, logging.Logger):
            logger.setLevel(logging.NOTSET)
