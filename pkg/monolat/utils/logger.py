"""
日志工具

日志一律写 stderr，stdout 只留给报告文本或 --json 输出。
"""
import logging
import sys
from typing import Optional

from monolat.config.settings import settings

LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
DATE_FORMAT = '%Y-%m-%d %H:%M:%S'
LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR")


def _level(name: str) -> int:
    return getattr(logging, name.upper(), logging.INFO)


def setup_logger(name: str = "monolat", level: Optional[str] = None) -> logging.Logger:
    """设置 monolat 日志器，重复调用不会叠加 handler"""
    log = logging.getLogger(name)
    log.setLevel(_level(level or settings.LOG_LEVEL))
    if not log.handlers:
        handler = logging.StreamHandler(sys.stderr)
        handler.setLevel(logging.DEBUG)
        handler.setFormatter(logging.Formatter(LOG_FORMAT, datefmt=DATE_FORMAT))
        log.addHandler(handler)
        log.propagate = False
    return log


def set_level(level: str) -> None:
    """单次调用内覆盖 LOG_LEVEL（命令行 --log-level）"""
    logger.setLevel(_level(level))


logger = setup_logger()
