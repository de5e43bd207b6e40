"""
Loguru sink configuration for the CLI and worker processes.
"""
import sys
from typing import Optional

from loguru import logger


def configure_logging(level: str = "INFO", log_file: Optional[str] = None, quiet: bool = False) -> None:
    """
    Replace the default loguru sinks.

    Args:
        level: Level for both sinks
        log_file: Optional rotating log file
        quiet: Only warnings and errors reach stderr
    """
    logger.remove()
    logger.add(sys.stderr, level="WARNING" if quiet else level)
    if log_file:
        logger.add(log_file, rotation="10 MB", level=level)
