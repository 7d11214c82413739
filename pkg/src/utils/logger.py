import logging
import logging.handlers
import sys
from pathlib import Path
from typing import Optional, Union

# ============================================================================
# CONFIGURATION
# ============================================================================

LOG_LEVEL = logging.INFO
LOG_DIR = Path("logs")
LOG_FILE = "hyperaco.log"
LOG_FORMAT = "%(asctime)s | %(name)s | %(levelname)s | %(message)s"


# ============================================================================
# LOGGER SETUP
# ============================================================================


def setup_logging(
    level: Union[int, str] = LOG_LEVEL, log_dir: Optional[Path] = None
) -> None:
    """
    Configure the root logger with handlers and formatters.

    This sets up:
    - Console handler on stderr, so stdout stays free for JSON output
    - File handler with daily rotation (keeps 30 days of logs), only when
      a log directory is given

    Args:
        level: Logging level name or number applied to the root logger
        log_dir: Directory for the rotating log file, or None for console only
    """
    if isinstance(level, str):
        level = logging.getLevelName(level.upper())

    root_logger = logging.getLogger()
    root_logger.setLevel(level)

    # Clear existing handlers to avoid duplicates
    # (important when the CLI is invoked several times in one process)
    root_logger.handlers.clear()

    # ========================================
    # File Handler (with rotation)
    # ========================================
    if log_dir is not None:
        log_dir.mkdir(parents=True, exist_ok=True)
        file_handler = logging.handlers.TimedRotatingFileHandler(
            filename=log_dir / LOG_FILE,
            when="midnight",
            interval=1,
            backupCount=30,
            encoding="utf-8",
        )
        file_handler.setLevel(level)
        file_handler.setFormatter(logging.Formatter(LOG_FORMAT))
        root_logger.addHandler(file_handler)

    # ========================================
    # Console Handler
    # ========================================
    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setLevel(level)
    console_formatter = logging.Formatter(
        "%(asctime)s | %(levelname)-8s | %(name)s | %(message)s", datefmt="%H:%M:%S"
    )
    console_handler.setFormatter(console_formatter)
    root_logger.addHandler(console_handler)


def get_logger(name: str) -> logging.Logger:
    """
    Get a logger instance for a specific module.

    Args:
        name: Logger name (usually __name__ of the calling module)

    Returns:
        Logger instance
    """
    return logging.getLogger(name)
