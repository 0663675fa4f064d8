"""
Logging setup for GhostRing.

Records go to stderr, plus a rotating file when one is configured; stdout is
reserved for reports.
"""

import logging
import logging.handlers
import sys
from pathlib import Path
from typing import List, Optional

from .config import LoggingConfig

LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
DATE_FORMAT = '%Y-%m-%d %H:%M:%S'


def _file_handler(config: LoggingConfig) -> Optional[logging.Handler]:
    if not config.file:
        return None
    log_path = Path(config.file)
    try:
        log_path.parent.mkdir(parents=True, exist_ok=True)
        return logging.handlers.RotatingFileHandler(
            log_path,
            maxBytes=config.max_size * 1024 * 1024,
            backupCount=config.backup_count,
        )
    except OSError as e:
        logging.getLogger(__name__).warning(f"File logging to {log_path} disabled: {e}")
        return None


def setup_logging(config: LoggingConfig, level: int = logging.INFO) -> None:
    """Replace the root handlers with a stderr handler and the optional log file."""
    root = logging.getLogger()
    for old in list(root.handlers):
        root.removeHandler(old)
        old.close()

    handlers: List[logging.Handler] = [logging.StreamHandler(sys.stderr)]
    log_file = _file_handler(config)
    if log_file is not None:
        handlers.append(log_file)

    formatter = logging.Formatter(LOG_FORMAT, datefmt=DATE_FORMAT)
    for handler in handlers:
        handler.setLevel(level)
        handler.setFormatter(formatter)
        root.addHandler(handler)
    root.setLevel(level)
    logging.getLogger('ghostring').setLevel(level)


def level_from_name(name: str, verbose: bool = False) -> int:
    """Numeric level for a name such as 'info'; --verbose forces DEBUG."""
    if verbose:
        return logging.DEBUG
    level = logging.getLevelName(name.upper())
    return level if isinstance(level, int) else logging.INFO
