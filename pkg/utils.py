import json
import logging
import os
import platform
import stat
import sys
from logging.handlers import RotatingFileHandler
from pathlib import Path
from typing import Any, List, Optional, TextIO, Union

FILE_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(funcName)s:%(lineno)d - %(message)s"
CONSOLE_FORMAT = "%(asctime)s - %(levelname)s - %(message)s"


def sanitize_text(text: str) -> str:
    """Remove newline and carriage-return characters from a log field."""
    return text.replace("\n", "").replace("\r", "")


def log_json(logger: logging.Logger, level: int, message: str, **kwargs: Any) -> None:
    """Log one JSON object; string fields are sanitized, other values go through str()."""
    fields = {
        key: sanitize_text(value) if isinstance(value, str) else value
        for key, value in kwargs.items()
    }
    logger.log(level, json.dumps({"message": message, **fields}, default=str))


def get_default_log_directory() -> str:
    """Per-platform log location for zonotile runs."""
    system = platform.system().lower()
    if system == "windows":
        base = os.getenv("LOCALAPPDATA", os.path.expanduser("~\\AppData\\Local"))
        return os.path.join(base, "Zonotile", "logs")
    if system == "darwin":
        return os.path.expanduser("~/Library/Logs/Zonotile")
    if os.access("/var/log", os.W_OK):
        return "/var/log/zonotile"
    return os.path.expanduser("~/.local/share/zonotile/logs")


def ensure_directory_exists(directory_path: str) -> bool:
    """Create ``directory_path`` if needed; False when that is not possible."""
    try:
        Path(directory_path).mkdir(parents=True, exist_ok=True)
        return True
    except OSError as e:
        print(f"Warning: Could not create directory {directory_path}: {e}", file=sys.stderr)
        return False


def _restrict_permissions(path: str) -> None:
    if os.name == "nt":
        logging.debug("Skipping chmod on Windows")
        return
    try:
        os.chmod(path, 0o600)
    except OSError as e:
        logging.debug("Failed to set log file permissions: %s", e)
    if os.getenv("ZONOTILE_ENV", "").lower() == "development":
        try:
            mode = stat.S_IMODE(os.stat(path).st_mode)
        except OSError as e:
            logging.debug("Could not verify log file permissions: %s", e)
            return
        if mode != 0o600:
            logging.warning("Log file permissions %o, expected 0o600", mode)


def _file_handler(
    path: str, level: int, max_bytes: int, backup_count: int
) -> Optional[logging.Handler]:
    try:
        handler = RotatingFileHandler(
            path, maxBytes=max_bytes, backupCount=backup_count, encoding="utf-8"
        )
    except OSError as e:
        print(f"Warning: Could not set up file logging: {e}", file=sys.stderr)
        print("Continuing with console logging only...", file=sys.stderr)
        return None
    _restrict_permissions(path)
    handler.setLevel(level)
    handler.setFormatter(logging.Formatter(FILE_FORMAT, datefmt="%Y-%m-%d %H:%M:%S"))
    return handler


def configure_logging(
    log_dir: Optional[str] = None,
    log_level: Optional[int] = None,
    max_bytes: int = 5 * 1024 * 1024,
    backup_count: int = 5,
    log_filename: str = "zonotile.log",
    stream: Optional[TextIO] = None,
) -> Optional[str]:
    """Route logging to a rotating file and to the console.

    ``log_dir`` and ``log_level`` fall back to ``ZONOTILE_LOG_DIR`` and
    ``ZONOTILE_LOG_LEVEL``. The console handler writes to ``stream``, standard
    error by default, so command results on standard output stay clean. The log
    file is created with 0o600 on Unix-like systems.

    Returns the log file path, or None when only console logging is active.
    """
    root = logging.getLogger()
    root.handlers.clear()

    if log_level is None:
        log_level = getattr(logging, os.getenv("ZONOTILE_LOG_LEVEL", "INFO").upper(), logging.INFO)
    if log_dir is None or not log_dir.strip():
        log_dir = os.getenv("ZONOTILE_LOG_DIR") or get_default_log_directory()

    handlers: List[logging.Handler] = []
    log_filepath: Optional[str] = None
    if ensure_directory_exists(log_dir):
        candidate = os.path.join(log_dir, log_filename)
        file_handler = _file_handler(candidate, log_level, max_bytes, backup_count)
        if file_handler is not None:
            handlers.append(file_handler)
            log_filepath = candidate
    else:
        print("Warning: Could not create log directory. File logging disabled.", file=sys.stderr)

    console = logging.StreamHandler(stream if stream is not None else sys.stderr)
    console.setLevel(log_level)
    console.setFormatter(logging.Formatter(CONSOLE_FORMAT, datefmt="%H:%M:%S"))
    handlers.append(console)

    logging.basicConfig(level=log_level, handlers=handlers, force=True)
    logging.getLogger(__name__).debug(
        "Logging configured. File: %s, Level: %s", log_filepath, logging.getLevelName(log_level)
    )
    return log_filepath


def set_log_level(level: Union[int, str]) -> None:
    """Change the level of the root logger and all of its handlers."""
    if isinstance(level, str):
        level = getattr(logging, level.upper(), logging.INFO)
    root = logging.getLogger()
    root.setLevel(level)
    for handler in root.handlers:
        handler.setLevel(level)
    logging.debug("Log level changed to: %s", logging.getLevelName(level))
