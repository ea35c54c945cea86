"""
Structured run journal with switchable file output.

Keeps an in-memory list of entries per run and optionally mirrors them as
JSON lines under settings.log_directory. Journals never feed hashed artifacts.
Follows SRP: Logging only.
"""

import logging
import threading
from datetime import datetime, timezone
from enum import Enum
from pathlib import Path
from typing import Any, Dict, List, Optional

from src.common.config import settings
from src.common.utils import canonical_json, ensure_directory

_std = logging.getLogger(__name__)


class LogLevel(Enum):
    """Log levels"""
    DEBUG = "DEBUG"
    INFO = "INFO"
    WARN = "WARN"
    ERROR = "ERROR"
    PROGRESS = "PROGRESS"


_STD_LEVELS = {
    LogLevel.DEBUG: logging.DEBUG,
    LogLevel.INFO: logging.INFO,
    LogLevel.WARN: logging.WARNING,
    LogLevel.ERROR: logging.ERROR,
    LogLevel.PROGRESS: logging.INFO,
}


class RunLogger:
    """Journal for one run; entries are {timestamp, level, message, **metadata}"""

    def __init__(self, run_id: str, to_file: Optional[bool] = None):
        self.run_id = run_id
        self.logs: List[Dict[str, Any]] = []
        self.log_file: Optional[Path] = None
        self.enabled = True
        self._lock = threading.Lock()

        if settings.log_to_file if to_file is None else to_file:
            self._setup_file_logging()

    def _setup_file_logging(self):
        log_dir = ensure_directory(settings.log_directory)
        self.log_file = log_dir / f"{self.run_id}.jsonl"

    def log(self, level: LogLevel, message: str, **metadata) -> None:
        if not self.enabled:
            return

        entry = {
            "timestamp": datetime.now(timezone.utc).isoformat(),
            "level": level.value,
            "message": message,
            **metadata,
        }
        with self._lock:
            self.logs.append(entry)
            if self.log_file:
                with self.log_file.open("a", encoding="utf-8") as fh:
                    fh.write(canonical_json(entry) + "\n")
        _std.log(_STD_LEVELS[level], "[%s] %s", self.run_id, message)

    def debug(self, message: str, **metadata) -> None:
        self.log(LogLevel.DEBUG, message, **metadata)

    def info(self, message: str, **metadata) -> None:
        self.log(LogLevel.INFO, message, **metadata)

    def warn(self, message: str, **metadata) -> None:
        self.log(LogLevel.WARN, message, **metadata)

    def error(self, message: str, **metadata) -> None:
        self.log(LogLevel.ERROR, message, **metadata)

    def progress(self, message: str, progress: float, **metadata) -> None:
        self.log(LogLevel.PROGRESS, message, progress=progress, **metadata)

    def get_logs(self, level: Optional[LogLevel] = None, last_n: Optional[int] = None) -> List[Dict[str, Any]]:
        """
        Get logs from buffer.

        Args:
            level: Filter by log level
            last_n: Return only last N logs
        """
        logs = self.logs
        if level:
            logs = [entry for entry in logs if entry["level"] == level.value]
        if last_n:
            logs = logs[-last_n:]
        return logs

    def clear_logs(self) -> None:
        with self._lock:
            self.logs = []

    def disable(self) -> None:
        self.enabled = False

    def enable(self) -> None:
        self.enabled = True


_registry: Dict[str, RunLogger] = {}
_registry_lock = threading.Lock()


def get_run_logger(run_id: str) -> RunLogger:
    """One journal per run id"""
    with _registry_lock:
        journal = _registry.get(run_id)
        if journal is None:
            journal = RunLogger(run_id)
            _registry[run_id] = journal
        return journal


def drop_run_logger(run_id: str) -> None:
    with _registry_lock:
        _registry.pop(run_id, None)
