"""
Tests for the structured run journal.
"""

import json

from src.common.config import settings
from src.orchestrator.logger import LogLevel, RunLogger, drop_run_logger, get_run_logger


class TestRunLogger:
    """In-memory journal"""

    def setup_method(self):
        self.journal = RunLogger("test-run", to_file=False)

    def test_entry_shape(self):
        """✅ PASS: entries carry timestamp, level, message and metadata"""
        self.journal.info("started", command="indices")
        [entry] = self.journal.get_logs()
        assert entry["level"] == "INFO"
        assert entry["message"] == "started"
        assert entry["command"] == "indices"
        assert "timestamp" in entry

    def test_filters(self):
        """✅ PASS: filter by level and keep the last N"""
        self.journal.debug("a")
        self.journal.warn("b")
        self.journal.error("c")
        self.journal.progress("d", 0.5)
        assert [e["message"] for e in self.journal.get_logs(LogLevel.WARN)] == ["b"]
        assert [e["message"] for e in self.journal.get_logs(last_n=2)] == ["c", "d"]
        assert self.journal.get_logs(LogLevel.PROGRESS)[0]["progress"] == 0.5

    def test_disable_and_clear(self):
        """✅ PASS: disabled journals drop entries, clear empties the buffer"""
        self.journal.disable()
        self.journal.info("ignored")
        assert self.journal.get_logs() == []
        self.journal.enable()
        self.journal.info("kept")
        self.journal.clear_logs()
        assert self.journal.get_logs() == []

    def test_file_output(self, tmp_path, monkeypatch):
        """✅ PASS: JSON lines under the log directory"""
        monkeypatch.setattr(settings, "log_directory", str(tmp_path))
        journal = RunLogger("file-run", to_file=True)
        journal.info("one", step=1)
        journal.info("two", step=2)
        lines = (tmp_path / "file-run.jsonl").read_text().splitlines()
        assert [json.loads(line)["step"] for line in lines] == [1, 2]


class TestRegistry:
    """One journal per run id"""

    def test_same_instance(self):
        """✅ PASS: repeated lookups share the journal until dropped"""
        first = get_run_logger("registry-run")
        assert get_run_logger("registry-run") is first
        drop_run_logger("registry-run")
        assert get_run_logger("registry-run") is not first
        drop_run_logger("registry-run")
