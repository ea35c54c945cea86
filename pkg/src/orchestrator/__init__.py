"""Job pool and run journal"""

from src.orchestrator.job_orchestrator import Job, JobOrchestrator, JobResult, run_jobs
from src.orchestrator.logger import LogLevel, RunLogger, drop_run_logger, get_run_logger

__all__ = ["Job", "JobOrchestrator", "JobResult", "run_jobs", "LogLevel", "RunLogger", "get_run_logger", "drop_run_logger"]
