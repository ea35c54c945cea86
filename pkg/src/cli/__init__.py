"""Command-line entry point: config parsing, dispatch and artifacts"""

from src.cli.config import RunConfig, parse_config
from src.cli.runner import EXIT_ERROR, EXIT_FAILED_ESTIMATE, EXIT_OK, RunOutcome, run

__all__ = ["RunConfig", "parse_config", "run", "RunOutcome", "EXIT_OK", "EXIT_ERROR", "EXIT_FAILED_ESTIMATE"]
