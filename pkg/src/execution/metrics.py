"""
Performance metrics measurement.

Measures wall time and peak traced memory of a command.
Follows SRP: Performance measurement only.
"""

import time
import tracemalloc
from typing import Any, Callable, Tuple

from src.common.types import RunMetrics


class MetricsCollector:
    """Collects performance metrics for command execution"""

    @staticmethod
    def measure_execution(fn: Callable[..., Any], *args, **kwargs) -> Tuple[Any, RunMetrics]:
        """
        Run fn and measure it; exceptions propagate after tracing stops.

        Returns: (fn result, metrics)
        """
        already_tracing = tracemalloc.is_tracing()
        if not already_tracing:
            tracemalloc.start()
        start_time = time.perf_counter()
        try:
            result = fn(*args, **kwargs)
        finally:
            elapsed = time.perf_counter() - start_time
            _, peak = tracemalloc.get_traced_memory()
            if not already_tracing:
                tracemalloc.stop()
        return result, RunMetrics(execution_time=elapsed, memory_peak=peak / 1024 / 1024)
