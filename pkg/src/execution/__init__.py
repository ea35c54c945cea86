"""Command metrics"""

from src.execution.metrics import MetricsCollector

__all__ = ["MetricsCollector"]
