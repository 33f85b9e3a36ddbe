"""Table similarity metrics and a chart-QA reasoning harness."""

from .metrics import (
    MetricConfig,
    RmsScore,
    relaxed_accuracy,
    rms,
    rms_with_transposition,
    rnss,
    rnss_tables,
)
from .tables import Table, parse_table, serialize_table, transpose

__all__ = [
    "MetricConfig",
    "RmsScore",
    "Table",
    "parse_table",
    "relaxed_accuracy",
    "rms",
    "rms_with_transposition",
    "rnss",
    "rnss_tables",
    "serialize_table",
    "transpose",
]

__version__ = "0.1.0"
