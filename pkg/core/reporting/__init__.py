from .report import (
    ForecastReport, EpochRecord, SplitMetrics, SweepRow, SweepSummary,
    write_report, read_report, write_sweep_summary, read_sweep_summary, format_summary_table,
    STATUS_OK, STATUS_FAILED,
)

__all__ = [
    'ForecastReport',
    'EpochRecord',
    'SplitMetrics',
    'SweepRow',
    'SweepSummary',
    'write_report',
    'read_report',
    'write_sweep_summary',
    'read_sweep_summary',
    'format_summary_table',
    'STATUS_OK',
    'STATUS_FAILED',
]
