# ==================== utils/__init__.py ====================

from .logger import setup_logger, get_logger
from .hasher import Hasher
from .validators import Validators
from .exceptions import (
    IGMTFException,
    ConfigError,
    ValidationError,
    DataFormatError,
    NormalizationError,
    SplitError,
    ShapeError,
    GradientError,
    OptimizerError,
    SamplingError,
    MetricError,
    TrainingError,
    CheckpointError,
    ReportError,
)

__all__ = [
    'setup_logger',
    'get_logger',
    'Hasher',
    'Validators',
    'IGMTFException',
    'ConfigError',
    'ValidationError',
    'DataFormatError',
    'NormalizationError',
    'SplitError',
    'ShapeError',
    'GradientError',
    'OptimizerError',
    'SamplingError',
    'MetricError',
    'TrainingError',
    'CheckpointError',
    'ReportError',
]
