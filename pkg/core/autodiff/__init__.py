from .kernels import OpKind, NORM_FLOOR, DEFAULT_LEAKY_SLOPE
from .tape import Tape, TapeNode, InferenceOps
from .optim import AdamState, adam_step
from .gradcheck import finite_difference_check, GradCheckResult

__all__ = [
    'OpKind',
    'NORM_FLOOR',
    'DEFAULT_LEAKY_SLOPE',
    'Tape',
    'TapeNode',
    'InferenceOps',
    'AdamState',
    'adam_step',
    'finite_difference_check',
    'GradCheckResult',
]
