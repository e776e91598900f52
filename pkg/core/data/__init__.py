from .series import SeriesMatrix, load_matrix, normalize
from .splits import Segment, SplitSpec, split_chronological
from .batches import InstanceBatch, batch_iter, make_batch, valid_timestamps, stack_features

__all__ = [
    'SeriesMatrix',
    'load_matrix',
    'normalize',
    'Segment',
    'SplitSpec',
    'split_chronological',
    'InstanceBatch',
    'batch_iter',
    'make_batch',
    'valid_timestamps',
    'stack_features',
]
