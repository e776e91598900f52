from .params import ModelParams, BoundModel, assemble, GruParams, MlpParams, MappingParams, HeadParams, expected_shapes
from .encoder import EmbeddingBank, EncodeMode, build_bank, encode_batch, gru_forward, mlp_forward
from .sampler import SampleSelection, batch_mean, select_top_k, select_random
from .graph import Adjacency, build_adjacency, top_n_mask, mask_adjacency, aggregate, dump_adjacency
from .forecaster import IGMTFNetwork, ForwardResult, LossTerms, predict, loss
from .checkpoint import save_checkpoint, load_checkpoint

__all__ = [
    'ModelParams',
    'BoundModel',
    'assemble',
    'GruParams',
    'MlpParams',
    'MappingParams',
    'HeadParams',
    'expected_shapes',
    'EmbeddingBank',
    'EncodeMode',
    'build_bank',
    'encode_batch',
    'gru_forward',
    'mlp_forward',
    'SampleSelection',
    'batch_mean',
    'select_top_k',
    'select_random',
    'Adjacency',
    'build_adjacency',
    'top_n_mask',
    'mask_adjacency',
    'aggregate',
    'dump_adjacency',
    'IGMTFNetwork',
    'ForwardResult',
    'LossTerms',
    'predict',
    'loss',
    'save_checkpoint',
    'load_checkpoint',
]
