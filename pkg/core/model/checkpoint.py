"""
Parameter Checkpoints

Формат (numpy .npz, версія 1):
    format_version        int64 скаляр, = 1
    metadata              JSON-рядок: {"hidden": l, "use_maps": bool, ...}
    param/<name>          float64 матриця параметра; форма зберігається самим масивом

Імена параметрів: encoder.gru.{w,u,b}_{r,z,c}, encoder.mlp.{0,1,2}.{weight,bias},
graph.w_h, graph.w_e (відсутні у варіанті nw), head.weight, head.bias.
"""

import json
from pathlib import Path
from typing import Any, Dict, Mapping, Optional, Tuple, Union

import numpy as np

from core.model.params import ModelParams
from core.utils.exceptions import CheckpointError, ValidationError
from core.utils.logger import get_logger


logger = get_logger(__name__)

FORMAT_VERSION = 1
PARAM_PREFIX = "param/"


def save_checkpoint(
    path: Union[str, Path],
    params: ModelParams,
    metadata: Optional[Mapping[str, Any]] = None,
) -> Path:
    """
    Збереження параметрів моделі

    Args:
        path: Файл .npz
        params: Параметри
        metadata: Додаткові поля (конфігурація, епоха)
    """
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    meta = {"hidden": params.hidden, "use_maps": params.use_maps, **dict(metadata or {})}
    arrays = {f"{PARAM_PREFIX}{name}": value for name, value in params.tensors.items()}
    with open(path, "wb") as f:
        np.savez(
            f,
            format_version=np.array(FORMAT_VERSION, dtype=np.int64),
            metadata=np.array(json.dumps(meta, sort_keys=True, default=str)),
            **arrays,
        )
    logger.info(f"Checkpoint saved: {path} ({len(arrays)} tensors)")
    return path


def load_checkpoint(path: Union[str, Path]) -> Tuple[ModelParams, Dict[str, Any]]:
    """
    Завантаження параметрів

    Returns:
        Tuple: (ModelParams, metadata)

    Raises:
        CheckpointError: файл відсутній, інша версія формату або неповний набір параметрів
    """
    path = Path(path)
    if not path.is_file():
        raise CheckpointError(f"checkpoint not found: {path}")
    try:
        with np.load(path, allow_pickle=False) as archive:
            version = int(archive["format_version"])
            if version != FORMAT_VERSION:
                raise CheckpointError(f"unsupported checkpoint version {version} in {path}")
            metadata = json.loads(str(archive["metadata"]))
            tensors = {
                key[len(PARAM_PREFIX):]: archive[key]
                for key in archive.files
                if key.startswith(PARAM_PREFIX)
            }
    except (OSError, KeyError, ValueError) as e:
        raise CheckpointError(f"unreadable checkpoint {path}: {e}") from e

    try:
        params = ModelParams(tensors, hidden=metadata["hidden"], use_maps=metadata["use_maps"])
    except (KeyError, ValidationError) as e:
        raise CheckpointError(f"invalid checkpoint {path}: {e}") from e
    return params, metadata
