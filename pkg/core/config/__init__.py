from .settings import Settings, get_settings
from .train_config import TrainConfig, Variant

# RunConfig залежить від core.data, тому імпортується з core.config.run_config напряму

__all__ = ['Settings', 'get_settings', 'TrainConfig', 'Variant']
