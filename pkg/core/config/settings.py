"""
Configuration Management
Завантаження та валідація конфігурації з config.yaml та .env
"""

import os
from typing import Optional, Dict, Any, List
import yaml
from pydantic import BaseModel, Field, ValidationError as PydanticValidationError, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict
from dotenv import load_dotenv

from core.utils.exceptions import ConfigError


# Завантаження .env файлу
load_dotenv()

DEFAULT_CONFIG_PATH = "config.yaml"
CONFIG_ENV_VAR = "IGMTF_CONFIG"


class AppConfig(BaseModel):
    """Загальні налаштування застосунку"""
    name: str = "IGMTF"
    version: str = "1.0.0"
    debug: bool = False


class FileLoggingConfig(BaseModel):
    """Конфігурація логування у файл"""
    enabled: bool = False
    path: str = "logs/igmtf.log"
    max_bytes: int = 10485760
    backup_count: int = 5


class ConsoleLoggingConfig(BaseModel):
    """Конфігурація консольного логування"""
    enabled: bool = True
    colored: bool = True


class LoggerConfig(BaseModel):
    """Конфігурація окремого логера"""
    level: str = "INFO"
    file: Optional[str] = None


class LoggingConfig(BaseModel):
    """Конфігурація логування"""
    level: str = "INFO"
    format: str = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
    date_format: str = "%Y-%m-%d %H:%M:%S"
    file: FileLoggingConfig = Field(default_factory=FileLoggingConfig)
    console: ConsoleLoggingConfig = Field(default_factory=ConsoleLoggingConfig)
    loggers: Dict[str, LoggerConfig] = Field(default_factory=dict)

    @field_validator("level")
    @classmethod
    def _known_level(cls, value: str) -> str:
        if value.upper() not in {"DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"}:
            raise ValueError(f"unknown log level: {value}")
        return value.upper()


class DataSettings(BaseSettings):
    """
    Розташування датасетів та нормалізація

    IGMTF_DATA_DIR у середовищі (або .env) перекриває data_dir з config.yaml
    """
    model_config = SettingsConfigDict(env_prefix="IGMTF_", extra="ignore")

    data_dir: Optional[str] = None
    normalize: str = "max"
    fractions: List[float] = Field(default_factory=lambda: [0.6, 0.2, 0.2])


class ExperimentDefaults(BaseModel):
    """Гіперпараметри за замовчуванням (середина сітки пошуку)"""
    window: int = 168
    horizon: int = 3
    hidden: int = 256
    k: int = 10
    neighbors: int = 10
    lr: float = 1e-4
    l2: float = 1e-4
    epochs: int = 100
    seed: int = 0
    variant: str = "full"
    patience: Optional[int] = None
    exclude_self: bool = False


class RuntimeConfig(BaseModel):
    """Паралелізм та розмір чанків"""
    bank_chunk: int = 64
    bank_workers: int = 1
    eval_workers: int = 1
    sweep_workers: int = 1


class Settings(BaseModel):
    """Головний клас налаштувань"""
    app: AppConfig = Field(default_factory=AppConfig)
    logging: LoggingConfig = Field(default_factory=LoggingConfig)
    data: DataSettings = Field(default_factory=DataSettings)
    experiment: ExperimentDefaults = Field(default_factory=ExperimentDefaults)
    runtime: RuntimeConfig = Field(default_factory=RuntimeConfig)

    @classmethod
    def load_from_yaml(cls, config_path: str = DEFAULT_CONFIG_PATH) -> "Settings":
        """
        Завантаження конфігурації з YAML файлу

        Args:
            config_path: Шлях до файлу конфігурації

        Returns:
            Settings: Об'єкт налаштувань

        Raises:
            ConfigError: файл існує, але не читається або не проходить валідацію
        """
        if not os.path.exists(config_path):
            print(f"[WARNING] Config file not found: {config_path}, using defaults")
            return cls()

        try:
            with open(config_path, 'r', encoding='utf-8') as f:
                config_data = yaml.safe_load(f)
        except (OSError, yaml.YAMLError) as e:
            raise ConfigError(f"Failed to read config {config_path}: {e}") from e

        if config_data is None:
            config_data = {}
        if not isinstance(config_data, dict):
            raise ConfigError(f"Config {config_path} must be a mapping")

        try:
            data_section = config_data.pop("data", None) or {}
            settings = cls(**config_data)
            # env (IGMTF_*) має пріоритет над YAML
            env_data = DataSettings()
            merged = {**data_section, **env_data.model_dump(exclude_unset=True)}
            settings.data = DataSettings(**merged)
            return settings
        except PydanticValidationError as e:
            raise ConfigError(f"Invalid config {config_path}: {e}") from e

    def save_to_yaml(self, config_path: str = DEFAULT_CONFIG_PATH) -> None:
        """
        Збереження конфігурації у YAML файл

        Args:
            config_path: Шлях до файлу конфігурації
        """
        with open(config_path, 'w', encoding='utf-8') as f:
            yaml.safe_dump(self.model_dump(), f, default_flow_style=False, allow_unicode=True)

    def get(self, key: str, default: Any = None) -> Any:
        """
        Отримання значення за ключем з підтримкою точкової нотації

        Args:
            key: Ключ у форматі "section.subsection.value"
            default: Значення за замовчуванням

        Returns:
            Any: Значення або default
        """
        keys = key.split('.')
        value = self.model_dump()

        for k in keys:
            if isinstance(value, dict) and k in value:
                value = value[k]
            else:
                return default

        return value


# Singleton instance
_settings: Optional[Settings] = None


def get_settings(reload: bool = False) -> Settings:
    """
    Отримання глобального екземпляру налаштувань (singleton)

    Args:
        reload: Перезавантажити конфігурацію

    Returns:
        Settings: Об'єкт налаштувань
    """
    global _settings

    if _settings is None or reload:
        _settings = Settings.load_from_yaml(os.environ.get(CONFIG_ENV_VAR, DEFAULT_CONFIG_PATH))

    return _settings
