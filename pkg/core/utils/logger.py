"""
Utilities Module
Логування для бібліотеки та CLI
"""

# ==================== utils/logger.py ====================

import logging
import sys
from pathlib import Path
from typing import Optional
from logging.handlers import RotatingFileHandler
from colorlog import ColoredFormatter


LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
DATE_FORMAT = "%Y-%m-%d %H:%M:%S"


def setup_logger(
    name: str,
    log_file: Optional[str] = None,
    level: str = "INFO",
    max_bytes: int = 10485760,  # 10MB
    backup_count: int = 5,
    colored: bool = True,
    log_format: str = LOG_FORMAT,
    date_format: str = DATE_FORMAT,
) -> logging.Logger:
    """
    Налаштування логера з підтримкою файлів та кольорового виводу

    Args:
        name: Ім'я логера
        log_file: Шлях до файлу логів (None - без файлу)
        level: Рівень логування
        max_bytes: Максимальний розмір файлу
        backup_count: Кількість бекапів
        colored: Використовувати кольоровий вивід

    Returns:
        logging.Logger: Налаштований логер
    """
    logger = logging.getLogger(name)
    logger.setLevel(getattr(logging, level.upper()))

    # Уникнення дублікатів handlers
    if logger.handlers:
        return logger

    # Console handler; stdout лишається для таблиць CLI
    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setLevel(logging.DEBUG)

    if colored:
        colored_formatter = ColoredFormatter(
            "%(log_color)s" + log_format,
            datefmt=date_format,
            log_colors={
                'DEBUG': 'cyan',
                'INFO': 'green',
                'WARNING': 'yellow',
                'ERROR': 'red',
                'CRITICAL': 'red,bg_white',
            }
        )
        console_handler.setFormatter(colored_formatter)
    else:
        console_handler.setFormatter(logging.Formatter(log_format, datefmt=date_format))

    logger.addHandler(console_handler)

    # File handler
    if log_file:
        log_path = Path(log_file)
        log_path.parent.mkdir(parents=True, exist_ok=True)

        file_handler = RotatingFileHandler(
            log_file,
            maxBytes=max_bytes,
            backupCount=backup_count,
            encoding='utf-8'
        )
        file_handler.setLevel(logging.DEBUG)
        file_handler.setFormatter(logging.Formatter(log_format, datefmt=date_format))
        logger.addHandler(file_handler)

    return logger


def get_logger(name: str) -> logging.Logger:
    """
    Отримання логера для модуля з параметрами із config.yaml

    Args:
        name: Ім'я модуля (__name__)

    Returns:
        logging.Logger: Логер
    """
    # Пізній імпорт: settings сам використовує utils
    from core.config.settings import get_settings

    config = get_settings().logging
    override = config.loggers.get(name)
    level = override.level if override else config.level
    log_file = config.file.path if config.file.enabled else None
    if override and override.file:
        log_file = override.file
    return setup_logger(
        name,
        log_file=log_file,
        level=level,
        max_bytes=config.file.max_bytes,
        backup_count=config.file.backup_count,
        colored=config.console.colored,
        log_format=config.format,
        date_format=config.date_format,
    )
