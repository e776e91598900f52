# ==================== utils/hasher.py ====================

import hashlib
import json
from typing import Any, Mapping


class Hasher:
    """Клас для хешування конфігурацій запусків"""

    @staticmethod
    def sha256(text: str) -> str:
        """SHA256 хеш тексту"""
        return hashlib.sha256(text.encode('utf-8')).hexdigest()

    @staticmethod
    def config_fingerprint(config: Mapping[str, Any]) -> str:
        """
        Стабільний відбиток конфігурації (не залежить від порядку ключів)

        Args:
            config: Словник параметрів запуску

        Returns:
            str: Перші 16 символів sha256
        """
        canonical = json.dumps(config, sort_keys=True, default=str, separators=(",", ":"))
        return Hasher.sha256(canonical)[:16]
