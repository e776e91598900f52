# ==================== utils/exceptions.py ====================

from typing import Optional, Sequence, Tuple


class IGMTFException(Exception):
    """Базовий виняток для IGMTF"""

    def __reduce__(self):
        # аргументи конструктора, а не відформатоване повідомлення (передача між процесами)
        return (type(self), getattr(self, "_init_args", self.args))


class ConfigError(IGMTFException):
    """Помилка конфігурації"""
    pass


class ValidationError(IGMTFException):
    """Помилка валідації даних"""
    pass


class DataFormatError(IGMTFException):
    """Некоректний файл датасету (з номером рядка)"""

    def __init__(self, message: str, path: Optional[str] = None, line: Optional[int] = None):
        self._init_args = (message, path, line)
        self.path = path
        self.line = line
        location = ""
        if path is not None:
            location = f"{path}"
            if line is not None:
                location += f":{line}"
            location += ": "
        super().__init__(f"{location}{message}")


class NormalizationError(IGMTFException):
    """Неможливо нормалізувати колонку"""

    def __init__(self, message: str, column: Optional[int] = None):
        self._init_args = (message, column)
        self.column = column
        super().__init__(message)


class SplitError(IGMTFException):
    """Помилка хронологічного поділу"""
    pass


class ShapeError(IGMTFException):
    """Невідповідність розмірностей у операції"""

    def __init__(self, op_kind: str, shapes: Sequence[Tuple[int, ...]], detail: str = ""):
        self._init_args = (op_kind, tuple(shapes), detail)
        self.op_kind = op_kind
        self.shapes = tuple(tuple(s) for s in shapes)
        shapes_text = ", ".join("x".join(str(d) for d in s) for s in self.shapes)
        message = f"{op_kind}: incompatible shapes ({shapes_text})"
        if detail:
            message += f": {detail}"
        super().__init__(message)


class GradientError(IGMTFException):
    """Помилка зворотного проходу"""
    pass


class OptimizerError(IGMTFException):
    """Помилка оптимізатора (NaN градієнт тощо)"""
    pass


class SamplingError(IGMTFException):
    """Помилка семплювання тренувальних інстансів"""
    pass


class MetricError(IGMTFException):
    """Метрика не визначена для цих даних"""
    pass


class TrainingError(IGMTFException):
    """Навчання перервано"""

    def __init__(self, message: str, epoch: Optional[int] = None, timestamp: Optional[int] = None):
        self._init_args = (message, epoch, timestamp)
        self.epoch = epoch
        self.timestamp = timestamp
        super().__init__(f"{message} (epoch={epoch}, timestamp={timestamp})")


class CheckpointError(IGMTFException):
    """Помилка збереження/завантаження чекпоінта"""
    pass


class ReportError(IGMTFException):
    """Помилка запису/читання звіту"""
    pass
