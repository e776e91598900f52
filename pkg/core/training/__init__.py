from .trainer import Trainer, TrainResult, EvalResult, EpochStats

__all__ = ['Trainer', 'TrainResult', 'EvalResult', 'EpochStats']
