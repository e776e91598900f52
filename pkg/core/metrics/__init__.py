from .metrics import EvalPair, rrse, corr, mae, naive_baseline, safe_metric

__all__ = ['EvalPair', 'rrse', 'corr', 'mae', 'naive_baseline', 'safe_metric']
