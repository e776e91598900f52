from .experiment_service import ExperimentService, config_hash, run_cell

__all__ = ['ExperimentService', 'config_hash', 'run_cell']
