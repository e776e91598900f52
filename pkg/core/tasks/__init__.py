from .task_manager import TaskManager, TaskResult

__all__ = ['TaskManager', 'TaskResult']
