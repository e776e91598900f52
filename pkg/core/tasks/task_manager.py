# ///////////////////////////////////////////////////////////////
#
# Task Manager Module
# Менеджер для виконання незалежних завдань послідовно або у пулі
#
# ///////////////////////////////////////////////////////////////

import sys
from concurrent.futures import Executor, ProcessPoolExecutor, ThreadPoolExecutor
from dataclasses import dataclass
from typing import Any, Callable, Iterable, List, Optional, Tuple

from core.utils.logger import get_logger


logger = get_logger(__name__)

ExcInfo = Tuple[type, BaseException, Any]


@dataclass
class TaskResult:
    """Результат одного завдання: значення або інформація про виняток"""
    index: int
    value: Any = None
    error: Optional[BaseException] = None

    @property
    def ok(self) -> bool:
        return self.error is None


class TaskManager:
    """
    Менеджер для незалежних завдань

    Підтримує:
    - Послідовне виконання (max_workers=1) без накладних витрат
    - Пул потоків (numpy звільняє GIL) або процесів (завдання нічого не ділять)
    - Callbacks для завершення/помилок/прогресу
    - Помилка одного завдання не зупиняє інші
    """

    def __init__(self, max_workers: int = 1, use_processes: bool = False):
        self.max_workers = max(1, int(max_workers))
        self.use_processes = use_processes

    def _executor(self) -> Executor:
        if self.use_processes:
            return ProcessPoolExecutor(max_workers=self.max_workers)
        return ThreadPoolExecutor(max_workers=self.max_workers)

    def run_task(
        self,
        task: Callable,
        *args,
        on_complete: Optional[Callable[[Any], None]] = None,
        on_error: Optional[Callable[[ExcInfo], None]] = None,
        **kwargs
    ) -> TaskResult:
        """
        Синхронний запуск одного завдання з callbacks

        Args:
            task: Функція для виконання
            on_complete: Callback після успішного завершення (приймає результат)
            on_error: Callback при помилці (приймає tuple з exc_info)
        """
        try:
            value = task(*args, **kwargs)
        except Exception as e:
            if on_error:
                on_error(sys.exc_info())
            return TaskResult(0, error=e)
        if on_complete:
            on_complete(value)
        return TaskResult(0, value=value)

    def map(
        self,
        task: Callable,
        items: Iterable[Any],
        on_complete: Optional[Callable[[Any], None]] = None,
        on_error: Optional[Callable[[ExcInfo], None]] = None,
        on_progress: Optional[Callable[[int, str], None]] = None,
    ) -> List[TaskResult]:
        """
        Виконання task(item) для кожного елемента

        Returns:
            List[TaskResult]: У порядку елементів, незалежно від порядку завершення
        """
        items = list(items)
        total = len(items)
        results: List[TaskResult] = []

        def report(done: int) -> None:
            if on_progress and total:
                on_progress(int(done / total * 100), f"Completed {done}/{total}")

        if self.max_workers == 1 or total <= 1:
            for index, item in enumerate(items):
                result = self.run_task(task, item, on_complete=on_complete, on_error=on_error)
                result.index = index
                results.append(result)
                report(index + 1)
            return results

        logger.debug(
            f"Running {total} tasks in {'process' if self.use_processes else 'thread'} pool "
            f"(workers={self.max_workers})"
        )
        with self._executor() as executor:
            futures = [executor.submit(task, item) for item in items]
            for index, future in enumerate(futures):
                try:
                    value = future.result()
                except Exception as e:
                    if on_error:
                        on_error((type(e), e, e.__traceback__))
                    results.append(TaskResult(index, error=e))
                else:
                    if on_complete:
                        on_complete(value)
                    results.append(TaskResult(index, value=value))
                report(index + 1)
        return results
