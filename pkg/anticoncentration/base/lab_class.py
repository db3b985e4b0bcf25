from joblib import Parallel, delayed

from anticoncentration.config.config import rcParams
from anticoncentration.utils.seeding import derive_seed, rng_stream


class LabClass:
    """
    Global class that should be inherited by any driver that consumes randomness or a worker budget.

    Drivers never share a generator between tasks: each task asks for `stream(*index)`, so results are the same
    for any number of workers.
    """
    def __init__(self, seed, workers=None):
        if seed is None:
            raise ValueError("A seed is mandatory")

        self._seed = int(seed)
        self._workers = int(workers if workers is not None else rcParams["harness.workers"])

        if self._workers < 1:
            raise ValueError(f"workers must be >= 1, got {self._workers}")

    @property
    def seed(self):
        return self._seed

    @property
    def workers(self):
        return self._workers

    def task_seed(self, *index):
        return derive_seed(self._seed, *index)

    def stream(self, *index):
        return rng_stream(self._seed, *index)

    def parallel_map(self, func, tasks):
        """
        Evaluates `func` over `tasks` with the worker budget of this object.

        Results come back in submission order.
        """
        tasks = list(tasks)

        if self._workers == 1 or len(tasks) < 2:
            return [func(task) for task in tasks]

        return Parallel(n_jobs=self._workers)(delayed(func)(task) for task in tasks)
