"""
Seed streams
============

Every stochastic task draws from its own generator, seeded from the run seed and the task position. This makes
results independent from the number of workers and the order in which tasks are scheduled.
"""
import hashlib

import numpy as np


def derive_seed(seed, *index):
    """
    Derives a 64-bit seed from a root seed and an index path.

    :param seed:
        Root seed of the run (non-negative integer).

    :param index:
        Integers or strings naming the task, e.g. `derive_seed(7, "realization", 12)`.
    """
    if seed is None or int(seed) < 0:
        raise ValueError(f"Seeds must be non-negative integers, got {seed}")

    key = ":".join([str(int(seed))] + [str(i) for i in index])
    return int.from_bytes(hashlib.blake2b(key.encode(), digest_size=8).digest(), "little")


def rng_stream(seed, *index):
    """
    Returns a numpy Generator for the task `index` of the run `seed`.
    """
    return np.random.default_rng(derive_seed(seed, *index))
