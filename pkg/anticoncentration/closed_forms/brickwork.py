import math


def brickwork_decay_rate(d):
    """
    Domain-wall weight w = 2d / (d^2 + 1) of a Haar brickwork layer.
    """
    if d < 2:
        raise ValueError(f"Local dimension must be >= 2, got {d}")
    return 2 * d / (d * d + 1)


def brickwork_tau(d=2):
    """
    Decay timescale tau = -1 / log2(w): Delta S_2 ~ N 2^{-t / tau}.
    """
    return -1.0 / math.log2(brickwork_decay_rate(d))
