from functools import lru_cache

import numpy as np
from scipy.special import roots_hermitenorm

from anticoncentration.config.config import rcParams


class QuadratureGrid:
    """
    Gauss-Hermite rule for expectations over u ~ N(0, 1): E[f(u)] ~ sum_i w_i f(u_i), with sum_i w_i = 1.
    """
    def __init__(self, order):
        if order < 1:
            raise ValueError(f"Quadrature order must be >= 1, got {order}")

        nodes, weights = roots_hermitenorm(order)
        self._order = order
        self._nodes = nodes
        self._weights = weights / weights.sum()
        self._nodes.setflags(write=False)
        self._weights.setflags(write=False)

    @property
    def order(self):
        return self._order

    @property
    def nodes(self):
        return self._nodes

    @property
    def weights(self):
        return self._weights

    def expectation(self, values):
        """
        Averages an array whose last axis runs over the nodes.
        """
        return np.asarray(values) @ self._weights

    def __repr__(self):
        return f"QuadratureGrid(order={self._order})"

    def __str__(self):
        return self.__repr__()


@lru_cache(maxsize=8)
def _cached_grid(order):
    return QuadratureGrid(order)


def quadrature_grid(order=None):
    return _cached_grid(int(rcParams["distribution.hermite_order"] if order is None else order))
