import logging
from functools import lru_cache

import numpy as np
from scipy.interpolate import PchipInterpolator

from anticoncentration.config.config import rcParams
from anticoncentration.ensemble import EnsembleKind
from anticoncentration.circuit.overlap_sample_set import OverlapSampleSet
from anticoncentration.distribution.universal_density import cdf


logger = logging.getLogger(__name__)

MAX_DOUBLINGS = 60


class InverseCdfTable:
    """
    Tabulated inverse of the universal CDF on a log-spaced grid [grid_min, omega_hi].

    omega_hi is doubled until the tail above it holds less than `tail_mass`. Where the first-order density is
    negative the CDF is replaced by its running maximum, so the table stays monotone; the removed mass is reported
    as `negative_mass`. Below grid_min the small-omega power law CDF ~ omega^{1+p} is used.
    """
    def __init__(self, params, points=None, grid_min=None, tail_mass=None):
        points = rcParams["distribution.cdf_grid_points"] if points is None else points
        grid_min = rcParams["distribution.cdf_grid_min"] if grid_min is None else grid_min
        tail_mass = rcParams["distribution.tail_mass"] if tail_mass is None else tail_mass

        omega_hi = 64.0
        for _ in range(MAX_DOUBLINGS):
            if 1 - cdf(omega_hi, params) < tail_mass:
                break
            omega_hi *= 2

        grid = np.geomspace(grid_min, omega_hi, points)
        values = cdf(grid, params)
        monotone = np.maximum.accumulate(values)
        keep = np.concatenate([[True], np.diff(monotone) > 0])

        self._params = params
        self._grid_min = grid_min
        self._omega_hi = omega_hi
        self._cdf_min = float(monotone[0])
        self._cdf_max = float(monotone[keep][-1])
        self._negative_mass = float(np.max(monotone - values))
        self._exponent = 1.0 if params.ensemble is EnsembleKind.UNITARY else 0.5
        self._inverse = PchipInterpolator(monotone[keep], np.log(grid[keep]))

        logger.debug("Inverse CDF table on [%.1e, %.3g] with %d knots", grid_min, omega_hi, int(keep.sum()))

    @property
    def omega_hi(self):
        return self._omega_hi

    @property
    def negative_mass(self):
        return self._negative_mass

    def __call__(self, u):
        u = np.asarray(u, dtype=float)
        below = u < self._cdf_min
        clipped = np.clip(u, self._cdf_min, self._cdf_max)
        omega = np.exp(self._inverse(clipped))

        if np.any(below):
            ratio = np.where(below, u, self._cdf_min) / self._cdf_min
            omega = np.where(below, self._grid_min * ratio ** (1 / self._exponent), omega)

        return omega


@lru_cache(maxsize=32)
def inverse_cdf_table(params):
    return InverseCdfTable(params)


def sample_overlaps(params, n, rng, method=None):
    """
    Draws n overlaps from the universal distribution.

    :param params:
        UniversalParams.

    :param n:
        Number of samples (>= 1).

    :param rng:
        numpy Generator.

    :param method:
        "product" (Porter-Thomas times log-normal, only for beta = 0) or "inverse_cdf". Defaults to "product" when
        beta = 0 and "inverse_cdf" otherwise.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")

    method = method or ("product" if params.beta == 0 else "inverse_cdf")
    meta = {"source": "universal", "params": params.to_dict(), "method": method, "count": int(n)}

    if method == "product":
        if params.beta != 0:
            raise ValueError("The product construction only holds for beta = 0")

        if params.ensemble is EnsembleKind.UNITARY:
            porter_thomas = rng.standard_exponential(n)
        else:
            porter_thomas = rng.standard_normal(n) ** 2

        lognormal = np.exp(params.mu + np.sqrt(params.sigma2) * rng.standard_normal(n))
        return OverlapSampleSet(porter_thomas * lognormal, meta=meta)

    if method != "inverse_cdf":
        raise ValueError(f"Unknown sampling method '{method}'. Allowed: ['product', 'inverse_cdf']")

    table = inverse_cdf_table(params)
    meta["negative_mass"] = table.negative_mass
    return OverlapSampleSet(table(rng.random(n)), meta=meta)
