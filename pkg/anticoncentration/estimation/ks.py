import numpy as np
from scipy import stats

from anticoncentration.distribution.universal_density import cdf
from anticoncentration.exceptions import EmptySampleError


def _values(samples):
    return np.asarray(getattr(samples, "samples", samples), dtype=float).reshape(-1)


def ks_statistic(samples, params):
    """
    Kolmogorov-Smirnov distance sup |F_n - F| between the empirical distribution of `samples` and the universal
    cdf at `params`. The supremum is attained at a jump of F_n, so it is evaluated exactly on the sorted sample.

    :param samples:
        OverlapSampleSet or array of overlaps.

    :param params:
        UniversalParams of the model.
    """
    values = np.sort(_values(samples))
    n = values.size

    if n == 0:
        raise EmptySampleError("The KS statistic needs at least one sample")

    model = cdf(values, params)
    d_plus = np.max(np.arange(1, n + 1) / n - model)
    d_minus = np.max(model - np.arange(0, n) / n)

    return float(min(1.0, max(d_plus, d_minus, 0.0)))


def ks_pvalue(statistic, n):
    """
    p-value of the one-sample statistic against a fully specified model (exact two-sided distribution).
    """
    return float(stats.kstwo.sf(statistic, n))
