import math
from dataclasses import dataclass, asdict

import numpy as np
from scipy import stats

from anticoncentration.utils.table_io import write_json


MIN_POINTS = 4


@dataclass(frozen=True)
class DecayFit:
    """
    Exponential decay value(t) ~ N 2^{-t/tau} fitted as a line in -log2(value/N) against t.

    `kappa` is set when a second series decaying as N 2^{-kappa t/tau} was fitted with the same tau.
    """
    tau: float
    tau_se: float
    slope: float
    intercept: float
    window: tuple
    residual: float
    points: list
    kappa: float = None
    kappa_se: float = None

    def to_dict(self):
        result = asdict(self)
        result["window"] = list(self.window)
        result["points"] = [list(point) for point in self.points]
        return result

    def to_json(self, path):
        return write_json(path, self.to_dict())

    def __repr__(self):
        kappa = "" if self.kappa is None else f"; kappa={self.kappa:.4f}"
        return f"DecayFit(tau={self.tau:.6f} +- {self.tau_se:.2g}{kappa}; window {self.window})"

    def __str__(self):
        return self.__repr__()


def _pairs(series, N, column):
    if hasattr(series, "pairs"):
        sizes = series.sizes

        if N is None:
            if len(sizes) != 1:
                raise ValueError(f"The series holds sizes {sizes}; choose one with N")
            N = sizes[0]

        return series.pairs(N, column), N

    return [(float(t), float(value)) for t, value in series], (1 if N is None else N)


def _window(pairs, window):
    times = sorted(t for t, _ in pairs)

    if window is None:
        t_max = times[-1]
        window = (t_max / 2, t_max) if t_max > 0 else (times[0], t_max)

    t_min, t_max = window
    chosen = sorted((t, value) for t, value in pairs if t_min <= t <= t_max)

    if len(chosen) < MIN_POINTS:
        raise ValueError(f"At least {MIN_POINTS} points are needed in the window {tuple(window)}, got {len(chosen)}")

    if any(value <= 0 for _, value in chosen):
        raise ValueError(f"Values in the window {tuple(window)} must be positive")

    return chosen, (float(t_min), float(t_max))


def _regress(chosen, N):
    t = np.array([point[0] for point in chosen], dtype=float)
    y = -np.log2(np.array([point[1] for point in chosen], dtype=float) / N)
    regression = stats.linregress(t, y)
    residual = float(np.sqrt(np.mean((y - regression.intercept - regression.slope * t) ** 2)))
    return regression, residual


def fit_decay_timescale(series, N=None, window=None, column="delta_S2"):
    """
    Fits the decay timescale tau of a series.

    :param series:
        AnnealedSeries (the `column` of size `N` is used) or an iterable of (t, value) pairs.

    :param N:
        Size normalizing the values. Only enters the intercept.

    :param window:
        (t_min, t_max) of the fit; defaults to the last half of the series.
    """
    pairs, N = _pairs(series, N, column)
    chosen, window = _window(pairs, window)
    regression, residual = _regress(chosen, N)

    if regression.slope <= 0:
        raise ValueError(f"The series does not decay in the window {window} (slope {regression.slope:.3g})")

    tau = 1.0 / regression.slope
    return DecayFit(tau=float(tau), tau_se=float(regression.stderr * tau ** 2), slope=float(regression.slope),
                    intercept=float(regression.intercept), window=window, residual=residual, points=chosen)


def fit_kappa(decay_fit, beta_series, N=None, window=None):
    """
    Fits kappa of beta(t) ~ N 2^{-kappa t/tau} with tau taken from `decay_fit`.

    :param beta_series:
        Iterable of (t, beta) pairs.

    :return:
        A copy of `decay_fit` with `kappa` and `kappa_se` set.
    """
    chosen, window = _window(_pairs(beta_series, N, None)[0], window)
    regression, _ = _regress(chosen, 1 if N is None else N)

    kappa = regression.slope * decay_fit.tau
    kappa_se = math.hypot(regression.stderr * decay_fit.tau, regression.slope * decay_fit.tau_se)
    fields = decay_fit.to_dict()
    fields.update(kappa=float(kappa), kappa_se=float(kappa_se), window=decay_fit.window, points=decay_fit.points)
    return DecayFit(**fields)


def collapse_variable(N, t, tau):
    """
    Scaling variable N / 2^{t/tau} of the data collapse.
    """
    return np.asarray(N, dtype=float) / np.power(2.0, np.asarray(t, dtype=float) / tau)


def fit_size_difference(series, sizes=None, window=None, column="delta_S2"):
    """
    Fits tau from value(N_large, t) - value(N_small, t) ~ (N_large - N_small) 2^{-t/tau}. Domain walls absorbed at
    the open edges deplete both sizes equally while they do not feel the far edge, so the difference keeps only the
    bulk decay that single-size fits at small N underestimate.

    :param series:
        AnnealedSeries with at least two sizes.

    :param sizes:
        (N_small, N_large); defaults to the smallest and largest size of the series.

    :param window:
        (t_min, t_max) of the fit; defaults to the last third of the series.
    """
    small, large = (series.sizes[0], series.sizes[-1]) if sizes is None else sorted(sizes)

    if small == large:
        raise ValueError(f"Two different sizes are needed, got {small} and {large}")

    lower = dict(series.pairs(small, column))
    pairs = [(t, value - lower[t]) for t, value in series.pairs(large, column) if t in lower]

    if window is None:
        t_max = max(t for t, _ in pairs)
        window = (2 * t_max / 3, t_max)

    return fit_decay_timescale(pairs, N=large - small, window=window)


def fits_per_size(series, window=None, column="delta_S2"):
    """
    Dictionary mapping every size of the series to its own DecayFit.
    """
    return {N: fit_decay_timescale(series, N=N, window=window, column=column) for N in series.sizes}
