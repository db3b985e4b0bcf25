import math
from dataclasses import dataclass

import numpy as np

from anticoncentration.ensemble import EnsembleKind
from anticoncentration.closed_forms.haar import haar_ipr
from anticoncentration.closed_forms.scaling_variables import ScalingVariables


def _integer_log(value, base):
    r, power = 0, 1
    while power < value:
        power *= base
        r += 1
    return r if power == value else None


@dataclass(frozen=True)
class RmpsSpec:
    """
    Random matrix product state built from a staircase of Haar gates acting on r + 1 sites, with chi = d^r.
    """
    d: int
    chi: int
    N: int
    ensemble: EnsembleKind = EnsembleKind.UNITARY

    def __post_init__(self):
        object.__setattr__(self, "ensemble", EnsembleKind.parse(self.ensemble))

        if self.d < 2:
            raise ValueError(f"Local dimension must be >= 2, got {self.d}")

        if self.chi < 1:
            raise ValueError(f"Bond dimension must be >= 1, got {self.chi}")

        if _integer_log(self.chi, self.d) is None:
            raise ValueError(f"Bond dimension chi={self.chi} is not a power of d={self.d}")

        if self.N < self.r + 1:
            raise ValueError(f"N={self.N} is smaller than r + 1 = {self.r + 1}")

    @property
    def r(self):
        return _integer_log(self.chi, self.d)

    @property
    def D(self):
        return float(self.d) ** self.N


def rmps_ipr_exact(spec, k):
    """
    Exact disorder-averaged k-th IPR of an RMPS, evaluated in log-space.

    :param spec:
        RmpsSpec.

    :param k:
        Replica order (>= 1).
    """
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")

    d, chi = float(spec.d), float(spec.chi)
    f = spec.ensemble.shifts(k)

    log_value = spec.N * math.log(d)
    log_value += np.sum(np.log1p(f) - np.log(d * chi + f))
    log_value += (spec.N - spec.r - 1) * np.sum(np.log(chi + f) - np.log(d * chi + f))

    return float(math.exp(log_value))


def rmps_scaling_params(spec):
    """
    Scaling variables of an RMPS: x = (N/chi)(d-1)/d,
    alpha = x (1 - d/(N(d-1)) - log_d[N(d-1)/(x d)] / N), beta_U = x^2 (d+1) / (6N(d-1)) and beta_O = 4 beta_U.

    The logarithm equals log_d(chi) = r when x comes from the same spec; it is evaluated as written.
    """
    d, N = spec.d, spec.N
    x = (N / spec.chi) * (d - 1) / d
    alpha = x * (1 - d / (N * (d - 1)) - math.log(N * (d - 1) / (x * d), d) / N)
    beta = x ** 2 * (d + 1) / (6 * N * (d - 1))

    if spec.ensemble is EnsembleKind.ORTHOGONAL:
        beta *= 4

    return ScalingVariables(x=x, alpha=alpha, beta=beta, n_thouless=N / x)


def rmps_ipr_scaling_form(spec, k):
    """
    Large-N form of the RMPS IPR: I_k^Haar e^{c_E alpha} e^{-k(k-1)(k-1/2) beta}, with c_U = k(k-1)/2 and
    c_O = k(k-1).
    """
    params = rmps_scaling_params(spec)
    exponent = spec.ensemble.alpha_exponent(k) * params.alpha - k * (k - 1) * (k - 0.5) * params.beta
    return haar_ipr(spec.ensemble, spec.D, k) * math.exp(exponent)
