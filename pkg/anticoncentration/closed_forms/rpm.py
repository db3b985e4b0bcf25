"""
Random phase model
==================

Exact IPRs of the random phase model in the limit of infinite local dimension, where averaging reduces to a
transfer matrix on S_k in the spatial direction: T_{sigma,sigma'} = exp[-(epsilon t / 2)(k - n_F(sigma sigma'^-1))].
"""
import math
from dataclasses import dataclass

import numpy as np

from anticoncentration.commutant import enumerate_commutant
from anticoncentration.commutant.permutation_element import perm_stats
from anticoncentration.ensemble import EnsembleKind
from anticoncentration.closed_forms.scaling_variables import ScalingVariables


@dataclass(frozen=True)
class RpmSpec:
    epsilon_coupling: float
    t: int
    N: int
    k: int

    def __post_init__(self):
        if self.epsilon_coupling <= 0:
            raise ValueError(f"epsilon must be positive, got {self.epsilon_coupling}")

        if self.t < 0 or self.t % 2:
            raise ValueError(f"The depth t must be even and non-negative, got {self.t}")

        if self.N < 2:
            raise ValueError(f"N must be >= 2, got {self.N}")

        if self.k < 1:
            raise ValueError(f"k must be >= 1, got {self.k}")


def _fixed_point_matrix(k):
    basis = enumerate_commutant(EnsembleKind.UNITARY, k)
    elements = basis.elements
    return np.array([[perm_stats(sigma, tau)[2] for tau in elements] for sigma in elements], dtype=float)


def rpm_transfer_matrix(spec):
    """
    Spatial transfer matrix [m]^{t/2} in the canonical S_k order.
    """
    fixed = _fixed_point_matrix(spec.k)
    return np.exp(-spec.epsilon_coupling * spec.t / 2 * (spec.k - fixed))


def rpm_log_ipr_exact(spec):
    """
    Natural logarithm of raw_sum = 1^T T^{N-1} 1, with the transfer vector renormalized at every step.
    """
    transfer = rpm_transfer_matrix(spec)
    vector = np.ones(len(transfer))
    log_norm = 0.0

    for _ in range(spec.N - 1):
        vector = transfer @ vector
        norm = float(vector.max())
        vector /= norm
        log_norm += math.log(norm)

    return log_norm + math.log(float(vector.sum()))


def rpm_ipr_exact(spec):
    """
    :return:
        Tuple (raw_sum, ratio_to_haar) with raw_sum = 1^T T^{N-1} 1 = D^{k-1} I_k and ratio_to_haar = raw_sum / k!.
    """
    log_raw_sum = rpm_log_ipr_exact(spec)
    return math.exp(log_raw_sum), math.exp(log_raw_sum - math.lgamma(spec.k + 1))


def rpm_scaling_params(spec):
    """
    x = N / N_Th with N_Th = e^{epsilon t}; alpha = x and beta = x^{3/2} / sqrt(N), the weight of a double domain wall.
    """
    n_thouless = math.exp(spec.epsilon_coupling * spec.t)
    x = spec.N / n_thouless
    return ScalingVariables(x=x, alpha=x, beta=x ** 1.5 / math.sqrt(spec.N), n_thouless=n_thouless)


def rpm_ipr_asymptotic(k, x_rpm, N):
    """
    Large-N ratio to Haar: e^{k(k-1) x / 2} (1 - k(k-1)(k-2) x^{3/2} / (3 sqrt(N))).
    """
    if x_rpm < 0:
        raise ValueError(f"x must be non-negative, got {x_rpm}")

    if N < 1:
        raise ValueError(f"N must be >= 1, got {N}")

    leading = math.exp(k * (k - 1) * x_rpm / 2)
    return leading * (1 - k * (k - 1) * (k - 2) * x_rpm ** 1.5 / (3 * math.sqrt(N)))
