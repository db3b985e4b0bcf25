"""
Haar ensemble
=============

IPRs of Haar random states and the exact overlap densities at finite total dimension D. Pass
`INFINITE_DIMENSION` as D to select the limiting exponential / chi-squared laws.
"""
import math

import numpy as np
from scipy.special import gammaln

from anticoncentration.ensemble import EnsembleKind


INFINITE_DIMENSION = math.inf


def haar_ipr(ensemble, D, k):
    """
    Average k-th IPR of a Haar random state of dimension D: D prod_{m<k} (1 + f(m)) / (D + f(m)).

    :param ensemble:
        EnsembleKind (or its name).

    :param D:
        Total Hilbert space dimension (>= 1, may be a float for large systems).

    :param k:
        Replica order (>= 1).
    """
    ensemble = EnsembleKind.parse(ensemble)
    k = int(k)

    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")

    if D < 1:
        raise ValueError(f"D must be >= 1, got {D}")

    if k == 1:
        return 1.0

    if D == INFINITE_DIMENSION:
        return 0.0

    f = ensemble.shifts(k)
    log_value = math.log(D) + np.sum(np.log1p(f)) - np.sum(np.log(D + f))
    return float(math.exp(log_value))


def porter_thomas_pdf(ensemble, D, omega):
    """
    Density of omega = D |<x|psi>|^2 for a Haar random state.

    Finite D: (D-1)/D (1 - omega/D)^{D-2} (Unitary) and
    Gamma(D/2) / (sqrt(D) Gamma((D-1)/2)) (pi omega)^{-1/2} (1 - omega/D)^{(D-3)/2} (Orthogonal), supported on
    [0, D]. D = INFINITE_DIMENSION: e^{-omega} and (2 pi omega)^{-1/2} e^{-omega/2}.

    Values of omega outside the support give 0. Accepts scalars or arrays.
    """
    ensemble = EnsembleKind.parse(ensemble)
    omega = np.asarray(omega, dtype=float)

    if D != INFINITE_DIMENSION and D < 2:
        raise ValueError(f"The overlap density needs D >= 2, got {D}")

    inside = omega >= 0
    if D != INFINITE_DIMENSION:
        inside &= omega <= D

    w = np.where(inside, omega, 1.0)

    with np.errstate(divide="ignore", invalid="ignore"):
        if D == INFINITE_DIMENSION:
            if ensemble is EnsembleKind.UNITARY:
                density = np.exp(-w)
            else:
                density = np.exp(-w / 2) / np.sqrt(2 * np.pi * w)
        elif ensemble is EnsembleKind.UNITARY:
            density = (D - 1) / D * np.power(1 - w / D, D - 2)
        else:
            log_norm = gammaln(D / 2) - gammaln((D - 1) / 2) - 0.5 * math.log(D)
            density = np.exp(log_norm) / np.sqrt(np.pi * w) * np.power(1 - w / D, (D - 3) / 2)

    density = np.where(inside, density, 0.0)
    return float(density) if density.ndim == 0 else density


def participation_entropy(ipr, k):
    """
    Participation entropy S_k = log(I_k) / (1 - k), natural logarithm.
    """
    if k == 1:
        raise ValueError("S_1 is the Shannon limit and is not defined through the IPR")

    if np.any(np.asarray(ipr) <= 0):
        raise ValueError("IPRs must be positive")

    return np.log(ipr) / (1 - k)
