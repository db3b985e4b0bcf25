"""
Universal overlap density
=========================

P(omega) = E_u[g] + beta [3 + 12 w d + 15/2 w^2 d^2 + w^3 d^3] E_u[g], where g is the Porter-Thomas density rescaled
by the log-normal factor at the Gauss-Hermite node u. The derivatives act on g analytically: for
g = c s^{1+p} omega^p e^{-z}, z = lambda s omega, omega^n d^n g = g T_n with
T_n = sum_j C(n, j) (p)_j (-z)^{n-j}, (p)_j the falling factorial.

Unitary: lambda = 1, p = 0, c = 1. Orthogonal: lambda = 1/2, p = -1/2, c = (2 pi)^{-1/2}.
"""
import math

import numpy as np
from scipy import integrate
from scipy.special import binom, gammainc, poch

from anticoncentration.ensemble import EnsembleKind
from anticoncentration.distribution.quadrature_grid import quadrature_grid


BETA_OPERATOR = (3.0, 12.0, 7.5, 1.0)

# Overlaps evaluated per block, bounding the (block, nodes) temporaries
CHUNK = 8192


def _shape(ensemble):
    """
    (lambda, p, c) of the rescaled Porter-Thomas density.
    """
    if ensemble is EnsembleKind.UNITARY:
        return 1.0, 0.0, 1.0
    return 0.5, -0.5, 1.0 / math.sqrt(2 * math.pi)


def _falling(p, j):
    # (p)_j = p (p-1) ... (p-j+1)
    return poch(p - j + 1, j)


def _scales(params, order=None):
    grid = quadrature_grid(order)
    sigma = math.sqrt(params.sigma2)
    return np.exp(-params.mu - sigma * grid.nodes), grid


def _check_domain(omega):
    omega = np.asarray(omega, dtype=float)
    if np.any(omega < 0) or np.any(np.isnan(omega)):
        raise ValueError("omega must be non-negative")
    return omega


def _node_terms(omega, params, order=None):
    """
    Per-node arrays (g, z, T_1, T_2, T_3) with a trailing node axis.
    """
    lam, p, c = _shape(params.ensemble)
    s, grid = _scales(params, order)
    w = omega[..., None]
    z = lam * s * w

    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        g = c * np.power(s, 1 + p) * np.power(w, p) * np.exp(-z)
        polynomials = [sum(binom(n, j) * _falling(p, j) * (-z) ** (n - j) for j in range(n + 1)) for n in (1, 2, 3)]

    return (g, z) + tuple(polynomials) + (grid,)


def _chunked(func):
    def wrapper(omega, params, order=None):
        omega = np.asarray(omega, dtype=float)
        if omega.ndim != 1 or omega.size <= CHUNK:
            return func(omega, params, order)
        return np.concatenate([func(omega[i:i + CHUNK], params, order) for i in range(0, omega.size, CHUNK)])

    wrapper.__name__ = func.__name__
    wrapper.__doc__ = func.__doc__
    return wrapper


@_chunked
def pdf(omega, params, order=None):
    """
    Density of the universal distribution.

    :param omega:
        Non-negative scalar or array.

    :param params:
        UniversalParams.

    :param order:
        Gauss-Hermite order; defaults to rcParams["distribution.hermite_order"].
    """
    omega = _check_domain(omega)
    g, z, t1, t2, t3, grid = _node_terms(omega, params, order)

    correction = BETA_OPERATOR[0] + BETA_OPERATOR[1] * t1 + BETA_OPERATOR[2] * t2 + BETA_OPERATOR[3] * t3
    with np.errstate(invalid="ignore"):
        values = grid.expectation(g * (1 + params.beta * correction))

    values = np.where(np.isinf(omega), 0.0, values)
    if params.ensemble is EnsembleKind.ORTHOGONAL:
        values = np.where(omega == 0, np.inf, values)

    return float(values) if values.ndim == 0 else values


@_chunked
def cdf(omega, params, order=None):
    """
    Distribution function, integrating the base term and each derivative term by parts node by node:
    J_0 = regularized incomplete gamma, J_n = omega g T_{n-1} - n J_{n-1}.
    """
    omega = _check_domain(omega)
    lam, p, c = _shape(params.ensemble)
    g, z, t1, t2, t3, grid = _node_terms(omega, params, order)

    w = omega[..., None]
    with np.errstate(invalid="ignore"):
        wg = np.where(w > 0, w * g, 0.0)
        wg = np.where(np.isfinite(wg), wg, 0.0)

    j0 = gammainc(1 + p, z)
    j1 = wg - j0
    j2 = wg * t1 - 2 * j1
    j3 = wg * t2 - 3 * j2

    correction = BETA_OPERATOR[0] * j0 + BETA_OPERATOR[1] * j1 + BETA_OPERATOR[2] * j2 + BETA_OPERATOR[3] * j3
    values = grid.expectation(j0 + params.beta * correction)
    values = np.where(np.isinf(omega), 1.0, values)
    return float(values) if values.ndim == 0 else values


def theoretical_moment(k, params):
    """
    E[omega^k] = m_k e^{c_E alpha} e^{-k^2 (k-1) beta}, with m_k = k! (Unitary) or (2k-1)!! (Orthogonal) and
    c_U = k(k-1)/2, c_O = k(k-1). Warns outside the first-order window of beta.
    """
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")

    params.check_window(k)
    ensemble = params.ensemble
    return ensemble.porter_thomas_moment(k) * math.exp(ensemble.alpha_exponent(k) * params.alpha -
                                                      k * k * (k - 1) * params.beta)


def density_moment(k, params):
    """
    Exact k-th moment of the first-order density :func:`pdf`: m_k e^{c_E alpha} (1 - k(k-1)(k-1/2) beta).
    """
    if k < 0:
        raise ValueError(f"k must be >= 0, got {k}")

    ensemble = params.ensemble
    leading = ensemble.porter_thomas_moment(k) * math.exp(ensemble.alpha_exponent(k) * params.alpha)
    return leading * (1 - k * (k - 1) * (k - 0.5) * params.beta)


def numerical_moment(k, params, order=None, segments=48):
    """
    Integral of omega^k pdf(omega) by adaptive quadrature in y = log(omega).
    """
    sigma = math.sqrt(params.sigma2)
    upper = 5 + math.log(2 * k + 2) + abs(params.mu) + k * params.sigma2 + 10 * sigma
    edges = np.linspace(-60.0, upper, segments + 1)

    def integrand(y):
        omega = math.exp(y)
        return omega ** (k + 1) * pdf(omega, params, order)

    total = 0.0
    for a, b in zip(edges[:-1], edges[1:]):
        value, _ = integrate.quad(integrand, a, b, epsabs=0.0, epsrel=1e-12, limit=200)
        total += value

    return total


def negativity_report(params, grid=None, order=None):
    """
    Locates negative values of the first-order density on a grid (default: 1000 points on [0, 5], zero excluded).

    :return:
        Dictionary with the minimum value, where it occurs, the fraction of negative grid points and the trapezoidal
        mass of the negative part.
    """
    grid = np.linspace(0, 5, 1001)[1:] if grid is None else np.asarray(grid, dtype=float)
    values = pdf(grid, params, order)
    negative = np.minimum(values, 0)

    return {
        "min_pdf": float(values.min()),
        "argmin": float(grid[int(np.argmin(values))]),
        "negative_fraction": float(np.mean(values < 0)),
        "negative_mass": float(-integrate.trapezoid(negative, grid)) if grid.size > 1 else 0.0,
    }
