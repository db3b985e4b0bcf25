"""
Random gates
============

Haar random unitary and orthogonal matrices, sampled through the QR decomposition of a Ginibre matrix with the
phase (sign) of diag(R) moved into Q, plus the Weyl operators used for depolarizing trajectories.
"""
from functools import lru_cache

import numpy as np
from scipy import linalg

from anticoncentration.ensemble import EnsembleKind


def sample_haar_gate(ensemble, dim, rng):
    """
    Draws a Haar random matrix of U(dim) or O(dim).

    :param ensemble:
        EnsembleKind (or its name).

    :param dim:
        Matrix size (>= 2).

    :param rng:
        numpy Generator.
    """
    ensemble = EnsembleKind.parse(ensemble)

    if dim < 2:
        raise ValueError(f"Gate dimension must be >= 2, got {dim}")

    if ensemble is EnsembleKind.UNITARY:
        ginibre = (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))) / np.sqrt(2)
    else:
        ginibre = rng.standard_normal((dim, dim))

    q, r = linalg.qr(ginibre)
    diagonal = np.diag(r)
    phases = diagonal / np.abs(diagonal)
    return q * phases[None, :]


def haar_random_state(ensemble, dim, rng):
    """
    First column of a Haar random gate.
    """
    return sample_haar_gate(ensemble, dim, rng)[:, 0]


@lru_cache(maxsize=None)
def weyl_operators(d, n_sites=2):
    """
    Non-identity generalized Pauli operators X^a Z^b on `n_sites` qudits, in lexicographic order of the exponents.

    For qubits and two sites these are the 15 non-identity two-qubit Paulis (up to phases).
    """
    shift = np.roll(np.eye(d), 1, axis=0)
    clock = np.diag(np.exp(2j * np.pi * np.arange(d) / d))
    local = [np.linalg.matrix_power(shift, a) @ np.linalg.matrix_power(clock, b) for a in range(d) for b in range(d)]

    operators = [np.ones((1, 1), dtype=complex)]
    for _ in range(n_sites):
        operators = [np.kron(op, l) for op in operators for l in local]

    return tuple(operators[1:])
