"""
Kicked Ising Floquet dynamics
=============================

The Floquet operator is the single exponential U_F = exp(-i H) of
H = b sum_j X_j + h sum_j Z_j + J sum_j Z_j Z_{j+1} on an open chain of qubits. Its action on a state is computed
with a Lanczos (Krylov) approximation of the exponential; a dense eigendecomposition is available for short chains.
"""
import logging

import numpy as np
from scipy import sparse
from scipy.linalg import eigh, eigh_tridiagonal

from anticoncentration.config.config import rcParams
from anticoncentration.exceptions import CapacityExceeded, NumericalFailure


logger = logging.getLogger(__name__)

PAULI_X = sparse.csr_matrix(np.array([[0, 1], [1, 0]], dtype=float))
PAULI_Z = sparse.csr_matrix(np.array([[1, 0], [0, -1]], dtype=float))


def _site_operator(operator, site, N):
    left = sparse.identity(2 ** site, format="csr")
    right = sparse.identity(2 ** (N - site - 1), format="csr")
    return sparse.kron(sparse.kron(left, operator), right, format="csr")


def kicked_ising_hamiltonian(N, J, b, h):
    """
    Sparse Hamiltonian b sum X_j + h sum Z_j + J sum Z_j Z_{j+1} (open boundaries), site 0 most significant.
    """
    max_sites = rcParams["simulator.kim_max_sites"]
    if N > max_sites:
        raise CapacityExceeded(f"Kicked Ising chains are limited to simulator.kim_max_sites={max_sites}, got N={N}",
                               bound=max_sites)

    dim = 2 ** N
    hamiltonian = sparse.csr_matrix((dim, dim), dtype=float)

    for site in range(N):
        hamiltonian = hamiltonian + b * _site_operator(PAULI_X, site, N) + h * _site_operator(PAULI_Z, site, N)

    for site in range(N - 1):
        hamiltonian = hamiltonian + J * (_site_operator(PAULI_Z, site, N) @ _site_operator(PAULI_Z, site + 1, N))

    return hamiltonian.tocsr()


def _lanczos_step(operator, vector, time, tol, max_dim):
    """
    Tries to compute exp(-i time H) v in a single Krylov subspace. Returns None when max_dim is not enough.
    """
    beta = np.linalg.norm(vector)
    dim = vector.shape[0]
    max_dim = min(max_dim, dim)

    basis = np.zeros((max_dim + 1, dim), dtype=complex)
    alphas, betas = [], []
    basis[0] = vector / beta

    for m in range(1, max_dim + 1):
        w = operator @ basis[m - 1]
        alphas.append(float(np.real(np.vdot(basis[m - 1], w))))

        # Full reorthogonalization
        w = w - basis[:m].T @ (basis[:m].conj() @ w)
        w = w - basis[:m].T @ (basis[:m].conj() @ w)
        next_beta = float(np.linalg.norm(w))

        if m == 1:
            eigenvalues, eigenvectors = np.array(alphas), np.ones((1, 1))
        else:
            eigenvalues, eigenvectors = eigh_tridiagonal(np.array(alphas), np.array(betas))
        small = eigenvectors @ (np.exp(-1j * time * eigenvalues) * eigenvectors[0].conj())

        error = beta * next_beta * abs(small[-1])
        if next_beta < 1e-14 or error < tol:
            return beta * (basis[:m].T @ small)

        betas.append(next_beta)
        basis[m] = w / next_beta

    return None


def krylov_expm_multiply(operator, vector, time=1.0, tol=None, max_dim=None):
    """
    Computes exp(-i time H) v for a Hermitian sparse H.

    The time interval is split in substeps, halved until the Lanczos error estimate of every substep is below `tol`.

    :param operator:
        Hermitian matrix (sparse or dense) supporting `@`.

    :param vector:
        Complex vector.

    :param time:
        Evolution time.

    :param tol:
        Error target. Defaults to rcParams["simulator.krylov_tol"].

    :param max_dim:
        Largest Krylov subspace. Defaults to rcParams["simulator.krylov_max_dim"].
    """
    tol = rcParams["simulator.krylov_tol"] if tol is None else tol
    max_dim = rcParams["simulator.krylov_max_dim"] if max_dim is None else max_dim

    result = np.asarray(vector, dtype=complex)
    if not np.any(result):
        return result.copy()

    remaining, step = float(time), float(time)
    while remaining > 0:
        step = min(step, remaining)
        updated = _lanczos_step(operator, result, step, tol * step / time, max_dim)

        if updated is None:
            step /= 2
            logger.debug("Krylov substep halved to %.3e", step)
            if step < abs(time) * 1e-8:
                raise NumericalFailure("Krylov exponential did not converge",
                                       diagnostics={"tol": tol, "max_dim": max_dim, "step": step})
            continue

        result = updated
        remaining -= step

    return result


class KickedIsingPropagator:
    """
    Applies U_F = exp(-i H) to states of an N-qubit chain.

    :param method:
        "krylov" (default) or "dense"; the dense path diagonalizes H once and is limited to
        rcParams["simulator.dense_kim_max_sites"] qubits.
    """
    def __init__(self, N, kim_params, method="krylov"):
        J, b, h = kim_params
        self._N = N
        self._hamiltonian = kicked_ising_hamiltonian(N, J, b, h)
        self._method = method
        self._floquet = None

        if method == "dense":
            max_sites = rcParams["simulator.dense_kim_max_sites"]
            if N > max_sites:
                raise CapacityExceeded(f"Dense Floquet operator is limited to {max_sites} qubits, got N={N}",
                                       bound=max_sites)
            energies, vectors = eigh(self._hamiltonian.toarray())
            self._floquet = (vectors * np.exp(-1j * energies)[None, :]) @ vectors.conj().T
        elif method != "krylov":
            raise ValueError(f"Unknown method '{method}'. Allowed: ['krylov', 'dense']")

    @property
    def hamiltonian(self):
        return self._hamiltonian

    @property
    def method(self):
        return self._method

    def step(self, amplitudes):
        if self._floquet is not None:
            return self._floquet @ amplitudes
        return krylov_expm_multiply(self._hamiltonian, amplitudes, 1.0)

    def energy(self, amplitudes):
        return float(np.real(np.vdot(amplitudes, self._hamiltonian @ amplitudes)))
