import numpy as np

from anticoncentration.config.config import rcParams
from anticoncentration.exceptions import CapacityExceeded


def check_capacity(N, d):
    """
    Raises CapacityExceeded when d^N exceeds rcParams["simulator.max_amplitudes"].
    """
    cap = rcParams["simulator.max_amplitudes"]
    if d ** N > cap:
        raise CapacityExceeded(f"A state of N={N} qudits of dimension d={d} needs {d ** N} amplitudes, above the "
                               f"simulator.max_amplitudes cap of {cap}", bound=cap)


class PureState:
    """
    Statevector of N qudits of local dimension d. Site 0 is the most significant digit of the basis index.
    """
    def __init__(self, N, d, amplitudes):
        check_capacity(N, d)
        amplitudes = np.asarray(amplitudes, dtype=complex).reshape(-1)

        if amplitudes.shape[0] != d ** N:
            raise ValueError(f"Expected {d ** N} amplitudes, got {amplitudes.shape[0]}")

        self._N = int(N)
        self._d = int(d)
        self._amplitudes = amplitudes

    @classmethod
    def zero(cls, N, d=2):
        check_capacity(N, d)
        amplitudes = np.zeros(d ** N, dtype=complex)
        amplitudes[0] = 1
        return cls(N, d, amplitudes)

    @classmethod
    def uniform(cls, N, d=2):
        check_capacity(N, d)
        return cls(N, d, np.full(d ** N, 1 / np.sqrt(d ** N), dtype=complex))

    @classmethod
    def product(cls, local_states):
        """
        Builds the tensor product of a list of single-site vectors.
        """
        local_states = [np.asarray(s, dtype=complex) for s in local_states]
        d = local_states[0].shape[0]
        check_capacity(len(local_states), d)

        amplitudes = np.ones(1, dtype=complex)
        for local in local_states:
            amplitudes = np.kron(amplitudes, local)
        return cls(len(local_states), d, amplitudes)

    @property
    def N(self):
        return self._N

    @property
    def d(self):
        return self._d

    @property
    def D(self):
        return self._d ** self._N

    @property
    def amplitudes(self):
        return self._amplitudes

    def copy(self):
        return PureState(self._N, self._d, self._amplitudes.copy())

    def norm(self):
        return float(np.linalg.norm(self._amplitudes))

    def probabilities(self):
        return np.abs(self._amplitudes) ** 2

    def apply(self, gate, first_site, n_sites):
        """
        Applies in place a gate acting on the consecutive sites first_site, ..., first_site + n_sites - 1.

        :param gate:
            Matrix of shape (d^n_sites, d^n_sites).
        """
        if first_site < 0 or first_site + n_sites > self._N:
            raise ValueError(f"Sites {first_site}..{first_site + n_sites - 1} out of range for N={self._N}")

        block = self._d ** n_sites
        view = self._amplitudes.reshape(self._d ** first_site, block, -1)
        self._amplitudes = np.einsum("ab,xbz->xaz", gate, view).reshape(-1)
        return self

    def half_chain_purity(self):
        """
        tr(rho_A^2) for A the first N // 2 sites.
        """
        left = self._d ** (self._N // 2)
        matrix = self._amplitudes.reshape(left, -1)
        reduced = matrix @ matrix.conj().T
        return float(np.real(np.vdot(reduced, reduced)))

    def __repr__(self):
        return f"PureState(N={self._N}, d={self._d}; norm={self.norm():.12f})"

    def __str__(self):
        return self.__repr__()
