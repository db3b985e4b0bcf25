import logging
import math

import numpy as np
from scipy import linalg

from anticoncentration.config.config import rcParams
from anticoncentration.exceptions import CapacityExceeded, NumericalFailure


logger = logging.getLogger(__name__)


class ReplicaBoundaryState:
    """
    Interface of the N-site replica vector evolved layer by layer in the time direction.
    """

    def __init__(self, N, local_dimension):
        if N < 2 or N % 2:
            raise ValueError(f"The replica network needs an even N >= 2, got {N}")

        self._N = N
        self._c = local_dimension

    @property
    def N(self):
        return self._N

    @property
    def local_dimension(self):
        return self._c

    @property
    def method(self):
        raise NotImplementedError()

    @property
    def trunc_error(self):
        """
        Accumulated discarded weight of the truncations (0 for exact contractions).
        """
        raise NotImplementedError()

    def apply_pair(self, matrix, site):
        """
        Applies a (c^2, c^2) matrix to the coefficients of sites (site, site + 1).
        """
        raise NotImplementedError()

    def close(self, site_vectors):
        """
        Contracts every site with its vector and returns the resulting scalar.
        """
        raise NotImplementedError()

    def __str__(self):
        return self.__repr__()


class ExactReplicaState(ReplicaBoundaryState):
    """
    Dense vector of c^N coefficients.
    """
    def __init__(self, N, local_dimension, pair_vector):
        super().__init__(N, local_dimension)
        cap = rcParams["replica.exact_max_entries"]
        entries = local_dimension ** N

        if entries > cap:
            raise CapacityExceeded(f"Exact replica contraction needs {entries} entries, above "
                                   f"replica.exact_max_entries={cap}; use the tensor_train method instead", bound=cap)

        vector = np.ones(1)
        for _ in range(N // 2):
            vector = np.kron(vector, pair_vector)
        self._vector = vector

    @property
    def method(self):
        return "exact"

    @property
    def trunc_error(self):
        return 0.0

    @property
    def vector(self):
        return self._vector

    def apply_pair(self, matrix, site):
        c = self._c
        view = self._vector.reshape(c ** site, c * c, -1)
        self._vector = np.einsum("ab,xbz->xaz", matrix, view).reshape(-1)

    def close(self, site_vectors):
        tensor = self._vector.reshape((self._c,) * self._N)
        for vector in site_vectors:
            tensor = np.tensordot(vector, tensor, axes=(0, 0))
        return float(tensor)

    def reflected(self):
        """
        Copy with the site order reversed.
        """
        copy = ExactReplicaState.__new__(ExactReplicaState)
        ReplicaBoundaryState.__init__(copy, self._N, self._c)
        copy._vector = self._vector.reshape((self._c,) * self._N).transpose(tuple(range(self._N))[::-1]).reshape(-1)
        return copy

    def __repr__(self):
        return f"ExactReplicaState(N={self._N}; {self._vector.size} entries)"


class TensorTrainReplicaState(ReplicaBoundaryState):
    """
    Tensor train of site tensors (left bond, c, right bond) in mixed canonical form: sites left of the center are
    left-isometric, sites right of it right-isometric, so the singular values of a two-site update at the center are
    the Schmidt coefficients of the whole vector. Singular values below `tol * s_max` are discarded and at most
    `max_bond` are kept. The overall scale is kept apart in log-space.
    """
    def __init__(self, N, local_dimension, pair_vector, tol=None, max_bond=None):
        super().__init__(N, local_dimension)
        self._tol = rcParams["replica.tt_tol"] if tol is None else tol
        self._max_bond = rcParams["replica.tt_max_bond"] if max_bond is None else max_bond
        self._trunc_error = 0.0
        self._log_scale = 0.0

        if self._tol < 0:
            raise ValueError(f"The truncation tolerance must be non-negative, got {self._tol}")

        if self._max_bond < 1:
            raise ValueError(f"The bond cap must be >= 1, got {self._max_bond}")

        c = local_dimension
        pair = pair_vector.reshape(c, c)
        left, s, right = linalg.svd(pair)
        keep = max(1, int(np.count_nonzero(s > s[0] * 1e-14)))
        left_tensor = (left[:, :keep] * s[:keep]).reshape(1, c, keep)
        right_tensor = right[:keep].reshape(keep, c, 1)

        self._tensors = []
        for _ in range(N // 2):
            self._tensors.extend([left_tensor.copy(), right_tensor.copy()])

        # A left-to-right QR sweep makes every site but the last left-isometric
        self._center = 0
        self._move_center(N - 1)

    @property
    def method(self):
        return "tensor_train"

    @property
    def trunc_error(self):
        return self._trunc_error

    @property
    def center(self):
        return self._center

    @property
    def bond_dimensions(self):
        return [tensor.shape[2] for tensor in self._tensors[:-1]]

    @property
    def tensors(self):
        """
        Site tensors (left bond, c, right bond); the one at `center` carries the unit norm, `log_scale` the rest.
        """
        return list(self._tensors)

    @property
    def log_scale(self):
        return self._log_scale

    def _normalize_center(self):
        tensor = self._tensors[self._center]
        norm = linalg.norm(tensor)

        if norm == 0 or not np.isfinite(norm):
            raise NumericalFailure("Replica tensor train collapsed to zero or non-finite values",
                                   diagnostics={"site": self._center, "trunc_error": self._trunc_error})

        self._tensors[self._center] = tensor / norm
        self._log_scale += math.log(norm)

    def _move_center(self, target):
        tensors = self._tensors

        while self._center < target:
            site = self._center
            chi_left, c, chi_right = tensors[site].shape
            q, r = linalg.qr(tensors[site].reshape(chi_left * c, chi_right), mode="economic")
            tensors[site] = q.reshape(chi_left, c, q.shape[1])
            tensors[site + 1] = np.tensordot(r, tensors[site + 1], axes=(1, 0))
            self._center += 1

        while self._center > target:
            site = self._center
            chi_left, c, chi_right = tensors[site].shape
            q, r = linalg.qr(tensors[site].reshape(chi_left, c * chi_right).T, mode="economic")
            tensors[site] = q.T.reshape(q.shape[1], c, chi_right)
            tensors[site - 1] = np.tensordot(tensors[site - 1], r.T, axes=(2, 0))
            self._center -= 1

        self._normalize_center()

    def apply_pair(self, matrix, site):
        c = self._c
        self._move_center(site)

        left, right = self._tensors[site], self._tensors[site + 1]
        chi_left, chi_right = left.shape[0], right.shape[2]

        theta = np.tensordot(left, right, axes=(2, 0)).reshape(chi_left, c * c, chi_right)
        theta = np.einsum("ab,xbz->xaz", matrix, theta).reshape(chi_left * c, c * chi_right)

        try:
            u, s, vh = linalg.svd(theta, full_matrices=False)
        except (linalg.LinAlgError, ValueError) as e:
            raise NumericalFailure(f"SVD failed while contracting sites {site}, {site + 1}: {e}",
                                   diagnostics={"site": site, "trunc_error": self._trunc_error}) from e

        if s.size == 0 or s[0] == 0 or not np.all(np.isfinite(s)):
            raise NumericalFailure("Replica tensor train collapsed to zero or non-finite values",
                                   diagnostics={"site": site, "trunc_error": self._trunc_error})

        keep = int(np.count_nonzero(s > self._tol * s[0]))
        keep = max(1, min(keep, self._max_bond))
        total = float(np.sum(s ** 2))
        discarded = float(np.sum(s[keep:] ** 2)) / total
        self._trunc_error += discarded

        if keep == self._max_bond and discarded > rcParams["replica.tt_max_discarded"]:
            raise NumericalFailure(f"Truncation at the bond cap {self._max_bond} discards {discarded:.3e} of the "
                                   f"weight", diagnostics={"site": site, "discarded": discarded,
                                                           "trunc_error": self._trunc_error})

        self._tensors[site] = u[:, :keep].reshape(chi_left, c, keep)
        self._tensors[site + 1] = (s[:keep, None] * vh[:keep]).reshape(keep, c, chi_right)
        self._center = site + 1
        self._normalize_center()

    def close(self, site_vectors):
        environment = np.ones(1)
        log_scale = self._log_scale

        for tensor, vector in zip(self._tensors, site_vectors):
            environment = environment @ np.tensordot(tensor, vector, axes=(1, 0))
            norm = np.max(np.abs(environment))
            if norm == 0:
                return 0.0
            environment = environment / norm
            log_scale += math.log(norm)

        return float(environment[0]) * math.exp(log_scale)

    def __repr__(self):
        return f"TensorTrainReplicaState(N={self._N}; center {self._center}; " \
               f"max bond {max(self.bond_dimensions, default=1)}; trunc_error={self._trunc_error:.3e})"
