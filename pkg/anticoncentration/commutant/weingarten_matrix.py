import logging

import numpy as np
from scipy import linalg

from anticoncentration.config.config import rcParams
from anticoncentration.exceptions import NumericalFailure
from anticoncentration.commutant.gram_matrix import GramMatrix


logger = logging.getLogger(__name__)


class WeingartenMatrix:
    """
    Moore-Penrose pseudo-inverse of a Gram matrix, computed by SVD with a relative cutoff.
    """
    def __init__(self, gram, entries, rank, condition):
        self._gram = gram
        self._entries = entries
        self._entries.setflags(write=False)
        self._rank = rank
        self._condition = condition

    @property
    def basis(self):
        return self._gram.basis

    @property
    def q(self):
        return self._gram.q

    @property
    def gram(self):
        return self._gram

    @property
    def entries(self):
        return self._entries

    @property
    def rank(self):
        """
        Number of singular values kept by the cutoff.
        """
        return self._rank

    @property
    def condition(self):
        """
        Ratio between the largest and the smallest kept singular values.
        """
        return self._condition

    def expected_row_sum(self):
        return 1.0 / self._gram.expected_row_sum()

    def __len__(self):
        return len(self._gram)

    def __repr__(self):
        return f"WeingartenMatrix({self.basis.ensemble}, k={self.basis.k}, q={self.q}; rank {self._rank}/{len(self)})"

    def __str__(self):
        return self.__repr__()


def weingarten_matrix(basis, q, rcond=None):
    """
    Builds the Weingarten matrix of a commutant basis.

    :param basis:
        CommutantBasis as returned by :func:`enumerate_commutant`.

    :param q:
        Local dimension. When q < k the Gram matrix is singular and the pseudo-inverse is returned.

    :param rcond:
        Singular values below `rcond * sigma_max` are discarded. Defaults to rcParams["commutant.pinv_rcond"].
    """
    rcond = rcParams["commutant.pinv_rcond"] if rcond is None else rcond
    gram = basis if isinstance(basis, GramMatrix) else GramMatrix(basis, q)
    g = gram.entries

    try:
        u, s, vh = linalg.svd(g)
    except (linalg.LinAlgError, ValueError) as e:
        raise NumericalFailure(f"SVD of the Gram matrix failed: {e}", diagnostics={"q": gram.q}) from e

    keep = s > rcond * s[0]
    rank = int(np.count_nonzero(keep))
    condition = float(s[0] / s[keep][-1]) if rank else float("inf")

    inverse = (vh[keep].T / s[keep]) @ u[:, keep].T

    residual = linalg.norm(g @ inverse @ g - g) / linalg.norm(g)
    if not np.isfinite(residual) or residual > rcParams["commutant.pinv_check_tol"]:
        raise NumericalFailure(f"Pseudo-inverse of the Gram matrix is inaccurate (relative residual {residual:.3e})",
                               diagnostics={"condition": condition, "rank": rank, "residual": float(residual),
                                            "q": gram.q, "k": gram.basis.k})

    if rank < len(gram):
        logger.debug("Gram matrix at q=%d, k=%d is singular: rank %d of %d", gram.q, gram.basis.k, rank, len(gram))

    return WeingartenMatrix(gram, inverse, rank, condition)
