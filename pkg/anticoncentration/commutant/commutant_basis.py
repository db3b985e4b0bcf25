import logging
from functools import lru_cache
from itertools import permutations

import numpy as np

from anticoncentration.config.config import rcParams
from anticoncentration.ensemble import EnsembleKind
from anticoncentration.exceptions import CapacityExceeded
from anticoncentration.commutant.pairing_element import PairingElement
from anticoncentration.commutant.permutation_element import PermutationElement


logger = logging.getLogger(__name__)


class CommutantBasis:
    """
    Canonically ordered elements of Comm_k(E): S_k for Unitary, the Brauer pairings of 2k points for Orthogonal.

    Instances are immutable and shared (see :func:`enumerate_commutant`).
    """
    def __init__(self, ensemble, k, elements):
        self._ensemble = EnsembleKind.parse(ensemble)
        self._k = int(k)
        self._elements = tuple(elements)
        self._index = {element: i for i, element in enumerate(self._elements)}

        if len(self._elements) != self._ensemble.commutant_size(self._k):
            raise ValueError(f"Expected {self._ensemble.commutant_size(self._k)} elements, got {len(self._elements)}")

    @property
    def ensemble(self):
        return self._ensemble

    @property
    def k(self):
        return self._k

    @property
    def elements(self):
        return self._elements

    def index(self, element):
        """
        Position of `element` in the basis. Permutations are also accepted by the orthogonal basis, through their
        pairing embedding.
        """
        if isinstance(element, PermutationElement) and self._ensemble is EnsembleKind.ORTHOGONAL:
            element = element.as_pairing()

        try:
            return self._index[element]
        except KeyError:
            raise ValueError(f"{element} does not belong to Comm_{self._k}({self._ensemble})") from None

    @property
    def identity_index(self):
        return self.index(PermutationElement.identity(self._k))

    def loop_counts(self):
        """
        Integer matrix L with G = q^L for every local dimension q. Read-only and cached.
        """
        return _loop_counts(self._ensemble, self._k)

    def __len__(self):
        return len(self._elements)

    def __iter__(self):
        return iter(self._elements)

    def __getitem__(self, item):
        return self._elements[item]

    def __repr__(self):
        return f"CommutantBasis({self._ensemble}, k={self._k}; {len(self)} elements)"

    def __str__(self):
        return self.__repr__()


def _enumerate_pairings(points):
    if not points:
        yield ()
        return

    first, rest = points[0], points[1:]
    for j, partner in enumerate(rest):
        remaining = rest[:j] + rest[j + 1:]
        for tail in _enumerate_pairings(remaining):
            yield ((first, partner),) + tail


@lru_cache(maxsize=None)
def _build_basis(ensemble, k):
    if ensemble is EnsembleKind.UNITARY:
        elements = [PermutationElement(p) for p in permutations(range(k))]
    else:
        elements = [PairingElement(p) for p in _enumerate_pairings(tuple(range(2 * k)))]

    elements.sort()
    logger.debug("Enumerated %d elements of Comm_%d(%s)", len(elements), k, ensemble)
    return CommutantBasis(ensemble, k, elements)


def enumerate_commutant(ensemble, k):
    """
    Enumerates the k-commutant of the given ensemble.

    :param ensemble:
        EnsembleKind (or its name).

    :param k:
        Replica order, 1 <= k <= rcParams["commutant.max_k"].

    :return:
        CommutantBasis with k! permutations (Unitary) or (2k-1)!! pairings (Orthogonal), in lexicographic order.
    """
    ensemble = EnsembleKind.parse(ensemble)
    k = int(k)
    max_k = rcParams["commutant.max_k"]

    if k < 1:
        raise ValueError(f"Replica order must be >= 1, got {k}")

    if k > max_k:
        raise CapacityExceeded(f"Replica order k={k} exceeds the configured maximum commutant.max_k={max_k}",
                               bound=max_k)

    return _build_basis(ensemble, k)


def _unitary_loop_counts(k):
    perms = np.array(list(permutations(range(k))), dtype=np.int64)
    inverses = np.argsort(perms, axis=1)

    # Cycle count of every permutation, keyed by its base-k encoding
    weights = k ** np.arange(k, dtype=np.int64)
    cycles_by_key = np.zeros(k ** k, dtype=np.int64)
    for perm in perms:
        cycles_by_key[int(perm @ weights)] = PermutationElement(perm).cycles()

    # composed[s, t, i] = sigma_s^-1(tau_t(i))
    composed = inverses[:, perms]
    return cycles_by_key[composed @ weights]


def _orthogonal_loop_counts(basis_elements, k):
    partners = np.array([element.partner() for element in basis_elements], dtype=np.int64)
    n = len(partners)
    counts = np.empty((n, n), dtype=np.int64)
    points = np.arange(2 * k)

    for s in range(n):
        labels = np.tile(points, (n, 1))
        mine = np.broadcast_to(partners[s], (n, 2 * k))
        for _ in range(2 * k):
            labels = np.minimum(labels, np.take_along_axis(labels, mine, axis=1))
            labels = np.minimum(labels, np.take_along_axis(labels, partners, axis=1))
        counts[s] = np.count_nonzero(labels == points, axis=1)

    return counts


@lru_cache(maxsize=None)
def _loop_counts(ensemble, k):
    if ensemble is EnsembleKind.UNITARY:
        counts = _unitary_loop_counts(k)
    else:
        counts = _orthogonal_loop_counts(_build_basis(ensemble, k).elements, k)

    counts.setflags(write=False)
    return counts
