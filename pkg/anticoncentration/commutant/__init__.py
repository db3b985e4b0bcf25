"""
The commutant subpackage enumerates the k-replica commutants of the unitary (permutations of S_k) and orthogonal
(Brauer pairings of 2k points) groups and builds their Gram and Weingarten matrices.

Every matrix is laid out in the canonical (lexicographic) order of :func:`enumerate_commutant`.
"""
from anticoncentration.commutant.permutation_element import PermutationElement, perm_stats
from anticoncentration.commutant.pairing_element import PairingElement
from anticoncentration.commutant.commutant_basis import CommutantBasis, enumerate_commutant
from anticoncentration.commutant.gram_matrix import GramMatrix, gram_matrix
from anticoncentration.commutant.weingarten_matrix import WeingartenMatrix, weingarten_matrix

__all__ = [
    "PermutationElement",
    "PairingElement",
    "CommutantBasis",
    "GramMatrix",
    "WeingartenMatrix",
    "enumerate_commutant",
    "perm_stats",
    "gram_matrix",
    "weingarten_matrix",
]
