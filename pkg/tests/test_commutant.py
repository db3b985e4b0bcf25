import itertools
import unittest

import numpy as np

from anticoncentration.commutant import (PermutationElement, PairingElement, enumerate_commutant, perm_stats,
                                         gram_matrix, weingarten_matrix)
from anticoncentration.config.config import rcParams
from anticoncentration.ensemble import EnsembleKind
from anticoncentration.exceptions import CapacityExceeded


class TestCommutantBasis(unittest.TestCase):

    def test_basis_sizes(self):
        """
        Unitary commutants have k! permutations and orthogonal ones (2k-1)!! pairings.
        """
        self.assertEqual(len(enumerate_commutant(EnsembleKind.UNITARY, 1)), 1)
        self.assertEqual(len(enumerate_commutant(EnsembleKind.UNITARY, 3)), 6)
        self.assertEqual(len(enumerate_commutant("Orthogonal", 2)), 3)
        self.assertEqual(len(enumerate_commutant("Orthogonal", 4)), 105)
        self.assertEqual(enumerate_commutant(EnsembleKind.UNITARY, 1)[0], PermutationElement.identity(1))

    def test_canonical_order_is_lexicographic(self):
        basis = enumerate_commutant(EnsembleKind.UNITARY, 3)
        self.assertEqual([e.mapping for e in basis], sorted(itertools.permutations(range(3))))
        self.assertEqual(basis.identity_index, 0)

    def test_orthogonal_basis_contains_permutations(self):
        basis = enumerate_commutant(EnsembleKind.ORTHOGONAL, 3)

        for mapping in itertools.permutations(range(3)):
            element = PermutationElement(mapping)
            self.assertEqual(basis[basis.index(element)], element.as_pairing())

    def test_capacity_and_argument_errors(self):
        with self.assertRaises(CapacityExceeded) as context:
            enumerate_commutant(EnsembleKind.UNITARY, rcParams["commutant.max_k"] + 1)

        self.assertEqual(context.exception.bound, rcParams["commutant.max_k"])

        with self.assertRaises(ValueError):
            enumerate_commutant(EnsembleKind.UNITARY, 0)


class TestPermStats(unittest.TestCase):

    def test_examples(self):
        identity = PermutationElement.identity(3)
        swap = PermutationElement.transposition(3, 0, 1)

        self.assertEqual(perm_stats(identity, identity), (3, 0, 3))
        self.assertEqual(perm_stats(identity, swap), (2, 1, 1))

    def test_distance_two_count(self):
        basis = enumerate_commutant(EnsembleKind.UNITARY, 3)
        identity = PermutationElement.identity(3)
        self.assertEqual(sum(1 for tau in basis if perm_stats(identity, tau)[1] == 2), 2)

    def test_mismatched_groups(self):
        with self.assertRaises(ValueError):
            perm_stats(PermutationElement.identity(2), PermutationElement.identity(3))

    def test_distance_is_a_metric(self):
        """
        The transposition distance is zero only on the diagonal, symmetric and satisfies the triangle inequality.
        """
        for k in range(1, 5):
            elements = list(enumerate_commutant(EnsembleKind.UNITARY, k))
            distance = {(a, b): perm_stats(a, b)[1] for a in elements for b in elements}

            for a in elements:
                for b in elements:
                    self.assertEqual(distance[a, b] == 0, a == b)
                    self.assertEqual(distance[a, b], distance[b, a])

                    for c in elements:
                        self.assertLessEqual(distance[a, c], distance[a, b] + distance[b, c])


class TestPairingElement(unittest.TestCase):

    def test_loops_of_permutation_embeddings_are_cycles(self):
        """
        Between embedded permutations, the loop count equals the cycle count of sigma^-1 tau.
        """
        for sigma in itertools.permutations(range(3)):
            for tau in itertools.permutations(range(3)):
                a, b = PermutationElement(sigma), PermutationElement(tau)
                self.assertEqual(a.as_pairing().loops(b.as_pairing()), perm_stats(a, b)[0])

    def test_self_loops(self):
        pairing = PairingElement([(0, 1), (2, 3)])
        self.assertEqual(pairing.loops(pairing), 2)
        self.assertEqual(pairing.partner().tolist(), [1, 0, 3, 2])


class TestGramMatrix(unittest.TestCase):

    def test_small_unitary_examples(self):
        np.testing.assert_array_equal(gram_matrix(enumerate_commutant("Unitary", 2), 2).entries, [[4, 2], [2, 4]])
        np.testing.assert_array_equal(gram_matrix(enumerate_commutant("Unitary", 1), 5).entries, [[5]])
        self.assertEqual(gram_matrix(enumerate_commutant("Unitary", 2), 2).exact_row_sums(), [6, 6])

    def test_row_sums(self):
        """
        Every row sums to prod_{m<k} (q + f(m)) in integer arithmetic, for both ensembles.
        """
        for ensemble in EnsembleKind:
            for k in range(1, 5):
                basis = enumerate_commutant(ensemble, k)
                for q in (2, 3, 4):
                    gram = gram_matrix(basis, q)
                    expected = gram.expected_row_sum()
                    self.assertEqual(gram.exact_row_sums(), [expected] * len(basis))

    def test_symmetric_positive_semidefinite(self):
        for ensemble in EnsembleKind:
            gram = gram_matrix(enumerate_commutant(ensemble, 3), 2).entries
            np.testing.assert_array_equal(gram, gram.T)
            self.assertGreater(np.linalg.eigvalsh(gram).min(), -1e-9 * np.abs(gram).max())


class TestWeingartenMatrix(unittest.TestCase):

    def test_small_unitary_examples(self):
        weingarten = weingarten_matrix(enumerate_commutant("Unitary", 2), 2)
        np.testing.assert_allclose(weingarten.entries, [[1 / 3, -1 / 6], [-1 / 6, 1 / 3]], atol=1e-12)
        np.testing.assert_allclose(weingarten.entries.sum(axis=1), 1 / 6, atol=1e-12)

        for q in (1, 2, 7):
            np.testing.assert_allclose(weingarten_matrix(enumerate_commutant("Unitary", 1), q).entries, [[1 / q]])

    def test_row_sums_and_pseudo_inverse(self):
        """
        Row sums equal prod (q + f(m))^{-1} and G W G = G, including the rank-deficient case q < k.
        """
        for ensemble in EnsembleKind:
            for k in range(1, 5):
                basis = enumerate_commutant(ensemble, k)
                for q in (2, 3, 4):
                    weingarten = weingarten_matrix(basis, q)
                    g = weingarten.gram.entries
                    w = weingarten.entries

                    np.testing.assert_allclose(w.sum(axis=1), weingarten.expected_row_sum(), rtol=0, atol=1e-10)
                    np.testing.assert_allclose(g @ w @ g, g, rtol=0, atol=1e-9 * np.abs(g).max())

    def test_singular_rank(self):
        weingarten = weingarten_matrix(enumerate_commutant("Unitary", 3), 2)
        self.assertLess(weingarten.rank, 6)
        self.assertGreater(weingarten.rank, 0)

    def test_largest_unitary_order(self):
        basis = enumerate_commutant(EnsembleKind.UNITARY, 6)
        weingarten = weingarten_matrix(basis, 8)
        self.assertEqual(len(weingarten), 720)
        np.testing.assert_allclose(weingarten.entries.sum(axis=1), weingarten.expected_row_sum(), rtol=1e-8)


if __name__ == '__main__':
    unittest.main()
