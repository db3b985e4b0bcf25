import numpy as np


class GramMatrix:
    """
    Overlaps G_{sigma,tau} = q^{loops(sigma, tau)} between the vectorized commutant elements at local dimension q.
    """
    def __init__(self, basis, q):
        q = int(q)
        if q < 1:
            raise ValueError(f"Local dimension must be >= 1, got {q}")

        self._basis = basis
        self._q = q
        self._exponents = basis.loop_counts()
        self._entries = np.power(float(q), self._exponents)
        self._entries.setflags(write=False)

    @property
    def basis(self):
        return self._basis

    @property
    def q(self):
        return self._q

    @property
    def entries(self):
        return self._entries

    @property
    def exponents(self):
        """
        Integer loop counts; `entries == q ** exponents`.
        """
        return self._exponents

    def exact_entries(self):
        """
        Entries as Python integers (nested lists).
        """
        return [[self._q ** int(e) for e in row] for row in self._exponents]

    def exact_row_sums(self):
        """
        Row sums computed in integer arithmetic.
        """
        k = self._basis.k
        sums = []
        for row in self._exponents:
            histogram = np.bincount(row, minlength=k + 1)
            sums.append(sum(int(count) * self._q ** power for power, count in enumerate(histogram)))
        return sums

    def expected_row_sum(self):
        """
        prod_{m<k} (q + f_E(m)).
        """
        result = 1
        for m in range(self._basis.k):
            result *= self._q + self._basis.ensemble.f(m)
        return result

    def __len__(self):
        return len(self._basis)

    def __repr__(self):
        return f"GramMatrix({self._basis.ensemble}, k={self._basis.k}, q={self._q}; {len(self)}x{len(self)})"

    def __str__(self):
        return self.__repr__()


def gram_matrix(basis, q):
    """
    Builds the Gram matrix of a commutant basis.

    :param basis:
        CommutantBasis as returned by :func:`enumerate_commutant`.

    :param q:
        Local dimension (positive integer).
    """
    return GramMatrix(basis, q)
