import numpy as np


class PermutationElement:
    """
    Element of the symmetric group S_k in one-line notation: `mapping[i]` is the image of i.
    """
    def __init__(self, mapping):
        mapping = tuple(int(i) for i in mapping)

        if sorted(mapping) != list(range(len(mapping))):
            raise ValueError(f"{mapping} is not a bijection on {{0, ..., {len(mapping) - 1}}}")

        self._mapping = mapping

    @classmethod
    def identity(cls, k):
        return cls(range(k))

    @classmethod
    def transposition(cls, k, i, j):
        mapping = list(range(k))
        mapping[i], mapping[j] = mapping[j], mapping[i]
        return cls(mapping)

    @property
    def mapping(self):
        return self._mapping

    @property
    def k(self):
        return len(self._mapping)

    def inverse(self):
        inverse = [0] * self.k
        for i, image in enumerate(self._mapping):
            inverse[image] = i
        return PermutationElement(inverse)

    def compose(self, other):
        """
        Returns self∘other, i.e. the permutation i -> self(other(i)).
        """
        if other.k != self.k:
            raise ValueError(f"Cannot compose elements of S_{self.k} and S_{other.k}")
        return PermutationElement(self._mapping[i] for i in other.mapping)

    def cycles(self):
        seen = [False] * self.k
        count = 0

        for start in range(self.k):
            if seen[start]:
                continue
            count += 1
            i = start
            while not seen[i]:
                seen[i] = True
                i = self._mapping[i]

        return count

    def fixed_points(self):
        return sum(1 for i, image in enumerate(self._mapping) if i == image)

    def as_pairing(self):
        """
        Embeds the permutation as the pairing {(i, k + sigma(i))} of 2k points.
        """
        from anticoncentration.commutant.pairing_element import PairingElement
        return PairingElement((i, self.k + image) for i, image in enumerate(self._mapping))

    def to_array(self):
        return np.array(self._mapping, dtype=int)

    def __eq__(self, other):
        return isinstance(other, PermutationElement) and self._mapping == other._mapping

    def __lt__(self, other):
        return self._mapping < other._mapping

    def __hash__(self):
        return hash(("perm", self._mapping))

    def __repr__(self):
        return f"PermutationElement({list(self._mapping)})"

    def __str__(self):
        return self.__repr__()


def perm_stats(sigma, tau):
    """
    Combinatorial statistics of a pair of permutations.

    :param sigma:
        PermutationElement.

    :param tau:
        PermutationElement of the same S_k.

    :return:
        Tuple (cycles, distance, fixed_points): the number of cycles of sigma^-1 tau, the transposition distance
        k - cycles, and the number of fixed points of sigma tau^-1.
    """
    if sigma.k != tau.k:
        raise ValueError(f"Permutations belong to different groups: S_{sigma.k} and S_{tau.k}")

    cycles = sigma.inverse().compose(tau).cycles()
    fixed_points = sigma.compose(tau.inverse()).fixed_points()
    return cycles, sigma.k - cycles, fixed_points
