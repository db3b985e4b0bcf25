import numpy as np


class PairingElement:
    """
    Perfect matching of the 2k points {0, ..., 2k-1}, stored as k sorted pairs (a, b) with a < b.

    Points 0..k-1 are the "ket" legs and k..2k-1 the "bra" legs of the k replicas.
    """
    def __init__(self, pairs):
        pairs = tuple(sorted(tuple(sorted((int(a), int(b)))) for a, b in pairs))
        points = [p for pair in pairs for p in pair]

        if sorted(points) != list(range(2 * len(pairs))):
            raise ValueError(f"{pairs} is not a perfect matching of {2 * len(pairs)} points")

        self._pairs = pairs

    @property
    def pairs(self):
        return self._pairs

    @property
    def k(self):
        return len(self._pairs)

    def partner(self):
        """
        Array p with p[a] = b for every pair (a, b).
        """
        partner = np.empty(2 * self.k, dtype=int)
        for a, b in self._pairs:
            partner[a] = b
            partner[b] = a
        return partner

    def loops(self, other):
        """
        Number of closed loops in the union diagram of the two matchings.
        """
        if other.k != self.k:
            raise ValueError(f"Cannot compare pairings of {2 * self.k} and {2 * other.k} points")

        mine, theirs = self.partner(), other.partner()
        seen = np.zeros(2 * self.k, dtype=bool)
        count = 0

        for start in range(2 * self.k):
            if seen[start]:
                continue
            count += 1
            point = start
            while not seen[point]:
                seen[point] = True
                point = mine[point]
                seen[point] = True
                point = theirs[point]

        return count

    def __eq__(self, other):
        return isinstance(other, PairingElement) and self._pairs == other._pairs

    def __lt__(self, other):
        return self._pairs < other._pairs

    def __hash__(self):
        return hash(("pairing", self._pairs))

    def __repr__(self):
        return f"PairingElement({[list(p) for p in self._pairs]})"

    def __str__(self):
        return self.__repr__()
