from enum import Enum

import numpy as np
from scipy.special import factorial2, factorial


class EnsembleKind(Enum):
    """
    Symmetry class of the local random gates.
    """
    UNITARY = "Unitary"
    ORTHOGONAL = "Orthogonal"

    @classmethod
    def parse(cls, value):
        """
        Accepts an EnsembleKind or a case-insensitive name ("unitary", "U", "Orthogonal", "o", ...).
        """
        if isinstance(value, cls):
            return value

        text = str(value).strip().lower()
        if text in ("unitary", "u"):
            return cls.UNITARY
        if text in ("orthogonal", "o"):
            return cls.ORTHOGONAL

        raise ValueError(f"'{value}' is not a valid ensemble. Allowed: {[e.value for e in cls]}")

    def f(self, m):
        """
        Shift f(m) appearing in the Haar moments: m for Unitary, 2m for Orthogonal.
        """
        return m if self is EnsembleKind.UNITARY else 2 * m

    def shifts(self, k):
        return np.array([self.f(m) for m in range(k)], dtype=float)

    def commutant_size(self, k):
        if self is EnsembleKind.UNITARY:
            return int(factorial(k, exact=True))
        return int(factorial2(2 * k - 1, exact=True)) if k > 0 else 1

    def porter_thomas_moment(self, k):
        """
        k-th moment of the infinite-dimensional Porter-Thomas law: k! (Unitary) or (2k-1)!! (Orthogonal).
        """
        return float(self.commutant_size(k))

    def alpha_exponent(self, k):
        """
        Coefficient c such that the leading correction to the k-th moment is e^{c alpha}.
        """
        c = k * (k - 1) / 2
        return c if self is EnsembleKind.UNITARY else 2 * c

    @property
    def is_real(self):
        return self is EnsembleKind.ORTHOGONAL

    def __str__(self):
        return self.value
