from functools import lru_cache

import numpy as np

from anticoncentration.commutant import enumerate_commutant, gram_matrix, weingarten_matrix
from anticoncentration.commutant.permutation_element import PermutationElement
from anticoncentration.ensemble import EnsembleKind


REPLICAS = 2


class ReplicaGateTensor:
    """
    Two-replica averages of a Haar two-site gate, written in the local commutant basis (2 states per site for
    Unitary, 3 for Orthogonal).

    The averaged state is stored through its coefficients c on product commutant elements. A gate maps the
    coefficients of a pair of sites as
    c'_{(s,s)} = sum_{tau, p1, p2} Wg_{s,tau}(d^2) G_{tau,p1}(d) G_{tau,p2}(d) c_{p1,p2}.
    """
    def __init__(self, ensemble, d=2):
        self._ensemble = EnsembleKind.parse(ensemble)
        self._d = int(d)
        self._basis = enumerate_commutant(self._ensemble, REPLICAS)

        gram = gram_matrix(self._basis, self._d).entries
        weingarten = weingarten_matrix(self._basis, self._d ** 2).entries
        c = len(self._basis)

        # bulk[s, s', p1, p2] = delta_{s s'} sum_tau Wg[s, tau] G[tau, p1] G[tau, p2]
        reduced = np.einsum("st,tp,tq->spq", weingarten, gram, gram)
        bulk = np.zeros((c, c, c, c))
        for s in range(c):
            bulk[s, s] = reduced[s]

        self._gram = gram
        self._bulk = bulk.reshape(c * c, c * c)
        self._bulk.setflags(write=False)

        weight = 1.0 / np.prod([self._d ** 2 + self._ensemble.f(m) for m in range(REPLICAS)])
        self._first_layer = (np.eye(c) * weight).reshape(-1)
        self._first_layer.setflags(write=False)

        self._identity = self._basis.identity_index
        self._swap = self._basis.index(PermutationElement((1, 0)))

    @property
    def ensemble(self):
        return self._ensemble

    @property
    def d(self):
        return self._d

    @property
    def basis(self):
        return self._basis

    @property
    def local_dimension(self):
        return len(self._basis)

    @property
    def bulk(self):
        """
        (c^2, c^2) matrix acting on the coefficients of two neighbouring sites.
        """
        return self._bulk

    @property
    def first_layer(self):
        """
        Coefficients (length c^2) of a pair of sites after the first gate acts on |00><00|^{(x)2}:
        prod_m (d^2 + f(m))^{-1} on the diagonal elements (s, s).
        """
        return self._first_layer

    def ipr_closure(self):
        """
        Per-site vector closing the network; E[I_2] is D times the closed contraction.
        """
        return np.ones(self.local_dimension)

    def purity_closure(self, in_subsystem):
        """
        Per-site vector closing the network into tr(rho_A^2): the swap element on sites of A, identity elsewhere.
        """
        row = self._swap if in_subsystem else self._identity
        return self._gram[row].copy()

    def __repr__(self):
        return f"ReplicaGateTensor({self._ensemble}, d={self._d}; local dimension {self.local_dimension})"

    def __str__(self):
        return self.__repr__()


@lru_cache(maxsize=None)
def replica_gate_tensor(ensemble, d=2):
    return ReplicaGateTensor(EnsembleKind.parse(ensemble), d)
