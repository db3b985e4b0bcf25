import math

import numpy as np
from scipy.special import comb

from anticoncentration.commutant import enumerate_commutant, gram_matrix
from anticoncentration.ensemble import EnsembleKind


def ginibre_rmps_ipr(d, N, M, n_blocks, k, nu=None):
    """
    k-th IPR of a chain of n_blocks i.i.d. complex Gaussian M x M blocks covering N qudits, with all-ones boundary
    vectors: I_k = D nu^{2k n_blocks} 1^T G^{n_blocks - 1} 1, where G is the S_k Gram matrix at q = M.

    :param d:
        Local dimension.

    :param N:
        Number of qudits (D = d^N).

    :param M:
        Size of the coarse-grained matrices.

    :param n_blocks:
        Number of coarse-grained blocks.

    :param k:
        Replica order.

    :param nu:
        Variance of the Gaussian entries (the nu^2 of the formula above). Defaults to
        d^{-N/n_blocks} M^{-(n_blocks-1)/n_blocks}, the value that normalizes I_1 = 1.
    """
    if n_blocks < 1:
        raise ValueError(f"n_blocks must be >= 1, got {n_blocks}")

    if M < 1:
        raise ValueError(f"M must be >= 1, got {M}")

    basis = enumerate_commutant(EnsembleKind.UNITARY, k)
    gram = gram_matrix(basis, M).entries / float(M) ** k

    # Power iteration on the normalized Gram matrix, keeping the scale in log-space
    vector = np.ones(len(basis))
    log_scale = 0.0
    for _ in range(n_blocks - 1):
        vector = gram @ vector
        norm = vector.max()
        vector /= norm
        log_scale += math.log(norm)

    log_contraction = log_scale + math.log(vector.sum()) + k * (n_blocks - 1) * math.log(M)

    if nu is None:
        log_nu2 = -(N / n_blocks) * math.log(d) - (n_blocks - 1) / n_blocks * math.log(M)
    else:
        if nu <= 0:
            raise ValueError(f"The variance nu must be positive, got {nu}")
        log_nu2 = math.log(nu)

    return math.exp(N * math.log(d) + k * n_blocks * log_nu2 + log_contraction)


def distance_class_size(k, distance):
    """
    Number of permutations of S_k at transposition distance `distance` from a given one (unsigned Stirling number
    of the first kind c(k, k - distance)), counted on the commutant.
    """
    basis = enumerate_commutant(EnsembleKind.UNITARY, k)
    distances = k - basis.loop_counts()[basis.identity_index]
    return int(np.count_nonzero(distances == distance))


def distance_two_count(k):
    """
    Closed form (3k - 1)/4 C(k, 3) for the number of permutations at distance 2.
    """
    return int(round((3 * k - 1) / 4 * comb(k, 3, exact=True)))


def domain_wall_expansion(k, n_blocks, M):
    """
    Second-order domain-wall series of the Ginibre IPR relative to D^{1-k} k!:
    1 + a c + (a c)^2 / 2 - (n_blocks - 1)/M^2 k(k-1)(k-1/2)/6, with a = (n_blocks - 1)/M and c = k(k-1)/2.
    """
    a = (n_blocks - 1) / M
    c = k * (k - 1) / 2
    return 1 + a * c + 0.5 * (a * c) ** 2 - (n_blocks - 1) / M ** 2 * k * (k - 1) * (k - 0.5) / 6
