from dataclasses import dataclass, field

import numpy as np

from anticoncentration.config.config import rcParams
from anticoncentration.exceptions import CapacityExceeded, EmptySampleError
from anticoncentration.circuit.overlap_sample_set import OverlapSampleSet


MAX_IPR_ORDER = 5


@dataclass(frozen=True)
class SamplingMode:
    """
    How bitstrings x are chosen when collecting overlaps: every basis state once ("full_enumeration") or n uniformly
    random basis states ("uniform_bitstrings").
    """
    kind: str = "uniform_bitstrings"
    n: int = None

    def __post_init__(self):
        if self.kind not in ("full_enumeration", "uniform_bitstrings"):
            raise ValueError(f"Unknown sampling mode '{self.kind}'")

        if self.kind == "uniform_bitstrings" and self.n is None:
            raise ValueError("uniform_bitstrings needs the number of bitstrings n")

    @classmethod
    def full_enumeration(cls):
        return cls("full_enumeration")

    @classmethod
    def uniform_bitstrings(cls, n):
        return cls("uniform_bitstrings", int(n))

    def describe(self):
        return self.kind if self.n is None else f"{self.kind}({self.n})"


@dataclass(frozen=True)
class OverlapStatistics:
    """
    Overlaps of one state with its empirical IPRs (k = 1..5), second participation entropy and half-chain purity.
    """
    samples: OverlapSampleSet
    ipr: dict = field(default_factory=dict)
    s2: float = 0.0
    half_chain_purity: float = 1.0


def overlap_statistics(state, mode, rng=None, meta=None):
    """
    Collects overlaps omega = D |<x|psi>|^2 of a state.

    Under full enumeration I_k = sum_x p_x^k exactly. Under uniform bitstring sampling I_k is estimated without bias
    as mean(omega^k) / D^{k-1}.

    :param state:
        Normalized PureState.

    :param mode:
        SamplingMode.

    :param rng:
        numpy Generator (uniform bitstrings only).

    :param meta:
        Extra metadata for the returned OverlapSampleSet.
    """
    D = state.D
    probabilities = state.probabilities()

    if mode.kind == "full_enumeration":
        cap = rcParams["simulator.max_amplitudes"]
        if D > cap:
            raise CapacityExceeded(f"Full enumeration of {D} bitstrings exceeds the cap of {cap}", bound=cap)
        omegas = D * probabilities
        ipr = {k: float(np.sum(probabilities ** k)) for k in range(1, MAX_IPR_ORDER + 1)}
    else:
        if mode.n <= 0:
            raise EmptySampleError("Cannot estimate statistics from zero bitstrings")
        omegas = D * probabilities[rng.integers(D, size=mode.n)]
        ipr = {k: float(np.mean(omegas ** k) / float(D) ** (k - 1)) for k in range(1, MAX_IPR_ORDER + 1)}

    sample_meta = dict(meta or {})
    sample_meta["mode"] = mode.describe()

    with np.errstate(divide="ignore"):
        s2 = float(-np.log(ipr[2])) if ipr[2] > 0 else float("inf")

    return OverlapStatistics(samples=OverlapSampleSet(omegas, meta=sample_meta), ipr=ipr, s2=s2,
                             half_chain_purity=state.half_chain_purity())
