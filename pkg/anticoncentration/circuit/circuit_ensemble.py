import logging
from dataclasses import dataclass, field

import numpy as np

from anticoncentration.base import LabClass
from anticoncentration.circuit.circuit_spec import Architecture
from anticoncentration.circuit.kicked_ising import KickedIsingPropagator
from anticoncentration.circuit.overlap_sample_set import OverlapSampleSet
from anticoncentration.circuit.overlap_statistics import overlap_statistics
from anticoncentration.circuit.simulator import run_circuit, initial_state_label


logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class EnsembleAverages:
    """
    Disorder averages over independent circuit realizations, with standard errors of the mean.
    """
    realizations: int
    ipr: dict = field(default_factory=dict)
    ipr_se: dict = field(default_factory=dict)
    purity: float = 1.0
    purity_se: float = 0.0
    samples: OverlapSampleSet = None

    def annealed_s2(self):
        return float(-np.log(self.ipr[2]))


class CircuitEnsemble(LabClass):
    """
    Monte Carlo driver over circuit realizations.

    Realization r runs the circuit with seed `derive_seed(seed, "realization", r)` and samples bitstrings from
    `derive_seed(seed, "sampling", r)`; results are reduced in realization order.
    """
    def __init__(self, spec, seed, workers=None):
        super().__init__(seed, workers=workers)
        self._spec = spec
        self._propagator = None

        if spec.architecture is Architecture.KICKED_ISING:
            self._propagator = KickedIsingPropagator(spec.N, spec.kim_params)

    @property
    def spec(self):
        return self._spec

    def realization_spec(self, index):
        return self._spec.with_seed(self.task_seed("realization", index))

    def _realize(self, task):
        index, mode = task
        state = run_circuit(self.realization_spec(index), propagator=self._propagator)
        stats = overlap_statistics(state, mode, rng=self.stream("sampling", index))
        return stats.ipr, stats.half_chain_purity, stats.samples.samples

    def run(self, realizations, mode):
        """
        :param realizations:
            Number of independent circuits.

        :param mode:
            SamplingMode of the overlaps collected from every realization.

        :return:
            EnsembleAverages.
        """
        if realizations < 1:
            raise ValueError(f"At least one realization is needed, got {realizations}")

        results = self.parallel_map(self._realize, [(r, mode) for r in range(realizations)])
        logger.info("Collected %d realizations of %s N=%d", realizations, self._spec.architecture, self._spec.N)

        orders = sorted(results[0][0])
        ipr_values = {k: np.array([result[0][k] for result in results]) for k in orders}
        purities = np.array([result[1] for result in results])

        def standard_error(values):
            return float(values.std(ddof=1) / np.sqrt(len(values))) if len(values) > 1 else float("nan")

        meta = {
            "spec_digest": self._spec.digest(),
            "spec": self._spec.to_dict(),
            "mode": mode.describe(),
            "realizations": realizations,
            "seed": self.seed,
            "initial_state": initial_state_label(self._spec),
        }

        return EnsembleAverages(
            realizations=realizations,
            ipr={k: float(v.mean()) for k, v in ipr_values.items()},
            ipr_se={k: standard_error(v) for k, v in ipr_values.items()},
            purity=float(purities.mean()),
            purity_se=standard_error(purities),
            samples=OverlapSampleSet(np.concatenate([result[2] for result in results]), meta=meta),
        )
