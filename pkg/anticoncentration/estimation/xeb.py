"""
Cross-entropy benchmarking
==========================

Linear XEB: bitstrings x are Born-sampled from noisy circuits and scored with the ideal output probabilities of the
same circuit, XEB = D mean_x[p_ideal(x)] - 1, averaged over an ensemble of circuit realizations. The fidelity
estimator divides by the noiseless value D I_2 - 1, with I_2 taken from the universal distribution at the fitted
(alpha, beta) of the same depth.
"""
import logging
import math
import warnings
from dataclasses import dataclass, field, asdict

import numpy as np

from anticoncentration.base.lab_class import LabClass
from anticoncentration.circuit.circuit_spec import Architecture, CircuitSpec
from anticoncentration.circuit.simulator import NoiseModel, run_circuit, run_noisy_trajectory, born_sample
from anticoncentration.closed_forms.haar import haar_ipr
from anticoncentration.config.config import rcParams
from anticoncentration.utils.table_io import write_json


logger = logging.getLogger(__name__)

ESTIMATOR = "linear_xeb_born_noisy"


@dataclass(frozen=True)
class XebReport:
    epsilon_noise: float
    N: int
    t: int
    xeb_value: float
    xeb_se: float
    i2_alpha_beta: float
    fidelity_estimate: float
    fidelity_se: float
    reference_fidelity: float
    n_bitstrings: int
    alpha: float
    beta: float
    circuits: int = 1
    estimator: str = ESTIMATOR
    warnings: list = field(default_factory=list)

    def to_dict(self):
        return asdict(self)

    def to_json(self, path):
        return write_json(path, self.to_dict())

    def __repr__(self):
        return (f"XebReport(N={self.N}; t={self.t}; eps={self.epsilon_noise:.4g}; XEB={self.xeb_value:.4f}; "
                f"F={self.fidelity_estimate:.4f} +- {self.fidelity_se:.2g}; reference={self.reference_fidelity:.4f})")

    def __str__(self):
        return self.__repr__()


def reference_fidelity(epsilon_noise, N, t):
    """
    Weak-noise fidelity (1 - eps)^{t N / 2}.
    """
    return (1.0 - epsilon_noise) ** (t * N / 2)


def universal_ipr2(params, D):
    """
    I_2 of the universal distribution: the Haar value times e^{c_E alpha - 4 beta}.
    """
    exponent = params.ensemble.alpha_exponent(2) * params.alpha - 4 * params.beta
    return haar_ipr(params.ensemble, D, 2) * math.exp(exponent)


def _xeb_report(scores, D, N, params, epsilon_noise, t, circuits=1):
    n_bitstrings = scores.size

    report_warnings = []
    if n_bitstrings < rcParams["xeb.min_bitstrings"]:
        message = (f"Only {n_bitstrings} bitstrings scored; below {rcParams['xeb.min_bitstrings']} the XEB "
                   f"statistical error dominates")
        warnings.warn(message)
        report_warnings.append(message)

    xeb = float(scores.mean() - 1)
    xeb_se = float(scores.std(ddof=1) / math.sqrt(n_bitstrings)) if n_bitstrings > 1 else math.inf

    i2 = universal_ipr2(params, D)
    normalization = D * i2 - 1

    report = XebReport(
        epsilon_noise=float(epsilon_noise),
        N=int(N),
        t=int(t),
        xeb_value=xeb,
        xeb_se=xeb_se,
        i2_alpha_beta=float(i2),
        fidelity_estimate=xeb / normalization,
        fidelity_se=xeb_se / normalization,
        reference_fidelity=reference_fidelity(epsilon_noise, N, t),
        n_bitstrings=int(n_bitstrings),
        alpha=params.alpha,
        beta=params.beta,
        circuits=int(circuits),
        warnings=report_warnings,
    )

    logger.debug("%s", report)
    return report


def xeb_fidelity(ideal_state_provider, noisy_bitstring_sampler, params_or_fit, n_bitstrings, epsilon_noise=0.0,
                 t=0):
    """
    Linear XEB and the fidelity estimator of a single noisy circuit.

    :param ideal_state_provider:
        PureState of the noiseless circuit, or a callable returning it.

    :param noisy_bitstring_sampler:
        Callable `n -> array of n basis indices` drawn from the noisy circuit.

    :param params_or_fit:
        UniversalParams or FitResult of the noiseless circuit at the same (N, t).

    :param n_bitstrings:
        Number of bitstrings to score. Fewer than rcParams["xeb.min_bitstrings"] adds a precision warning.

    :param epsilon_noise:
        Noise rate of the noisy circuit, used for the reference fidelity.

    :param t:
        Depth of the circuit, used for the reference fidelity.
    """
    if n_bitstrings < 1:
        raise ValueError(f"n_bitstrings must be >= 1, got {n_bitstrings}")

    ideal = ideal_state_provider() if callable(ideal_state_provider) else ideal_state_provider
    params = getattr(params_or_fit, "params", params_or_fit)
    D = ideal.D

    bitstrings = np.asarray(noisy_bitstring_sampler(n_bitstrings), dtype=np.int64).reshape(-1)
    if bitstrings.size != n_bitstrings or bitstrings.min() < 0 or bitstrings.max() >= D:
        raise ValueError(f"The sampler must return {n_bitstrings} indices in [0, {D})")

    scores = D * ideal.probabilities()[bitstrings]
    return _xeb_report(scores, D, ideal.N, params, epsilon_noise, t)


class XebExperiment(LabClass):
    """
    Ensemble of noisy brickwork circuits of N qudits and depth t with their noiseless twins.

    Circuit r draws its gates from `task_seed("circuit", r)`. Trajectory j runs circuit j mod `circuits`, draws its
    errors from `stream("noise", j)` and its bitstrings from `stream("shots", j)`, so the sampled bitstrings do not
    depend on the worker count. Each bitstring is scored with the ideal probabilities of its own circuit and the XEB
    is the average over the whole ensemble, which is what the annealed I_2 in the normalization describes.

    :param circuits:
        Number of circuit realizations.

    :param trajectories:
        Number of noisy trajectories the bitstrings are spread over; at least `circuits`.
    """
    def __init__(self, N, t, epsilon_noise, d=2, circuits=16, trajectories=64, seed=0, workers=None):
        super().__init__(seed, workers=workers)

        if circuits < 1:
            raise ValueError(f"circuits must be >= 1, got {circuits}")

        if trajectories < circuits:
            raise ValueError(f"trajectories must be >= circuits ({circuits}), got {trajectories}")

        self._specs = [CircuitSpec(Architecture.BRICKWORK, N, d=d, t=t, seed=self.task_seed("circuit", r))
                       for r in range(circuits)]
        self._noise = NoiseModel(epsilon_noise)
        self._trajectories = int(trajectories)

    @property
    def spec(self):
        return self._specs[0]

    @property
    def specs(self):
        return list(self._specs)

    @property
    def circuits(self):
        return len(self._specs)

    @property
    def noise(self):
        return self._noise

    def ideal_state(self, circuit=0):
        return run_circuit(self._specs[circuit])

    def _shots(self, n):
        trajectories = self._trajectories
        return [n // trajectories + (1 if j < n % trajectories else 0) for j in range(trajectories)]

    def _circuit_samples(self, circuit, shots):
        spec = self._specs[circuit]
        ideal = run_circuit(spec)
        bitstrings = [born_sample(run_noisy_trajectory(spec, self._noise, self.stream("noise", j)), shots[j],
                                  self.stream("shots", j))
                      for j in range(circuit, len(shots), self.circuits) if shots[j] > 0]

        bitstrings = np.concatenate(bitstrings) if bitstrings else np.zeros(0, dtype=np.int64)
        return bitstrings, ideal.D * ideal.probabilities()[bitstrings]

    def _samples(self, n):
        if n < 1:
            raise ValueError(f"n_bitstrings must be >= 1, got {n}")

        shots = self._shots(n)
        return self.parallel_map(lambda circuit: self._circuit_samples(circuit, shots), range(self.circuits))

    def sample_noisy(self, n):
        """
        `n` bitstrings Born-sampled from the noisy trajectories, grouped by circuit.
        """
        return np.concatenate([bitstrings for bitstrings, _ in self._samples(n)])

    def scores(self, n):
        """
        D p_ideal(x) of `n` noisy bitstrings, each under the ideal circuit it was sampled from.
        """
        return np.concatenate([scores for _, scores in self._samples(n)])

    def run(self, params_or_fit, n_bitstrings):
        params = getattr(params_or_fit, "params", params_or_fit)
        spec = self._specs[0]
        return _xeb_report(self.scores(n_bitstrings), spec.d ** spec.N, spec.N, params,
                           self._noise.epsilon_noise, spec.t, circuits=self.circuits)

    def __repr__(self):
        spec = self._specs[0]
        return (f"XebExperiment(N={spec.N}; t={spec.t}; eps={self._noise.epsilon_noise}; {self.circuits} circuits; "
                f"seed={self.seed})")

    def __str__(self):
        return self.__repr__()
