import logging
from dataclasses import dataclass

import numpy as np

from anticoncentration.ensemble import EnsembleKind
from anticoncentration.exceptions import NumericalFailure
from anticoncentration.config.config import rcParams
from anticoncentration.circuit.circuit_spec import Architecture, brickwork_layer
from anticoncentration.circuit.gates import sample_haar_gate, haar_random_state, weyl_operators
from anticoncentration.circuit.kicked_ising import KickedIsingPropagator
from anticoncentration.circuit.pure_state import PureState, check_capacity


logger = logging.getLogger(__name__)

@dataclass(frozen=True)
class NoiseModel:
    """
    Gate depolarizing noise: with probability epsilon_noise a gate is followed by a uniformly random non-identity
    two-site Weyl (Pauli) operator.
    """
    epsilon_noise: float = 0.0

    def __post_init__(self):
        if not 0 <= self.epsilon_noise <= 1:
            raise ValueError(f"epsilon_noise must lie in [0, 1], got {self.epsilon_noise}")


def initial_state_label(spec):
    return "haar_product" if spec.architecture is Architecture.KICKED_ISING else "zero"


def default_initial_state(spec, rng):
    """
    |0...0> for Brickwork and Staircase; a product of Haar random qubit states for KickedIsing.
    """
    if spec.architecture is Architecture.KICKED_ISING:
        check_capacity(spec.N, spec.d)
        return PureState.product([haar_random_state(EnsembleKind.UNITARY, 2, rng) for _ in range(spec.N)])
    return PureState.zero(spec.N, spec.d)


def _gate_sites(spec):
    """
    Yields (first_site, n_sites) of every random gate, in application order.
    """
    if spec.architecture is Architecture.BRICKWORK:
        for layer in range(spec.t):
            for site in brickwork_layer(spec.N, layer):
                yield site, 2
    elif spec.architecture is Architecture.STAIRCASE:
        for site in range(spec.N - spec.r):
            yield site, spec.r + 1


def _check_norm(state):
    deviation = abs(state.norm() - 1)
    if deviation > rcParams["simulator.norm_tolerance"]:
        raise NumericalFailure(f"State norm drifted by {deviation:.3e}", diagnostics={"norm_deviation": deviation})


def _evolve(spec, state, rng, noise=None, noise_rng=None, propagator=None):
    if spec.architecture is Architecture.KICKED_ISING:
        propagator = propagator or KickedIsingPropagator(spec.N, spec.kim_params)
        amplitudes = state.amplitudes
        for _ in range(spec.t):
            amplitudes = propagator.step(amplitudes)
        state = PureState(spec.N, spec.d, amplitudes)
        _check_norm(state)
        return state

    operators = weyl_operators(spec.d, 2) if noise is not None and noise.epsilon_noise > 0 else None
    errors = 0

    for site, n_sites in _gate_sites(spec):
        gate = sample_haar_gate(spec.ensemble, spec.d ** n_sites, rng)
        state.apply(gate, site, n_sites)

        if operators is not None and noise_rng.random() < noise.epsilon_noise:
            state.apply(operators[noise_rng.integers(len(operators))], site, n_sites)
            errors += 1

    if operators is not None:
        logger.debug("Trajectory with %d Pauli errors", errors)

    _check_norm(state)
    return state


def run_circuit(spec, initial=None, propagator=None):
    """
    Evolves a state through the circuit described by `spec`.

    Gate draws (and the KickedIsing initial state) come from `numpy.random.default_rng(spec.seed)`, so the output is
    a deterministic function of the spec.

    :param spec:
        CircuitSpec.

    :param initial:
        PureState to evolve (copied). Defaults to :func:`default_initial_state`.

    :param propagator:
        Optional KickedIsingPropagator to reuse between realizations.
    """
    rng = np.random.default_rng(spec.seed)
    check_capacity(spec.N, spec.d)

    if initial is None:
        state = default_initial_state(spec, rng)
    else:
        if initial.N != spec.N or initial.d != spec.d:
            raise ValueError(f"Initial state ({initial.N}, {initial.d}) does not match the spec ({spec.N}, {spec.d})")
        state = initial.copy()

    return _evolve(spec, state, rng, propagator=propagator)


def run_noisy_trajectory(spec, noise, rng):
    """
    One trajectory of the brickwork circuit `spec` under gate depolarizing noise.

    Gates are the ones of :func:`run_circuit` (same seed); error locations and operators are drawn from `rng`. With
    epsilon_noise = 0 the output equals run_circuit(spec) bit by bit.
    """
    if spec.architecture is not Architecture.BRICKWORK:
        raise ValueError(f"Noisy trajectories are defined for Brickwork circuits, got {spec.architecture}")

    gate_rng = np.random.default_rng(spec.seed)
    state = default_initial_state(spec, gate_rng)
    return _evolve(spec, state, gate_rng, noise=noise, noise_rng=rng)


def born_sample(state, n, rng):
    """
    Draws n basis indices from the Born distribution |<x|psi>|^2.
    """
    cumulative = np.cumsum(state.probabilities())
    draws = rng.random(n) * cumulative[-1]
    return np.minimum(np.searchsorted(cumulative, draws, side="right"), state.D - 1)
