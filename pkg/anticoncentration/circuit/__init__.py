"""
The circuit subpackage simulates the statevector of brickwork, staircase (RMPS) and kicked Ising circuits, collects
overlap statistics and runs noisy trajectories.

Disorder averages are driven by :class:`anticoncentration.circuit.CircuitEnsemble`.
"""
from anticoncentration.circuit.circuit_spec import Architecture, CircuitSpec, KIM_DEFAULT_PARAMS, brickwork_layer
from anticoncentration.circuit.pure_state import PureState
from anticoncentration.circuit.gates import sample_haar_gate, haar_random_state, weyl_operators
from anticoncentration.circuit.kicked_ising import (KickedIsingPropagator, kicked_ising_hamiltonian,
                                                    krylov_expm_multiply)
from anticoncentration.circuit.simulator import NoiseModel, run_circuit, run_noisy_trajectory, born_sample
from anticoncentration.circuit.overlap_sample_set import OverlapSampleSet
from anticoncentration.circuit.overlap_statistics import SamplingMode, OverlapStatistics, overlap_statistics
from anticoncentration.circuit.circuit_ensemble import CircuitEnsemble, EnsembleAverages

__all__ = [
    "Architecture",
    "CircuitSpec",
    "KIM_DEFAULT_PARAMS",
    "brickwork_layer",
    "PureState",
    "sample_haar_gate",
    "haar_random_state",
    "weyl_operators",
    "KickedIsingPropagator",
    "kicked_ising_hamiltonian",
    "krylov_expm_multiply",
    "NoiseModel",
    "run_circuit",
    "run_noisy_trajectory",
    "born_sample",
    "OverlapSampleSet",
    "SamplingMode",
    "OverlapStatistics",
    "overlap_statistics",
    "CircuitEnsemble",
    "EnsembleAverages",
]
