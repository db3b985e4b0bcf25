"""
The replica subpackage contracts the two-replica tensor network of Haar brickwork circuits, giving exact disorder
averages of I_2 and of the half-chain purity.
"""
from anticoncentration.replica.replica_gate_tensor import ReplicaGateTensor, replica_gate_tensor
from anticoncentration.replica.replica_boundary_state import (ReplicaBoundaryState, ExactReplicaState,
                                                              TensorTrainReplicaState)
from anticoncentration.replica.contraction import (ContractionMethod, ReplicaPoint, replica_evolution,
                                                   contract_annealed_ipr2, annealed_half_chain_purity)
from anticoncentration.replica.annealed_series import AnnealedSeries, delta_s2_series, estimate_subleading_constant

__all__ = [
    "ReplicaGateTensor",
    "replica_gate_tensor",
    "ReplicaBoundaryState",
    "ExactReplicaState",
    "TensorTrainReplicaState",
    "ContractionMethod",
    "ReplicaPoint",
    "replica_evolution",
    "contract_annealed_ipr2",
    "annealed_half_chain_purity",
    "AnnealedSeries",
    "delta_s2_series",
    "estimate_subleading_constant",
]
