import logging
import math
from dataclasses import dataclass

from anticoncentration.circuit.circuit_spec import brickwork_layer
from anticoncentration.config.config import rcParams
from anticoncentration.ensemble import EnsembleKind
from anticoncentration.replica.replica_boundary_state import ExactReplicaState, TensorTrainReplicaState
from anticoncentration.replica.replica_gate_tensor import replica_gate_tensor


logger = logging.getLogger(__name__)

KINDS = ("exact", "tensor_train", "auto")


@dataclass(frozen=True)
class ContractionMethod:
    """
    "exact" (dense c^N vector) or "tensor_train" with relative truncation tolerance `tol` and bond cap `max_bond`
    (None selects the rcParams defaults). "auto" contracts exactly while c^N stays within
    `replica.exact_max_entries` and switches to the tensor train above it.
    """
    kind: str = "exact"
    tol: float = None
    max_bond: int = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"Unknown contraction method '{self.kind}'. Allowed: {list(KINDS)}")

    @classmethod
    def exact(cls):
        return cls("exact")

    @classmethod
    def tensor_train(cls, tol=None, max_bond=None):
        return cls("tensor_train", tol, max_bond)

    @classmethod
    def auto(cls, tol=None, max_bond=None):
        return cls("auto", tol, max_bond)

    def resolve(self, N, local_dimension):
        """
        Concrete method ("exact" or "tensor_train") used for N sites of the given local dimension.
        """
        if self.kind != "auto":
            return self

        if local_dimension ** N <= rcParams["replica.exact_max_entries"]:
            return ContractionMethod.exact()
        return ContractionMethod.tensor_train(self.tol, self.max_bond)

    @classmethod
    def parse(cls, value):
        if isinstance(value, cls):
            return value
        if isinstance(value, str):
            return cls(value)
        if isinstance(value, dict):
            return cls(**value)
        raise ValueError(f"Cannot build a contraction method from {value!r}")

    def new_state(self, N, tensor):
        if self.kind == "auto":
            return self.resolve(N, tensor.local_dimension).new_state(N, tensor)

        if self.kind == "exact":
            return ExactReplicaState(N, tensor.local_dimension, tensor.first_layer)
        return TensorTrainReplicaState(N, tensor.local_dimension, tensor.first_layer, tol=self.tol,
                                       max_bond=self.max_bond)


@dataclass(frozen=True)
class ReplicaPoint:
    t: int
    annealed_I2: float
    annealed_purity: float
    trunc_error: float


def replica_evolution(N, t_max, ensemble, method="exact", d=2, subsystem=None):
    """
    Contracts the two-replica brickwork network layer by layer and yields a ReplicaPoint for t = 0, ..., t_max.

    :param N:
        Even number of qudits.

    :param t_max:
        Last depth.

    :param ensemble:
        Gate ensemble.

    :param method:
        ContractionMethod (or its name).

    :param d:
        Local dimension.

    :param subsystem:
        Sites of the subsystem A of the purity. Defaults to the first N/2 sites.
    """
    ensemble = EnsembleKind.parse(ensemble)
    method = ContractionMethod.parse(method)

    if N < 2 or N % 2:
        raise ValueError(f"The replica network needs an even N >= 2, got {N}")

    subsystem = set(range(N // 2) if subsystem is None else subsystem)
    tensor = replica_gate_tensor(ensemble, d)
    D = float(d) ** N

    ipr_closure = [tensor.ipr_closure()] * N
    purity_closure = [tensor.purity_closure(site in subsystem) for site in range(N)]

    yield ReplicaPoint(t=0, annealed_I2=1.0, annealed_purity=1.0, trunc_error=0.0)

    if t_max < 1:
        return

    state = method.new_state(N, tensor)

    for t in range(1, t_max + 1):
        if t > 1:
            for site in brickwork_layer(N, t - 1):
                state.apply_pair(tensor.bulk, site)

        point = ReplicaPoint(t=t, annealed_I2=D * state.close(ipr_closure),
                             annealed_purity=state.close(purity_closure), trunc_error=state.trunc_error)
        logger.debug("Contracted layer t=%d of N=%d: I2=%.6e", t, N, point.annealed_I2)
        yield point


def _final_point(N, t, ensemble, method, d, subsystem=None):
    if t < 0:
        raise ValueError(f"Depth must be non-negative, got {t}")

    for point in replica_evolution(N, t, ensemble, method=method, d=d, subsystem=subsystem):
        last = point
    return last


def contract_annealed_ipr2(N, t, ensemble, method="exact", d=2):
    """
    Disorder average E[I_2] of the depth-t brickwork circuit on N qudits.
    """
    return _final_point(N, t, ensemble, method, d).annealed_I2


def annealed_half_chain_purity(N, t, ensemble, method="exact", d=2, subsystem=None):
    """
    Disorder average E[tr rho_A^2] for the depth-t brickwork circuit, with A the first N/2 sites unless given.
    """
    return _final_point(N, t, ensemble, method, d, subsystem=subsystem).annealed_purity
