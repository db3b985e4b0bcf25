from dataclasses import dataclass, asdict


@dataclass(frozen=True)
class ScalingVariables:
    """
    Scaling variables of a finite-size ensemble: the ratio x = N / N_Th, the leading (alpha) and subleading (beta)
    correction coefficients, and the Thouless length.
    """
    x: float
    alpha: float
    beta: float
    n_thouless: float

    def to_dict(self):
        return asdict(self)
