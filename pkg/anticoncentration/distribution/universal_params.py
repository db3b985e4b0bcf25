import math
import warnings
from dataclasses import dataclass, asdict

from anticoncentration.config.config import rcParams
from anticoncentration.ensemble import EnsembleKind


@dataclass(frozen=True)
class UniversalParams:
    """
    Parameters of the universal overlap distribution.

    The overlap is omega = omega_1 omega_2 (1 + beta corrections), with omega_1 Porter-Thomas distributed and
    omega_2 = exp(mu + sigma u) log-normal, u ~ N(0, 1). Matching E[omega_2^k] = e^{c_E alpha} gives
    sigma^2 = alpha, mu = -alpha / 2 (Unitary, c_U = k(k-1)/2) and sigma^2 = 2 alpha, mu = -alpha (Orthogonal,
    c_O = k(k-1)).
    """
    ensemble: EnsembleKind
    alpha: float = 0.0
    beta: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "ensemble", EnsembleKind.parse(self.ensemble))
        object.__setattr__(self, "alpha", float(self.alpha))
        object.__setattr__(self, "beta", float(self.beta))

        if not math.isfinite(self.alpha) or self.alpha < 0:
            raise ValueError(f"alpha must be finite and >= 0, got {self.alpha}")

        if not math.isfinite(self.beta) or self.beta < 0:
            raise ValueError(f"beta must be finite and >= 0, got {self.beta}")

    @property
    def sigma2(self):
        return self.alpha if self.ensemble is EnsembleKind.UNITARY else 2 * self.alpha

    @property
    def mu(self):
        return -self.sigma2 / 2

    def check_window(self, k):
        """
        Warns when beta k^2 (k-1) leaves the first-order window rcParams["distribution.beta_window"].
        """
        size = self.beta * k * k * (k - 1)
        window = rcParams["distribution.beta_window"]

        if size > window:
            warnings.warn(f"beta k^2 (k-1) = {size:.3g} exceeds {window} for k={k}: the first-order beta correction "
                          f"is outside its validity window")
            return False

        return True

    def to_dict(self):
        result = asdict(self)
        result["ensemble"] = self.ensemble.value
        return result
