from dataclasses import dataclass, field, asdict

from anticoncentration.distribution.universal_params import UniversalParams
from anticoncentration.ensemble import EnsembleKind
from anticoncentration.utils.table_io import write_json


@dataclass(frozen=True)
class FitResult:
    """
    Maximum-likelihood estimate of the universal distribution parameters.

    `error_method` names how the standard errors were obtained ("observed_information" or "bootstrap");
    `bootstrap_se` is filled whenever the bootstrap ran, also when it was requested next to the Hessian.
    """
    ensemble: EnsembleKind
    mode: str
    alpha_hat: float
    beta_hat: float
    alpha_se: float
    beta_se: float
    covariance: list
    log_likelihood: float
    n_samples: int
    ks_statistic: float
    converged: bool
    error_method: str = "observed_information"
    bootstrap_se: list = None
    diagnostics: dict = field(default_factory=dict)

    @property
    def params(self):
        return UniversalParams(self.ensemble, self.alpha_hat, self.beta_hat)

    def to_dict(self):
        result = asdict(self)
        result["ensemble"] = self.ensemble.value
        return result

    def to_json(self, path):
        """
        Writes the fit as a JSON report and returns its content hash.
        """
        return write_json(path, self.to_dict())

    def __repr__(self):
        flag = "" if self.converged else "; NOT CONVERGED"
        return (f"FitResult({self.ensemble}; alpha={self.alpha_hat:.6g} +- {self.alpha_se:.2g}; "
                f"beta={self.beta_hat:.6g} +- {self.beta_se:.2g}; "
                f"n={self.n_samples}; KS={self.ks_statistic:.4g}{flag})")

    def __str__(self):
        return self.__repr__()
