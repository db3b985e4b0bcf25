"""
The estimation subpackage fits the universal distribution to overlap samples, measures goodness of fit, extracts
decay timescales and estimates circuit fidelities from cross-entropy benchmarking.
"""
from anticoncentration.estimation.fit_result import FitResult
from anticoncentration.estimation.mle import MaximumLikelihoodFit, mle_fit
from anticoncentration.estimation.ks import ks_statistic, ks_pvalue
from anticoncentration.estimation.decay_fit import (DecayFit, fit_decay_timescale, fit_size_difference, fits_per_size,
                                                    fit_kappa, collapse_variable)
from anticoncentration.estimation.xeb import (XebReport, XebExperiment, xeb_fidelity, reference_fidelity,
                                              universal_ipr2)

__all__ = [
    "FitResult",
    "MaximumLikelihoodFit",
    "mle_fit",
    "ks_statistic",
    "ks_pvalue",
    "DecayFit",
    "fit_decay_timescale",
    "fit_size_difference",
    "fits_per_size",
    "fit_kappa",
    "collapse_variable",
    "XebReport",
    "XebExperiment",
    "xeb_fidelity",
    "reference_fidelity",
    "universal_ipr2",
]
