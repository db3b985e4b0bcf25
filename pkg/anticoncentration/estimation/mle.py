"""
Maximum-likelihood fits
=======================

The mean negative log-likelihood of the universal density is minimized with bounded L-BFGS-B from every point of a
coarse (alpha, beta) grid, keeping the best optimum. Densities are floored at
rcParams["estimation.loglik_floor"] so that samples falling in the negative tail of the first-order density
penalize the fit instead of breaking it.
"""
import logging
import warnings

import numpy as np
from scipy import optimize

from anticoncentration.base.lab_class import LabClass
from anticoncentration.config.config import rcParams
from anticoncentration.distribution.universal_density import pdf
from anticoncentration.distribution.universal_params import UniversalParams
from anticoncentration.ensemble import EnsembleKind
from anticoncentration.estimation.fit_result import FitResult
from anticoncentration.estimation.ks import ks_statistic


logger = logging.getLogger(__name__)

MODES = ("alpha_only", "alpha_beta")

ALPHA_STARTS = (0.0, 0.25, 0.5, 1.0, 2.0)
BETA_STARTS = (0.0, 0.01, 0.04)

# Smallest overlap handed to the density; the Orthogonal density diverges at 0
OMEGA_MIN = 1e-300

HESSIAN_STEP = 1e-3
MAX_CONDITION = 1e10


def _values(samples):
    values = np.asarray(getattr(samples, "samples", samples), dtype=float).reshape(-1)

    if values.size and (np.any(values < 0) or not np.all(np.isfinite(values))):
        raise ValueError("Overlaps must be finite and non-negative")

    return values


class MaximumLikelihoodFit(LabClass):
    """
    Fits (alpha, beta) of the universal distribution to a sample of overlaps.

    :param ensemble:
        Ensemble of the model density.

    :param mode:
        "alpha_only" holds beta at 0, "alpha_beta" fits both.

    :param seed:
        Seed of the bootstrap streams. The fit itself is deterministic.

    :param workers:
        Worker budget of the bootstrap.

    :param bootstrap:
        When True the bootstrap runs even if the observed information is well conditioned.

    :param resamples:
        Number of bootstrap resamples; defaults to rcParams["estimation.bootstrap_resamples"].
    """
    def __init__(self, ensemble, mode="alpha_only", seed=0, workers=None, bootstrap=False, resamples=None,
                 alpha_max=None, beta_max=None):
        super().__init__(seed, workers=workers)

        if mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}, got {mode!r}")

        self._ensemble = EnsembleKind.parse(ensemble)
        self._mode = mode
        self._bootstrap = bool(bootstrap)
        self._resamples = int(resamples if resamples is not None else rcParams["estimation.bootstrap_resamples"])
        self._alpha_max = float(alpha_max if alpha_max is not None else rcParams["estimation.alpha_max"])
        self._beta_max = float(beta_max if beta_max is not None else rcParams["estimation.beta_max"])

    @property
    def ensemble(self):
        return self._ensemble

    @property
    def mode(self):
        return self._mode

    @property
    def bounds(self):
        if self._mode == "alpha_only":
            return [(0.0, self._alpha_max)]
        return [(0.0, self._alpha_max), (0.0, self._beta_max)]

    def _params(self, theta):
        alpha = min(max(float(theta[0]), 0.0), self._alpha_max)
        beta = min(max(float(theta[1]), 0.0), self._beta_max) if len(theta) > 1 else 0.0
        return UniversalParams(self._ensemble, alpha, beta)

    def negative_log_likelihood(self, theta, omega):
        """
        Mean negative log-likelihood of the overlaps `omega` at the parameter vector `theta`.
        """
        densities = pdf(omega, self._params(theta))
        densities = np.maximum(np.nan_to_num(densities, nan=0.0), rcParams["estimation.loglik_floor"])
        return float(-np.mean(np.log(densities)))

    def _starts(self):
        alphas = [a for a in ALPHA_STARTS if a <= self._alpha_max]
        betas = [b for b in BETA_STARTS if b <= self._beta_max] if self._mode == "alpha_beta" else [None]
        return [np.array([a] if b is None else [a, b]) for a in alphas for b in betas]

    def _minimize(self, omega, start):
        return optimize.minimize(self.negative_log_likelihood, start, args=(omega,), method="L-BFGS-B",
                                 bounds=self.bounds, options={"gtol": rcParams["estimation.gtol"], "maxiter": 500})

    def _projected_gradient(self, theta, omega):
        gradient = optimize.approx_fprime(theta, self.negative_log_likelihood, 1e-6, omega)

        for i, (low, high) in enumerate(self.bounds):
            if (theta[i] <= low and gradient[i] > 0) or (theta[i] >= high and gradient[i] < 0):
                gradient[i] = 0.0

        return float(np.linalg.norm(gradient))

    def _hessian(self, theta, omega):
        """
        Finite-difference Hessian of the mean negative log-likelihood. Coordinates closer than one step to a bound
        are evaluated at a center shifted inside the box.
        """
        size = len(theta)
        center = np.array(theta, dtype=float)

        for i, (low, high) in enumerate(self.bounds):
            center[i] = min(max(center[i], low + HESSIAN_STEP), high - HESSIAN_STEP)

        def value(shift):
            return self.negative_log_likelihood(center + shift, omega)

        steps = np.eye(size) * HESSIAN_STEP
        f0 = value(np.zeros(size))
        hessian = np.empty((size, size))

        for i in range(size):
            hessian[i, i] = (value(steps[i]) - 2 * f0 + value(-steps[i])) / HESSIAN_STEP ** 2

            for j in range(i):
                mixed = (value(steps[i] + steps[j]) - value(steps[i] - steps[j])
                         - value(-steps[i] + steps[j]) + value(-steps[i] - steps[j]))
                hessian[i, j] = hessian[j, i] = mixed / (4 * HESSIAN_STEP ** 2)

        return hessian

    def _bootstrap_estimates(self, omega, theta):
        def resample(index):
            rng = self.stream("bootstrap", index)
            chosen = omega[rng.integers(0, omega.size, size=omega.size)]
            return self._minimize(chosen, theta).x

        logger.debug("Bootstrapping %d resamples with %d workers", self._resamples, self.workers)
        return np.array(self.parallel_map(resample, range(self._resamples)))

    def fit(self, samples):
        """
        Fits the model to `samples` (an OverlapSampleSet or an array of overlaps).

        :return:
            FitResult. A fit that did not converge is returned with `converged=False` and the optimizer diagnostics.
        """
        omega = _values(samples)
        n = omega.size

        if n < rcParams["estimation.min_samples"]:
            raise ValueError(f"At least {rcParams['estimation.min_samples']} samples are needed, got {n}")

        omega = np.maximum(omega, OMEGA_MIN)

        starts = self._starts()
        results = self.parallel_map(lambda start: self._minimize(omega, start), starts)

        for start, candidate in zip(starts, results):
            if not candidate.success:
                logger.debug("L-BFGS-B from %s stopped: %s", start.tolist(), candidate.message)

        best = int(np.argmin([candidate.fun for candidate in results]))
        result = results[best]
        logger.debug("Best optimum from grid start %s among %d", starts[best].tolist(), len(starts))

        theta = np.array(result.x, dtype=float)
        projected_gradient = self._projected_gradient(theta, omega)
        converged = bool(result.success) or projected_gradient < rcParams["estimation.gtol"]

        diagnostics = {
            "message": str(result.message),
            "iterations": int(result.nit),
            "evaluations": int(result.nfev),
            "projected_gradient": projected_gradient,
        }

        hessian = self._hessian(theta, omega) * n
        eigenvalues = np.linalg.eigvalsh(hessian)
        well_conditioned = eigenvalues.min() > 0 and eigenvalues.max() / eigenvalues.min() < MAX_CONDITION
        diagnostics["hessian_eigenvalues"] = eigenvalues.tolist()

        covariance = np.linalg.inv(hessian) if well_conditioned else None
        error_method = "observed_information"
        bootstrap_se = None

        if self._bootstrap or not well_conditioned:
            estimates = self._bootstrap_estimates(omega, theta)
            bootstrap_covariance = np.atleast_2d(np.cov(estimates, rowvar=False))
            bootstrap_se = np.sqrt(np.diag(bootstrap_covariance)).tolist()

            if covariance is None:
                covariance = bootstrap_covariance
                error_method = "bootstrap"
                logger.info("Observed information is near-singular; standard errors come from the bootstrap")

        se = np.sqrt(np.abs(np.diag(covariance)))
        params = self._params(theta)

        if not converged:
            warnings.warn(f"Maximum-likelihood fit did not converge: {result.message}")

        fit = FitResult(
            ensemble=self._ensemble,
            mode=self._mode,
            alpha_hat=params.alpha,
            beta_hat=params.beta,
            alpha_se=float(se[0]),
            beta_se=float(se[1]) if len(se) > 1 else 0.0,
            covariance=np.asarray(covariance).tolist(),
            log_likelihood=float(-n * result.fun),
            n_samples=int(n),
            ks_statistic=ks_statistic(omega, params),
            converged=converged,
            error_method=error_method,
            bootstrap_se=bootstrap_se,
            diagnostics=diagnostics,
        )

        logger.info("%s", fit)
        return fit

    def __repr__(self):
        return f"MaximumLikelihoodFit({self._ensemble}; {self._mode}; bounds {self.bounds})"

    def __str__(self):
        return self.__repr__()


def mle_fit(samples, ensemble, mode="alpha_only", seed=0, workers=None, bootstrap=False, resamples=None):
    """
    Maximum-likelihood estimate of (alpha, beta) from a sample of overlaps.

    :param samples:
        OverlapSampleSet or array with at least rcParams["estimation.min_samples"] non-negative overlaps.

    :param ensemble:
        EnsembleKind (or its name) of the model density.

    :param mode:
        "alpha_only" or "alpha_beta".
    """
    return MaximumLikelihoodFit(ensemble, mode=mode, seed=seed, workers=workers, bootstrap=bootstrap,
                                resamples=resamples).fit(samples)
