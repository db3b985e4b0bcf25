"""
Experiment pipelines
====================

Each experiment writes its CSV tables (with sidecars) and JSON reports into the output directory and returns the
mapping file name -> content hash. Every random draw comes from a stream derived from the configuration seed.
"""
import logging
import math

import numpy as np
import pandas as pd

import anticoncentration
from anticoncentration.base.lab_class import LabClass
from anticoncentration.circuit import (Architecture, CircuitSpec, CircuitEnsemble, OverlapSampleSet, SamplingMode)
from anticoncentration.closed_forms import (haar_ipr, participation_entropy, porter_thomas_pdf, RmpsSpec,
                                            rmps_ipr_exact, rmps_ipr_scaling_form, rmps_scaling_params, RpmSpec,
                                            rpm_ipr_exact, rpm_ipr_asymptotic, rpm_scaling_params, INFINITE_DIMENSION)
from anticoncentration.distribution import pdf
from anticoncentration.ensemble import EnsembleKind
from anticoncentration.estimation import (mle_fit, ks_pvalue, fit_size_difference, fits_per_size, collapse_variable,
                                          XebExperiment)
from anticoncentration.exceptions import CapacityExceeded, ConfigError
from anticoncentration.harness.run_manifest import RunManifest
from anticoncentration.replica import delta_s2_series, estimate_subleading_constant
from anticoncentration.utils.table_io import write_table, write_json
from anticoncentration.utils.time import now


logger = logging.getLogger(__name__)


def _spec_error(e):
    return ConfigError(f"Invalid parameters: {e}", [f"params: {e}"])


class Experiment(LabClass):
    """
    Base pipeline. Subclasses implement `run(out)`.
    """
    name = None

    def __init__(self, config):
        super().__init__(config.seed, workers=config.workers)
        self._config = config
        self._params = config.params

    @property
    def config(self):
        return self._config

    @property
    def params(self):
        return self._params

    def _meta(self, **fields):
        meta = {"experiment": self.name, "config_digest": self._config.digest(), "seed": self.seed}
        meta.update(fields)
        return meta

    def run(self, out):
        raise NotImplementedError()

    def __repr__(self):
        return f"{type(self).__name__}(seed={self.seed}; workers={self.workers})"

    def __str__(self):
        return self.__repr__()


class HaarIprExperiment(Experiment):
    name = "haar-ipr"

    def run(self, out):
        ensemble = EnsembleKind.parse(self.params["ensemble"])
        rows = []

        for D in self.params["D"]:
            for k in self.params["k"]:
                ipr = haar_ipr(ensemble, D, k)
                rows.append({"ensemble": ensemble.value, "D": D, "k": k, "ipr": ipr,
                             "participation_entropy": participation_entropy(ipr, k) if k > 1 else float("nan")})

        return write_table(out / "haar_ipr.csv", pd.DataFrame(rows), meta=self._meta())


class RmpsExperiment(Experiment):
    name = "rmps"

    def run(self, out):
        rows = []

        for chi in self.params["chi"]:
            for N in self.params["N"]:
                try:
                    spec = RmpsSpec(self.params["d"], chi, N, self.params["ensemble"])
                except ValueError as e:
                    raise _spec_error(e) from e

                scaling = rmps_scaling_params(spec)
                for k in self.params["k"]:
                    exact = rmps_ipr_exact(spec, k)
                    rows.append(dict({"ensemble": spec.ensemble.value, "d": spec.d, "chi": chi, "N": N, "k": k,
                                      "ipr_exact": exact, "ipr_scaling_form": rmps_ipr_scaling_form(spec, k),
                                      "ratio_to_haar": exact / haar_ipr(spec.ensemble, spec.D, k)},
                                     **scaling.to_dict()))

        return write_table(out / "rmps.csv", pd.DataFrame(rows), meta=self._meta())


class RpmExperiment(Experiment):
    name = "rpm"

    def run(self, out):
        rows = []

        for N in self.params["N"]:
            for t in self.params["t"]:
                for k in self.params["k"]:
                    try:
                        spec = RpmSpec(self.params["epsilon"], t, N, k)
                    except ValueError as e:
                        raise _spec_error(e) from e

                    raw_sum, ratio = rpm_ipr_exact(spec)
                    scaling = rpm_scaling_params(spec)
                    rows.append(dict({"N": N, "t": t, "k": k, "raw_sum": raw_sum, "ratio_to_haar": ratio,
                                      "asymptotic": rpm_ipr_asymptotic(k, scaling.x, N)}, **scaling.to_dict()))

        return write_table(out / "rpm.csv", pd.DataFrame(rows), meta=self._meta())


class SimulateExperiment(Experiment):
    name = "simulate"

    def _mode(self):
        if self.params["sampling"] == "full":
            return SamplingMode.full_enumeration()
        return SamplingMode.uniform_bitstrings(self.params["n_bitstrings"])

    def run(self, out):
        p = self.params
        rows = []
        samples = None

        for t in p["t"]:
            try:
                spec = CircuitSpec(p["architecture"], p["N"], d=p["d"], t=t, chi=p["chi"], ensemble=p["ensemble"])
            except ValueError as e:
                raise _spec_error(e) from e

            driver = CircuitEnsemble(spec, seed=self.task_seed("depth", t), workers=self.workers)
            averages = driver.run(p["realizations"], self._mode())
            row = {"t": t, "purity": averages.purity, "purity_se": averages.purity_se,
                   "annealed_S2": averages.annealed_s2(), "haar_I2": haar_ipr(spec.ensemble, spec.D, 2)}
            for k in sorted(averages.ipr):
                row[f"I{k}"] = averages.ipr[k]
                row[f"I{k}_se"] = averages.ipr_se[k]
            rows.append(row)
            samples = averages.samples

        outputs = write_table(out / "ipr.csv", pd.DataFrame(rows), meta=self._meta())
        outputs.update(samples.to_csv(out / "samples.csv"))
        return outputs


class RtnExperiment(Experiment):
    name = "rtn"

    def _series(self):
        p = self.params
        return delta_s2_series(p["N"], p["t_max"], p["ensemble"], method=p["method"], d=p["d"], workers=self.workers)

    def run(self, out):
        series = self._series()
        outputs = series.to_csv(out / "delta_s2.csv", meta=self._meta())

        constants = {}
        for N in series.sizes:
            try:
                constants[str(N)] = estimate_subleading_constant(series, N, d=self.params["d"])
            except ValueError:
                logger.debug("No depths to estimate the subleading constant for N=%d", N)

        outputs["subleading.json"] = write_json(out / "subleading.json", self._meta(subleading_constant=constants))
        return outputs


class CollapseExperiment(RtnExperiment):
    """
    Annealed entropy series with a fixed-tau data collapse. Without an explicit `tau` the timescale comes from the
    difference between the largest and the smallest size (or from the single size given). The fit of every size on
    its own is reported next to it.
    """
    name = "collapse"

    def run(self, out):
        series = self._series()
        outputs = series.to_csv(out / "delta_s2.csv", meta=self._meta())

        window = tuple(self.params["window"]) if self.params["window"] else None
        per_size = fits_per_size(series, window=window)

        if len(series.sizes) > 1:
            decay = fit_size_difference(series, window=window)
            fitted_sizes = [series.sizes[0], series.sizes[-1]]
        else:
            decay = per_size[series.sizes[0]]
            fitted_sizes = list(series.sizes)

        tau = self.params["tau"] or decay.tau
        logger.info("Decay timescale %.4f from sizes %s; per size %s", decay.tau, fitted_sizes,
                    {N: round(fit.tau, 4) for N, fit in per_size.items()})

        frame = series.dataframe[["N", "t", "delta_S2"]].copy()
        frame["x"] = collapse_variable(frame["N"], frame["t"], tau)
        frame["delta_S2_over_N"] = frame["delta_S2"] / frame["N"]

        report = self._meta(fit=decay.to_dict(), fitted_sizes=fitted_sizes, tau_used=tau,
                            tau_mode="fixed" if self.params["tau"] else "fitted",
                            per_size={str(N): fit.to_dict() for N, fit in per_size.items()})
        outputs["decay_fit.json"] = write_json(out / "decay_fit.json", report)
        outputs.update(write_table(out / "collapse.csv", frame, meta=self._meta(tau=tau)))
        return outputs


class FitExperiment(Experiment):
    name = "fit"

    def run(self, out):
        try:
            samples = OverlapSampleSet.from_csv(self.params["samples"])
        except (OSError, ValueError) as e:
            raise ConfigError(f"Cannot load samples: {e}", [f"params.samples: {e}"]) from e

        fit = mle_fit(samples, self.params["ensemble"], mode=self.params["mode"], seed=self.seed,
                      workers=self.workers, bootstrap=self.params["bootstrap"])

        report = self._meta(fit=fit.to_dict(), ks_pvalue=ks_pvalue(fit.ks_statistic, fit.n_samples),
                            samples_meta=samples.meta)
        return {"fit.json": write_json(out / "fit.json", report)}


class DistributionExperiment(Experiment):
    """
    Overlaps of brickwork circuits at fixed (N, t), fitted with the universal distribution and histogrammed next to
    the fitted and the Porter-Thomas densities.
    """
    name = "distribution"

    def run(self, out):
        p = self.params
        spec = CircuitSpec(Architecture.BRICKWORK, p["N"], d=p["d"], t=p["t"], ensemble=p["ensemble"])
        per_realization = math.ceil(p["samples"] / p["realizations"])

        driver = CircuitEnsemble(spec, seed=self.task_seed("circuits"), workers=self.workers)
        averages = driver.run(p["realizations"], SamplingMode.uniform_bitstrings(per_realization))
        samples = OverlapSampleSet(averages.samples.samples[:p["samples"]], meta=averages.samples.meta)

        fit = mle_fit(samples, spec.ensemble, mode=p["mode"], seed=self.task_seed("fit"), workers=self.workers)

        omega = samples.samples
        edges = np.linspace(0.0, float(np.quantile(omega, 0.999)), p["bins"] + 1)
        counts, _ = np.histogram(omega, bins=edges)
        middle = (edges[:-1] + edges[1:]) / 2
        histogram = pd.DataFrame({
            "omega_lo": edges[:-1],
            "omega_hi": edges[1:],
            "omega_mid": middle,
            "empirical": counts / (omega.size * np.diff(edges)),
            "model_fit": pdf(middle, fit.params),
            "porter_thomas": porter_thomas_pdf(spec.ensemble, INFINITE_DIMENSION, middle),
        })

        significance = fit.beta_hat / fit.beta_se if fit.beta_se > 0 else float("nan")
        outputs = write_table(out / "histogram.csv", histogram, meta=self._meta(spec=spec.to_dict()))
        outputs.update(samples.to_csv(out / "samples.csv"))
        outputs["fit.json"] = write_json(out / "fit.json", self._meta(fit=fit.to_dict(), beta_significance=significance,
                                                                        ks_pvalue=ks_pvalue(fit.ks_statistic,
                                                                                            fit.n_samples)))
        return outputs


class XebExperimentPipeline(Experiment):
    """
    For every depth: fits (alpha, beta) on the noiseless circuit ensemble, then scores bitstrings of an ensemble of
    noisy circuits.
    """
    name = "xeb"

    def run(self, out):
        p = self.params
        rows = []

        for t in p["t"]:
            spec = CircuitSpec(Architecture.BRICKWORK, p["N"], d=p["d"], t=t)
            driver = CircuitEnsemble(spec, seed=self.task_seed("fit", t), workers=self.workers)
            averages = driver.run(p["fit_realizations"], SamplingMode.full_enumeration())
            fit = mle_fit(averages.samples, spec.ensemble, mode="alpha_beta", seed=self.task_seed("bootstrap", t),
                          workers=self.workers)

            experiment = XebExperiment(p["N"], t, p["epsilon_noise"], d=p["d"], circuits=p["circuits"],
                                       trajectories=p["trajectories"], seed=self.task_seed("xeb", t),
                                       workers=self.workers)
            report = experiment.run(fit, p["n_bitstrings"])
            row = report.to_dict()
            row.pop("warnings")
            row.update(converged=fit.converged, annealed_I2=averages.ipr[2])
            rows.append(row)

        return write_table(out / "xeb.csv", pd.DataFrame(rows), meta=self._meta())


class ExperimentFactory:

    EXPERIMENT_MAP = {
        "haar-ipr": HaarIprExperiment,
        "rmps": RmpsExperiment,
        "rpm": RpmExperiment,
        "simulate": SimulateExperiment,
        "rtn": RtnExperiment,
        "collapse": CollapseExperiment,
        "fit": FitExperiment,
        "distribution": DistributionExperiment,
        "xeb": XebExperimentPipeline,
    }

    def build(self, config):
        return self.EXPERIMENT_MAP[config.experiment](config)


def run_experiment(config):
    """
    Runs the pipeline named by `config` and writes its outputs and `manifest.json` into `config.out`.

    :return:
        RunManifest.
    """
    violations = config.capacity_violations
    if violations:
        message, bound = violations[0]
        raise CapacityExceeded(message, bound=bound)

    out = config.out
    out.mkdir(parents=True, exist_ok=True)

    experiment = ExperimentFactory().build(config)
    logger.info("Running %s into %s", experiment, out)

    started = now()
    outputs = experiment.run(out)
    finished = now()

    manifest = RunManifest(config.experiment, config.digest(), anticoncentration.__version__, started, finished,
                           outputs, config.seed)
    manifest.to_file(out)
    logger.info("%s", manifest)
    return manifest
