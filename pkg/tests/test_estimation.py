import json
import math
import tempfile
import unittest
from pathlib import Path
from unittest import mock

import numpy as np
import pandas as pd
from scipy import optimize

from anticoncentration.circuit import PureState, born_sample
from anticoncentration.config.config import rcParams
from anticoncentration.closed_forms import haar_ipr, brickwork_tau
from anticoncentration.distribution import UniversalParams, cdf, sample_overlaps
from anticoncentration.ensemble import EnsembleKind
from anticoncentration.estimation import (MaximumLikelihoodFit, mle_fit, ks_statistic, ks_pvalue,
                                          fit_decay_timescale, fit_size_difference, fits_per_size, fit_kappa,
                                          collapse_variable, XebExperiment, xeb_fidelity, reference_fidelity,
                                          universal_ipr2)
from anticoncentration.exceptions import EmptySampleError
from anticoncentration.replica import AnnealedSeries, contract_annealed_ipr2, delta_s2_series


class TestDecayFit(unittest.TestCase):

    def setUp(self):
        self.series = [(t, 16 * 0.8 ** t) for t in range(21)]

    def test_exact_exponential(self):
        fit = fit_decay_timescale(self.series, N=16)
        self.assertAlmostEqual(fit.tau, brickwork_tau(2), delta=1e-9)
        self.assertEqual(fit.window, (10.0, 20.0))
        self.assertEqual(len(fit.points), 11)
        self.assertLess(fit.residual, 1e-10)
        self.assertAlmostEqual(fit.intercept, 0.0, delta=1e-9)

    def test_scale_invariance(self):
        scaled = [(t, 7.5 * value) for t, value in self.series]
        self.assertAlmostEqual(fit_decay_timescale(scaled, N=16).tau, fit_decay_timescale(self.series, N=16).tau,
                               delta=1e-12)

    def test_explicit_window(self):
        fit = fit_decay_timescale(self.series, N=16, window=(2, 6))
        self.assertEqual([t for t, _ in fit.points], [2, 3, 4, 5, 6])

    def test_invalid_series(self):
        with self.assertRaises(ValueError):
            fit_decay_timescale(self.series[:3])

        with self.assertRaises(ValueError):
            fit_decay_timescale([(t, 1.0 - 0.1 * t) for t in range(21)])

        with self.assertRaises(ValueError):
            fit_decay_timescale([(t, 2.0 ** (t / 3)) for t in range(12)])

    def test_annealed_series_needs_a_size(self):
        series = delta_s2_series([4, 6], 12, "Unitary")

        with self.assertRaises(ValueError):
            fit_decay_timescale(series)

        self.assertGreater(fit_decay_timescale(series, N=6).tau, 0)

    def test_size_difference_removes_edge_depletion(self):
        """
        Values (N - 2 sqrt(t)) (4/5)^t: the edge term speeds up every single-size decay but cancels between sizes.
        """
        rows = [{"ensemble": "Unitary", "N": N, "t": t, "annealed_I2": 1.0, "annealed_purity": 1.0,
                 "delta_S2": (N - 2 * math.sqrt(t)) * 0.8 ** t, "method": "exact", "trunc_error": 0.0}
                for N in (16, 20, 24) for t in range(31)]
        series = AnnealedSeries("Unitary", pd.DataFrame(rows))

        fit = fit_size_difference(series)
        self.assertAlmostEqual(fit.tau, brickwork_tau(2), delta=1e-9)
        self.assertEqual(fit.window, (20.0, 30.0))
        self.assertAlmostEqual(fit_size_difference(series, sizes=(24, 20), window=(4, 30)).tau, brickwork_tau(2),
                               delta=1e-9)

        per_size = fits_per_size(series)
        self.assertEqual(sorted(per_size), [16, 20, 24])
        self.assertTrue(all(per_size[N].tau < fit.tau for N in per_size))

        with self.assertRaises(ValueError):
            fit_size_difference(series, sizes=(20, 20))

    def test_kappa(self):
        fit = fit_decay_timescale(self.series, N=16)
        beta_series = [(t, 16 * 2.0 ** (-2.74 * t / fit.tau)) for t in range(4, 15)]
        with_kappa = fit_kappa(fit, beta_series, N=16, window=(4, 14))

        self.assertAlmostEqual(with_kappa.kappa, 2.74, delta=1e-9)
        self.assertEqual(with_kappa.tau, fit.tau)
        self.assertEqual(with_kappa.window, fit.window)

    def test_collapse_variable(self):
        tau = brickwork_tau(2)
        self.assertAlmostEqual(float(collapse_variable(16, tau, tau)), 8.0)
        np.testing.assert_allclose(collapse_variable([8, 16], [0, 2 * tau], tau), [8.0, 4.0])

    def test_report(self):
        fit = fit_decay_timescale(self.series, N=16)

        with tempfile.TemporaryDirectory() as directory:
            path = Path(directory) / "decay_fit.json"
            fit.to_json(path)
            stored = json.loads(path.read_text())

        self.assertAlmostEqual(stored["tau"], fit.tau)
        self.assertIsNone(stored["kappa"])


class TestKolmogorovSmirnov(unittest.TestCase):

    def test_matches_brute_force(self):
        params = UniversalParams("Unitary", alpha=0.2)
        values = sample_overlaps(UniversalParams("Unitary", alpha=0.4), 300, np.random.default_rng(2)).samples
        model = cdf(values, params)

        expected = 0.0
        for x, f in zip(values, model):
            below = np.sum(values < x) / values.size
            at_most = np.sum(values <= x) / values.size
            expected = max(expected, abs(at_most - f), abs(below - f))

        self.assertAlmostEqual(ks_statistic(values, params), expected, places=12)

    def test_model_quantiles(self):
        n = 500
        values = -np.log(1 - np.arange(1, n + 1) / (n + 1))
        self.assertLessEqual(ks_statistic(values, UniversalParams("Unitary")), 1 / (n + 1) + 1e-12)

    def test_empty_sample(self):
        with self.assertRaises(EmptySampleError):
            ks_statistic([], UniversalParams("Unitary"))

    def test_pvalue(self):
        self.assertAlmostEqual(ks_pvalue(0.0, 100), 1.0)
        self.assertGreater(ks_pvalue(0.05, 100), ks_pvalue(0.2, 100))
        self.assertLess(ks_pvalue(1.63 / math.sqrt(2000), 2000), 0.011)


def _within(test, estimate, se, expected, bands=4):
    test.assertLess(abs(estimate - expected), bands * se + 1e-12, f"{estimate} +- {se} vs {expected}")


class TestMaximumLikelihood(unittest.TestCase):

    def test_porter_thomas_sample(self):
        samples = sample_overlaps(UniversalParams("Unitary"), 20000, np.random.default_rng(10))
        fit = mle_fit(samples, "Unitary")

        self.assertTrue(fit.converged)
        self.assertEqual(fit.beta_hat, 0.0)
        self.assertGreaterEqual(fit.alpha_hat, 0.0)
        self.assertLess(fit.alpha_hat, 4 * fit.alpha_se + 1e-3)

    def test_alpha_recovery(self):
        for ensemble in EnsembleKind:
            samples = sample_overlaps(UniversalParams(ensemble, alpha=0.5), 20000, np.random.default_rng(11))
            fit = mle_fit(samples, ensemble)

            self.assertTrue(fit.converged)
            self.assertEqual(fit.error_method, "observed_information")
            _within(self, fit.alpha_hat, fit.alpha_se, 0.5)
            self.assertLess(fit.ks_statistic * math.sqrt(fit.n_samples), 2.0)

    def test_alpha_beta_recovery(self):
        params = UniversalParams("Unitary", alpha=0.3, beta=0.01)
        samples = sample_overlaps(params, 100000, np.random.default_rng(12))
        fit = mle_fit(samples, "Unitary", mode="alpha_beta")

        self.assertTrue(fit.converged)
        _within(self, fit.alpha_hat, fit.alpha_se, 0.3)
        _within(self, fit.beta_hat, fit.beta_se, 0.01)
        self.assertEqual(len(fit.covariance), 2)

    def test_bootstrap(self):
        samples = sample_overlaps(UniversalParams("Unitary", alpha=0.5), 2000, np.random.default_rng(13))
        serial = mle_fit(samples, "Unitary", seed=4, bootstrap=True, resamples=12)
        parallel = mle_fit(samples, "Unitary", seed=4, workers=2, bootstrap=True, resamples=12)

        self.assertEqual(serial.error_method, "observed_information")
        self.assertEqual(len(serial.bootstrap_se), 1)
        self.assertEqual(serial.bootstrap_se, parallel.bootstrap_se)
        self.assertTrue(0.5 < serial.bootstrap_se[0] / serial.alpha_se < 2)

    def test_every_grid_start_is_minimized(self):
        samples = sample_overlaps(UniversalParams("Unitary", alpha=0.3), 2000, np.random.default_rng(15))

        with mock.patch("anticoncentration.estimation.mle.optimize.minimize", wraps=optimize.minimize) as minimize:
            fit = mle_fit(samples, "Unitary", mode="alpha_beta", workers=1)

        self.assertEqual(minimize.call_count, 15)
        starts = sorted(tuple(call.args[1]) for call in minimize.call_args_list)
        self.assertEqual(starts[0], (0.0, 0.0))
        self.assertEqual(starts[-1], (2.0, 0.04))
        self.assertLess(fit.diagnostics["projected_gradient"], 1e-3)

    def test_convergence_tolerance_comes_from_rcparams(self):
        samples = sample_overlaps(UniversalParams("Unitary", alpha=0.3), 2000, np.random.default_rng(16))
        failed = optimize.OptimizeResult(x=np.array([0.3]), fun=1.0, success=False, message="stopped", nit=1, nfev=1)

        with mock.patch.object(MaximumLikelihoodFit, "_minimize", return_value=failed), \
                mock.patch.object(MaximumLikelihoodFit, "_projected_gradient", return_value=1e-6), \
                mock.patch.object(MaximumLikelihoodFit, "_hessian", return_value=np.eye(1)):
            with self.assertWarns(UserWarning):
                fit = mle_fit(samples, "Unitary", workers=1)
            self.assertFalse(fit.converged)

            with mock.patch.dict(rcParams, {"estimation.gtol": 1e-5}):
                self.assertTrue(mle_fit(samples, "Unitary", workers=1).converged)

    def test_recovery_on_the_validation_lattice(self):
        seed = 100
        for ensemble in EnsembleKind:
            for alpha in (0.0, 0.3, 0.8):
                for beta in (0.0, 0.01, 0.04):
                    seed += 1
                    planted = UniversalParams(ensemble, alpha=alpha, beta=beta)
                    samples = sample_overlaps(planted, 30000, np.random.default_rng(seed))
                    fit = mle_fit(samples, ensemble, mode="alpha_beta")

                    self.assertTrue(fit.converged, str(planted))
                    _within(self, fit.alpha_hat, fit.alpha_se, alpha, bands=3)
                    _within(self, fit.beta_hat, fit.beta_se, beta, bands=3)

    def test_standard_errors_agree_with_the_bootstrap(self):
        for ensemble in EnsembleKind:
            samples = sample_overlaps(UniversalParams(ensemble, alpha=0.3, beta=0.01), 20000,
                                      np.random.default_rng(17))
            fit = mle_fit(samples, ensemble, mode="alpha_beta", seed=5, bootstrap=True, resamples=24)

            for se, bootstrap_se in zip((fit.alpha_se, fit.beta_se), fit.bootstrap_se):
                self.assertTrue(0.5 < bootstrap_se / se < 2, f"{ensemble}: {se} vs {bootstrap_se}")

    def test_ks_detects_a_missing_beta(self):
        """
        Data with beta = 0.05 fitted with beta forced to 0: KS sqrt(n) grows with n. The matched model stays bounded.
        """
        planted = UniversalParams("Unitary", alpha=0.3, beta=0.05)
        forced, matched = [], []

        for n in (1000, 10000, 100000):
            samples = sample_overlaps(planted, n, np.random.default_rng(n))
            forced.append(mle_fit(samples, "Unitary", mode="alpha_only").ks_statistic * math.sqrt(n))

            samples = sample_overlaps(UniversalParams("Unitary", alpha=0.3, beta=0.01), n, np.random.default_rng(n + 1))
            matched.append(mle_fit(samples, "Unitary", mode="alpha_beta").ks_statistic * math.sqrt(n))

        self.assertGreater(forced[2], 2 * forced[0], forced)
        self.assertGreater(forced[2], 1.63, forced)
        self.assertTrue(all(value <= 2.0 for value in matched), matched)

    def test_too_few_samples(self):
        with self.assertRaises(ValueError):
            mle_fit(np.ones(50), "Unitary")

        with self.assertRaises(ValueError):
            MaximumLikelihoodFit("Unitary", mode="beta_only")

    def test_report(self):
        samples = sample_overlaps(UniversalParams("Orthogonal", alpha=0.2), 2000, np.random.default_rng(14))
        fit = mle_fit(samples, "Orthogonal")

        with tempfile.TemporaryDirectory() as directory:
            path = Path(directory) / "fit.json"
            fit.to_json(path)
            stored = json.loads(path.read_text())

        self.assertEqual(stored["ensemble"], "Orthogonal")
        self.assertEqual(stored["mode"], "alpha_only")
        self.assertEqual(fit.params, UniversalParams("Orthogonal", fit.alpha_hat, 0.0))


class TestXeb(unittest.TestCase):

    def test_reference_fidelity(self):
        self.assertAlmostEqual(reference_fidelity(0.01, 10, 4), 0.99 ** 20)
        self.assertEqual(reference_fidelity(0.0, 10, 4), 1.0)

    def test_universal_ipr2(self):
        D = 2.0 ** 10
        self.assertAlmostEqual(universal_ipr2(UniversalParams("Unitary"), D), haar_ipr("Unitary", D, 2))
        self.assertAlmostEqual(universal_ipr2(UniversalParams("Unitary", alpha=0.2, beta=0.01), D),
                               haar_ipr("Unitary", D, 2) * math.exp(0.16))
        self.assertAlmostEqual(universal_ipr2(UniversalParams("Orthogonal", alpha=0.2), D),
                               haar_ipr("Orthogonal", D, 2) * math.exp(0.4))

    def test_noiseless_xeb_is_the_collision_probability(self):
        experiment = XebExperiment(12, 30, 0.0, circuits=1, seed=3)
        state = experiment.ideal_state()
        report = experiment.run(UniversalParams("Unitary"), 20000)

        _within(self, report.xeb_value, report.xeb_se, state.D * np.sum(state.probabilities() ** 2) - 1)
        self.assertLess(abs(report.fidelity_estimate - 1), 0.25)
        self.assertEqual(report.reference_fidelity, 1.0)
        self.assertEqual(report.warnings, [])

    def test_fully_depolarized_xeb_vanishes(self):
        report = XebExperiment(12, 30, 1.0, seed=3).run(UniversalParams("Unitary"), 20000)
        _within(self, report.xeb_value, report.xeb_se, 0.0)

    def test_precision_warning(self):
        state = PureState.uniform(4)
        rng = np.random.default_rng(0)

        with self.assertWarns(UserWarning):
            report = xeb_fidelity(state, lambda n: born_sample(state, n, rng), UniversalParams("Unitary"), 100)

        self.assertEqual(len(report.warnings), 1)
        self.assertAlmostEqual(report.xeb_value, 0.0, places=12)

    def test_sampler_is_validated(self):
        state = PureState.uniform(3)

        with self.assertRaises(ValueError):
            xeb_fidelity(state, lambda n: np.zeros(n - 1, dtype=int), UniversalParams("Unitary"), 2000)

        with self.assertRaises(ValueError):
            xeb_fidelity(state, lambda n: np.full(n, 8), UniversalParams("Unitary"), 2000)

    def test_independent_of_worker_count(self):
        serial = XebExperiment(8, 6, 0.1, circuits=4, trajectories=8, seed=5, workers=1).sample_noisy(500)
        parallel = XebExperiment(8, 6, 0.1, circuits=4, trajectories=8, seed=5, workers=2).sample_noisy(500)
        np.testing.assert_array_equal(serial, parallel)
        self.assertEqual(serial.size, 500)

    def test_ensemble_average_of_the_collision_probability(self):
        experiment = XebExperiment(10, 8, 0.0, circuits=4, trajectories=4, seed=3)
        states = [experiment.ideal_state(r) for r in range(4)]
        collisions = [state.D * np.sum(state.probabilities() ** 2) for state in states]

        self.assertFalse(np.allclose(states[0].amplitudes, states[1].amplitudes))

        report = experiment.run(UniversalParams("Unitary"), 20000)
        _within(self, report.xeb_value, report.xeb_se, np.mean(collisions) - 1)
        self.assertEqual(report.circuits, 4)

    def test_trajectories_cover_every_circuit(self):
        with self.assertRaises(ValueError):
            XebExperiment(8, 4, 0.1, circuits=8, trajectories=4)

    def test_fidelity_estimator_tracks_the_noise_reference(self):
        """
        Averaged over circuits and normalized by the annealed D I_2 - 1, the XEB follows (1 - eps)^{tN/2} within 10%
        from depth 6 on, while the raw XEB at depth 4 is more than twice the reference.
        """
        N, D = 12, 2 ** 12

        for epsilon_total in (0.05, 0.1):
            epsilon = epsilon_total / N

            for t in (4, 6, 8):
                excess = math.log(contract_annealed_ipr2(N, t, "Unitary") / haar_ipr("Unitary", D, 2))
                experiment = XebExperiment(N, t, epsilon, circuits=200, trajectories=800, seed=11)
                report = experiment.run(UniversalParams("Unitary", alpha=excess), 80000)

                if t >= 6:
                    self.assertLess(abs(report.fidelity_estimate / report.reference_fidelity - 1), 0.1,
                                    f"eps N={epsilon_total}, t={t}: {report}")
                else:
                    self.assertGreater(report.xeb_value / report.reference_fidelity, 2, f"t={t}: {report}")


if __name__ == '__main__':
    unittest.main()
