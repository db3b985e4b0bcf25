import contextlib
import io
import json
import tempfile
import unittest
from pathlib import Path
from unittest import mock

import numpy as np
import pandas as pd

from anticoncentration.distribution import UniversalParams, sample_overlaps
from anticoncentration.exceptions import CapacityExceeded, ConfigError, NumericalFailure
from anticoncentration.harness import ExperimentConfig, EXPERIMENTS, validate_config, run_experiment
from anticoncentration.harness.cli import main


def _config(experiment, params, seed=7, **fields):
    return dict({"experiment": experiment, "seed": seed, "params": params}, **fields)


class HarnessTestCase(unittest.TestCase):

    def setUp(self):
        self._directory = tempfile.TemporaryDirectory()
        self.root = Path(self._directory.name)

    def tearDown(self):
        self._directory.cleanup()

    def write(self, name, struct):
        path = self.root / name
        path.write_text(struct if isinstance(struct, str) else json.dumps(struct))
        return path

    def cli(self, *argv):
        with contextlib.redirect_stdout(io.StringIO()), contextlib.redirect_stderr(io.StringIO()):
            return main(list(argv))


class TestExperimentConfig(HarnessTestCase):

    def test_defaults(self):
        config = ExperimentConfig(_config("rtn", {"N": [4, 6], "t_max": 10}))

        self.assertEqual(config.params["ensemble"], "Unitary")
        self.assertEqual(config.params["method"], "auto")
        self.assertEqual(config.params["d"], 2)
        self.assertEqual(config.out, Path("out"))
        self.assertEqual(config.capacity_violations, [])

    def test_seed_is_mandatory(self):
        with self.assertRaises(ConfigError) as context:
            ExperimentConfig({"experiment": "rtn", "params": {"N": [4], "t_max": 4}})

        self.assertTrue(any(line.startswith("seed:") for line in context.exception.diagnostics))

    def test_unknown_and_mistyped_fields(self):
        with self.assertRaises(ConfigError) as context:
            ExperimentConfig(_config("haar-ipr", {"D": "1024", "q": 3}, colour="blue"))

        diagnostics = context.exception.diagnostics
        self.assertIn("colour: unknown field", diagnostics)
        self.assertIn("params.q: unknown field", diagnostics)
        self.assertTrue(any(line.startswith("params.D: expected a non-empty list of integers") for line in diagnostics))

    def test_unknown_experiment(self):
        with self.assertRaises(ConfigError):
            ExperimentConfig(_config("benchmark", {}))

    def test_digest_ignores_workers_and_out(self):
        config = ExperimentConfig(_config("rtn", {"N": [4], "t_max": 6}))

        self.assertEqual(config.digest(), config.with_overrides(workers=3, out="elsewhere").digest())
        self.assertNotEqual(config.digest(), config.with_overrides(seed=8).digest())
        self.assertEqual(config.with_overrides(out="elsewhere").out, Path("elsewhere"))


class TestValidate(HarnessTestCase):

    def test_valid(self):
        path = self.write("rtn.json", _config("rtn", {"N": [4, 6], "t_max": 10}))
        self.assertEqual(validate_config(path), [])

    def test_odd_replica_size(self):
        path = self.write("rtn.json", _config("rtn", {"N": [6, 7], "t_max": 10}))
        self.assertEqual(validate_config(path), ["params.N: the replica network needs even N >= 2, got 7"])

    def test_statevector_capacity(self):
        path = self.write("simulate.json", _config("simulate", {"N": 40, "t": [4]}))
        diagnostics = validate_config(path)

        self.assertEqual(len(diagnostics), 1)
        self.assertTrue(diagnostics[0].startswith("params.N:"))
        self.assertIn("2^26", diagnostics[0])

    def test_exact_replica_capacity(self):
        path = self.write("rtn.json", _config("rtn", {"N": [30], "t_max": 10, "method": "exact"}))
        self.assertIn("tensor_train", validate_config(path)[0])

        path = self.write("rtn_tt.json", _config("rtn", {"N": [30], "t_max": 10, "method": "tensor_train"}))
        self.assertEqual(validate_config(path), [])

        path = self.write("rtn_auto.json", _config("rtn", {"N": [30], "t_max": 10}))
        self.assertEqual(validate_config(path), [])

    def test_method_object(self):
        method = {"kind": "tensor_train", "tol": 1e-8, "max_bond": 512}
        path = self.write("collapse.json", _config("collapse", {"N": [16, 20, 24], "t_max": 30, "method": method}))
        self.assertEqual(validate_config(path), [])

        for bad in ({"kind": "dense"}, {"kind": "tensor_train", "max_bond": 0}, {"kind": "tensor_train", "tol": -1},
                    {"kind": "tensor_train", "chi": 8}):
            path = self.write("bad.json", _config("rtn", {"N": [4], "t_max": 4, "method": bad}))
            diagnostics = validate_config(path)

            self.assertEqual(len(diagnostics), 1)
            self.assertTrue(diagnostics[0].startswith("params.method:"))

    def test_semantic_checks(self):
        path = self.write("rpm.json", _config("rpm", {"epsilon": 0.5, "t": [2, 3], "N": [8]}))
        self.assertEqual(validate_config(path), ["params.t: depths must be even and non-negative, got 3"])

        path = self.write("xeb.json", _config("xeb", {"N": 8, "t": [4], "epsilon_noise": 1.5}))
        self.assertEqual(validate_config(path), ["params.epsilon_noise: must lie in [0, 1], got 1.5"])

        path = self.write("xeb_circuits.json", _config("xeb", {"N": 8, "t": [4], "epsilon_noise": 0.01,
                                                               "circuits": 32, "trajectories": 16}))
        self.assertEqual(validate_config(path), ["params.trajectories: at least one trajectory per circuit is needed, "
                                                 "got 16 for 32 circuits"])

        path = self.write("simulate.json", _config("simulate", {"N": 6, "t": [0], "architecture": "Staircase"}))
        self.assertEqual(validate_config(path), ["params.chi: Staircase circuits need a bond dimension"])

    def test_parse_error_has_a_position(self):
        path = self.write("broken.json", '{\n  "experiment": "rtn",\n  "seed": 7,,\n}')
        diagnostics = validate_config(path)

        self.assertEqual(len(diagnostics), 1)
        self.assertTrue(diagnostics[0].startswith("line 3 column"))


class TestRunExperiment(HarnessTestCase):

    def run_config(self, name, struct):
        return run_experiment(ExperimentConfig(struct).with_overrides(out=self.root / name))

    def test_haar_ipr(self):
        manifest = self.run_config("haar", _config("haar-ipr", {"D": [4, 1024], "k": [2]}))
        self.assertEqual(sorted(manifest.outputs), ["haar_ipr.csv", "haar_ipr.json"])

        table = (self.root / "haar" / "haar_ipr.csv").read_text().splitlines()
        self.assertEqual(table[0], "ensemble,D,k,ipr,participation_entropy")
        self.assertAlmostEqual(float(table[1].split(",")[3]), 0.4, places=14)

        stored = json.loads((self.root / "haar" / "manifest.json").read_text())
        self.assertEqual(stored["outputs"], manifest.outputs)
        self.assertEqual(stored["seed"], 7)
        self.assertGreaterEqual(stored["elapsed_seconds"], 0)
        self.assertEqual(stored["started"][10], "T")

    def test_same_hashes_for_any_worker_count(self):
        struct = _config("simulate", {"N": 6, "t": [2, 4], "realizations": 6, "sampling": "uniform",
                                      "n_bitstrings": 64})
        serial = self.run_config("serial", dict(struct, workers=1))
        parallel = self.run_config("parallel", dict(struct, workers=2))

        self.assertEqual(serial.outputs, parallel.outputs)
        self.assertEqual(serial.config_digest, parallel.config_digest)

    def test_seed_changes_the_outputs(self):
        struct = _config("simulate", {"N": 4, "t": [3], "realizations": 4})
        first = self.run_config("first", struct)
        second = self.run_config("second", dict(struct, seed=8))
        self.assertNotEqual(first.outputs["samples.csv"], second.outputs["samples.csv"])

    def test_rtn(self):
        manifest = self.run_config("rtn", _config("rtn", {"N": [4, 6], "t_max": 8}))
        self.assertIn("delta_s2.csv", manifest.outputs)

        constants = json.loads((self.root / "rtn" / "subleading.json").read_text())["subleading_constant"]
        self.assertEqual(sorted(constants), ["4", "6"])

    def test_collapse(self):
        self.run_config("collapse", _config("collapse", {"N": [8, 10], "t_max": 16}))
        report = json.loads((self.root / "collapse" / "decay_fit.json").read_text())

        self.assertEqual(report["tau_mode"], "fitted")
        self.assertEqual(report["fitted_sizes"], [8, 10])
        self.assertEqual(sorted(report["per_size"]), ["10", "8"])
        self.assertEqual(report["tau_used"], report["fit"]["tau"])

        self.run_config("fixed", _config("collapse", {"N": [8, 10], "t_max": 16, "tau": 3.11}))
        report = json.loads((self.root / "fixed" / "decay_fit.json").read_text())
        self.assertEqual((report["tau_mode"], report["tau_used"]), ("fixed", 3.11))

    def test_collapse_at_desk_scale(self):
        manifest = self.run_config("desk", _config("collapse", {"ensemble": "Unitary", "N": [16, 20, 24],
                                                                "t_max": 30}))
        self.assertIn("delta_s2.csv", manifest.outputs)

        report = json.loads((self.root / "desk" / "decay_fit.json").read_text())
        self.assertAlmostEqual(report["tau_used"], 3.11, delta=0.1)

        per_size = [report["per_size"][str(N)]["tau"] for N in (16, 20, 24)]
        self.assertTrue(per_size[0] < per_size[1] < per_size[2] < report["tau_used"], per_size)

        methods = pd.read_csv(self.root / "desk" / "delta_s2.csv").groupby("N")["method"].first()
        self.assertEqual(methods.to_dict(), {16: "exact", 20: "exact", 24: "tensor_train"})

    def test_fit(self):
        samples = sample_overlaps(UniversalParams("Unitary", alpha=0.4), 3000, np.random.default_rng(1))
        samples.to_csv(self.root / "overlaps.csv")

        self.run_config("fit", _config("fit", {"samples": str(self.root / "overlaps.csv"), "mode": "alpha_only"}))
        report = json.loads((self.root / "fit" / "fit.json").read_text())

        self.assertEqual(report["fit"]["mode"], "alpha_only")
        self.assertTrue(0 <= report["ks_pvalue"] <= 1)
        self.assertEqual(report["samples_meta"]["source"], "universal")

    def test_xeb(self):
        self.run_config("xeb", _config("xeb", {"N": 6, "t": [6], "epsilon_noise": 0.05, "n_bitstrings": 2000,
                                               "circuits": 4, "trajectories": 8, "fit_realizations": 8}))
        table = pd.read_csv(self.root / "xeb" / "xeb.csv")

        self.assertEqual(table["circuits"].tolist(), [4])
        self.assertEqual(table["n_bitstrings"].tolist(), [2000])
        self.assertAlmostEqual(table["reference_fidelity"][0], 0.95 ** 18)

    def test_missing_samples(self):
        with self.assertRaises(ConfigError):
            self.run_config("fit", _config("fit", {"samples": str(self.root / "absent.csv")}))

    def test_capacity(self):
        with self.assertRaises(CapacityExceeded) as context:
            self.run_config("big", _config("simulate", {"N": 40, "t": [1]}))

        self.assertEqual(context.exception.bound, 2 ** 26)
        self.assertFalse((self.root / "big").exists())


class TestCommandLine(HarnessTestCase):

    def test_list(self):
        output = io.StringIO()
        with contextlib.redirect_stdout(output):
            self.assertEqual(main(["list"]), 0)

        self.assertEqual([line.split()[0] for line in output.getvalue().splitlines()], EXPERIMENTS)

    def test_validate(self):
        good = self.write("good.json", _config("rtn", {"N": [4], "t_max": 4}))
        bad = self.write("bad.json", _config("rtn", {"N": [5], "t_max": 4}))

        self.assertEqual(self.cli("validate", "--config", str(good)), 0)
        self.assertEqual(self.cli("validate", "--config", str(bad)), 2)

    def test_exit_codes(self):
        big = self.write("big.json", _config("simulate", {"N": 40, "t": [1]}, out=str(self.root / "big")))
        rtn = self.write("rtn.json", _config("rtn", {"N": [4], "t_max": 4}, out=str(self.root / "rtn")))

        self.assertEqual(self.cli("simulate", "--config", str(big)), 3)
        self.assertEqual(self.cli("collapse", "--config", str(rtn)), 2)
        self.assertEqual(self.cli("rtn", "--config", str(self.root / "absent.json")), 2)
        self.assertEqual(self.cli("rtn", "--config", str(rtn)), 0)
        self.assertTrue((self.root / "rtn" / "manifest.json").exists())

    def test_numerical_failure(self):
        rtn = self.write("rtn.json", _config("rtn", {"N": [4], "t_max": 4}, out=str(self.root / "rtn")))

        with mock.patch("anticoncentration.harness.cli.run_experiment",
                        side_effect=NumericalFailure("diverged", diagnostics={"step": 3})):
            self.assertEqual(self.cli("rtn", "--config", str(rtn)), 4)

    def test_overrides(self):
        rtn = self.write("rtn.json", _config("rtn", {"N": [4], "t_max": 4}))
        out = self.root / "override"

        self.assertEqual(self.cli("rtn", "--config", str(rtn), "--seed", "3", "--workers", "2", "--out", str(out)), 0)
        self.assertEqual(json.loads((out / "manifest.json").read_text())["seed"], 3)


if __name__ == '__main__':
    unittest.main()
