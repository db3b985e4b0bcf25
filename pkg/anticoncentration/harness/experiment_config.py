"""
Experiment configuration
========================

A configuration is a JSON object:

    {
        "experiment": "collapse",
        "seed": 7,
        "workers": 4,
        "out": "runs/collapse",
        "params": {"ensemble": "Unitary", "N": [16, 20, 24], "t_max": 30}
    }

`seed` is mandatory. `params` is validated against the schema of the experiment; unknown fields are rejected.
The replica `method` is "exact", "tensor_train", "auto" (the default: exact while the dense vector fits the cap) or an
object such as {"kind": "tensor_train", "tol": 1e-8, "max_bond": 512}.
Schema violations are reported as `<field path>: <message>` strings. Capacity violations (statevectors or exact
replica vectors above the configured caps) are kept apart so that the harness can map them to their own exit code.
"""
import json
import math
from pathlib import Path

from anticoncentration.circuit.circuit_spec import Architecture
from anticoncentration.config.config import rcParams
from anticoncentration.ensemble import EnsembleKind
from anticoncentration.exceptions import ConfigError
from anticoncentration.replica.contraction import ContractionMethod
from anticoncentration.utils.hashing import digest


REQUIRED = object()

CHOICES = {
    "ensemble": [kind.value for kind in EnsembleKind],
    "architecture": [architecture.value for architecture in Architecture],
    "method": ["exact", "tensor_train", "auto"],
    "sampling": ["full", "uniform"],
    "fit_mode": ["alpha_only", "alpha_beta"],
}

_REPLICA = {
    "ensemble": ("ensemble", "Unitary"),
    "N": ("ints", REQUIRED),
    "t_max": ("int", REQUIRED),
    "d": ("int", 2),
    "method": ("method", "auto"),
}

SCHEMAS = {
    "haar-ipr": {
        "ensemble": ("ensemble", "Unitary"),
        "D": ("ints", REQUIRED),
        "k": ("ints", [2, 3, 4]),
    },
    "rmps": {
        "ensemble": ("ensemble", "Unitary"),
        "d": ("int", 2),
        "chi": ("ints", REQUIRED),
        "N": ("ints", REQUIRED),
        "k": ("ints", [2, 3]),
    },
    "rpm": {
        "epsilon": ("float", REQUIRED),
        "t": ("ints", REQUIRED),
        "N": ("ints", REQUIRED),
        "k": ("ints", [2, 3]),
    },
    "simulate": {
        "architecture": ("architecture", "Brickwork"),
        "ensemble": ("ensemble", "Unitary"),
        "N": ("int", REQUIRED),
        "d": ("int", 2),
        "t": ("ints", REQUIRED),
        "chi": ("int", None),
        "realizations": ("int", 16),
        "sampling": ("sampling", "full"),
        "n_bitstrings": ("int", 1024),
    },
    "rtn": dict(_REPLICA),
    "collapse": dict(_REPLICA, tau=("float", None), window=("floats", None)),
    "fit": {
        "samples": ("str", REQUIRED),
        "ensemble": ("ensemble", "Unitary"),
        "mode": ("fit_mode", "alpha_beta"),
        "bootstrap": ("bool", False),
    },
    "distribution": {
        "ensemble": ("ensemble", "Unitary"),
        "N": ("int", REQUIRED),
        "t": ("int", REQUIRED),
        "d": ("int", 2),
        "samples": ("int", REQUIRED),
        "realizations": ("int", 64),
        "mode": ("fit_mode", "alpha_beta"),
        "bins": ("int", 200),
    },
    "xeb": {
        "N": ("int", REQUIRED),
        "t": ("ints", REQUIRED),
        "d": ("int", 2),
        "epsilon_noise": ("float", REQUIRED),
        "n_bitstrings": ("int", 10000),
        "circuits": ("int", 16),
        "trajectories": ("int", 64),
        "fit_realizations": ("int", 32),
    },
}

EXPERIMENTS = sorted(SCHEMAS)

TOP_LEVEL = ("experiment", "seed", "workers", "out", "params")


def _kind_matches(value, kind):
    if kind == "int":
        return isinstance(value, int) and not isinstance(value, bool)
    if kind == "float":
        return isinstance(value, (int, float)) and not isinstance(value, bool) and math.isfinite(value)
    if kind == "str":
        return isinstance(value, str)
    if kind == "bool":
        return isinstance(value, bool)
    if kind == "ints":
        return isinstance(value, list) and len(value) > 0 and all(_kind_matches(v, "int") for v in value)
    if kind == "floats":
        return isinstance(value, list) and len(value) > 0 and all(_kind_matches(v, "float") for v in value)
    if kind == "method":
        return _method_matches(value)
    return isinstance(value, str) and value in CHOICES[kind]


def _method_matches(value):
    """
    A contraction method is a name or an object {"kind", "tol", "max_bond"} with optional tol and max_bond.
    """
    if isinstance(value, str):
        return value in CHOICES["method"]

    if not isinstance(value, dict) or value.get("kind") not in CHOICES["method"]:
        return False
    if set(value) - {"kind", "tol", "max_bond"}:
        return False

    tol, max_bond = value.get("tol"), value.get("max_bond")
    if tol is not None and not (_kind_matches(tol, "float") and tol >= 0):
        return False
    return max_bond is None or (_kind_matches(max_bond, "int") and max_bond >= 1)


def _describe(kind):
    if kind == "method":
        return f"one of {CHOICES['method']} or an object {{\"kind\", \"tol\", \"max_bond\"}}"
    if kind in CHOICES:
        return f"one of {CHOICES[kind]}"
    return {"ints": "a non-empty list of integers", "floats": "a non-empty list of numbers"}.get(kind, f"a {kind}")


def _check_params(experiment, params):
    """
    Fills defaults and returns (normalized params, diagnostics).
    """
    schema = SCHEMAS[experiment]
    diagnostics = [f"params.{name}: unknown field" for name in sorted(set(params) - set(schema))]
    normalized = {}

    for name, (kind, default) in schema.items():
        if name not in params or params[name] is None:
            if default is REQUIRED:
                diagnostics.append(f"params.{name}: required field missing")
            normalized[name] = default if default is not REQUIRED else None
            continue

        value = params[name]
        if not _kind_matches(value, kind):
            diagnostics.append(f"params.{name}: expected {_describe(kind)}, got {value!r}")
            normalized[name] = None
            continue

        normalized[name] = float(value) if kind == "float" else value

    return normalized, diagnostics


def _positive(params, names, diagnostics, minimum=1):
    for name in names:
        values = params.get(name)
        values = values if isinstance(values, list) else [values]
        for value in values:
            if value is not None and value < minimum:
                diagnostics.append(f"params.{name}: must be >= {minimum}, got {value}")


def _check_semantics(experiment, params):
    diagnostics = []

    if experiment in ("rtn", "collapse"):
        _positive(params, ["t_max"], diagnostics, minimum=0)
        _positive(params, ["d"], diagnostics, minimum=2)
        for N in params["N"] or []:
            if N < 2 or N % 2:
                diagnostics.append(f"params.N: the replica network needs even N >= 2, got {N}")
        window = params.get("window")
        if window is not None and (len(window) != 2 or window[0] > window[1]):
            diagnostics.append(f"params.window: expected [t_min, t_max] with t_min <= t_max, got {window}")
        if params.get("tau") is not None and params["tau"] <= 0:
            diagnostics.append(f"params.tau: must be positive, got {params['tau']}")

    elif experiment == "haar-ipr":
        _positive(params, ["D", "k"], diagnostics)

    elif experiment == "rmps":
        _positive(params, ["chi", "N", "k"], diagnostics)
        _positive(params, ["d"], diagnostics, minimum=2)

    elif experiment == "rpm":
        _positive(params, ["k"], diagnostics)
        _positive(params, ["N"], diagnostics, minimum=2)
        if params["epsilon"] is not None and params["epsilon"] <= 0:
            diagnostics.append(f"params.epsilon: must be positive, got {params['epsilon']}")
        for t in params["t"] or []:
            if t < 0 or t % 2:
                diagnostics.append(f"params.t: depths must be even and non-negative, got {t}")

    elif experiment == "simulate":
        _positive(params, ["N", "realizations", "n_bitstrings"], diagnostics)
        _positive(params, ["t"], diagnostics, minimum=0)
        _positive(params, ["d"], diagnostics, minimum=2)
        if params["architecture"] == Architecture.STAIRCASE.value and params["chi"] is None:
            diagnostics.append("params.chi: Staircase circuits need a bond dimension")

    elif experiment == "distribution":
        _positive(params, ["N", "samples", "realizations", "bins"], diagnostics)
        _positive(params, ["t"], diagnostics, minimum=0)
        _positive(params, ["d"], diagnostics, minimum=2)

    elif experiment == "xeb":
        _positive(params, ["N", "n_bitstrings", "circuits", "trajectories", "fit_realizations"], diagnostics)
        _positive(params, ["t"], diagnostics, minimum=0)
        _positive(params, ["d"], diagnostics, minimum=2)
        epsilon = params["epsilon_noise"]
        if epsilon is not None and not 0 <= epsilon <= 1:
            diagnostics.append(f"params.epsilon_noise: must lie in [0, 1], got {epsilon}")
        circuits, trajectories = params["circuits"], params["trajectories"]
        if circuits is not None and trajectories is not None and trajectories < circuits:
            diagnostics.append(f"params.trajectories: at least one trajectory per circuit is needed, "
                               f"got {trajectories} for {circuits} circuits")

    return diagnostics


def _capacity(experiment, params):
    """
    List of (message, bound) for the statevector and exact replica caps.
    """
    violations = []

    if experiment in ("simulate", "distribution", "xeb") and params.get("N") and params.get("d"):
        bound = rcParams["simulator.max_amplitudes"]
        amplitudes = params["d"] ** params["N"]
        if amplitudes > bound:
            violations.append((f"params.N: a statevector of {params['d']}^{params['N']} = {amplitudes} amplitudes "
                               f"exceeds the cap 2^{int(math.log2(bound))} = {bound}", bound))

    if experiment in ("rtn", "collapse") and params.get("method") and params.get("N") \
            and ContractionMethod.parse(params["method"]).kind == "exact":
        bound = rcParams["replica.exact_max_entries"]
        size = EnsembleKind.parse(params["ensemble"]).commutant_size(2)
        for N in params["N"]:
            entries = size ** N
            if entries > bound:
                violations.append((f"params.N: the exact replica vector of {size}^{N} = {entries} entries exceeds "
                                   f"the cap {bound:g}; use the tensor_train method", bound))

    return violations


class ExperimentConfig:
    """
    Validated experiment configuration.

    :param struct:
        Dictionary with the fields `experiment`, `seed`, `params` and optionally `workers` and `out`.

    :param source:
        Where the configuration comes from, only used for messages.
    """
    def __init__(self, struct, source=None):
        diagnostics = []

        if not isinstance(struct, dict):
            raise ConfigError("The configuration must be a JSON object", [f"<root>: got {type(struct).__name__}"])

        diagnostics.extend(f"{name}: unknown field" for name in sorted(set(struct) - set(TOP_LEVEL)))

        experiment = struct.get("experiment")
        if experiment not in SCHEMAS:
            diagnostics.append(f"experiment: expected one of {EXPERIMENTS}, got {experiment!r}")

        seed = struct.get("seed")
        if not _kind_matches(seed, "int") or seed < 0:
            diagnostics.append(f"seed: a non-negative integer seed is mandatory, got {seed!r}")

        workers = struct.get("workers", rcParams["harness.workers"])
        if not _kind_matches(workers, "int") or workers < 1:
            diagnostics.append(f"workers: expected a positive integer, got {workers!r}")

        out = struct.get("out", "out")
        if not isinstance(out, str) or not out:
            diagnostics.append(f"out: expected a directory path, got {out!r}")

        params = struct.get("params", {})
        if not isinstance(params, dict):
            diagnostics.append(f"params: expected an object, got {type(params).__name__}")
            params = {}

        normalized = {}
        if experiment in SCHEMAS:
            normalized, param_diagnostics = _check_params(experiment, params)
            diagnostics.extend(param_diagnostics)
            if not param_diagnostics:
                diagnostics.extend(_check_semantics(experiment, normalized))

        if diagnostics:
            where = f" in {source}" if source else ""
            raise ConfigError(f"Invalid configuration{where}: {len(diagnostics)} violation(s)", diagnostics)

        self._experiment = experiment
        self._seed = seed
        self._workers = workers
        self._out = Path(out)
        self._params = normalized
        self._capacity = _capacity(experiment, normalized)

    @classmethod
    def from_file(cls, path):
        """
        Loads and validates a JSON configuration. Parse errors are reported with their line and column.
        """
        path = Path(path)

        try:
            struct = json.loads(path.read_text(encoding="utf-8"))
        except json.JSONDecodeError as e:
            raise ConfigError(f"{path} is not valid JSON", [f"line {e.lineno} column {e.colno}: {e.msg}"]) from e
        except OSError as e:
            raise ConfigError(f"Cannot read {path}", [f"<file>: {e}"]) from e

        return cls(struct, source=str(path))

    @property
    def experiment(self):
        return self._experiment

    @property
    def seed(self):
        return self._seed

    @property
    def workers(self):
        return self._workers

    @property
    def out(self):
        return self._out

    @property
    def params(self):
        return dict(self._params)

    @property
    def capacity_violations(self):
        return list(self._capacity)

    def with_overrides(self, seed=None, workers=None, out=None):
        """
        Copy of the configuration with command-line overrides applied.
        """
        struct = self.to_dict()
        if seed is not None:
            struct["seed"] = seed
        if workers is not None:
            struct["workers"] = workers
        if out is not None:
            struct["out"] = str(out)
        return ExperimentConfig(struct)

    def to_dict(self):
        return {
            "experiment": self._experiment,
            "seed": self._seed,
            "workers": self._workers,
            "out": str(self._out),
            "params": self.params,
        }

    def digest(self):
        """
        Digest of the parts that determine the results; the worker count and output directory are left out.
        """
        return digest({"experiment": self._experiment, "seed": self._seed, "params": self._params})

    def __repr__(self):
        return f"ExperimentConfig({self._experiment}; seed={self._seed}; workers={self._workers}; out={self._out})"

    def __str__(self):
        return self.__repr__()


def validate_config(path):
    """
    Full schema report of a configuration file, without running it.

    :return:
        List of diagnostics; empty when the configuration is valid and within capacity.
    """
    try:
        config = ExperimentConfig.from_file(path)
    except ConfigError as e:
        return e.diagnostics

    return [message for message, _ in config.capacity_violations]
