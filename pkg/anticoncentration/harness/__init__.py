"""
The harness subpackage drives the experiments from JSON configurations: validation, execution, persistence and the
`anticoncentration-lab` command line.
"""
from anticoncentration.harness.experiment_config import ExperimentConfig, EXPERIMENTS, SCHEMAS, validate_config
from anticoncentration.harness.run_manifest import RunManifest
from anticoncentration.harness.experiments import Experiment, ExperimentFactory, run_experiment

__all__ = [
    "ExperimentConfig",
    "EXPERIMENTS",
    "SCHEMAS",
    "validate_config",
    "RunManifest",
    "Experiment",
    "ExperimentFactory",
    "run_experiment",
]
