from pathlib import Path

from anticoncentration.utils.table_io import write_json
from anticoncentration.utils.time import manifest_stamp, elapsed_seconds


MANIFEST_NAME = "manifest.json"


class RunManifest:
    """
    Record of one experiment run: configuration digest, code version, timestamps and the content hash of every
    output file.
    """
    def __init__(self, experiment, config_digest, code_version, started, finished, outputs, seed):
        self._struct = {
            "experiment": experiment,
            "config_digest": config_digest,
            "code_version": code_version,
            "started": manifest_stamp(started),
            "finished": manifest_stamp(finished),
            "elapsed_seconds": elapsed_seconds(started, finished),
            "outputs": dict(sorted(outputs.items())),
            "seed": seed,
        }

    @property
    def experiment(self):
        return self._struct["experiment"]

    @property
    def config_digest(self):
        return self._struct["config_digest"]

    @property
    def code_version(self):
        return self._struct["code_version"]

    @property
    def started(self):
        return self._struct["started"]

    @property
    def finished(self):
        return self._struct["finished"]

    @property
    def outputs(self):
        """
        Dictionary mapping each output file name to its content hash.
        """
        return dict(self._struct["outputs"])

    def to_dict(self):
        return dict(self._struct)

    def to_file(self, directory):
        return write_json(Path(directory) / MANIFEST_NAME, self._struct)

    def __repr__(self):
        return f"[MANIFEST {self.finished}; {self.experiment}] {len(self._struct['outputs'])} outputs."

    def __str__(self):
        return self.__repr__()
