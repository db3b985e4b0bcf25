import numpy as np
import pandas as pd

from anticoncentration.utils.table_io import write_table, read_table


class OverlapSampleSet:
    """
    Collection of overlaps omega = D |<x|psi>|^2 with the metadata describing where they come from.

    :param samples:
        Non-negative overlaps.

    :param meta:
        Dictionary of provenance fields (spec digest, sampling mode, realizations, seed, ...).
    """
    def __init__(self, samples, meta=None):
        samples = np.array(samples, dtype=float).reshape(-1)

        if samples.size and (not np.all(np.isfinite(samples)) or samples.min() < 0):
            raise ValueError("Overlaps must be finite and non-negative")

        samples.setflags(write=False)
        self._samples = samples
        self._meta = dict(meta or {})

    @property
    def samples(self):
        return self._samples

    @property
    def meta(self):
        return self._meta

    def mean(self):
        return float(self._samples.mean())

    def moment(self, k):
        return float(np.mean(self._samples ** k))

    def standard_error(self, k=1):
        values = self._samples ** k
        return float(values.std(ddof=1) / np.sqrt(len(values)))

    def concat(self, other, meta=None):
        return OverlapSampleSet(np.concatenate([self._samples, other.samples]), meta=meta or self._meta)

    def to_dataframe(self):
        return pd.DataFrame({"omega": self._samples})

    def to_csv(self, path):
        """
        Writes the header `omega`, one overlap per line, and the sidecar metadata. Returns the written hashes.
        """
        meta = dict(self._meta)
        meta["count"] = len(self)
        return write_table(path, self.to_dataframe(), meta=meta)

    @classmethod
    def from_csv(cls, path):
        dataframe, meta = read_table(path)

        if "omega" not in dataframe.columns:
            raise ValueError(f"{path} has no 'omega' column")

        for key in ("content_hash", "rows", "columns", "schema", "count"):
            meta.pop(key, None)

        return cls(dataframe["omega"].to_numpy(), meta=meta)

    def __len__(self):
        return self._samples.shape[0]

    def __repr__(self):
        mean = f"{self.mean():.6f}" if len(self) else "n/a"
        return f"OverlapSampleSet({len(self)} samples; mean={mean}; mode={self._meta.get('mode', 'unknown')})"

    def __str__(self):
        return self.__repr__()
