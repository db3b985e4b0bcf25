import math

import numpy as np
import pandas as pd
from joblib import Parallel, delayed

from anticoncentration.closed_forms import haar_ipr, brickwork_decay_rate
from anticoncentration.ensemble import EnsembleKind
from anticoncentration.replica.contraction import ContractionMethod, replica_evolution
from anticoncentration.replica.replica_gate_tensor import replica_gate_tensor
from anticoncentration.utils.table_io import write_table


COLUMNS = ["ensemble", "N", "t", "annealed_I2", "annealed_purity", "delta_S2", "method", "trunc_error"]


class AnnealedSeries:
    """
    Table of annealed two-replica quantities over depths and system sizes, for one ensemble.

    delta_S2 = S_2(inf, N) - S_2(t, N) with the annealed entropy S_2 = -log E[I_2] and S_2(inf, N) from the Haar value.
    """
    def __init__(self, ensemble, dataframe):
        self._ensemble = EnsembleKind.parse(ensemble)
        self._dataframe = dataframe[COLUMNS].sort_values(["N", "t"]).reset_index(drop=True)

    @property
    def ensemble(self):
        return self._ensemble

    @property
    def dataframe(self):
        return self._dataframe

    @property
    def sizes(self):
        return sorted(self._dataframe["N"].unique().tolist())

    def for_size(self, N):
        return self._dataframe[self._dataframe["N"] == N]

    def pairs(self, N, column="delta_S2"):
        """
        List of (t, value) pairs of a column for one system size.
        """
        rows = self.for_size(N)
        return list(zip(rows["t"].astype(int).tolist(), rows[column].astype(float).tolist()))

    def to_csv(self, path, meta=None):
        meta = dict(meta or {})
        meta["ensemble"] = self._ensemble.value
        return write_table(path, self._dataframe, meta=meta)

    def __len__(self):
        return self._dataframe.shape[0]

    def __repr__(self):
        return f"AnnealedSeries({self._ensemble}; sizes {self.sizes}; {len(self)} rows)"

    def __str__(self):
        return self.__repr__()


def _series_rows(N, t_max, ensemble, method, d):
    haar = haar_ipr(ensemble, float(d) ** N, 2)
    concrete = method.resolve(N, replica_gate_tensor(ensemble, d).local_dimension)
    rows = []

    for point in replica_evolution(N, t_max, ensemble, method=concrete, d=d):
        rows.append({
            "ensemble": ensemble.value,
            "N": N,
            "t": point.t,
            "annealed_I2": point.annealed_I2,
            "annealed_purity": point.annealed_purity,
            "delta_S2": math.log(point.annealed_I2 / haar),
            "method": concrete.kind,
            "trunc_error": point.trunc_error,
        })

    return rows


def delta_s2_series(N_list, t_max, ensemble, method="exact", d=2, workers=1):
    """
    Builds the AnnealedSeries of every N in `N_list` for t = 0, ..., t_max. System sizes are contracted in parallel
    with `workers` joblib jobs; the output does not depend on the number of workers.
    """
    ensemble = EnsembleKind.parse(ensemble)
    method = ContractionMethod.parse(method)
    N_list = list(N_list)

    if workers > 1 and len(N_list) > 1:
        chunks = Parallel(n_jobs=workers)(delayed(_series_rows)(N, t_max, ensemble, method, d) for N in N_list)
    else:
        chunks = [_series_rows(N, t_max, ensemble, method, d) for N in N_list]

    rows = [row for chunk in chunks for row in chunk]
    return AnnealedSeries(ensemble, pd.DataFrame(rows, columns=COLUMNS))


def estimate_subleading_constant(series, N, t_min=2, w=None, d=2):
    """
    Least-squares estimate of c in E[I_2] = I_2^Haar (1 + c N w^t) over the depths t >= t_min.

    :param w:
        Domain-wall weight; defaults to the unitary brickwork value 2d / (d^2 + 1).
    """
    w = brickwork_decay_rate(d) if w is None else w
    rows = series.for_size(N)
    rows = rows[rows["t"] >= t_min]

    if rows.empty:
        raise ValueError(f"No depths >= {t_min} for N={N}")

    haar = haar_ipr(series.ensemble, float(d) ** N, 2)
    excess = rows["annealed_I2"].to_numpy() / haar - 1
    regressor = N * np.power(w, rows["t"].to_numpy(dtype=float))
    return float(np.dot(excess, regressor) / np.dot(regressor, regressor))
