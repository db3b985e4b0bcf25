"""
Tables and reports
==================

CSV tables are written with pandas at full float precision, next to a `<name>.json` sidecar carrying the metadata
and the content hash of the CSV bytes. Reading a table and writing it back produces the same bytes.
"""
import io
import json
from pathlib import Path

import pandas as pd

from anticoncentration.utils.hashing import content_hash, _default


FLOAT_FORMAT = "%.17g"
SCHEMA_VERSION = 1


def _sidecar_path(path):
    path = Path(path)
    return path.with_suffix(".json")


def write_json(path, struct):
    """
    Writes a JSON report (sorted keys, `schema` field added) and returns its content hash.
    """
    struct = dict(struct)
    struct.setdefault("schema", SCHEMA_VERSION)
    payload = json.dumps(struct, sort_keys=True, indent=2, default=_default) + "\n"
    Path(path).write_bytes(payload.encode("utf-8"))
    return content_hash(payload)


def write_table(path, dataframe, meta=None):
    """
    Writes `dataframe` as CSV plus its sidecar metadata.

    :param path:
        Destination of the CSV file. The sidecar is written with the same name and `.json` suffix.

    :param dataframe:
        pandas DataFrame; the index is not stored.

    :param meta:
        Dictionary of metadata to store in the sidecar.

    :return:
        Dictionary mapping each written file name to its content hash.
    """
    path = Path(path)
    buffer = io.StringIO()
    dataframe.to_csv(buffer, index=False, float_format=FLOAT_FORMAT)
    payload = buffer.getvalue().encode("utf-8")
    path.write_bytes(payload)

    csv_hash = content_hash(payload)
    sidecar = dict(meta or {})
    sidecar["content_hash"] = csv_hash
    sidecar["rows"] = int(dataframe.shape[0])
    sidecar["columns"] = list(dataframe.columns)
    sidecar_hash = write_json(_sidecar_path(path), sidecar)

    return {path.name: csv_hash, _sidecar_path(path).name: sidecar_hash}


def read_table(path):
    """
    Loads a table written by :func:`write_table`.

    :return:
        Tuple (dataframe, meta). Raises ValueError if the CSV bytes do not match the recorded hash.
    """
    path = Path(path)
    payload = path.read_bytes()
    dataframe = pd.read_csv(io.BytesIO(payload), float_precision="round_trip")

    meta = {}
    sidecar = _sidecar_path(path)
    if sidecar.exists():
        meta = json.loads(sidecar.read_text(encoding="utf-8"))
        recorded = meta.get("content_hash")
        if recorded is not None and recorded != content_hash(payload):
            raise ValueError(f"Content hash mismatch for {path.name}")

    return dataframe, meta
