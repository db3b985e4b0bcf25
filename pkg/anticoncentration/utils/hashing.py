import hashlib
import json


def content_hash(data):
    """
    Git-style blob hash of a bytes payload.

    :param data:
        Bytes (or str, encoded as UTF-8) to hash.
    """
    if isinstance(data, str):
        data = data.encode("utf-8")

    header = f"blob {len(data)}\0".encode()
    return hashlib.sha1(header + data).hexdigest()


def digest(struct):
    """
    Stable digest of a JSON-serializable structure (keys sorted, full float precision).
    """
    payload = json.dumps(struct, sort_keys=True, separators=(",", ":"), default=_default)
    return hashlib.blake2b(payload.encode(), digest_size=16).hexdigest()


def _default(obj):
    if hasattr(obj, "to_dict"):
        return obj.to_dict()

    if hasattr(obj, "tolist"):
        return obj.tolist()

    if hasattr(obj, "value"):
        return obj.value

    raise TypeError(f"Object of type {type(obj).__name__} is not serializable")
