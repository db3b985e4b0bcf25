from anticoncentration.utils.seeding import derive_seed, rng_stream
from anticoncentration.utils.hashing import content_hash, digest
from anticoncentration.utils.table_io import write_table, read_table, write_json

__all__ = ["derive_seed", "rng_stream", "content_hash", "digest", "write_table", "read_table", "write_json"]
