from anticoncentration.ensemble.ensemble_kind import EnsembleKind

__all__ = ["EnsembleKind"]
