from anticoncentration.config.config import rcParams
from anticoncentration.ensemble import EnsembleKind


__version__ = "0.1.0"


__changelog__ = [
    {
        'version': "0.1.0",
        'changes': [
            "Commutant bases (permutations and Brauer pairings), Gram and Weingarten matrices up to k=6.",
            "Closed forms for Haar, random matrix product states (Haar and Ginibre) and the random phase model.",
            "Statevector simulator for brickwork, staircase and kicked Ising circuits, with noisy trajectories.",
            "Two-replica tensor network contraction of annealed I_2 and half-chain purity, exact and tensor-train.",
            "Universal overlap distribution: density, cdf, moments and sampling.",
            "Maximum-likelihood fits, KS distances, decay timescales and the XEB fidelity estimator.",
            "Command line `anticoncentration-lab` with JSON configurations and run manifests."
        ]
    },
]
