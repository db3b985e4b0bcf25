import os


rcParams = {
    # Largest replica order k whose commutant is enumerated
    "commutant.max_k": 6,

    # Relative singular-value cutoff (times sigma_max) for the Gram pseudo-inverse
    "commutant.pinv_rcond": 1e-12,

    # Tolerance on ||G W G - G|| / ||G|| before the pseudo-inverse is declared failed
    "commutant.pinv_check_tol": 1e-8,

    # Maximum number of amplitudes a statevector may hold
    "simulator.max_amplitudes": 2**26,

    # Largest tolerated deviation of a simulated state norm from 1
    "simulator.norm_tolerance": 1e-10,

    # Local error target of the Krylov exponential action
    "simulator.krylov_tol": 1e-10,

    # Largest Krylov subspace built per substep
    "simulator.krylov_max_dim": 80,

    # Largest kicked Ising chain handled by the dense eigendecomposition
    "simulator.dense_kim_max_sites": 10,

    # Largest kicked Ising chain handled at all
    "simulator.kim_max_sites": 16,

    # Largest dense replica boundary vector (entries) for the exact contraction
    "replica.exact_max_entries": 10**7,

    # Relative truncation tolerance of the tensor-train contraction
    "replica.tt_tol": 1e-10,

    # Bond dimension cap of the tensor-train contraction
    "replica.tt_max_bond": 256,

    # Largest weight a single truncation may discard once the bond cap is reached
    "replica.tt_max_discarded": 1e-6,

    # Gauss-Hermite order of the lognormal average
    "distribution.hermite_order": 96,

    # Points of the log-spaced grid behind the inverse-CDF sampler
    "distribution.cdf_grid_points": 4096,

    # Lower end of the inverse-CDF grid
    "distribution.cdf_grid_min": 1e-8,

    # Tail mass left above the upper end of the inverse-CDF grid
    "distribution.tail_mass": 1e-10,

    # Warn when beta * k^2 (k-1) exceeds this value
    "distribution.beta_window": 0.5,

    # Bounds of the likelihood maximisation
    "estimation.alpha_max": 5.0,
    "estimation.beta_max": 0.5,

    # Projected gradient tolerance of the L-BFGS-B optimiser
    "estimation.gtol": 1e-7,

    # Resamples drawn when the observed information is singular
    "estimation.bootstrap_resamples": 200,

    # Minimum number of overlaps accepted by a fit
    "estimation.min_samples": 100,

    # Densities below this value are floored inside the log-likelihood
    "estimation.loglik_floor": 1e-300,

    # XEB reports carry a precision warning below this number of bitstrings
    "xeb.min_bitstrings": 1000,

    # Default size of the joblib worker pool
    "harness.workers": int(os.environ.get("ANTICONCENTRATION_WORKERS", "1")),
}
