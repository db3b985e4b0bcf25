"""
The distribution subpackage evaluates, integrates and samples the universal overlap distribution P(omega; alpha, beta)
of both ensembles.
"""
from anticoncentration.distribution.universal_params import UniversalParams
from anticoncentration.distribution.quadrature_grid import QuadratureGrid, quadrature_grid
from anticoncentration.distribution.universal_density import (pdf, cdf, theoretical_moment, density_moment,
                                                              numerical_moment, negativity_report)
from anticoncentration.distribution.sampling import InverseCdfTable, inverse_cdf_table, sample_overlaps

__all__ = [
    "UniversalParams",
    "QuadratureGrid",
    "quadrature_grid",
    "pdf",
    "cdf",
    "theoretical_moment",
    "density_moment",
    "numerical_moment",
    "negativity_report",
    "InverseCdfTable",
    "inverse_cdf_table",
    "sample_overlaps",
]
