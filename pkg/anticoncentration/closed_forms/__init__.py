"""
The closed_forms subpackage evaluates the exact ensemble results: Haar IPRs and finite-dimensional Porter-Thomas
densities, random matrix product states (Haar and Ginibre), and the random phase model at large local dimension.
"""
from anticoncentration.closed_forms.haar import (INFINITE_DIMENSION, haar_ipr, porter_thomas_pdf,
                                                 participation_entropy)
from anticoncentration.closed_forms.scaling_variables import ScalingVariables
from anticoncentration.closed_forms.rmps import (RmpsSpec, rmps_ipr_exact, rmps_scaling_params,
                                                 rmps_ipr_scaling_form)
from anticoncentration.closed_forms.ginibre import (ginibre_rmps_ipr, domain_wall_expansion, distance_class_size,
                                                    distance_two_count)
from anticoncentration.closed_forms.rpm import (RpmSpec, rpm_ipr_exact, rpm_log_ipr_exact, rpm_ipr_asymptotic,
                                              rpm_scaling_params)
from anticoncentration.closed_forms.brickwork import brickwork_decay_rate, brickwork_tau

__all__ = [
    "INFINITE_DIMENSION",
    "haar_ipr",
    "porter_thomas_pdf",
    "participation_entropy",
    "ScalingVariables",
    "RmpsSpec",
    "rmps_ipr_exact",
    "rmps_scaling_params",
    "rmps_ipr_scaling_form",
    "ginibre_rmps_ipr",
    "domain_wall_expansion",
    "distance_class_size",
    "distance_two_count",
    "RpmSpec",
    "rpm_ipr_exact",
    "rpm_log_ipr_exact",
    "rpm_ipr_asymptotic",
    "rpm_scaling_params",
    "brickwork_decay_rate",
    "brickwork_tau",
]
