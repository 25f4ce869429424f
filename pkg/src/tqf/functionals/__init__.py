"""Upper and lower functionals, capacity, moment map and determinant bounds."""
from .detbound import c_psi, det_bound, entropy_max_with_det, entropy_max_with_det_oracle
from .lower import ScalingReport, h_theta_and_gradient, lower_local, m_theta
from .options import Options
from .scaling import CapacityReport, capacity, moment_map
from .upper import OrderRequiredError, UpperReport, feasible_tuples, tuple_value, upper_level

__all__ = [
    "CapacityReport",
    "Options",
    "OrderRequiredError",
    "ScalingReport",
    "UpperReport",
    "c_psi",
    "capacity",
    "det_bound",
    "entropy_max_with_det",
    "entropy_max_with_det_oracle",
    "h_theta_and_gradient",
    "lower_local",
    "m_theta",
    "moment_map",
    "upper_level",
    "feasible_tuples",
    "tuple_value",
]
