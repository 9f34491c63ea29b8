"""Surface-superconductivity spectral toolkit: de Gennes constants, disc
eigenvalues, the local third critical field and its large-kappa series."""

__version__ = "0.1.0"

from .constants import DeGennesConstants, compute_constants, default_constants
from .critical_field import CriticalFieldResult, hc3_local, local_fields
from .disc import lambda1_disc, radial_lowest, right_derivative
from .model_operator import HalfLineGrid, find_xi0, ground_state, mu
from .series import ExpansionInputs, PuiseuxSeries, invert_critical_field

__all__ = [
    "DeGennesConstants", "compute_constants", "default_constants",
    "CriticalFieldResult", "hc3_local", "local_fields",
    "lambda1_disc", "radial_lowest", "right_derivative",
    "HalfLineGrid", "find_xi0", "ground_state", "mu",
    "ExpansionInputs", "PuiseuxSeries", "invert_critical_field",
]
