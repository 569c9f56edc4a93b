"""Display-adaptive HVS quantization matrices for layered video coding."""

from .display import (
    DisplayGeometry,
    adapt_fwm,
    adaptation_exponent,
    adaptive_qm,
    display_parameter,
    normalized_distance,
    parse_geometry,
)
from .errors import AqmError, DomainError, IntegrityError, ParseError, RangeError
from .fwm import (
    FrequencyWeightMatrix,
    FwmConfig,
    angular_symmetry,
    compute_fwm,
    discrete_frequency,
    mtf_weight,
    radial_frequency,
)
from .metrics import RdCurve, bd_rate, psnr
from .qm import QuantMatrix, default_inter_qm, default_intra_qm, fwm_to_qm, upsample_qm
from .scaling_list import decode_scaling_lists, encode_scaling_lists, upright_diagonal_scan

__version__ = "0.1.0"
