"""Display-resolution-adaptive weighting matrices and AQMs.

Each FWM entry is raised to an exponent A = exp(-d / w), where d is the
normalized distance of the position from DC and w = h_t ** -(h_a / h_t)
shrinks as the target display grows. A smaller w pushes A toward 0 and the
adapted weights toward 1, i.e. finer quantization.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError
from .fwm import FrequencyWeightMatrix, compute_fwm
from .qm import KINDS, QuantMatrix, fwm_to_qm

MAX_DIM = 65535

PRESETS = {
    "sd": (720, 576),
    "hd": (1280, 720),
    "fhd": (1920, 1080),
    "4k": (3840, 2160),
    "8k": (7680, 4320),
    "max": (MAX_DIM, MAX_DIM),
}


@dataclass(frozen=True)
class DisplayGeometry:
    x: int
    y: int
    x_max: int = MAX_DIM
    y_max: int = MAX_DIM
    h_a: float = field(init=False)
    h_t: float = field(init=False)
    p: float = field(init=False)
    w: float = field(init=False)

    def __post_init__(self):
        if min(self.x, self.y, self.x_max, self.y_max) < 1:
            raise DomainError(f"display dimensions must be positive: {self.x}x{self.y}")
        if self.x > self.x_max or self.y > self.y_max:
            raise DomainError(
                f"display {self.x}x{self.y} exceeds maximum {self.x_max}x{self.y_max}"
            )
        h_a = math.hypot(self.x, self.y)
        h_t = math.hypot(self.x_max, self.y_max)
        p = h_a / h_t
        object.__setattr__(self, "h_a", h_a)
        object.__setattr__(self, "h_t", h_t)
        object.__setattr__(self, "p", p)
        # h_t ** -p without a pow of a large base
        object.__setattr__(self, "w", math.exp(-p * math.log(h_t)))

    def label(self) -> str:
        return f"{self.x}x{self.y}"


def display_parameter(x: int, y: int, x_max: int = MAX_DIM, y_max: int = MAX_DIM) -> DisplayGeometry:
    return DisplayGeometry(x, y, x_max, y_max)


_GEOM_RE = re.compile(r"^\s*(\d+)\s*[xX]\s*(\d+)\s*$")


def parse_geometry(text: str, x_max: int = MAX_DIM, y_max: int = MAX_DIM) -> DisplayGeometry:
    """Accept ``WIDTHxHEIGHT`` or a preset name (sd, hd, fhd, 4k, 8k, max)."""
    key = text.strip().lower()
    if key in PRESETS:
        return DisplayGeometry(*PRESETS[key], x_max, y_max)
    m = _GEOM_RE.match(text)
    if not m:
        raise DomainError(f"cannot parse geometry {text!r}; expected WIDTHxHEIGHT or a preset")
    return DisplayGeometry(int(m.group(1)), int(m.group(2)), x_max, y_max)


def normalized_distance(i: int, j: int, n: int = 8) -> float:
    """Distance of (i, j) from DC, normalized by the far corner (n-1, n-1)."""
    if not (0 <= i < n and 0 <= j < n):
        raise DomainError(f"position ({i}, {j}) outside the {n}x{n} grid")
    return math.sqrt((i * i + j * j) / (2 * (n - 1) ** 2))


def adaptation_exponent(d: float, w: float) -> float:
    if w <= 0:
        raise DomainError(f"display parameter must be positive, got {w}")
    if not 0 <= d <= 1:
        raise DomainError(f"normalized distance must be in [0, 1], got {d}")
    return math.exp(-d / w)


@dataclass(frozen=True, eq=False)
class AdaptationField:
    d_values: np.ndarray
    a_values: np.ndarray

    @property
    def n(self) -> int:
        return self.d_values.shape[0]


def adaptation_field(geometry: DisplayGeometry, n: int = 8) -> AdaptationField:
    idx = np.arange(n, dtype=np.float64)
    d = np.sqrt(np.add.outer(idx * idx, idx * idx) / (2 * (n - 1) ** 2))
    return AdaptationField(d, np.exp(-d / geometry.w))


def adapt_fwm(fwm: FrequencyWeightMatrix, geometry: DisplayGeometry) -> FrequencyWeightMatrix:
    if fwm.n != 8:
        raise DomainError(f"adaptation is defined for 8x8 matrices, got {fwm.n}x{fwm.n}")
    return FrequencyWeightMatrix(fwm.values ** adaptation_field(geometry).a_values)


def adaptive_qm(geometry: DisplayGeometry, kind: str = "intra") -> QuantMatrix:
    """AQM for ``geometry``. Intra and inter share the derivation; only the tag differs."""
    if kind not in KINDS:
        raise DomainError(f"kind must be one of {KINDS}, got {kind!r}")
    return fwm_to_qm(adapt_fwm(compute_fwm(), geometry), 16, kind)
