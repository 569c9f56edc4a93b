"""HVS contrast-sensitivity frequency weighting matrix.

The weighting of frequency position (u, v) is the CSF-based MTF evaluated at
the angle-normalized radial frequency of that position, clamped to 1.0 at or
below the peak frequency ``f_max``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError


@dataclass(frozen=True)
class FwmConfig:
    """MTF constants and viewing/grid parameters.

    ``delta`` is the dot pitch in mm, ``dis`` the viewing distance and ``s``
    the angular symmetry parameter. ``f_max`` is in cycles/degree.
    """

    a: float = 2.2
    b: float = 0.192
    c: float = 0.114
    d: float = 1.1
    f_max: float = 8.0
    delta: float = 0.25
    n: int = 8
    dis: float = 512.0
    s: float = 0.7

    def __post_init__(self):
        if self.n < 1:
            raise DomainError(f"grid size must be >= 1, got {self.n}")
        if self.delta <= 0:
            raise DomainError(f"dot pitch must be positive, got {self.delta}")
        if self.dis <= 0:
            raise DomainError(f"viewing distance must be positive, got {self.dis}")
        if not 0 < self.s <= 1:
            raise DomainError(f"symmetry parameter must be in (0, 1], got {self.s}")
        if self.f_max <= 0:
            raise DomainError(f"f_max must be positive, got {self.f_max}")


@dataclass(frozen=True, eq=False)
class FrequencyWeightMatrix:
    """Square grid of weights in (0, 1]; row index u, column index v."""

    values: np.ndarray

    def __post_init__(self):
        values = np.asarray(self.values, dtype=np.float64)
        if values.ndim != 2 or values.shape[0] != values.shape[1]:
            raise DomainError(f"weighting matrix must be square, got shape {values.shape}")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    @property
    def n(self) -> int:
        return self.values.shape[0]

    def __getitem__(self, idx):
        return self.values[idx]

    def __eq__(self, other):
        if not isinstance(other, FrequencyWeightMatrix):
            return NotImplemented
        return np.array_equal(self.values, other.values)

    def tolist(self) -> list[list[float]]:
        return self.values.tolist()


DEFAULT_CONFIG = FwmConfig()


def discrete_frequency(index: int, config: FwmConfig = DEFAULT_CONFIG) -> float:
    """Spatial frequency in cycles/mm of the 1-based grid ``index``."""
    if not 1 <= index <= config.n:
        raise DomainError(f"index {index} outside 1..{config.n}")
    return (index - 1) / (config.delta * 2 * config.n)


def degree_scale(dis: float) -> float:
    """Factor converting cycles/mm to cycles/degree at viewing distance ``dis``."""
    if dis <= 0:
        raise DomainError(f"viewing distance must be positive, got {dis}")
    return math.pi / (180.0 * math.asin(1.0 / math.sqrt(1.0 + dis * dis)))


def radial_frequency(fu: float, fv: float, dis: float) -> float:
    if fu < 0 or fv < 0:
        raise DomainError("frequencies must be non-negative")
    return degree_scale(dis) * math.hypot(fu, fv)


def angular_symmetry(fu: float, fv: float, s: float) -> float:
    """Angular sensitivity factor S(theta), theta = atan2(fu, fv).

    Lies in [s, 1]: 1 along the axes, s on the diagonal.
    """
    if not 0 < s <= 1:
        raise DomainError(f"symmetry parameter must be in (0, 1], got {s}")
    theta = math.atan2(fu, fv)  # atan2(0, 0) == 0
    return (1 - s) / 2 * math.cos(4 * theta) + (1 + s) / 2


def mtf_weight(f_prime: float, config: FwmConfig = DEFAULT_CONFIG) -> float:
    if f_prime < 0:
        raise DomainError("frequency must be non-negative")
    if f_prime > config.f_max:
        cf = config.c * f_prime
        return config.a * (config.b + cf) * math.exp(-(cf ** config.d))
    return 1.0


def compute_fwm(config: FwmConfig = DEFAULT_CONFIG) -> FrequencyWeightMatrix:
    """Full n x n weighting matrix, vectorized over the grid."""
    f = np.arange(config.n, dtype=np.float64) / (config.delta * 2 * config.n)
    fu, fv = np.meshgrid(f, f, indexing="ij")
    radial = degree_scale(config.dis) * np.hypot(fu, fv)
    theta = np.arctan2(fu, fv)
    sym = (1 - config.s) / 2 * np.cos(4 * theta) + (1 + config.s) / 2
    f_prime = radial / sym
    cf = config.c * f_prime
    mtf = config.a * (config.b + cf) * np.exp(-(cf ** config.d))
    h = np.where(f_prime > config.f_max, mtf, 1.0)
    # cos(4*theta) is swap-invariant only up to rounding; mirror for exactness
    h = np.triu(h) + np.triu(h, 1).T
    return FrequencyWeightMatrix(h)
