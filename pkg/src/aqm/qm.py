"""Integer quantization matrices: derivation, defaults and upsampling."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import golden
from .errors import DomainError, RangeError
from .fwm import FrequencyWeightMatrix, compute_fwm

KINDS = ("intra", "inter")
SIZES = (8, 16, 32)
QM_MIN, QM_MAX = 1, 255


@dataclass(frozen=True, eq=False)
class QuantMatrix:
    entries: np.ndarray
    kind: str = "intra"

    def __post_init__(self):
        entries = np.asarray(self.entries)
        if entries.ndim != 2 or entries.shape[0] != entries.shape[1]:
            raise DomainError(f"quantization matrix must be square, got shape {entries.shape}")
        if entries.shape[0] not in SIZES:
            raise DomainError(f"side length must be one of {SIZES}, got {entries.shape[0]}")
        if self.kind not in KINDS:
            raise DomainError(f"kind must be one of {KINDS}, got {self.kind!r}")
        if not np.all(np.equal(np.mod(entries, 1), 0)):
            raise DomainError("quantization matrix entries must be integers")
        entries = entries.astype(np.int64)
        if entries.min() < QM_MIN or entries.max() > QM_MAX:
            raise RangeError(f"entries must lie in [{QM_MIN}, {QM_MAX}]")
        entries.setflags(write=False)
        object.__setattr__(self, "entries", entries)

    @property
    def n(self) -> int:
        return self.entries.shape[0]

    def __getitem__(self, idx):
        return self.entries[idx]

    def __eq__(self, other):
        if not isinstance(other, QuantMatrix):
            return NotImplemented
        return self.kind == other.kind and np.array_equal(self.entries, other.entries)

    def tolist(self) -> list[list[int]]:
        return self.entries.tolist()

    def with_kind(self, kind: str) -> "QuantMatrix":
        return QuantMatrix(self.entries, kind)


def round_half_away(x):
    """Round to nearest, ties away from zero (numpy's round is ties-to-even)."""
    x = np.asarray(x, dtype=np.float64)
    return np.sign(x) * np.floor(np.abs(x) + 0.5)


def fwm_to_qm(fwm: FrequencyWeightMatrix, scale: int = 16, kind: str = "intra") -> QuantMatrix:
    """Integer weights round(scale / H)."""
    if scale < 1:
        raise DomainError(f"scale must be >= 1, got {scale}")
    values = fwm.values
    if np.any(values <= 0):
        raise DomainError("weighting matrix entries must be positive")
    q = round_half_away(scale / values)
    if q.max() > QM_MAX:
        raise RangeError(f"derived entry {int(q.max())} exceeds {QM_MAX}")
    return QuantMatrix(q.astype(np.int64), kind)


def default_intra_qm() -> QuantMatrix:
    return fwm_to_qm(compute_fwm(), 16, "intra")


def default_inter_qm() -> QuantMatrix:
    # No derivation is published for the inter table; it is stored verbatim.
    return QuantMatrix(golden.QM_INTER.copy(), "inter")


def flat_qm(value: int = 16, kind: str = "intra", n: int = 8) -> QuantMatrix:
    return QuantMatrix(np.full((n, n), value, dtype=np.int64), kind)


def upsample_qm(qm8: QuantMatrix, target_n: int) -> QuantMatrix:
    """Replicate each 8x8 entry into a k x k region, k = target_n / 8."""
    if qm8.n != 8:
        raise DomainError(f"source matrix must be 8x8, got {qm8.n}x{qm8.n}")
    if target_n not in (16, 32):
        raise DomainError(f"target size must be 16 or 32, got {target_n}")
    k = target_n // 8
    return QuantMatrix(np.kron(qm8.entries, np.ones((k, k), dtype=np.int64)), qm8.kind)
