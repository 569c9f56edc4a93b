"""PSNR and Bjontegaard-delta rate."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError

PSNR_CAP = 99.99
PEAK = 255.0


def psnr(reference, test) -> float:
    """10*log10(255^2 / MSE), capped at 99.99 dB for identical inputs."""
    ref = np.asarray(getattr(reference, "samples", reference), dtype=np.float64)
    tst = np.asarray(getattr(test, "samples", test), dtype=np.float64)
    if ref.shape != tst.shape:
        raise DomainError(f"dimension mismatch: {ref.shape} vs {tst.shape}")
    mse = np.mean((ref - tst) ** 2)
    if mse == 0:
        return PSNR_CAP
    return min(PSNR_CAP, float(10 * np.log10(PEAK * PEAK / mse)))


@dataclass(frozen=True, eq=False)
class RdCurve:
    """At least four (rate, psnr) points, both strictly increasing."""

    rates: np.ndarray
    psnrs: np.ndarray

    def __post_init__(self):
        rates = np.asarray(self.rates, dtype=np.float64)
        psnrs = np.asarray(self.psnrs, dtype=np.float64)
        if rates.shape != psnrs.shape or rates.ndim != 1:
            raise DomainError("rates and psnrs must be 1-D of equal length")
        if len(rates) < 4:
            raise DomainError(f"need at least 4 points, got {len(rates)}")
        order = np.argsort(rates)
        rates, psnrs = rates[order], psnrs[order]
        if np.any(rates <= 0):
            raise DomainError("rates must be strictly positive")
        if np.any(np.diff(rates) <= 0):
            raise DomainError("rates must be strictly increasing")
        if np.any(np.diff(psnrs) <= 0):
            raise DomainError("PSNR must increase strictly with rate")
        object.__setattr__(self, "rates", rates)
        object.__setattr__(self, "psnrs", psnrs)

    @classmethod
    def from_points(cls, points) -> "RdCurve":
        pts = list(points)
        return cls([r for r, _ in pts], [q for _, q in pts])

    def scaled(self, k: float) -> "RdCurve":
        return RdCurve(self.rates * k, self.psnrs)


def _mean_log_rate(curve: RdCurve, lo: float, hi: float) -> float:
    # normalize PSNR before the cubic fit; keeps the Vandermonde system well conditioned
    center = 0.5 * (lo + hi)
    coeffs = np.polyfit(curve.psnrs - center, np.log10(curve.rates), 3)
    integral = np.polyint(coeffs)
    return (np.polyval(integral, hi - center) - np.polyval(integral, lo - center)) / (hi - lo)


def bd_log_rate_difference(anchor: RdCurve, test: RdCurve) -> float:
    lo = max(anchor.psnrs.min(), test.psnrs.min())
    hi = min(anchor.psnrs.max(), test.psnrs.max())
    if hi <= lo:
        raise DomainError(f"PSNR ranges do not overlap ({lo:.3f} >= {hi:.3f})")
    return _mean_log_rate(test, lo, hi) - _mean_log_rate(anchor, lo, hi)


def bd_rate(anchor: RdCurve, test: RdCurve) -> float:
    """Average rate change of ``test`` vs ``anchor`` at equal PSNR, in percent.

    Classic cubic-fit variant: log10(rate) is fit as a cubic in PSNR for each
    curve and integrated over the overlapping PSNR interval. Negative values
    mean the test curve needs less rate.
    """
    return float(100.0 * (10.0 ** bd_log_rate_difference(anchor, test) - 1.0))
