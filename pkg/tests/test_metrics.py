import math

import numpy as np
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from aqm.errors import DomainError
from aqm.image import Image
from aqm.metrics import PSNR_CAP, RdCurve, bd_rate, bd_log_rate_difference, psnr

from .oracles import bd_rate_trapezoid


def test_psnr_identical():
    img = Image(np.full((8, 8), 77, dtype=np.uint8))
    assert psnr(img, img) == PSNR_CAP


def test_psnr_off_by_one():
    a = Image(np.full((16, 8), 100, dtype=np.uint8))
    b = Image(np.full((16, 8), 101, dtype=np.uint8))
    assert psnr(a, b) == pytest.approx(20 * math.log10(255), abs=1e-12)
    assert psnr(a, b) == pytest.approx(48.13, abs=5e-3)


def test_psnr_extremes():
    assert psnr(np.zeros((8, 8)), np.full((8, 8), 255)) == pytest.approx(0.0, abs=1e-12)


def test_psnr_mismatch():
    with pytest.raises(DomainError):
        psnr(np.zeros((8, 8)), np.zeros((8, 16)))


@given(st.integers(0, 2**32 - 1))
def test_psnr_symmetric(seed):
    rng = np.random.default_rng(seed)
    a, b = rng.integers(0, 256, (2, 8, 8))
    assert psnr(a, b) == psnr(b, a)


BASE = RdCurve([1000.0, 1800.0, 3300.0, 6000.0], [30.0, 33.0, 36.0, 39.0])


def test_rdcurve_validation():
    with pytest.raises(DomainError):
        RdCurve([1, 2, 3], [1, 2, 3])
    with pytest.raises(DomainError):
        RdCurve([1, 2, 3, 4], [1, 3, 2, 4])
    with pytest.raises(DomainError):
        RdCurve([0, 2, 3, 4], [1, 2, 3, 4])
    with pytest.raises(DomainError):
        RdCurve([1, 2, 2, 4], [1, 2, 3, 4])


def test_bd_identity():
    assert bd_rate(BASE, BASE) == 0.0


def test_bd_uniform_offset():
    assert bd_rate(BASE, BASE.scaled(1.1)) == pytest.approx(10.0, abs=1e-6)
    assert bd_rate(BASE, BASE.scaled(0.75)) == pytest.approx(-25.0, abs=1e-6)


def test_bd_no_overlap():
    other = RdCurve(BASE.rates, BASE.psnrs + 20)
    with pytest.raises(DomainError):
        bd_rate(BASE, other)


def test_bd_against_trapezoid_oracle():
    test = RdCurve([900.0, 1700.0, 3000.0, 5800.0], [30.4, 33.2, 36.1, 39.5])
    expected = bd_rate_trapezoid(list(zip(BASE.rates, BASE.psnrs)), list(zip(test.rates, test.psnrs)))
    assert bd_rate(BASE, test) == pytest.approx(expected, abs=1e-4)


@st.composite
def curves(draw):
    """Codec-like curves: rate grows 1.05x to 4x per step."""
    start_rate = draw(st.floats(100, 1e6))
    ratios = draw(st.lists(st.floats(1.05, 4.0), min_size=3, max_size=3))
    rates = start_rate * np.cumprod([1.0] + ratios)
    gaps = draw(st.lists(st.floats(0.5, 5), min_size=3, max_size=3))
    psnrs = np.cumsum([draw(st.floats(25, 35))] + gaps)
    return RdCurve(rates, psnrs)


@given(curves(), curves())
def test_bd_reciprocal(a, b):
    assume(max(a.psnrs.min(), b.psnrs.min()) + 0.5 < min(a.psnrs.max(), b.psnrs.max()))
    assert bd_log_rate_difference(a, b) == pytest.approx(-bd_log_rate_difference(b, a), abs=1e-9)
    assert (1 + bd_rate(a, b) / 100) * (1 + bd_rate(b, a) / 100) == pytest.approx(1.0, abs=1e-6)


@given(curves(), curves(), st.floats(1e-3, 1e3))
def test_bd_scale_invariant(a, b, k):
    assume(max(a.psnrs.min(), b.psnrs.min()) + 0.5 < min(a.psnrs.max(), b.psnrs.max()))
    assert bd_log_rate_difference(a.scaled(k), b.scaled(k)) == pytest.approx(bd_log_rate_difference(a, b), abs=1e-9)
    assert bd_rate(a.scaled(k), b.scaled(k)) == pytest.approx(bd_rate(a, b), rel=1e-9, abs=1e-9)
