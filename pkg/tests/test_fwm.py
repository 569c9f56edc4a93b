import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from aqm import golden
from aqm.errors import DomainError
from aqm.fwm import (
    FwmConfig,
    angular_symmetry,
    compute_fwm,
    discrete_frequency,
    mtf_weight,
    radial_frequency,
)

# mpmath, 50 digits
DEG_SCALE_512 = 8.93609713302006


def test_default_config_constants():
    c = FwmConfig()
    assert (c.a, c.b, c.c, c.d) == (2.2, 0.192, 0.114, 1.1)
    assert (c.f_max, c.delta, c.n, c.dis, c.s) == (8, 0.25, 8, 512, 0.7)


@pytest.mark.parametrize("kwargs", [dict(n=0), dict(delta=0), dict(dis=-1), dict(s=0), dict(s=1.2), dict(f_max=0)])
def test_config_rejects_invalid(kwargs):
    with pytest.raises(DomainError):
        FwmConfig(**kwargs)


@pytest.mark.parametrize("index, expected", [(1, 0.0), (8, 1.75), (5, 1.0)])
def test_discrete_frequency(index, expected):
    assert discrete_frequency(index) == pytest.approx(expected, abs=1e-15)


@pytest.mark.parametrize("index", [0, 9, -1])
def test_discrete_frequency_out_of_range(index):
    with pytest.raises(DomainError):
        discrete_frequency(index)


@pytest.mark.parametrize("fu, fv, expected", [
    (0, 0, 0.0),
    (0, 1.75, 15.638169982785104),
    (1.0, 1.0, 12.6375497602003),
])
def test_radial_frequency(fu, fv, expected):
    assert radial_frequency(fu, fv, 512) == pytest.approx(expected, rel=1e-12)


def test_radial_frequency_scale():
    assert radial_frequency(1.0, 0.0, 512) == pytest.approx(DEG_SCALE_512, rel=1e-12)


@pytest.mark.parametrize("fu, fv, expected", [(0, 3.0, 1.0), (1.0, 1.0, 0.7), (0, 0, 1.0), (2.0, 0, 1.0)])
def test_angular_symmetry(fu, fv, expected):
    assert angular_symmetry(fu, fv, 0.7) == pytest.approx(expected, abs=1e-12)


@given(st.floats(0, 10), st.floats(0, 10), st.floats(0.05, 1))
def test_angular_symmetry_bounds(fu, fv, s):
    v = angular_symmetry(fu, fv, s)
    assert s - 1e-12 <= v <= 1 + 1e-12


@pytest.mark.parametrize("f, expected", [(0, 1.0), (8.0, 1.0), (15.638, 0.6571), (18.053, 0.5419)])
def test_mtf_weight(f, expected):
    assert mtf_weight(f) == pytest.approx(expected, abs=5e-5)


def test_compute_fwm_matches_published_table():
    h = compute_fwm()
    assert h.n == 8
    assert np.max(np.abs(h.values - golden.FWM_DEFAULT)) <= golden.PRINT_TOL
    assert h[0, 0] == 1.0
    assert h[7, 7] == pytest.approx(0.1391, abs=5e-5)


def test_compute_fwm_agrees_with_scalar_path():
    c = FwmConfig()
    h = compute_fwm(c)
    for u in range(1, 9):
        for v in range(1, 9):
            fu, fv = discrete_frequency(u, c), discrete_frequency(v, c)
            fp = radial_frequency(fu, fv, c.dis) / angular_symmetry(fu, fv, c.s)
            assert h[u - 1, v - 1] == pytest.approx(mtf_weight(fp, c), rel=1e-13)


def test_default_fwm_monotone_along_rows_and_columns():
    h = compute_fwm().values
    assert np.all(np.diff(h, axis=0) <= 0)
    assert np.all(np.diff(h, axis=1) <= 0)


# bounded so exp(-(c f')^d) cannot underflow to 0 on the coarsest grids
configs = st.builds(
    FwmConfig,
    f_max=st.floats(1, 20),
    delta=st.floats(0.1, 1.0),
    n=st.integers(1, 16),
    dis=st.floats(50, 2000),
    s=st.floats(0.2, 1.0),
)


@given(configs)
def test_fwm_symmetric_and_in_range(config):
    h = compute_fwm(config).values
    assert np.array_equal(h, h.T)
    assert np.all(h > 0) and np.all(h <= 1.0)
    assert h[0, 0] == 1.0


@given(configs)
def test_fwm_is_one_exactly_where_below_peak(config):
    h = compute_fwm(config).values
    for u in range(config.n):
        for v in range(config.n):
            fu, fv = discrete_frequency(u + 1, config), discrete_frequency(v + 1, config)
            fp = radial_frequency(fu, fv, config.dis) / angular_symmetry(fu, fv, config.s)
            if fp < config.f_max * (1 - 1e-9):
                assert h[u, v] == 1.0
