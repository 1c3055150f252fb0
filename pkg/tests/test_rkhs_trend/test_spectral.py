from hypothesis import (
    given,
    strategies as st,
)
import numpy as np
import pandas as pd
import pytest
from scipy.integrate import quad

from rkhs_trend.errors import ValidationError
from rkhs_trend.filters import (
    from_offsets,
    henderson_exact,
    identity_filter,
    musgrave,
    rkhs_asymmetric,
    rkhs_symmetric,
)
from rkhs_trend.spectral import (
    SpectrumSchema,
    band_mask,
    frequency_grid,
    phase_delay,
    revision_distance,
    signal_band_upper,
    to_frame,
    transfer,
)


def test_schema_coerce():
    df = SpectrumSchema.example()
    df["delay"] = np.ceil(df["delay"])
    SpectrumSchema.validate(df)


def test_frequency_grid():
    grid = frequency_grid(11)
    assert grid[0] == 0.0
    assert grid[-1] == 0.5
    assert grid.shape == (11,)
    with pytest.raises(ValidationError):
        frequency_grid(1)


def test_signal_band():
    assert signal_band_upper() == 0.06
    assert signal_band_upper("quarterly") == 0.18
    mask = band_mask(frequency_grid(2001), "signal", 0.06)
    assert mask.sum() == 241
    assert band_mask(frequency_grid(11), "full", 0.06).all()


def test_identity_filter():
    curve = transfer(identity_filter(), grid_size=101)
    np.testing.assert_allclose(curve.gain, 1.0)
    np.testing.assert_array_equal(curve.phase, 0.0)
    np.testing.assert_array_equal(phase_delay(curve), 0.0)


def test_one_step_lag():
    curve = transfer(from_offsets([-1], [1.0]), grid_size=501)
    np.testing.assert_allclose(curve.gain, 1.0, atol=1e-12)
    np.testing.assert_allclose(phase_delay(curve), 1.0, atol=1e-9)
    assert curve.zero_delay == 1.0


@pytest.mark.parametrize("m", [4, 6, 11])
def test_symmetric_filters_have_no_phase(m: int):
    curve = transfer(henderson_exact(m))
    np.testing.assert_array_equal(curve.transfer_imag, 0.0)
    positive = curve.transfer_real > 0
    np.testing.assert_array_equal(curve.phase[positive], 0.0)
    assert curve.gain[0] == pytest.approx(1.0, abs=1e-12)


@given(q=st.integers(min_value=0, max_value=5))
def test_unit_gain_at_zero(q: int):
    curve = transfer(rkhs_asymmetric(6, q, 7.5))
    assert len(curve) == 2001
    assert curve.gain[0] == pytest.approx(1.0, abs=1e-12)
    assert curve.phase[0] == pytest.approx(0.0, abs=1e-12)


def test_last_point_filter_lags():
    curve = transfer(rkhs_asymmetric(6, 0, 11.78))
    delay = phase_delay(curve)
    assert curve.zero_delay == pytest.approx(2.04, abs=0.01)
    assert delay[0] == curve.zero_delay
    assert delay[1] == pytest.approx(curve.zero_delay, abs=0.01)


def _squared_distance(asym, sym, w: float) -> float:
    angle = 2.0 * np.pi * w
    real_q = np.sum(asym.weights * np.cos(angle * asym.offsets))
    imag_q = -np.sum(asym.weights * np.sin(angle * asym.offsets))
    real = np.sum(sym.weights * np.cos(angle * sym.offsets))
    return (real_q - real) ** 2 + imag_q**2


def test_revision_distance_matches_quadrature():
    asym = rkhs_asymmetric(6, 0, 11.78)
    sym = rkhs_symmetric(6, 7)
    expected, _ = quad(lambda w: _squared_distance(asym, sym, w), 0.0, 0.5, limit=200)
    result = revision_distance(asym, sym)
    assert result.total == pytest.approx(np.sqrt(2.0 * expected), rel=1e-8)
    band, _ = quad(lambda w: _squared_distance(asym, sym, w), 0.0, 0.06)
    signal = revision_distance(asym, sym, band="signal")
    assert signal.total == pytest.approx(np.sqrt(2.0 * band), rel=1e-6)
    assert signal.band == "signal"


@pytest.mark.parametrize("family", ["rkhs", "musgrave"])
@pytest.mark.parametrize("m", [4, 6, 11])
def test_law_of_cosines(family: str, m: int):
    for q in range(m):
        if family == "rkhs":
            asym, sym = rkhs_asymmetric(m, q, m + 1.5), rkhs_symmetric(m, m + 1)
        else:
            asym, sym = musgrave(m, q, 3.5), henderson_exact(m)
        result = revision_distance(asym, sym)
        assert result.total**2 == pytest.approx(
            result.gain_part + result.phase_part, abs=1e-8
        )
        assert abs(result.residual) < 1e-8
        assert result.gain_part >= 0.0
        assert result.phase_part >= 0.0


@pytest.mark.parametrize("band", ["full", "signal"])
@pytest.mark.parametrize("q", [0, 3, 5])
def test_revision_distance_stable_under_grid_refinement(band: str, q: int):
    asym, sym = rkhs_asymmetric(6, q, 8.5), rkhs_symmetric(6, 7)
    coarse = revision_distance(asym, sym, band=band, grid_size=2001)
    fine = revision_distance(asym, sym, band=band, grid_size=4001)
    assert abs(coarse.total - fine.total) < 1e-6
    assert abs(coarse.phase_part - fine.phase_part) < 1e-6


def test_revision_distance_of_filter_to_itself():
    sym = henderson_exact(6)
    result = revision_distance(sym, sym)
    assert result.total == 0.0
    assert result.gain_part == 0.0
    assert result.phase_part == 0.0


def test_revision_distance_invalid():
    asym = rkhs_asymmetric(6, 0, 8.0)
    with pytest.raises(ValidationError):
        revision_distance(asym, henderson_exact(6), grid_size=101)
    with pytest.raises(ValidationError):
        revision_distance(asym, rkhs_asymmetric(6, 1, 8.0))
    with pytest.raises(ValidationError):
        revision_distance(asym, henderson_exact(4))


def test_to_frame():
    df = to_frame(transfer(musgrave(6, 0, 3.5), grid_size=201))
    assert isinstance(df, pd.DataFrame)
    assert list(df.columns) == ["omega", "gain", "phase_radians", "delay"]
    assert df.shape == (201, 4)
    assert df["gain"].iloc[0] == pytest.approx(1.0, abs=1e-12)
    assert df["phase_radians"].iloc[0] == pytest.approx(0.0, abs=1e-12)
