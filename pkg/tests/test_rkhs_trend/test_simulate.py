from hypothesis import (
    given,
    settings,
    strategies as st,
)
import numpy as np
import pytest

from rkhs_trend.config import SimulationConfig
from rkhs_trend.errors import ValidationError
from rkhs_trend.series import (
    TimeSeries,
    ic_ratio,
)
from rkhs_trend.simulate import (
    calibrated_series,
    simulate,
    simulate_signal,
)
from rkhs_trend.testing import (
    TestConstants,
    simulate_series,
)

CONSTANTS = TestConstants()


def test_simulate_flat():
    y = simulate(SimulationConfig(n_timepoints=30, level=5))
    assert isinstance(y, TimeSeries)
    assert len(y) == 30
    np.testing.assert_array_equal(y.values, 5.0)


def test_simulate_noise():
    config = SimulationConfig(n_timepoints=500, noise_scale=2.0, seed=3)
    y = simulate(config)
    assert np.std(y.values) == pytest.approx(2.0, rel=0.15)
    again = simulate(SimulationConfig(n_timepoints=500, noise_scale=2.0, seed=3))
    np.testing.assert_array_equal(y.values, again.values)


def test_simulate_quarterly():
    config = SimulationConfig(n_timepoints=8, start="2000-Q1", frequency="quarterly")
    y = simulate(config)
    assert y.frequency == "quarterly"
    with pytest.raises(ValidationError):
        simulate(
            SimulationConfig(n_timepoints=8, start="2000-01", frequency="quarterly")
        )


def test_simulate_signal_is_seeded():
    first = simulate_signal(1)
    np.testing.assert_array_equal(first.values, simulate_signal(1).values)
    assert not np.allclose(first.values, simulate_signal(2).values)
    assert len(first) == CONSTANTS.N_TIMEPOINTS


@given(
    seed=st.integers(min_value=0, max_value=10_000),
    ic_target=st.floats(min_value=0.2, max_value=2.0),
)
@settings(max_examples=5)
def test_calibrated_series(seed: int, ic_target: float):
    y = calibrated_series(seed, ic_target)
    assert y.label == f"calibrated-{seed}"
    assert ic_ratio(y) == pytest.approx(ic_target, rel=0.25)
    np.testing.assert_array_equal(y.values, calibrated_series(seed, ic_target).values)


def test_simulate_series_helper():
    constants = TestConstants(N_TIMEPOINTS=120, START="2001-06")
    y = simulate_series(1.0, seed=1, constants=constants)
    assert len(y) == 120
    assert y.dates[0] == "2001-06"


def test_calibrated_series_invalid():
    with pytest.raises(ValidationError):
        calibrated_series(1, 0.0)
