from hypothesis import (
    given,
    strategies as st,
)
import numpy as np
import pytest

from rkhs_trend.testing import simulate_flat
from rkhs_trend.transforms import Cycle

DEFAULT_SEED = 123


@given(
    amplitude=st.floats(min_value=0.1, max_value=10.0),
    period=st.integers(min_value=12, max_value=120),
)
def test_cycle_shape(amplitude: float, period: int):
    base = simulate_flat(DEFAULT_SEED)
    cycle = Cycle(amplitude=amplitude, period=period)(base).values - base.values
    assert np.max(np.abs(cycle)) <= amplitude + 1e-9
    assert cycle[0] == pytest.approx(0.0, abs=1e-12)
    np.testing.assert_allclose(cycle[period : 2 * period], cycle[:period], atol=1e-9)


def test_cycle_offset_and_shift():
    base = simulate_flat(DEFAULT_SEED)
    shifted = Cycle(amplitude=2.0, shift=np.pi / 2, offset=5.0)(base)
    diff = shifted.values - base.values
    assert diff[0] == pytest.approx(7.0)
    assert diff[24] == pytest.approx(3.0)


def test_cycle_invalid_period():
    with pytest.raises(ValueError):
        Cycle(period=0.0)
