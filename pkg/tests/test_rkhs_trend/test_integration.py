import numpy as np
import pytest

from rkhs_trend import (
    SimulationConfig,
    SmoothingConfig,
    simulate,
    smooth,
)
from rkhs_trend.analysis import (
    mspe_ratio,
    revision_report,
    turning_report,
)
from rkhs_trend.series import (
    TimeSeries,
    realtime_estimates,
)
from rkhs_trend.transforms import (
    Cycle,
    Trend,
)

N = 120


def _signal(seed: int) -> TimeSeries:
    cfg = SimulationConfig(n_timepoints=N, seed=seed)
    return Cycle(amplitude=2.0, period=24.0)(Trend(coefficient=0.1)(simulate(cfg)))


@pytest.mark.parametrize("seed", [123, 42])
def test_end_to_end(seed: int):
    y = _signal(seed)
    np.testing.assert_approx_equal(y.values.sum(), 12714.0, significant=8)

    config = SmoothingConfig(m=6, criterion="gain")
    trend = smooth(y, config)
    assert trend.symmetric_mask.sum() == N - 12
    assert trend.label == "rkhs-gain"

    report = revision_report(realtime_estimates(y, config))
    reference = revision_report(
        realtime_estimates(y, SmoothingConfig(m=6, family="musgrave"))
    )
    assert report.mspe >= 0.0
    assert np.isfinite(mspe_ratio(report, reference))

    turning = turning_report(y, config)
    kinds = {p.kind for p in turning.points}
    assert len(turning.points) >= 4
    assert kinds == {"upturn", "downturn"}


def test_end_to_end_is_seed_independent_without_noise():
    a = smooth(_signal(1), SmoothingConfig(m=6, family="musgrave"))
    b = smooth(_signal(2), SmoothingConfig(m=6, family="musgrave"))
    np.testing.assert_array_equal(a.values, b.values)
