import logging
import math
import typing as tp

import numpy as np

from rkhs_trend.config import SimulationConfig
from rkhs_trend.errors import check
from rkhs_trend.series import (
    TimeSeries,
    ic_ratio,
    parse_period,
)
from rkhs_trend.transforms import (
    Cycle,
    LocalLinearTrend,
    ar1_noise,
)
from rkhs_trend.types import Number

logger = logging.getLogger(__name__)

CALIBRATION_ROUNDS = 10
CALIBRATION_TOL = 0.01


def simulate(
    config: SimulationConfig, key: tp.Optional[np.random.RandomState] = None
) -> TimeSeries:
    """A flat series at ``config.level`` plus optional Gaussian white noise."""
    if key is None:
        key = config.rng
    start, frequency = parse_period(config.start)
    check(
        frequency == config.frequency,
        f"start {config.start!r} is not a {config.frequency} date.",
    )
    values = np.full(config.n_timepoints, float(config.level))
    if config.noise_scale > 0:
        values = values + key.normal(
            loc=0.0, scale=config.noise_scale, size=config.n_timepoints
        )
    return TimeSeries(values=values, start=start, frequency=frequency)


def simulate_signal(
    seed: int,
    n_timepoints: int = 240,
    start: str = "1990-01",
    level: Number = 100.0,
    cycle_amplitude: Number = 2.0,
) -> TimeSeries:
    """Local linear trend plus a business cycle, without irregular."""
    rng = np.random.RandomState(seed)
    period = rng.uniform(36.0, 72.0)
    shift = rng.uniform(0.0, 2.0 * np.pi)
    base = simulate(
        SimulationConfig(n_timepoints=n_timepoints, start=start, level=level, seed=seed)
    )
    trend = LocalLinearTrend(
        level_scale=0.05, slope_scale=0.01, initial_slope=0.05, seed=seed
    )
    cycle = Cycle(amplitude=cycle_amplitude, period=period, shift=shift)
    return cycle(trend(base))


def calibrated_series(
    seed: int,
    ic_target: Number,
    n_timepoints: int = 240,
    start: str = "1990-01",
    ar: Number = 0.3,
) -> TimeSeries:
    """Signal plus AR(1) irregular scaled so the I/C ratio lands near ``ic_target``.

    The starting noise scale matches ``E|diff u| = ic_target * mean|diff signal|``
    for Gaussian AR(1) noise; a few multiplicative corrections against the
    measured I/C ratio follow until it is within 1% of the target.
    """
    check(ic_target > 0, f"ic_target must be positive, got {ic_target}.")
    signal = simulate_signal(seed, n_timepoints=n_timepoints, start=start)
    trend_change = float(np.mean(np.abs(np.diff(signal.values))))
    diff_scale = math.sqrt(2.0 / math.pi) * math.sqrt(2.0 / (1.0 + ar))
    scale = ic_target * trend_change / diff_scale
    for _ in range(CALIBRATION_ROUNDS):
        series = ar1_noise(scale, ar=ar, seed=seed + 1)(signal)
        achieved = ic_ratio(series)
        if abs(achieved / ic_target - 1.0) < CALIBRATION_TOL:
            break
        scale = scale * ic_target / achieved
    series.label = f"calibrated-{seed}"
    logger.debug(
        "Calibrated seed %d to I/C %.3f (target %.3f)",
        seed,
        achieved,
        ic_target,
    )
    return series
