from dataclasses import dataclass
import typing as tp

import numpy as np

from rkhs_trend.config import SimulationConfig
from rkhs_trend.filters import (
    henderson_exact,
    slope_noise_ratio,
)
from rkhs_trend.series import TimeSeries
from rkhs_trend.simulate import (
    calibrated_series,
    simulate,
)
from rkhs_trend.types import Number


@dataclass(frozen=True, kw_only=True)
class TestConstants:
    N_TIMEPOINTS: int = 240
    START: str = "1990-01"
    LEVEL: float = 100.0
    WEIGHT_TOL: float = 1e-10
    HENDERSON_TOL: float = 5e-5
    BANDWIDTH_TOL: float = 0.05
    FILTER_LENGTHS: tp.Tuple[int, int, int] = (4, 6, 11)
    __test__: bool = False


def simulate_series(
    ic_target: Number, seed: int, constants: tp.Optional[TestConstants] = None
) -> TimeSeries:
    if not constants:
        constants = TestConstants()
    return calibrated_series(
        seed, ic_target, n_timepoints=constants.N_TIMEPOINTS, start=constants.START
    )


def simulate_flat(
    seed: int, noise_scale: Number = 0.0, constants: tp.Optional[TestConstants] = None
) -> TimeSeries:
    if not constants:
        constants = TestConstants()
    cfg = SimulationConfig(
        n_timepoints=constants.N_TIMEPOINTS,
        start=constants.START,
        level=constants.LEVEL,
        noise_scale=noise_scale,
        seed=seed,
    )
    return simulate(config=cfg)


def musgrave_least_squares(m: int, q: int, ic_ratio: Number) -> np.ndarray:
    """Musgrave weights by direct constrained least squares.

    Minimises ``k (sum_j j d_j)^2 + sum_j d_j^2`` over ``j = -m..m`` where
    ``d`` is the difference to the Henderson weights, the weights beyond ``q``
    are zero and the kept weights sum to one. ``k = 4 / (pi R^2)``.
    """
    target = henderson_exact(m).weights
    k = slope_noise_ratio(ic_ratio)
    n = m + q + 1
    offsets = np.arange(-m, q + 1, dtype=np.float64)
    design = np.vstack([np.sqrt(k) * offsets, np.eye(n)])
    response = np.concatenate(
        [[np.sqrt(k) * np.sum(np.arange(-m, m + 1) * target)], target[:n]]
    )
    # v = e_last + N z keeps sum(v) = 1
    base = np.zeros(n)
    base[-1] = 1.0
    null = np.vstack([np.eye(n - 1), -np.ones((1, n - 1))])
    z, *_ = np.linalg.lstsq(design @ null, response - design @ base, rcond=None)
    return base + null @ z
