from dataclasses import dataclass
from typing import Tuple

from jaxtyping import Float
import numpy as np
from scipy.stats import norm

from rkhs_trend.series import TimeSeries
from rkhs_trend.transforms.base import AdditiveTransform
from rkhs_trend.transforms.parameter import ParameterOrFloat
from rkhs_trend.types import Number


@dataclass(kw_only=True)
class Trend(AdditiveTransform):
    degree: int = 1
    coefficient: ParameterOrFloat = 1.0
    intercept: ParameterOrFloat = 0.0
    _slots: Tuple[str, str] = ("coefficient", "intercept")

    def get_values(self, series: TimeSeries) -> Float[np.ndarray, "N"]:
        coefficient = self._resolve_parameter(series, self.coefficient)
        intercept = self._resolve_parameter(series, self.intercept)
        trend = np.arange(series.n_timepoints, dtype=np.float64) ** self.degree
        return intercept + coefficient * trend


@dataclass(kw_only=True)
class LocalLinearTrend(AdditiveTransform):
    """Random walk whose drift is itself a random walk.

    ``slope_t = slope_{t-1} + zeta_t`` and
    ``level_t = level_{t-1} + slope_{t-1} + eta_t``, starting from zero level.
    """

    level_scale: Number = 0.1
    slope_scale: Number = 0.02
    initial_slope: Number = 0.0
    seed: int = 123

    def __post_init__(self):
        super().__post_init__()
        if self.level_scale < 0 or self.slope_scale < 0:
            raise ValueError("Trend disturbance scales must be non-negative.")

    def get_values(self, series: TimeSeries) -> Float[np.ndarray, "N"]:
        n = series.n_timepoints
        rng = np.random.RandomState(self.seed)
        eta = norm(0.0, 1.0).rvs(size=n, random_state=rng) * self.level_scale
        zeta = norm(0.0, 1.0).rvs(size=n, random_state=rng) * self.slope_scale
        slope = self.initial_slope + np.cumsum(zeta)
        drift = np.concatenate([[0.0], np.cumsum(slope[:-1])])
        return drift + np.cumsum(eta) - eta[0]
