from rkhs_trend.transforms.noise import (
    Noise,
    ar1_noise,
)
from rkhs_trend.transforms.periodic import Cycle
from rkhs_trend.transforms.trends import (
    LocalLinearTrend,
    Trend,
)

__all__ = ["Trend", "LocalLinearTrend", "Cycle", "Noise", "ar1_noise"]
