from dataclasses import dataclass
from typing import Tuple

from jaxtyping import Float
import numpy as np

from rkhs_trend.series import TimeSeries
from rkhs_trend.transforms.base import AdditiveTransform
from rkhs_trend.transforms.parameter import ParameterOrFloat
from rkhs_trend.types import Number


@dataclass(kw_only=True)
class Cycle(AdditiveTransform):
    """Sinusoidal business cycle ``amplitude * sin(2 pi t / period + shift)``.

    ``period`` is measured in observations.
    """

    amplitude: ParameterOrFloat = 1.0
    period: Number = 48.0
    shift: Number = 0.0
    offset: ParameterOrFloat = 0.0
    _slots: Tuple[str, str] = ("amplitude", "offset")

    def __post_init__(self):
        super().__post_init__()
        if self.period <= 0:
            raise ValueError(f"period must be positive, got {self.period}.")

    def get_values(self, series: TimeSeries) -> Float[np.ndarray, "N"]:
        amplitude = self._resolve_parameter(series, self.amplitude)
        offset = self._resolve_parameter(series, self.offset)
        t = np.arange(series.n_timepoints, dtype=np.float64)
        return amplitude * np.sin(2.0 * np.pi * t / self.period + self.shift) + offset
