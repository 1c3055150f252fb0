from dataclasses import dataclass
import typing as tp

from jaxtyping import Float
import numpy as np

from rkhs_trend.series import TimeSeries
from rkhs_trend.transforms.parameter import (
    Parameter,
    resolve_parameter,
)


@dataclass(kw_only=True)
class AbstractTransform:
    _slots: tp.Optional[tp.Tuple[str, ...]] = None

    def __post_init__(self):
        if self._slots:
            for slot in self._slots:
                coerced_param = resolve_parameter(getattr(self, slot))
                setattr(self, slot, coerced_param)

    def __call__(self, series: TimeSeries) -> TimeSeries:
        vals = self.get_values(series)
        return self.apply_values(vals, series)

    def get_values(self, series: TimeSeries) -> Float[np.ndarray, "N"]:
        raise NotImplementedError

    def apply_values(
        self, vals: Float[np.ndarray, "N"], series: TimeSeries
    ) -> TimeSeries:
        raise NotImplementedError

    @staticmethod
    def _resolve_parameter(
        series: TimeSeries, parameter: Parameter
    ) -> Float[np.ndarray, "N"]:
        return parameter.get_value(n_timepoints=series.n_timepoints)


@dataclass(kw_only=True)
class AdditiveTransform(AbstractTransform):
    def apply_values(
        self, vals: Float[np.ndarray, "N"], series: TimeSeries
    ) -> TimeSeries:
        return series.with_values(series.values + vals)
