from dataclasses import dataclass
import typing as tp

from jaxtyping import Float
import numpy as np

from rkhs_trend.types import RandomVariable


@dataclass
class Parameter:
    def get_value(self, n_timepoints: int) -> Float[np.ndarray, "N"]:
        raise NotImplementedError


@dataclass
class FixedParameter(Parameter):
    value: float

    def get_value(self, n_timepoints: int) -> Float[np.ndarray, "N"]:
        return np.full(n_timepoints, float(self.value))


@dataclass
class TimeVaryingParameter(Parameter):
    """One independent draw from ``sampling_dist`` per time point."""

    sampling_dist: RandomVariable
    random_state: int = 123

    def get_value(self, n_timepoints: int) -> Float[np.ndarray, "N"]:
        draws = self.sampling_dist.rvs(
            size=(n_timepoints,), random_state=self.random_state
        )
        return np.asarray(draws, dtype=np.float64)


ParameterOrFloat = tp.Union[Parameter, float, int]


def resolve_parameter(value: ParameterOrFloat) -> Parameter:
    if isinstance(value, (int, float)):
        return FixedParameter(value=float(value))
    elif isinstance(value, Parameter):
        return value
    else:
        raise TypeError("`value` argument must be either a `Parameter` or `float`.")
