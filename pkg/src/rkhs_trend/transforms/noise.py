from dataclasses import (
    dataclass,
    field,
)
from typing import Tuple

from jaxtyping import Float
import numpy as np
from scipy.signal import lfilter
from scipy.stats import norm

from rkhs_trend.series import TimeSeries
from rkhs_trend.transforms.base import AdditiveTransform
from rkhs_trend.transforms.parameter import (
    Parameter,
    TimeVaryingParameter,
)
from rkhs_trend.types import Number


@dataclass(kw_only=True)
class Noise(AdditiveTransform):
    """
    Add a stationary AR(1) irregular ``u_t = ar * u_{t-1} + e_t``. The
    innovations ``e_t`` are drawn from ``noise_dist``, Normal with 0 loc and
    0.1 scale by default. ``ar = 0`` gives white noise.
    """

    noise_dist: Parameter = field(
        default_factory=lambda: TimeVaryingParameter(sampling_dist=norm(0, 0.1))
    )
    ar: Number = 0.0
    _slots: Tuple[str] = ("noise_dist",)

    def __post_init__(self):
        super().__post_init__()
        if not -1.0 < self.ar < 1.0:
            raise ValueError(f"AR coefficient must lie in (-1, 1), got {self.ar}.")

    def get_values(self, series: TimeSeries) -> Float[np.ndarray, "N"]:
        innovations = self._resolve_parameter(series, self.noise_dist)
        innovations = innovations.copy()
        innovations[0] = innovations[0] / np.sqrt(1.0 - self.ar**2)
        return lfilter([1.0], [1.0, -self.ar], innovations)


def ar1_noise(scale: Number, ar: Number = 0.0, seed: int = 123) -> Noise:
    return Noise(
        noise_dist=TimeVaryingParameter(
            sampling_dist=norm(0, scale), random_state=seed
        ),
        ar=ar,
    )
