from dataclasses import (
    dataclass,
    field,
)
import typing as tp

import numpy as np

from rkhs_trend.errors import check
from rkhs_trend.types import (
    CriterionTypes,
    FamilyTypes,
    FrequencyTypes,
    Number,
)


@dataclass(kw_only=True, frozen=True)
class OptimizerConfig:
    step: Number = 0.01
    upper_factor: Number = 3.0
    tol: Number = 1e-4
    grid_size: int = 2001
    chunk_size: int = 256

    def __post_init__(self):
        check(self.step > 0, f"step must be positive, got {self.step}.")
        check(self.tol > 0, f"tol must be positive, got {self.tol}.")
        check(self.upper_factor > 1, "upper_factor must exceed 1.")


@dataclass(kw_only=True, frozen=True)
class SmoothingConfig:
    """How a series is smoothed.

    ``m=None`` selects the filter length from the I/C ratio of the series.
    RKHS banks take their local bandwidths from ``bandwidths`` when given,
    otherwise from the published table (``use_builtin``) or the optimiser.
    Musgrave banks use ``ic_ratio``, defaulting to the X-11 value for ``m``.
    """

    m: tp.Optional[int] = None
    family: FamilyTypes = "rkhs"
    criterion: CriterionTypes = "gain"
    bandwidths: tp.Optional[tp.Tuple[Number, ...]] = None
    ic_ratio: tp.Optional[Number] = None
    use_builtin: bool = True
    global_bandwidth: bool = False
    optimizer: OptimizerConfig = field(default_factory=OptimizerConfig)

    def __post_init__(self):
        if self.m is not None:
            check(self.m >= 2, f"m must be at least 2, got {self.m}.")
        if self.ic_ratio is not None:
            check(self.ic_ratio > 0, f"ic_ratio must be positive: {self.ic_ratio}.")

    @property
    def label(self) -> str:
        if self.family == "musgrave":
            return "musgrave"
        if self.global_bandwidth:
            return "rkhs-global"
        return f"rkhs-{self.criterion}"


@dataclass(kw_only=True)
class SimulationConfig:
    n_timepoints: int
    start: str = "1990-01"
    frequency: FrequencyTypes = "monthly"
    level: Number = 100.0
    noise_scale: Number = 0.0
    seed: int = 123

    def __post_init__(self):
        check(self.n_timepoints >= 1, "n_timepoints must be at least 1.")
        self.rng = np.random.RandomState(self.seed)
