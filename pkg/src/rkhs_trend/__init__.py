from rkhs_trend.config import (
    OptimizerConfig,
    SimulationConfig,
    SmoothingConfig,
)
from rkhs_trend.filters import (
    FilterBank,
    FilterWeights,
    henderson_exact,
    musgrave,
    rkhs_asymmetric,
    rkhs_symmetric,
)
from rkhs_trend.series import (
    TimeSeries,
    ingest_csv,
    smooth,
)
from rkhs_trend.simulate import simulate

__all__ = [
    "OptimizerConfig",
    "SimulationConfig",
    "SmoothingConfig",
    "FilterBank",
    "FilterWeights",
    "henderson_exact",
    "musgrave",
    "rkhs_asymmetric",
    "rkhs_symmetric",
    "TimeSeries",
    "ingest_csv",
    "smooth",
    "simulate",
]
