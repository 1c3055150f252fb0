"""Turning points of a trend estimate.

A downturn is flagged at ``t`` when ``x[t-3] <= x[t-2] <= x[t-1] > x[t] >= x[t+1]``
and an upturn under the mirrored pattern. Three points are needed before and
one after, so ``3 <= t <= N - 2``.
"""

from dataclasses import dataclass
import logging
import typing as tp

from jaxtyping import Float
import numpy as np
import pandas as pd
from pandera import (
    Check,
    Column,
    DataFrameSchema,
)

from rkhs_trend.analysis.frames import ReportFrame
from rkhs_trend.config import SmoothingConfig
from rkhs_trend.errors import (
    ValidationError,
    check,
)
from rkhs_trend.filters import FilterBank
from rkhs_trend.series import (
    TimeSeries,
    bank_for,
    smooth,
)
from rkhs_trend.types import TurnKind

logger = logging.getLogger(__name__)

N_BEFORE = 3
N_AFTER = 1
EXTRA_LAG = 6

TurningSchema = DataFrameSchema(
    {
        "date": Column(str),
        "index": Column(int, checks=[Check.greater_than_or_equal_to(0)], coerce=True),
        "kind": Column(str, checks=[Check.isin(["upturn", "downturn"])]),
        "lag": Column(float, nullable=True, coerce=True),
    }
)


@dataclass(frozen=True)
class TurningPoint:
    index: int
    kind: TurnKind
    date: str = ""


def _is_downturn(x: Float[np.ndarray, "N"], t: int) -> bool:
    rising = all(x[t - k] <= x[t - k + 1] for k in range(N_BEFORE, 1, -1))
    return rising and x[t - 1] > x[t] and x[t] >= x[t + 1]


def _is_upturn(x: Float[np.ndarray, "N"], t: int) -> bool:
    falling = all(x[t - k] >= x[t - k + 1] for k in range(N_BEFORE, 1, -1))
    return falling and x[t - 1] < x[t] and x[t] <= x[t + 1]


def detect_turning_points(
    x: Float[np.ndarray, "N"], dates: tp.Optional[tp.List[str]] = None
) -> tp.List[TurningPoint]:
    n = x.shape[0]
    check(
        n >= N_BEFORE + N_AFTER + 1,
        f"Need at least {N_BEFORE + N_AFTER + 1} values, got {n}.",
    )
    points = []
    for t in range(N_BEFORE, n - N_AFTER):
        date = dates[t] if dates is not None else ""
        if _is_downturn(x, t):
            points.append(TurningPoint(index=t, kind="downturn", date=date))
        elif _is_upturn(x, t):
            points.append(TurningPoint(index=t, kind="upturn", date=date))
    return points


def _resolve_index(y: TimeSeries, point: tp.Union[int, str]) -> int:
    if isinstance(point, str):
        return y.index_of(point)
    check(0 <= point < len(y), f"index {point} outside the series.")
    return point


def detection_lag(
    y: TimeSeries,
    true_tp: tp.Union[int, str],
    config: tp.Optional[SmoothingConfig] = None,
    bank: tp.Optional[FilterBank] = None,
) -> tp.Optional[int]:
    """Observations after ``true_tp`` needed before a vintage flags it.

    ``true_tp`` must be a turning point of the final trend. The lag ``d`` is
    the smallest for which the trend of ``y[:true_tp + d + 1]`` has a turning
    point of the same kind at the same date. Returns ``None`` when none of the
    vintages up to ``m + 6`` observations later does.
    """
    config = config or SmoothingConfig()
    if bank is None:
        bank = bank_for(y, config)
    index = _resolve_index(y, true_tp)
    final = smooth(y, bank=bank)
    matches = [p for p in detect_turning_points(final.values) if p.index == index]
    if not matches:
        raise ValidationError(
            f"{y.dates[index]} is not a turning point of the final trend."
        )
    kind = matches[0].kind
    for lag in range(bank.m + EXTRA_LAG + 1):
        length = index + lag + 1
        if length > len(y):
            break
        if length < 2 * bank.m + 1 or index > length - 1 - N_AFTER:
            continue
        vintage = smooth(y.truncate(length), bank=bank)
        if any(
            p.index == index and p.kind == kind
            for p in detect_turning_points(vintage.values)
        ):
            return lag
    logger.warning("Turning point at %s was not detected in time", y.dates[index])
    return None


@dataclass
class TurningReport(ReportFrame):
    points: tp.List[TurningPoint]
    lags: tp.List[tp.Optional[int]]
    label: str = ""

    @property
    def mean_lag(self) -> float:
        detected = [lag for lag in self.lags if lag is not None]
        if not detected:
            return float("nan")
        return float(np.mean(detected))

    def to_df(self) -> pd.DataFrame:
        df = pd.DataFrame(
            {
                "date": [p.date for p in self.points],
                "index": [p.index for p in self.points],
                "kind": [p.kind for p in self.points],
                "lag": [np.nan if lag is None else float(lag) for lag in self.lags],
            }
        )
        return TurningSchema.validate(df)


def turning_report(
    y: TimeSeries,
    config: tp.Optional[SmoothingConfig] = None,
    bank: tp.Optional[FilterBank] = None,
) -> TurningReport:
    """Turning points of the final trend with their detection lags."""
    config = config or SmoothingConfig()
    if bank is None:
        bank = bank_for(y, config)
    final = smooth(y, bank=bank)
    points = detect_turning_points(final.values, dates=y.dates)
    lags = [detection_lag(y, p.index, bank=bank) for p in points]
    return TurningReport(points=points, lags=lags, label=final.label)
