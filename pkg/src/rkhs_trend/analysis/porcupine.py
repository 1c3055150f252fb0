from dataclasses import dataclass
import logging
import typing as tp

import pandas as pd
from pandera import (
    Column,
    DataFrameSchema,
)

from rkhs_trend.analysis.frames import ReportFrame
from rkhs_trend.config import SmoothingConfig
from rkhs_trend.errors import check
from rkhs_trend.filters import FilterBank
from rkhs_trend.series import (
    TimeSeries,
    bank_for,
    smooth,
)

logger = logging.getLogger(__name__)

PorcupineSchema = DataFrameSchema(
    {
        "vintage": Column(str),
        "date": Column(str),
        "estimate": Column(float, coerce=True),
    }
)


@dataclass
class PorcupineResult(ReportFrame):
    """Trailing trend estimates of successive vintages, in long format."""

    frame: pd.DataFrame
    target: str
    label: str = ""

    def to_df(self) -> pd.DataFrame:
        return PorcupineSchema.validate(self.frame)

    def path_at(self, date: tp.Optional[str] = None) -> pd.Series:
        """Estimate of ``date`` (the target by default) in each vintage."""
        date = date or self.target
        rows = self.frame[self.frame["date"] == date]
        return rows.set_index("vintage")["estimate"]

    @property
    def vintages(self) -> tp.List[str]:
        return list(dict.fromkeys(self.frame["vintage"]))


def porcupine(
    y: TimeSeries,
    target: tp.Union[int, str],
    horizon: int,
    config: tp.Optional[SmoothingConfig] = None,
    window: tp.Optional[int] = None,
    bank: tp.Optional[FilterBank] = None,
) -> PorcupineResult:
    """Smooth the vintages ending at ``target`` through ``target + horizon``.

    Each vintage contributes its last ``window`` estimates (``2m + 1`` by
    default). Vintages past the end of the series are dropped with a warning.
    """
    config = config or SmoothingConfig()
    if bank is None:
        bank = bank_for(y, config)
    index = y.index_of(target) if isinstance(target, str) else target
    check(horizon >= 0, f"horizon must be non-negative, got {horizon}.")
    check(
        2 * bank.m <= index < len(y),
        f"target must leave {2 * bank.m} observations before it and lie in "
        "the series.",
    )
    window = window or 2 * bank.m + 1
    check(window >= 1, f"window must be positive, got {window}.")
    last = index + horizon
    if last >= len(y):
        logger.warning(
            "Horizon %d runs past the end of the series; truncated to %d",
            horizon,
            len(y) - 1 - index,
        )
        last = len(y) - 1

    frames = []
    for end in range(index, last + 1):
        estimate = smooth(y.truncate(end + 1), bank=bank)
        first = max(0, end + 1 - window)
        frames.append(
            pd.DataFrame(
                {
                    "vintage": y.dates[end],
                    "date": estimate.series.dates[first:],
                    "estimate": estimate.values[first:],
                }
            )
        )
    frame = pd.concat(frames, ignore_index=True)
    return PorcupineResult(frame=frame, target=y.dates[index], label=bank.label)
