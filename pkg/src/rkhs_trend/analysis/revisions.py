from dataclasses import (
    dataclass,
    field,
)
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
from rkhs_trend.errors import check
from rkhs_trend.filters import FilterBank
from rkhs_trend.series import RealtimeEstimates
from rkhs_trend.spectral import revision_distance

logger = logging.getLogger(__name__)

MSPE_SCALE = 1e4

RevisionSchema = DataFrameSchema(
    {
        "date": Column(str),
        "final": Column(float, coerce=True),
        "realtime": Column(float, coerce=True),
        "relative": Column(float, nullable=True, coerce=True),
    }
)

TimePathSchema = DataFrameSchema(
    {
        "q": Column(int, checks=[Check.greater_than_or_equal_to(0)], coerce=True),
        "offset": Column(int, coerce=True),
        "weight": Column(float, coerce=True),
        "distance": Column(
            float, checks=[Check.greater_than_or_equal_to(0.0)], coerce=True
        ),
    }
)


@dataclass
class RevisionReport(ReportFrame):
    """Relative revisions ``R_t = (S_t - A_t) / S_t`` of real-time estimates.

    Dates where the final estimate ``S_t`` is zero carry ``NaN`` and are left
    out of the MSPE.
    """

    dates: tp.List[str]
    final: Float[np.ndarray, "N"]
    realtime: Float[np.ndarray, "N"]
    relative: Float[np.ndarray, "N"]
    label: str = ""
    reference_mspe: tp.Optional[float] = field(default=None)

    @property
    def n_defined(self) -> int:
        return int(np.sum(np.isfinite(self.relative)))

    @property
    def n_excluded(self) -> int:
        return len(self.dates) - self.n_defined

    @property
    def mspe(self) -> float:
        """Mean squared relative revision in percentage-squared units."""
        defined = self.relative[np.isfinite(self.relative)]
        check(defined.shape[0] > 0, "No date has a non-zero final estimate.")
        return float(np.mean(defined**2) * MSPE_SCALE)

    @property
    def mspe_ratio_vs_reference(self) -> tp.Optional[float]:
        if self.reference_mspe is None:
            return None
        if self.reference_mspe == 0:
            raise ZeroDivisionError("Error: reference MSPE is 0!")
        return self.mspe / self.reference_mspe

    def to_df(self) -> pd.DataFrame:
        df = pd.DataFrame(
            {
                "date": self.dates,
                "final": self.final,
                "realtime": self.realtime,
                "relative": self.relative,
            }
        )
        return RevisionSchema.validate(df)


def relative_revisions(
    final: Float[np.ndarray, "N"],
    realtime: Float[np.ndarray, "N"],
    dates: tp.Optional[tp.List[str]] = None,
    label: str = "",
) -> RevisionReport:
    if dates is None:
        dates = [str(i) for i in range(final.shape[0])]
    check(len(dates) == final.shape[0], "dates and estimates differ in length.")
    nonzero = final != 0.0
    relative = np.full(final.shape[0], np.nan)
    relative[nonzero] = (final[nonzero] - realtime[nonzero]) / final[nonzero]
    n_zero = int(np.sum(~nonzero))
    if n_zero:
        logger.warning(
            "Excluded %d dates with a zero final estimate from %s",
            n_zero,
            label or "the revisions",
        )
    return RevisionReport(
        dates=list(dates),
        final=final,
        realtime=realtime,
        relative=relative,
        label=label,
    )


def revision_report(
    estimates: RealtimeEstimates, symmetric_only: bool = True
) -> RevisionReport:
    """Revisions of the last-point estimates against the final trend.

    With ``symmetric_only`` only dates whose final estimate comes from the
    symmetric filter are kept, so the final value is really final.
    """
    dates = estimates.final.series.dates[estimates.start :]
    keep = (
        estimates.final_symmetric
        if symmetric_only
        else np.ones(len(dates), dtype=bool)
    )
    check(bool(np.any(keep)), "No date has a final symmetric estimate.")
    return relative_revisions(
        estimates.final_values[keep],
        estimates.values[keep],
        dates=[d for d, k in zip(dates, keep, strict=True) if k],
        label=estimates.label,
    )


def mspe_ratio(report: RevisionReport, reference: RevisionReport) -> float:
    reference_mspe = reference.mspe
    if reference_mspe == 0:
        raise ZeroDivisionError("Error: reference MSPE is 0!")
    return report.mspe / reference_mspe


def filter_time_path(bank: FilterBank) -> pd.DataFrame:
    """Weights of every asymmetric filter and its distance to the symmetric one."""
    frames = []
    for q in range(bank.m + 1):
        weights = bank.for_future(q)
        distance = revision_distance(weights, bank.symmetric).total
        df = weights.to_df().assign(distance=distance)
        frames.append(df)
    return TimePathSchema.validate(pd.concat(frames, ignore_index=True))
