from __future__ import annotations

from dataclasses import (
    dataclass,
    field,
)
import io
import logging
import math
from pathlib import Path
import re
import typing as tp

from jaxtyping import Float
import numpy as np
from numpy.lib.stride_tricks import sliding_window_view
import pandas as pd
from pandera import (
    Check,
    Column,
    DataFrameSchema,
)
from rich.progress import Progress

from rkhs_trend.bandwidth import resolve_bandwidths
from rkhs_trend.config import SmoothingConfig
from rkhs_trend.errors import (
    DegenerateRatioError,
    IngestionError,
    ValidationError,
    check,
)
from rkhs_trend.filters import (
    FilterBank,
    FilterWeights,
    henderson_exact,
    musgrave_bank,
)
from rkhs_trend.spectral import signal_band_upper
from rkhs_trend.types import (
    FrequencyTypes,
    Number,
)

logger = logging.getLogger(__name__)

IC_MIN_LENGTH = 27
MUSGRAVE_IC: tp.Dict[int, float] = {2: 0.001, 3: 4.5, 4: 1.0, 6: 3.5, 11: 4.5}
_MONTHLY = re.compile(r"^(\d{4})-(\d{2})$")
_QUARTERLY = re.compile(r"^(\d{4})-Q([1-4])$")
_PARSER_LINE = re.compile(r"line (\d+)")

SeriesSchema = DataFrameSchema(
    {
        "date": Column(str),
        "value": Column(float, coerce=True),
    }
)

TrendSchema = DataFrameSchema(
    {
        "date": Column(str),
        "value": Column(float, coerce=True),
        "estimate": Column(float, coerce=True),
        "provenance": Column(
            str, checks=[Check.str_matches(r"^(symmetric|asymmetric|reflected)")]
        ),
    }
)

RealtimeSchema = DataFrameSchema(
    {
        "date": Column(str),
        "final": Column(float, coerce=True),
        "realtime": Column(float, coerce=True),
        "final_provenance": Column(str),
    }
)


def parse_period(text: str) -> tp.Tuple[pd.Period, FrequencyTypes]:
    """Parse ``YYYY-MM`` or ``YYYY-Qn`` into a period and its frequency."""
    text = text.strip()
    monthly = _MONTHLY.match(text)
    if monthly:
        year, month = int(monthly.group(1)), int(monthly.group(2))
        if not 1 <= month <= 12:
            raise ValueError(f"month {month} out of range in {text!r}")
        return pd.Period(f"{year:04d}-{month:02d}", freq="M"), "monthly"
    quarterly = _QUARTERLY.match(text)
    if quarterly:
        year, quarter = int(quarterly.group(1)), int(quarterly.group(2))
        return pd.Period(f"{year:04d}Q{quarter}", freq="Q"), "quarterly"
    raise ValueError(f"malformed date {text!r}; expected YYYY-MM or YYYY-Qn")


def format_period(period: pd.Period, frequency: FrequencyTypes) -> str:
    if frequency == "quarterly":
        return f"{period.year:04d}-Q{period.quarter}"
    return f"{period.year:04d}-{period.month:02d}"


@dataclass
class TimeSeries:
    values: Float[np.ndarray, "N"]
    start: pd.Period
    frequency: FrequencyTypes = "monthly"
    label: str = ""

    def __post_init__(self):
        check(self.values.shape[0] >= 1, "A series needs at least one value.")
        check(bool(np.all(np.isfinite(self.values))), "Series values must be finite.")

    @classmethod
    def from_values(
        cls,
        values: tp.Sequence[Number] | np.ndarray,
        start: str = "1990-01",
        label: str = "",
    ) -> TimeSeries:
        period, frequency = parse_period(start)
        arr = np.asarray(values, dtype=np.float64).reshape(-1)
        return cls(values=arr, start=period, frequency=frequency, label=label)

    def __len__(self) -> int:
        return self.values.shape[0]

    @property
    def n_timepoints(self) -> int:
        return self.values.shape[0]

    @property
    def periods(self) -> pd.PeriodIndex:
        return pd.period_range(start=self.start, periods=self.n_timepoints)

    @property
    def dates(self) -> tp.List[str]:
        return [format_period(p, self.frequency) for p in self.periods]

    def index_of(self, date: str) -> int:
        period, frequency = parse_period(date)
        if frequency != self.frequency:
            raise ValidationError(f"{date!r} is not a {self.frequency} date.")
        idx = period.ordinal - self.start.ordinal
        if not 0 <= idx < self.n_timepoints:
            raise ValidationError(f"{date!r} lies outside the series.")
        return int(idx)

    def truncate(self, length: int) -> TimeSeries:
        check(
            1 <= length <= self.n_timepoints,
            f"Cannot truncate a series of length {self.n_timepoints} to {length}.",
        )
        return TimeSeries(
            values=self.values[:length].copy(),
            start=self.start,
            frequency=self.frequency,
            label=self.label,
        )

    def with_values(self, values: Float[np.ndarray, "N"]) -> TimeSeries:
        return TimeSeries(
            values=values, start=self.start, frequency=self.frequency, label=self.label
        )

    def to_df(self) -> pd.DataFrame:
        df = pd.DataFrame({"date": self.dates, "value": self.values})
        return SeriesSchema.validate(df)

    def __eq__(self, other: TimeSeries) -> bool:
        return (
            self.start == other.start
            and self.frequency == other.frequency
            and self.values.shape == other.values.shape
            and bool(np.allclose(self.values, other.values))
        )


def _read_rows(source: tp.Union[str, Path, tp.TextIO, io.TextIOBase]) -> pd.DataFrame:
    try:
        return pd.read_csv(
            source,
            dtype=str,
            keep_default_na=False,
            skip_blank_lines=False,
            skipinitialspace=True,
        )
    except pd.errors.EmptyDataError as err:
        raise IngestionError(1, "empty file") from err
    except pd.errors.ParserError as err:
        found = _PARSER_LINE.search(str(err))
        row = int(found.group(1)) if found else 1
        raise IngestionError(row, f"unreadable CSV ({err})") from err


def ingest_csv(source: tp.Union[str, Path, tp.TextIO], label: str = "") -> TimeSeries:
    """Read a ``date,value`` CSV into a validated series.

    Row numbers in errors are file lines, the header being line 1.
    """
    if isinstance(source, str) and "\n" in source:
        source = io.StringIO(source)
    raw = _read_rows(source)
    columns = [str(c).strip().lower() for c in raw.columns]
    if columns != ["date", "value"]:
        header = ",".join(columns)
        raise IngestionError(1, f"expected header 'date,value', got {header!r}")
    blank = raw.fillna("").apply(lambda col: col.str.strip() == "").all(axis=1)
    rows = raw[~blank]
    if rows.shape[0] == 0:
        raise IngestionError(1, "no data rows")
    periods: tp.List[pd.Period] = []
    values: tp.List[float] = []
    frequency: tp.Optional[str] = None
    # blank lines are kept by the reader, so the index maps to file lines
    for i, (date_text, value_text) in zip(
        rows.index, rows.itertuples(index=False), strict=True
    ):
        row = int(i) + 2
        try:
            period, row_frequency = parse_period(str(date_text))
        except ValueError as err:
            raise IngestionError(row, str(err)) from err
        if frequency is None:
            frequency = row_frequency
        elif row_frequency != frequency:
            raise IngestionError(row, f"{row_frequency} date in a {frequency} series")
        try:
            value = float(str(value_text).strip())
        except ValueError as err:
            raise IngestionError(row, f"non-numeric value {value_text!r}") from err
        if not math.isfinite(value):
            raise IngestionError(row, f"non-finite value {value_text!r}")
        if periods:
            step = period.ordinal - periods[-1].ordinal
            if step == 0:
                raise IngestionError(row, f"duplicate date {date_text}")
            if step < 0:
                raise IngestionError(row, f"date {date_text} is out of order")
            if step > 1:
                raise IngestionError(
                    row, f"gap before {date_text} ({step - 1} missing periods)"
                )
        periods.append(period)
        values.append(value)
    if isinstance(source, (str, Path)) and not label:
        label = Path(source).stem
    logger.debug("Ingested %d %s observations from %s", len(values), frequency, label)
    return TimeSeries(
        values=np.asarray(values, dtype=np.float64),
        start=periods[0],
        frequency=frequency,
        label=label,
    )


def apply_symmetric(
    values: Float[np.ndarray, "N"], weights: FilterWeights
) -> Float[np.ndarray, "K"]:
    """Estimates at every point with ``m`` neighbours on both sides."""
    windows = sliding_window_view(values, len(weights))
    return windows @ weights.weights


def apply_at(values: Float[np.ndarray, "N"], t: int, weights: FilterWeights) -> float:
    """Apply ``weights`` (offsets ``-m..q``) centred on index ``t``."""
    return float(values[t - weights.m : t + weights.q + 1] @ weights.weights)


def apply_reflected(
    values: Float[np.ndarray, "N"], t: int, weights: FilterWeights
) -> float:
    """Apply the time-reversed filter (offsets ``-q..m``) at index ``t``."""
    return float(values[t - weights.q : t + weights.m + 1] @ weights.weights[::-1])


def ic_ratio(y: TimeSeries) -> float:
    """Mean absolute irregular change over mean absolute trend change.

    The trend is the 13-term Henderson estimate on interior points.
    """
    check(
        len(y) >= IC_MIN_LENGTH,
        f"The I/C ratio needs at least {IC_MIN_LENGTH} observations, got {len(y)}.",
    )
    henderson = henderson_exact(6)
    trend = apply_symmetric(y.values, henderson)
    irregular = y.values[henderson.m : len(y) - henderson.m] - trend
    trend_change = np.mean(np.abs(np.diff(trend)))
    if trend_change == 0.0:
        raise DegenerateRatioError("The trend is flat; the I/C ratio is undefined.")
    return float(np.mean(np.abs(np.diff(irregular))) / trend_change)


def select_length(ic: Number, frequency: FrequencyTypes = "monthly") -> int:
    """Filter half-length ``m`` for an I/C ratio (X-11 thresholds)."""
    check(ic >= 0, f"The I/C ratio must be non-negative, got {ic}.")
    if frequency == "quarterly":
        return 2 if ic < 1.0 else 3
    if ic < 1.0:
        return 4
    if ic < 3.5:
        return 6
    return 11


def default_musgrave_ic(m: int) -> float:
    return MUSGRAVE_IC.get(m, 3.5)


def resolve_length(y: TimeSeries, config: SmoothingConfig) -> int:
    if config.m is not None:
        return config.m
    ratio = ic_ratio(y)
    m = select_length(ratio, y.frequency)
    logger.debug("I/C ratio %.4f selects m=%d for %s", ratio, m, y.label or "series")
    return m


def build_bank(
    m: int, config: SmoothingConfig, frequency: FrequencyTypes = "monthly"
) -> FilterBank:
    if config.family == "musgrave":
        ic = config.ic_ratio if config.ic_ratio is not None else default_musgrave_ic(m)
        return musgrave_bank(m, ic)
    bandwidths = resolve_bandwidths(
        m,
        config.criterion,
        bandwidths=config.bandwidths,
        use_builtin=config.use_builtin,
        global_bandwidth=config.global_bandwidth,
        config=config.optimizer,
        upper=signal_band_upper(frequency),
    )
    return bandwidths.bank()


def bank_for(y: TimeSeries, config: SmoothingConfig) -> FilterBank:
    """The filter bank for ``y``, with the length resolved on the whole series."""
    return build_bank(resolve_length(y, config), config, y.frequency)


@dataclass
class TrendEstimate:
    series: TimeSeries
    values: Float[np.ndarray, "N"]
    provenance: tp.Tuple[str, ...]
    m: int
    label: str = ""

    def __len__(self) -> int:
        return self.values.shape[0]

    @property
    def symmetric_mask(self) -> np.ndarray:
        return np.array([p == "symmetric" for p in self.provenance], dtype=bool)

    def to_df(self) -> pd.DataFrame:
        df = pd.DataFrame(
            {
                "date": self.series.dates,
                "value": self.series.values,
                "estimate": self.values,
                "provenance": list(self.provenance),
            }
        )
        return TrendSchema.validate(df)

    def as_series(self) -> TimeSeries:
        return self.series.with_values(self.values)


def _smooth_with_bank(y: TimeSeries, bank: FilterBank, label: str) -> TrendEstimate:
    m = bank.m
    n = len(y)
    check(
        n >= 2 * m + 1,
        f"Smoothing with m={m} needs at least {2 * m + 1} observations, got {n}.",
    )
    values = np.empty(n)
    provenance: tp.List[str] = ["symmetric"] * n
    values[m : n - m] = apply_symmetric(y.values, bank.symmetric)
    for q in range(m):
        t_end = n - 1 - q
        values[t_end] = apply_at(y.values, t_end, bank.asymmetric[q])
        provenance[t_end] = f"asymmetric(q={q})"
        values[q] = apply_reflected(y.values, q, bank.asymmetric[q])
        provenance[q] = f"reflected(q={q})"
    return TrendEstimate(
        series=y, values=values, provenance=tuple(provenance), m=m, label=label
    )


def smooth(
    y: TimeSeries,
    config: tp.Optional[SmoothingConfig] = None,
    bank: tp.Optional[FilterBank] = None,
) -> TrendEstimate:
    """Trend-cycle estimate at every point of ``y``.

    Interior points use the symmetric filter, the last ``m`` points the
    asymmetric filter with ``q = N - 1 - t`` future observations and the first
    ``m`` points the time-reversed asymmetric filters.
    """
    config = config or SmoothingConfig()
    if bank is None:
        bank = bank_for(y, config)
    return _smooth_with_bank(y, bank, bank.label or config.label)


def vintages(
    y: TimeSeries,
    from_index: int,
    config: tp.Optional[SmoothingConfig] = None,
    bank: tp.Optional[FilterBank] = None,
    verbose: bool = False,
) -> tp.List[TrendEstimate]:
    """Smooth every truncation ``y[:L]`` for ``L = from_index..N``.

    The filter bank, and so the filter length, is fixed from the full series.
    """
    config = config or SmoothingConfig()
    if bank is None:
        bank = bank_for(y, config)
    check(
        2 * bank.m + 1 <= from_index <= len(y),
        f"from_index must lie in [{2 * bank.m + 1}, {len(y)}], got {from_index}.",
    )
    estimates = []
    with Progress(disable=not verbose) as progress:
        task = progress.add_task(
            "[green]Vintages", total=len(y) - from_index + 1, visible=verbose
        )
        for length in range(from_index, len(y) + 1):
            estimates.append(
                _smooth_with_bank(y.truncate(length), bank, bank.label or config.label)
            )
            progress.update(task, advance=1)
    return estimates


@dataclass
class RealtimeEstimates:
    """Last-point estimates of every vintage next to the final estimate."""

    final: TrendEstimate
    start: int
    values: Float[np.ndarray, "K"]
    label: str = field(default="")

    @property
    def final_values(self) -> Float[np.ndarray, "K"]:
        return self.final.values[self.start :]

    @property
    def final_symmetric(self) -> np.ndarray:
        return self.final.symmetric_mask[self.start :]

    def to_df(self) -> pd.DataFrame:
        df = pd.DataFrame(
            {
                "date": self.final.series.dates[self.start :],
                "final": self.final_values,
                "realtime": self.values,
                "final_provenance": list(self.final.provenance[self.start :]),
            }
        )
        return RealtimeSchema.validate(df)


def realtime_estimates(
    y: TimeSeries,
    config: tp.Optional[SmoothingConfig] = None,
    from_index: tp.Optional[int] = None,
    bank: tp.Optional[FilterBank] = None,
) -> RealtimeEstimates:
    """The real-time (``q = 0``) estimate of each date from ``from_index - 1`` on.

    Date ``t`` is estimated from the vintage ``y[:t + 1]``.
    """
    config = config or SmoothingConfig()
    if bank is None:
        bank = bank_for(y, config)
    if from_index is None:
        from_index = 2 * bank.m + 1
    check(
        2 * bank.m + 1 <= from_index <= len(y),
        f"from_index must lie in [{2 * bank.m + 1}, {len(y)}], got {from_index}.",
    )
    final = _smooth_with_bank(y, bank, bank.label or config.label)
    last_point = bank.asymmetric[0]
    values = np.array(
        [apply_at(y.values, t, last_point) for t in range(from_index - 1, len(y))]
    )
    return RealtimeEstimates(
        final=final, start=from_index - 1, values=values, label=final.label
    )
