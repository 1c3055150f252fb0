"""Seeded simulation studies comparing smoothing configurations.

Each seed draws an I/C target, simulates a calibrated series and fixes the
filter length from it once, so every configuration is compared at the same
``m``.
"""

from dataclasses import (
    dataclass,
    field,
)
import logging
import typing as tp

import numpy as np
import pandas as pd
from pandera import (
    Check,
    Column,
    DataFrameSchema,
)
from rich.progress import Progress

from rkhs_trend.analysis.frames import ReportFrame
from rkhs_trend.analysis.revisions import (
    mspe_ratio,
    revision_report,
)
from rkhs_trend.analysis.turning import turning_report
from rkhs_trend.config import SmoothingConfig
from rkhs_trend.errors import check
from rkhs_trend.series import (
    TimeSeries,
    bank_for,
    ic_ratio,
    realtime_estimates,
)
from rkhs_trend.simulate import calibrated_series
from rkhs_trend.types import Number

logger = logging.getLogger(__name__)

REFERENCE = "musgrave"

RevisionStudySchema = DataFrameSchema(
    {
        "seed": Column(int, coerce=True),
        "config": Column(str),
        "m": Column(int, checks=[Check.greater_than_or_equal_to(2)], coerce=True),
        "ic": Column(float, checks=[Check.greater_than(0.0)], coerce=True),
        "mspe": Column(float, checks=[Check.greater_than_or_equal_to(0.0)]),
        "ratio": Column(float, coerce=True),
    }
)

LagStudySchema = DataFrameSchema(
    {
        "seed": Column(int, coerce=True),
        "config": Column(str),
        "m": Column(int, checks=[Check.greater_than_or_equal_to(2)], coerce=True),
        "n_points": Column(int, checks=[Check.greater_than_or_equal_to(0)]),
        "n_detected": Column(int, checks=[Check.greater_than_or_equal_to(0)]),
        "mean_lag": Column(float, nullable=True, coerce=True),
    }
)


def default_configs() -> tp.Dict[str, SmoothingConfig]:
    return {
        REFERENCE: SmoothingConfig(family="musgrave"),
        "rkhs-gain": SmoothingConfig(criterion="gain"),
        "rkhs-total": SmoothingConfig(criterion="total"),
    }


def study_series(
    seed: int,
    ic_range: tp.Tuple[Number, Number] = (0.2, 2.0),
    n_timepoints: int = 240,
) -> TimeSeries:
    ic_target = np.random.RandomState(seed).uniform(*ic_range)
    return calibrated_series(seed, ic_target, n_timepoints=n_timepoints)


@dataclass
class RevisionStudyResult(ReportFrame):
    rows: tp.List[tp.Dict[str, tp.Any]] = field(default_factory=list)

    def to_df(self) -> pd.DataFrame:
        df = pd.DataFrame(self.rows, columns=list(RevisionStudySchema.columns))
        return RevisionStudySchema.validate(df)

    def mean_ratios(self) -> pd.Series:
        return self.to_df().groupby("config")["ratio"].mean()


@dataclass
class LagStudyResult(ReportFrame):
    rows: tp.List[tp.Dict[str, tp.Any]] = field(default_factory=list)

    def to_df(self) -> pd.DataFrame:
        df = pd.DataFrame(self.rows, columns=list(LagStudySchema.columns))
        return LagStudySchema.validate(df)


def _check_configs(configs: tp.Dict[str, SmoothingConfig], reference: str) -> None:
    check(len(configs) > 0, "At least one configuration is needed.")
    check(reference in configs, f"Reference configuration {reference!r} missing.")


def revision_study(
    seeds: tp.Sequence[int],
    configs: tp.Optional[tp.Dict[str, SmoothingConfig]] = None,
    reference: str = REFERENCE,
    ic_range: tp.Tuple[Number, Number] = (0.2, 2.0),
    n_timepoints: int = 240,
    verbose: bool = False,
) -> RevisionStudyResult:
    """MSPE of last-point revisions per seed and configuration.

    ``ratio`` is the MSPE relative to the ``reference`` configuration on the
    same series.
    """
    configs = configs or default_configs()
    _check_configs(configs, reference)
    result = RevisionStudyResult()
    with Progress(disable=not verbose) as progress:
        seed_task = progress.add_task(
            "[blue]Seeds", total=len(seeds), visible=verbose
        )
        for seed in seeds:
            y = study_series(seed, ic_range=ic_range, n_timepoints=n_timepoints)
            ic = ic_ratio(y)
            reports = {}
            for name, config in configs.items():
                bank = bank_for(y, config)
                reports[name] = (
                    bank.m,
                    revision_report(realtime_estimates(y, config, bank=bank)),
                )
            _, baseline = reports[reference]
            for name, (m, report) in reports.items():
                result.rows.append(
                    {
                        "seed": seed,
                        "config": name,
                        "m": m,
                        "ic": ic,
                        "mspe": report.mspe,
                        "ratio": mspe_ratio(report, baseline),
                    }
                )
            logger.debug("Seed %d done at I/C %.3f", seed, ic)
            progress.update(seed_task, advance=1)
    return result


def lag_study(
    seeds: tp.Sequence[int],
    configs: tp.Optional[tp.Dict[str, SmoothingConfig]] = None,
    ic_range: tp.Tuple[Number, Number] = (0.2, 2.0),
    n_timepoints: int = 240,
    verbose: bool = False,
) -> LagStudyResult:
    """Detection lags of the turning points of each final trend."""
    configs = configs or default_configs()
    check(len(configs) > 0, "At least one configuration is needed.")
    result = LagStudyResult()
    with Progress(disable=not verbose) as progress:
        seed_task = progress.add_task(
            "[blue]Seeds", total=len(seeds), visible=verbose
        )
        for seed in seeds:
            y = study_series(seed, ic_range=ic_range, n_timepoints=n_timepoints)
            for name, config in configs.items():
                bank = bank_for(y, config)
                report = turning_report(y, config, bank=bank)
                detected = [lag for lag in report.lags if lag is not None]
                result.rows.append(
                    {
                        "seed": seed,
                        "config": name,
                        "m": bank.m,
                        "n_points": len(report.points),
                        "n_detected": len(detected),
                        "mean_lag": report.mean_lag,
                    }
                )
            progress.update(seed_task, advance=1)
    return result
