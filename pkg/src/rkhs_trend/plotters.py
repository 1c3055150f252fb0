import typing as tp

import matplotlib as mpl
from matplotlib.axes._axes import Axes
import matplotlib.pyplot as plt

from rkhs_trend.analysis.porcupine import PorcupineResult
from rkhs_trend.filters import FilterWeights
from rkhs_trend.series import TrendEstimate
from rkhs_trend.spectral import (
    phase_delay,
    signal_band_upper,
    transfer,
)
from rkhs_trend.types import FrequencyTypes


def clean_legend(ax: Axes) -> Axes:
    """Remove duplicate legend entries from a plot.

    Args:
        ax (Axes): The matplotlib axes containing the legend to be formatted.

    Returns:
        Axes: The cleaned matplotlib axes.
    """
    handles, labels = ax.get_legend_handles_labels()
    by_label = dict(zip(labels, handles, strict=False))
    ax.legend(by_label.values(), by_label.keys(), loc="best")
    return ax


def _despine(ax: Axes) -> None:
    ax.spines["right"].set_visible(False)
    ax.spines["top"].set_visible(False)


def plot_trend(
    estimates: tp.Union[TrendEstimate, tp.List[TrendEstimate]],
    ax: tp.Optional[Axes] = None,
    title: tp.Optional[str] = None,
) -> Axes:
    """Observed series with one or more trend estimates on top."""
    if isinstance(estimates, TrendEstimate):
        estimates = [estimates]
    cols = mpl.rcParams["axes.prop_cycle"].by_key()["color"]
    series = estimates[0].series
    idx = series.periods.to_timestamp()

    if ax is None:
        _, ax = plt.subplots(figsize=(6, 3), tight_layout=True)
    ax.plot(idx, series.values, color="gray", label="Observed", alpha=0.5)
    for i, estimate in enumerate(estimates):
        ax.plot(
            idx,
            estimate.values,
            color=cols[i % len(cols)],
            label=estimate.label or f"Trend {i}",
        )
    clean_legend(ax)
    _despine(ax)
    ax.set(xlabel="Time", ylabel="Value", title=title)
    return ax


def plot_gain_phase(
    filters: tp.Union[FilterWeights, tp.List[FilterWeights]],
    axes: tp.Optional[tp.Tuple[Axes, Axes]] = None,
    frequency: FrequencyTypes = "monthly",
    grid_size: int = 1001,
) -> tp.Tuple[Axes, Axes]:
    """Gain (left) and phase delay (right) of each filter.

    The shaded region marks the trend-cycle band.
    """
    if isinstance(filters, FilterWeights):
        filters = [filters]
    if axes is None:
        _, axes = plt.subplots(ncols=2, figsize=(10, 3), tight_layout=True)
    gain_ax, delay_ax = axes
    upper = signal_band_upper(frequency)
    for filt in filters:
        curve = transfer(filt, grid_size=grid_size)
        label = f"{filt.kind} (m={filt.m}, q={filt.q})"
        gain_ax.plot(curve.frequencies, curve.gain, label=label)
        delay_ax.plot(curve.frequencies, phase_delay(curve), label=label)
    for ax, ylabel in ((gain_ax, "Gain"), (delay_ax, "Delay")):
        ax.axvspan(0.0, upper, color="gray", alpha=0.15, label="Signal band")
        clean_legend(ax)
        _despine(ax)
        ax.set(xlabel="Frequency", ylabel=ylabel)
    return gain_ax, delay_ax


def plot_porcupine(
    result: PorcupineResult,
    ax: tp.Optional[Axes] = None,
    title: tp.Optional[str] = None,
) -> Axes:
    """One line per vintage; the target date is marked."""
    df = result.to_df()
    if ax is None:
        _, ax = plt.subplots(figsize=(6, 3), tight_layout=True)
    cmap = plt.get_cmap("viridis")
    vintages = result.vintages
    dates = sorted(df["date"].unique())
    position = {date: i for i, date in enumerate(dates)}
    for i, vintage in enumerate(vintages):
        rows = df[df["vintage"] == vintage]
        ax.plot(
            rows["date"].map(position),
            rows["estimate"],
            color=cmap(i / max(len(vintages) - 1, 1)),
            alpha=0.8,
        )
    ax.axvline(x=position[result.target], color="black", linestyle="--", label="Target")
    clean_legend(ax)
    _despine(ax)
    step = max(len(dates) // 6, 1)
    ax.set_xticks(range(0, len(dates), step), dates[::step])
    ax.tick_params(axis="x", labelrotation=45)
    ax.set(xlabel="Date", ylabel="Trend estimate", title=title)
    return ax
