from hypothesis import (
    given,
    settings,
    strategies as st,
)
from matplotlib.axes._axes import Axes
import matplotlib.pyplot as plt

from rkhs_trend.analysis.porcupine import porcupine
from rkhs_trend.config import SmoothingConfig
from rkhs_trend.filters import (
    henderson_exact,
    musgrave,
    rkhs_asymmetric,
)
from rkhs_trend.plotters import (
    plot_gain_phase,
    plot_porcupine,
    plot_trend,
)
from rkhs_trend.series import smooth
from rkhs_trend.testing import simulate_series

DEFAULT_SEED = 123
N_HORIZON = 4

title_strategy = st.text(
    alphabet=st.characters(
        whitelist_categories=("Lu", "Ll", "Nd"), whitelist_characters=" "
    ),
    min_size=1,
    max_size=50,
)


@given(
    n_estimates=st.integers(min_value=1, max_value=3),
    ax_bool=st.booleans(),
    title=title_strategy,
)
@settings(max_examples=5)
def test_plot_trend(n_estimates: int, ax_bool: bool, title: str):
    y = simulate_series(1.0, seed=DEFAULT_SEED)
    estimates = [smooth(y, SmoothingConfig(m=6)) for _ in range(n_estimates)]
    ax = plt.subplots()[1] if ax_bool else None
    ax = plot_trend(estimates, ax=ax, title=title)
    assert isinstance(ax, Axes)
    assert len(ax.lines) == n_estimates + 1
    assert ax.get_title() == title
    # duplicate labels collapse in the legend
    assert len(ax.get_legend().get_texts()) == 2
    plt.close("all")


def test_plot_trend_single_estimate():
    y = simulate_series(1.0, seed=DEFAULT_SEED)
    ax = plot_trend(smooth(y, SmoothingConfig(m=6, family="musgrave")))
    assert len(ax.lines) == 2
    plt.close("all")


def test_plot_gain_phase():
    filters = [henderson_exact(6), musgrave(6, 0, 3.5), rkhs_asymmetric(6, 0, 11.78)]
    gain_ax, delay_ax = plot_gain_phase(filters, grid_size=201)
    assert isinstance(gain_ax, Axes)
    assert isinstance(delay_ax, Axes)
    assert len(gain_ax.lines) == len(filters)
    assert len(delay_ax.lines) == len(filters)
    assert len(gain_ax.patches) == 1
    assert len(gain_ax.get_legend().get_texts()) == len(filters) + 1
    plt.close("all")


def test_plot_gain_phase_quarterly():
    _, axes = plt.subplots(ncols=2)
    gain_ax, _ = plot_gain_phase(
        henderson_exact(2), axes=tuple(axes), frequency="quarterly"
    )
    assert gain_ax is axes[0]
    assert len(gain_ax.lines) == 1
    plt.close("all")


def test_plot_porcupine():
    y = simulate_series(1.0, seed=DEFAULT_SEED)
    result = porcupine(y, 100, horizon=N_HORIZON, config=SmoothingConfig(m=6))
    ax = plot_porcupine(result, title="Porcupine")
    assert isinstance(ax, Axes)
    # one line per vintage plus the target marker
    assert len(ax.lines) == N_HORIZON + 2
    assert ax.get_title() == "Porcupine"
    plt.close("all")
