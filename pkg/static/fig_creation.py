import matplotlib.pyplot as plt

from rkhs_trend import SmoothingConfig, smooth
from rkhs_trend.plotters import plot_trend
from rkhs_trend.simulate import calibrated_series

if __name__ == "__main__":
    y = calibrated_series(seed=123, ic_target=2.0)

    estimates = [
        smooth(y, SmoothingConfig(m=6, criterion="gain")),
        smooth(y, SmoothingConfig(m=6, criterion="phase_delay")),
        smooth(y, SmoothingConfig(m=6, family="musgrave")),
    ]
    plot_trend(estimates, title="13-term trend-cycle estimates")
    plt.savefig("readme_fig.png", dpi=150)
