"""Local bandwidth selection for the asymmetric RKHS filters.

Each ``b_q`` minimises a distance between the asymmetric filter and the
symmetric reference ``rkhs_symmetric(m, m + 1)``:

* ``total``: ``sqrt(2 int_0^0.5 |Gamma_q - Gamma|^2)``
* ``gain``: ``sqrt(2 int_0^0.5 (G_q - G)^2)``
* ``phase_cos``: ``sqrt(2 int_S G_q G (1 - cos theta_q))``
* ``phase_delay``: ``(1 / s) int_S |theta_q / (2 pi w)|``

with ``S = [0, s]`` the signal band. For ``phase_delay`` the last filter before
the symmetric one (``q = m - 1``) is searched over ``b >= m + 1``.
"""

from dataclasses import dataclass
import logging
import math
import typing as tp

from jaxtyping import Float
import numpy as np
import pandas as pd
from pandera import (
    Check,
    Column,
    DataFrameSchema,
)
from rich.progress import Progress

from rkhs_trend.config import OptimizerConfig
from rkhs_trend.errors import (
    ConvergenceError,
    ValidationError,
    check,
)
from rkhs_trend.filters import (
    FilterBank,
    kernel_weight_matrix,
    rkhs_bank,
    rkhs_symmetric,
)
from rkhs_trend.spectral import (
    SIGNAL_BAND_UPPER,
    band_mask,
    delay_from_phase,
    fourier_basis,
    frequency_grid,
    integrate,
    revision_integrands,
)
from rkhs_trend.types import (
    CriterionTypes,
    Number,
)

logger = logging.getLogger(__name__)

MIN_M = 2
MAX_M = 15
INV_PHI = (math.sqrt(5) - 1) / 2
INV_PHI_SQUARE = (3 - math.sqrt(5)) / 2

# fmt: off
BUILTIN_TABLE: tp.Dict[tp.Tuple[int, str], tp.Tuple[float, ...]] = {
    (4, "total"): (6.47, 5.21, 4.90, 4.92),
    (4, "gain"): (8.00, 5.67, 4.87, 4.90),
    (4, "phase_delay"): (4.01, 4.45, 5.97, 6.93),
    (6, "total"): (9.54, 7.88, 7.07, 6.88, 6.87, 6.94),
    (6, "gain"): (11.78, 9.24, 7.34, 6.85, 6.84, 6.95),
    (6, "phase_delay"): (6.01, 6.01, 7.12, 8.44, 9.46, 10.39),
    (11, "total"): (
        17.32, 15.35, 13.53, 12.47, 12.05, 11.86, 11.77, 11.77, 11.82, 11.91, 11.98,
    ),
    (11, "gain"): (
        21.18, 18.40, 16.07, 13.89, 12.44, 11.90, 11.72, 11.73, 11.83, 11.92, 11.98,
    ),
    (11, "phase_delay"): (
        11.01, 11.01, 11.01, 11.01, 11.41, 13.85, 15.13, 16.21, 17.21, 18.15, 19.05,
    ),
}
# fmt: on

BandwidthSchema = DataFrameSchema(
    {
        "m": Column(int, checks=[Check.greater_than_or_equal_to(MIN_M)], coerce=True),
        "criterion": Column(str),
        "q": Column(int, checks=[Check.greater_than_or_equal_to(0)], coerce=True),
        "bandwidth": Column(float, coerce=True),
    }
)


@dataclass(frozen=True)
class BandwidthSet:
    m: int
    criterion: tp.Optional[CriterionTypes]
    values: tp.Tuple[float, ...]
    source: tp.Literal["builtin", "optimized", "global", "explicit"] = "optimized"

    def __post_init__(self):
        check(
            len(self.values) == self.m,
            f"Expected {self.m} bandwidths, got {len(self.values)}.",
        )
        for q, b in enumerate(self.values):
            check(
                math.isfinite(b) and b > self.m,
                f"Bandwidth b_{q}={b} is not admissible for m={self.m}.",
            )

    @property
    def name(self) -> str:
        return self.criterion if self.criterion is not None else "global"

    def bank(self) -> FilterBank:
        return rkhs_bank(self.m, self.values, label=f"rkhs-{self.name}")

    def to_df(self) -> pd.DataFrame:
        return bandwidth_frame(self)


class _Objective:
    """Criterion values for a batch of bandwidths at fixed ``(m, q)``."""

    def __init__(
        self,
        m: int,
        q: int,
        criterion: CriterionTypes,
        grid_size: int,
        upper: float,
    ):
        self.m = m
        self.q = q
        self.criterion = criterion
        self.upper = upper
        frequencies = frequency_grid(grid_size)
        if criterion in ("phase_cos", "phase_delay"):
            mask = band_mask(frequencies, "signal", upper)
        else:
            mask = band_mask(frequencies, "full", upper)
        self.frequencies = frequencies
        self.mask = mask
        self.offsets = np.arange(-m, q + 1)
        self.cos, self.sin = fourier_basis(self.offsets, frequencies)
        reference = rkhs_symmetric(m, m + 1)
        sym_cos, _ = fourier_basis(reference.offsets, frequencies)
        self.ref_real = sym_cos @ reference.weights
        self.ref_imag = np.zeros_like(self.ref_real)

    def __call__(self, bandwidths: Float[np.ndarray, "k"]) -> Float[np.ndarray, "k"]:
        weights = kernel_weight_matrix(self.m, self.q, bandwidths)
        real = weights @ self.cos.T
        imag = -(weights @ self.sin.T)
        mask = self.mask
        freqs = self.frequencies[mask]
        if self.criterion == "phase_delay":
            phase = np.unwrap(np.arctan2(imag, real), axis=-1)[:, mask]
            zero_delay = -(weights @ self.offsets.astype(np.float64))
            delay = delay_from_phase(phase, freqs, zero_delay)
            return integrate(np.abs(delay), freqs) / self.upper
        total, gain, phase = revision_integrands(
            real[:, mask], imag[:, mask], self.ref_real[mask], self.ref_imag[mask]
        )
        if self.criterion == "total":
            values = 2.0 * integrate(total, freqs)
        elif self.criterion == "gain":
            values = 2.0 * integrate(gain, freqs)
        else:
            values = integrate(phase, freqs)
        return np.sqrt(np.maximum(values, 0.0))

    def scalar(self, b: Number) -> float:
        return float(self(np.array([float(b)]))[0])


def _check_m(m: int) -> None:
    check(
        MIN_M <= m <= MAX_M,
        f"Bandwidth optimisation supports {MIN_M} <= m <= {MAX_M}, got m={m}.",
    )


def objective(
    m: int,
    q: int,
    b: Number,
    criterion: CriterionTypes,
    config: tp.Optional[OptimizerConfig] = None,
    upper: Number = SIGNAL_BAND_UPPER["monthly"],
) -> float:
    """Distance between the asymmetric filter ``(m, q, b)`` and the reference.

    ``q = m`` evaluates the symmetric filter with bandwidth ``b``.
    """
    config = config or OptimizerConfig()
    check(0 <= q <= m, f"q must lie in [0, m={m}], got {q}.")
    check(b > m, f"Bandwidth must exceed m={m}, got {b}.")
    return _Objective(m, q, criterion, config.grid_size, float(upper)).scalar(b)


def golden_section(
    func: tp.Callable[[float], float], lower: float, upper: float, tol: float
) -> tp.Tuple[float, float]:
    """Shrink ``[lower, upper]`` around the minimum of a unimodal ``func``.

    Returns a bracket whose width is at most ``tol``.
    """
    a, b = min(lower, upper), max(lower, upper)
    h = b - a
    if h <= tol:
        return a, b
    n_steps = int(math.ceil(math.log(tol / h) / math.log(INV_PHI)))
    c = a + INV_PHI_SQUARE * h
    d = a + INV_PHI * h
    yc = func(c)
    yd = func(d)
    for _ in range(n_steps - 1):
        if yc < yd:
            b, d, yd = d, c, yc
            h = INV_PHI * h
            c = a + INV_PHI_SQUARE * h
            yc = func(c)
        else:
            a, c, yc = c, d, yd
            h = INV_PHI * h
            d = a + INV_PHI * h
            yd = func(d)
    if yc < yd:
        return a, d
    return c, b


def scan_grid(m: int, config: OptimizerConfig) -> Float[np.ndarray, "k"]:
    upper = config.upper_factor * (m + 1)
    n_points = int(math.floor((upper - m) / config.step + 1e-9))
    return np.round(m + config.step * np.arange(1, n_points + 1), 10)


def search_floor(m: int, q: int, criterion: CriterionTypes) -> float:
    """Lower end of the bandwidth scan for ``(m, q)``.

    Near ``b = m`` the phase delay of the ``q = m - 1`` filter has a spurious
    minimum, so that filter starts at ``m + 1``.
    """
    if criterion == "phase_delay" and q == m - 1:
        return float(m + 1)
    return float(m)


def optimal_bandwidth(
    m: int,
    q: int,
    criterion: CriterionTypes,
    config: tp.Optional[OptimizerConfig] = None,
    upper: Number = SIGNAL_BAND_UPPER["monthly"],
) -> float:
    """Minimise the criterion over ``b`` for a single asymmetric filter."""
    config = config or OptimizerConfig()
    _check_m(m)
    check(0 <= q <= m - 1, f"q must lie in [0, {m - 1}], got {q}.")
    func = _Objective(m, q, criterion, config.grid_size, float(upper))
    grid = scan_grid(m, config)
    grid = grid[grid >= search_floor(m, q, criterion) - 1e-9]
    values = np.concatenate(
        [
            func(grid[start : start + config.chunk_size])
            for start in range(0, grid.shape[0], config.chunk_size)
        ]
    )
    if not np.all(np.isfinite(values)) or np.ptp(values) == 0.0:
        raise ConvergenceError(
            f"Objective {criterion!r} is flat or undefined for m={m}, q={q}."
        )
    idx = int(np.argmin(values))
    lower = float(grid[max(idx - 1, 0)])
    upper_b = float(grid[min(idx + 1, grid.shape[0] - 1)])
    a, b = golden_section(func.scalar, lower, upper_b, config.tol)
    refined = 0.5 * (a + b)
    refined_value = func.scalar(refined)
    best = refined if refined_value < values[idx] else float(grid[idx])
    logger.debug(
        "m=%d q=%d %s: grid minimum %.4f in [%.4f, %.4f], selected %.6f",
        m,
        q,
        criterion,
        grid[idx],
        lower,
        upper_b,
        best,
    )
    return best


def optimize(
    m: int,
    criterion: CriterionTypes,
    config: tp.Optional[OptimizerConfig] = None,
    upper: Number = SIGNAL_BAND_UPPER["monthly"],
    verbose: bool = False,
) -> BandwidthSet:
    """Select ``b_0, ..., b_{m-1}`` by scanning and golden-section refinement."""
    config = config or OptimizerConfig()
    _check_m(m)
    values = []
    with Progress(disable=not verbose) as progress:
        task = progress.add_task(
            f"[blue]Bandwidths m={m} ({criterion})", total=m, visible=verbose
        )
        for q in range(m):
            values.append(optimal_bandwidth(m, q, criterion, config, upper))
            progress.update(task, advance=1)
    return BandwidthSet(m=m, criterion=criterion, values=tuple(values))


def builtin_table(m: int, criterion: CriterionTypes) -> BandwidthSet:
    """Published optimal bandwidths for the 9, 13 and 23-term filters."""
    key = (m, criterion)
    if key not in BUILTIN_TABLE:
        raise ValidationError(
            f"No published bandwidths for m={m} and criterion {criterion!r}; "
            "run optimize instead."
        )
    return BandwidthSet(
        m=m, criterion=criterion, values=BUILTIN_TABLE[key], source="builtin"
    )


def global_bandwidths(m: int) -> BandwidthSet:
    """The time-invariant choice ``b_q = m + 1`` for every ``q``."""
    return BandwidthSet(
        m=m,
        criterion=None,
        values=tuple(float(m + 1) for _ in range(m)),
        source="global",
    )


def resolve_bandwidths(
    m: int,
    criterion: CriterionTypes,
    bandwidths: tp.Optional[tp.Sequence[Number]] = None,
    use_builtin: bool = True,
    global_bandwidth: bool = False,
    config: tp.Optional[OptimizerConfig] = None,
    upper: Number = SIGNAL_BAND_UPPER["monthly"],
) -> BandwidthSet:
    if bandwidths is not None:
        result = BandwidthSet(
            m=m,
            criterion=criterion,
            values=tuple(float(b) for b in bandwidths),
            source="explicit",
        )
    elif global_bandwidth:
        result = global_bandwidths(m)
    elif use_builtin and (m, criterion) in BUILTIN_TABLE:
        result = builtin_table(m, criterion)
    else:
        result = optimize(m, criterion, config, upper)
    logger.debug("Resolved %s bandwidths for m=%d: %s", result.source, m, result.values)
    return result


def bandwidth_frame(*sets: BandwidthSet) -> pd.DataFrame:
    rows = [
        {"m": s.m, "criterion": s.name, "q": q, "bandwidth": b}
        for s in sets
        for q, b in enumerate(s.values)
    ]
    return BandwidthSchema.validate(pd.DataFrame(rows))
