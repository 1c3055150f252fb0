"""Frequency response of moving-average filters.

Frequencies are in cycles per unit time on ``[0, 1/2]``. The transfer
function is ``Gamma(w) = sum_j w_j exp(-i 2 pi w j)``; the phase ``theta`` is
its unwrapped argument in radians, so a filter leaning on past observations
has a positive phase and a positive delay ``theta / (2 pi w)``.
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
from scipy.integrate import simpson

from rkhs_trend.errors import check
from rkhs_trend.filters import FilterWeights
from rkhs_trend.types import (
    BandTypes,
    FrequencyTypes,
    Number,
)

logger = logging.getLogger(__name__)

DEFAULT_GRID_SIZE = 2001
MIN_REVISION_GRID = 201
SIGNAL_BAND_UPPER: tp.Dict[str, float] = {"monthly": 0.06, "quarterly": 0.18}

SpectrumSchema = DataFrameSchema(
    {
        "omega": Column(
            float,
            checks=[
                Check.greater_than_or_equal_to(0.0),
                Check.less_than_or_equal_to(0.5),
            ],
            coerce=True,
        ),
        "gain": Column(
            float, checks=[Check.greater_than_or_equal_to(0.0)], coerce=True
        ),
        "phase_radians": Column(float, coerce=True),
        "delay": Column(float, coerce=True),
    }
)


@dataclass(frozen=True)
class SpectralCurve:
    frequencies: Float[np.ndarray, "g"]
    transfer_real: Float[np.ndarray, "g"]
    transfer_imag: Float[np.ndarray, "g"]
    gain: Float[np.ndarray, "g"]
    phase: Float[np.ndarray, "g"]
    zero_delay: float = 0.0

    def __len__(self) -> int:
        return self.frequencies.shape[0]


@dataclass(frozen=True)
class RevisionSpectrum:
    """Mean square revision between two filters and its gain/phase split."""

    total: float
    gain_part: float
    phase_part: float
    band: BandTypes
    upper: float

    @property
    def residual(self) -> float:
        return self.total**2 - (self.gain_part + self.phase_part)


def signal_band_upper(frequency: FrequencyTypes = "monthly") -> float:
    """Upper edge of the trend-cycle band (cycles of 16 months or longer)."""
    return SIGNAL_BAND_UPPER[frequency]


def frequency_grid(grid_size: int = DEFAULT_GRID_SIZE) -> Float[np.ndarray, "g"]:
    check(grid_size >= 2, f"grid_size must be at least 2, got {grid_size}.")
    return np.linspace(0.0, 0.5, grid_size)


def fourier_basis(
    offsets: np.ndarray, frequencies: Float[np.ndarray, "g"]
) -> tp.Tuple[Float[np.ndarray, "g n"], Float[np.ndarray, "g n"]]:
    """Cosine and sine matrices ``cos(2 pi w j)``, ``sin(2 pi w j)``."""
    angle = 2.0 * np.pi * np.outer(frequencies, offsets.astype(np.float64))
    return np.cos(angle), np.sin(angle)


def band_mask(
    frequencies: Float[np.ndarray, "g"], band: BandTypes, upper: Number
) -> np.ndarray:
    if band == "full":
        return np.ones(frequencies.shape[0], dtype=bool)
    return frequencies <= upper + 1e-12


def integrate(
    values: Float[np.ndarray, "... g"], frequencies: Float[np.ndarray, "g"]
) -> tp.Union[float, Float[np.ndarray, "..."]]:
    """Composite Simpson rule along the last axis."""
    result = simpson(values, x=frequencies, axis=-1)
    if np.ndim(result) == 0:
        return float(result)
    return result


def _response(
    weights: FilterWeights, frequencies: Float[np.ndarray, "g"]
) -> tp.Tuple[Float[np.ndarray, "g"], Float[np.ndarray, "g"]]:
    cos, sin = fourier_basis(weights.offsets, frequencies)
    real = cos @ weights.weights
    if weights.is_symmetric:
        imag = np.zeros_like(real)
    else:
        imag = -(sin @ weights.weights)
    return real, imag


def transfer(
    weights: FilterWeights, grid_size: int = DEFAULT_GRID_SIZE
) -> SpectralCurve:
    """Sample the transfer function of ``weights`` on ``grid_size`` frequencies.

    Symmetric filters get an identically zero imaginary part, so their phase
    is 0 where the transfer is positive and ``pi`` where it is negative.
    """
    frequencies = frequency_grid(grid_size)
    real, imag = _response(weights, frequencies)
    gain = np.hypot(real, imag)
    phase = np.unwrap(np.arctan2(imag, real))
    zero_delay = -float(np.sum(weights.offsets * weights.weights))
    return SpectralCurve(
        frequencies=frequencies,
        transfer_real=real,
        transfer_imag=imag,
        gain=gain,
        phase=phase,
        zero_delay=zero_delay,
    )


def delay_from_phase(
    phase: Float[np.ndarray, "... g"],
    frequencies: Float[np.ndarray, "g"],
    zero_delay: tp.Union[Number, Float[np.ndarray, "..."]],
) -> Float[np.ndarray, "... g"]:
    positive = frequencies > 0.0
    safe = np.where(positive, frequencies, 1.0)
    delay = phase / (2.0 * np.pi * safe)
    limit = np.asarray(zero_delay, dtype=np.float64)[..., None]
    return np.where(positive, delay, np.broadcast_to(limit, delay.shape))


def phase_delay(curve: SpectralCurve) -> Float[np.ndarray, "g"]:
    """Time displacement ``theta / (2 pi w)``; the ``w = 0`` entry is ``-sum j w_j``."""
    return delay_from_phase(curve.phase, curve.frequencies, curve.zero_delay)


def revision_integrands(
    real_q: Float[np.ndarray, "... g"],
    imag_q: Float[np.ndarray, "... g"],
    real: Float[np.ndarray, "g"],
    imag: Float[np.ndarray, "g"],
) -> tp.Tuple[
    Float[np.ndarray, "... g"], Float[np.ndarray, "... g"], Float[np.ndarray, "... g"]
]:
    """Pointwise ``|Gq - G|^2``, ``(Gq - G)^2`` and ``4 Gq G sin^2(dtheta / 2)``."""
    total = (real_q - real) ** 2 + (imag_q - imag) ** 2
    gain_q = np.hypot(real_q, imag_q)
    gain = np.hypot(real, imag)
    dtheta = np.arctan2(imag_q, real_q) - np.arctan2(imag, real)
    phase = 4.0 * gain_q * gain * np.sin(dtheta / 2.0) ** 2
    return total, (gain_q - gain) ** 2, phase


def revision_distance(
    asym: FilterWeights,
    sym: FilterWeights,
    band: BandTypes = "full",
    grid_size: int = DEFAULT_GRID_SIZE,
    upper: Number = SIGNAL_BAND_UPPER["monthly"],
) -> RevisionSpectrum:
    """Decompose the mean square revision from ``asym`` to ``sym``.

    ``total`` is ``sqrt(2 int |Gamma_q - Gamma|^2)``; ``gain_part`` and
    ``phase_part`` are the two squared components and add up to ``total**2``.
    """
    check(
        grid_size >= MIN_REVISION_GRID,
        f"grid_size must be at least {MIN_REVISION_GRID} for the revision "
        f"decomposition, got {grid_size}.",
    )
    check(sym.q == sym.m, "The reference filter must be symmetric (q = m).")
    check(asym.m == sym.m, f"Filters differ in m: {asym.m} and {sym.m}.")
    frequencies = frequency_grid(grid_size)
    mask = band_mask(frequencies, band, upper)
    freqs = frequencies[mask]
    real_q, imag_q = (arr[mask] for arr in _response(asym, frequencies))
    real, imag = (arr[mask] for arr in _response(sym, frequencies))
    total, gain, phase = revision_integrands(real_q, imag_q, real, imag)
    total_sq = 2.0 * integrate(total, freqs)
    return RevisionSpectrum(
        total=float(np.sqrt(max(total_sq, 0.0))),
        gain_part=2.0 * integrate(gain, freqs),
        phase_part=2.0 * integrate(phase, freqs),
        band=band,
        upper=float(upper),
    )


def to_frame(curve: SpectralCurve) -> pd.DataFrame:
    df = pd.DataFrame(
        {
            "omega": curve.frequencies,
            "gain": curve.gain,
            "phase_radians": curve.phase,
            "delay": phase_delay(curve),
        }
    )
    return SpectrumSchema.validate(df)
