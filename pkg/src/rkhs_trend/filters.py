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

from rkhs_trend.errors import (
    SingularSystemError,
    ValidationError,
    check,
)
from rkhs_trend.kernels import (
    biweight_density,
    continuous_moments,
    replace_first_column,
)
from rkhs_trend.types import (
    FamilyTypes,
    FilterKind,
    Number,
)

logger = logging.getLogger(__name__)

SUM_TOLERANCE = 1e-10

WeightsSchema = DataFrameSchema(
    {
        "q": Column(int, checks=[Check.greater_than_or_equal_to(0)], coerce=True),
        "offset": Column(int, coerce=True),
        "weight": Column(float, coerce=True),
    }
)


@dataclass(frozen=True)
class FilterWeights:
    """A weight diagram over the integer offsets ``-m, ..., q``.

    ``weights[0]`` multiplies the observation ``m`` periods before the target
    point and ``weights[m]`` the target point itself.
    """

    m: int
    q: int
    weights: Float[np.ndarray, "n"]
    kind: FilterKind
    bandwidth: tp.Optional[Number] = None

    def __post_init__(self):
        check(self.m >= 0, f"m must be non-negative, got {self.m}.")
        check(0 <= self.q <= self.m, f"q must lie in [0, m={self.m}], got {self.q}.")
        check(
            self.weights.shape[0] == self.m + self.q + 1,
            f"Expected {self.m + self.q + 1} weights, got {self.weights.shape[0]}.",
        )
        check(bool(np.all(np.isfinite(self.weights))), "Weights must be finite.")
        total = float(self.weights.sum())
        check(
            abs(total - 1.0) < SUM_TOLERANCE,
            f"Weights must sum to 1, got {total!r}.",
        )

    @property
    def offsets(self) -> np.ndarray:
        return np.arange(-self.m, self.q + 1)

    @property
    def is_symmetric(self) -> bool:
        return self.q == self.m and bool(
            np.array_equal(self.weights, self.weights[::-1])
        )

    def __len__(self) -> int:
        return self.weights.shape[0]

    def weight(self, offset: int) -> float:
        return float(self.weights[offset + self.m])

    def to_df(self) -> pd.DataFrame:
        df = pd.DataFrame(
            {
                "q": np.repeat(self.q, len(self)),
                "offset": self.offsets,
                "weight": self.weights,
            }
        )
        return WeightsSchema.validate(df)


@dataclass(frozen=True)
class DiscreteMoments:
    m: int
    q: int
    bandwidth: float
    values: Float[np.ndarray, "7"]

    def __getitem__(self, r: int) -> float:
        return float(self.values[r])


def _check_length(m: int, minimum: int = 2) -> None:
    check(m >= minimum, f"Filter half-length m must be at least {minimum}, got {m}.")


def _check_bandwidth(m: int, b: Number) -> None:
    check(
        bool(np.isfinite(b)) and b > m,
        f"Bandwidth must exceed m={m} so every offset keeps a positive weight, "
        f"got {b}.",
    )


def _scaled_density(
    offsets: np.ndarray, b: Number
) -> tp.Tuple[Float[np.ndarray, "n"], Float[np.ndarray, "n"]]:
    u = offsets.astype(np.float64) / b
    return u, biweight_density(u) / b


def discrete_moments(m: int, q: int, b: Number) -> DiscreteMoments:
    """Discrete approximations ``S_r`` of the biweight moments, ``r = 0..6``."""
    check(0 <= q <= m, f"q must lie in [0, m={m}], got {q}.")
    u, density = _scaled_density(np.arange(-m, q + 1), b)
    values = np.array([float(np.sum(u**r * density)) for r in range(7)])
    if q == m:
        values[1::2] = 0.0
    return DiscreteMoments(m=m, q=q, bandwidth=float(b), values=values)


def kernel_weight_matrix(
    m: int, q: int, bandwidths: Float[np.ndarray, "k"]
) -> Float[np.ndarray, "k n"]:
    """Cut-and-normalize RKHS weights over ``-m..q``, one row per bandwidth."""
    spec = continuous_moments()
    mu2, mu4 = spec.moment(2), spec.moment(4)
    b = bandwidths[:, None]
    u = np.arange(-m, q + 1, dtype=np.float64)[None, :] / b
    density = biweight_density(u) / b
    s0 = np.sum(density, axis=1, keepdims=True)
    s2 = np.sum(u**2 * density, axis=1, keepdims=True)
    return (mu4 - mu2 * u**2) / (s0 * mu4 - s2 * mu2) * density


def _kernel_weights(m: int, q: int, b: Number) -> Float[np.ndarray, "n"]:
    return kernel_weight_matrix(m, q, np.array([float(b)]))[0]


def henderson_exact(m: int) -> FilterWeights:
    """Henderson weights from the cubic weighted least-squares fit.

    The design uses ``u = j / m`` instead of ``j``; rescaling the regressors
    leaves the intercept row of the hat matrix unchanged.
    """
    _check_length(m)
    offsets = np.arange(-m, m + 1)
    j2 = offsets.astype(np.float64) ** 2
    wls = ((m + 1) ** 2 - j2) * ((m + 2) ** 2 - j2) * ((m + 3) ** 2 - j2)
    wls = wls / wls.sum()
    u = offsets / m
    design = np.vander(u, N=4, increasing=True)
    normal = design.T @ (wls[:, None] * design)
    coef = np.linalg.solve(normal, np.eye(4)[0])
    raw = wls * (design @ coef)
    weights = 0.5 * (raw + raw[::-1])
    weights = weights / weights.sum()
    return FilterWeights(m=m, q=m, weights=weights, kind="henderson_exact")


def rkhs_symmetric(m: int, b: Number) -> FilterWeights:
    """Symmetric biweight RKHS weights in closed form."""
    _check_length(m)
    _check_bandwidth(m, b)
    weights = _kernel_weights(m, m, b)
    return FilterWeights(
        m=m, q=m, weights=weights, kind="rkhs_symmetric", bandwidth=float(b)
    )


def rkhs_asymmetric(m: int, q: int, b_q: Number) -> FilterWeights:
    """Cut-and-normalize boundary weights using offsets ``-m..q``."""
    _check_length(m)
    check(
        0 <= q <= m - 1,
        f"Asymmetric filters need 0 <= q <= m - 1 = {m - 1}, got q={q}; "
        "use rkhs_symmetric for q = m.",
    )
    _check_bandwidth(m, b_q)
    weights = _kernel_weights(m, q, b_q)
    return FilterWeights(
        m=m, q=q, weights=weights, kind="rkhs_asymmetric", bandwidth=float(b_q)
    )


def _matrix_form(m: int, q: int, b: Number) -> Float[np.ndarray, "n"]:
    spec = continuous_moments()
    moments = discrete_moments(m, q, b)
    u, density = _scaled_density(np.arange(-m, q + 1), b)
    design = np.vander(u, N=4, increasing=True)
    system = replace_first_column(spec.hankel, moments.values[:4])
    try:
        first_row = np.linalg.solve(system.T, np.eye(4)[0])
    except np.linalg.LinAlgError as err:
        raise SingularSystemError(
            f"Moment system is singular for m={m}, q={q}, b={b}."
        ) from err
    return first_row @ (design.T * density)


def rkhs_symmetric_matrix(m: int, b: Number) -> FilterWeights:
    """Symmetric RKHS weights as ``e1' Hs^-1 Xb' Fb``."""
    _check_length(m)
    _check_bandwidth(m, b)
    weights = _matrix_form(m, m, b)
    return FilterWeights(
        m=m, q=m, weights=weights, kind="rkhs_symmetric", bandwidth=float(b)
    )


def rkhs_asymmetric_matrix(m: int, q: int, b_q: Number) -> FilterWeights:
    """Asymmetric RKHS weights as ``e1' Ha^-1 Xq' Fq``."""
    _check_length(m)
    check(0 <= q <= m - 1, f"Asymmetric filters need 0 <= q <= {m - 1}, got {q}.")
    _check_bandwidth(m, b_q)
    weights = _matrix_form(m, q, b_q)
    return FilterWeights(
        m=m, q=q, weights=weights, kind="rkhs_asymmetric", bandwidth=float(b_q)
    )


def slope_noise_ratio(ic_ratio: Number) -> float:
    """X-11 link between the I/C ratio ``R`` and ``beta^2 / sigma^2``."""
    check(ic_ratio > 0, f"I/C ratio must be positive, got {ic_ratio}.")
    return 4.0 / (np.pi * ic_ratio**2)


def musgrave(m: int, q: int, ic_ratio: Number) -> FilterWeights:
    """Musgrave surrogate of the Henderson filter using offsets ``-m..q``.

    The truncated mass of the Henderson weights is spread uniformly and along
    a line in the offsets, which minimises the mean squared revision under a
    linear trend with slope/noise ratio ``4 / (pi R^2)``. ``q = m`` returns
    the Henderson weights themselves.
    """
    _check_length(m)
    check(0 <= q <= m, f"q must lie in [0, m={m}], got {q}.")
    ratio = slope_noise_ratio(ic_ratio)
    source = henderson_exact(m)
    n = m + q + 1
    kept = source.weights[:n]
    tail = source.weights[n:]
    tail_offsets = np.arange(q + 1, m + 1)
    centre = (q - m) / 2.0
    spread = n * (n**2 - 1) / 12.0
    offsets = np.arange(-m, q + 1)
    slope = np.sum((tail_offsets - centre) * tail) / (1.0 / ratio + spread)
    weights = kept + tail.sum() / n + (offsets - centre) * slope
    return FilterWeights(
        m=m, q=q, weights=weights, kind="musgrave", bandwidth=float(ic_ratio)
    )


@dataclass(frozen=True)
class FilterBank:
    """One symmetric filter with its asymmetric companions ``q = 0..m-1``."""

    symmetric: FilterWeights
    asymmetric: tp.Tuple[FilterWeights, ...]
    family: FamilyTypes
    label: str = field(default="")

    def __post_init__(self):
        m = self.symmetric.m
        check(
            len(self.asymmetric) == m,
            f"Expected {m} asymmetric filters, got {len(self.asymmetric)}.",
        )
        for q, filt in enumerate(self.asymmetric):
            check(filt.m == m and filt.q == q, f"Filter {q} has the wrong support.")

    @property
    def m(self) -> int:
        return self.symmetric.m

    def for_future(self, q: int) -> FilterWeights:
        """The filter using ``q`` future observations."""
        if q >= self.m:
            return self.symmetric
        return self.asymmetric[q]

    def to_df(self) -> pd.DataFrame:
        frames = [f.to_df() for f in self.asymmetric] + [self.symmetric.to_df()]
        return WeightsSchema.validate(pd.concat(frames, ignore_index=True))


def rkhs_bank(m: int, bandwidths: tp.Sequence[Number], label: str = "") -> FilterBank:
    check(
        len(bandwidths) == m,
        f"Expected {m} local bandwidths, got {len(bandwidths)}.",
    )
    asym = tuple(rkhs_asymmetric(m, q, b) for q, b in enumerate(bandwidths))
    logger.debug("Built RKHS bank m=%d with bandwidths %s", m, list(bandwidths))
    return FilterBank(
        symmetric=rkhs_symmetric(m, m + 1), asymmetric=asym, family="rkhs", label=label
    )


def musgrave_bank(m: int, ic_ratio: Number) -> FilterBank:
    asym = tuple(musgrave(m, q, ic_ratio) for q in range(m))
    return FilterBank(
        symmetric=henderson_exact(m),
        asymmetric=asym,
        family="musgrave",
        label=f"musgrave(R={ic_ratio:g})",
    )


def identity_filter() -> FilterWeights:
    return FilterWeights(m=0, q=0, weights=np.ones(1), kind="custom")


def from_offsets(
    offsets: tp.Sequence[int], values: tp.Sequence[Number]
) -> FilterWeights:
    """Build a custom filter from sparse ``offset -> weight`` pairs."""
    check(len(offsets) == len(values), "offsets and values differ in length.")
    m = max(0, -min(offsets))
    q = max(0, max(offsets))
    if q > m:
        raise ValidationError("Custom filters cannot reach further ahead than back.")
    weights = np.zeros(m + q + 1)
    for offset, value in zip(offsets, values, strict=True):
        weights[offset + m] += value
    return FilterWeights(m=m, q=q, weights=weights, kind="custom")
