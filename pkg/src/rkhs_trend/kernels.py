"""Biweight density, its moments and the order-4 reproducing kernel.

The kernel is evaluated in its Hankel-determinant form

    K4(t) = det(H[1, t]) / det(H) * f(t),

where ``H`` is the 4x4 Hankel matrix of the biweight moments and ``H[1, t]``
replaces its first column with ``(1, t, t^2, t^3)``.
"""

from dataclasses import dataclass
from fractions import Fraction
import typing as tp

from jaxtyping import Float
import numpy as np

from rkhs_trend.errors import check
from rkhs_trend.types import Number

DENSITY_ORDER = 4
BIWEIGHT_CONSTANT = Fraction(15, 16)

# Exact moments of (15/16)(1 - t^2)^2 on [-1, 1]; odd moments vanish.
_EXACT_MOMENTS: tp.Tuple[Fraction, ...] = (
    Fraction(1),
    Fraction(0),
    Fraction(1, 7),
    Fraction(0),
    Fraction(1, 21),
    Fraction(0),
    Fraction(5, 231),
)


@dataclass(frozen=True)
class KernelSpec:
    moments: Float[np.ndarray, "7"]
    hankel: Float[np.ndarray, "4 4"]
    density_order: int = DENSITY_ORDER

    def moment(self, r: int) -> float:
        return float(self.moments[r])


@dataclass(frozen=True)
class TruncatedMoments:
    q_star: float
    values: Float[np.ndarray, "4"]


def biweight_density(
    t: tp.Union[Number, Float[np.ndarray, "..."]],
) -> tp.Union[float, Float[np.ndarray, "..."]]:
    """Evaluate the biweight density, extended by zero outside ``[-1, 1]``.

    Args:
        t: A scalar or an array of points.

    Returns:
        The density value(s), with the same shape as ``t``.
    """
    arr = np.asarray(t, dtype=np.float64)
    values = np.where(np.abs(arr) <= 1.0, (15.0 / 16.0) * (1.0 - arr**2) ** 2, 0.0)
    if np.ndim(t) == 0:
        return float(values)
    return values


def hankel_matrix(moments: Float[np.ndarray, "k"]) -> Float[np.ndarray, "4 4"]:
    idx = np.arange(DENSITY_ORDER)
    return moments[idx[:, None] + idx[None, :]].astype(np.float64)


def _build_spec() -> KernelSpec:
    moments = np.array([float(mu) for mu in _EXACT_MOMENTS])
    hankel = hankel_matrix(moments)
    moments.setflags(write=False)
    hankel.setflags(write=False)
    return KernelSpec(moments=moments, hankel=hankel)


_BIWEIGHT_SPEC = _build_spec()


def continuous_moments() -> KernelSpec:
    """Closed-form biweight moments and their Hankel matrix (shared instance)."""
    return _BIWEIGHT_SPEC


def _antiderivative(x: Fraction, r: int) -> Fraction:
    return BIWEIGHT_CONSTANT * (
        x ** (r + 1) / (r + 1) - 2 * x ** (r + 3) / (r + 3) + x ** (r + 5) / (r + 5)
    )


def truncated_moments(q_star: Number) -> TruncatedMoments:
    """Moments of the biweight density truncated to ``[-1, q_star]``.

    The antiderivative is evaluated in exact rational arithmetic, so at
    ``q_star = 1`` the result coincides bit-for-bit with the untruncated
    moments.
    """
    check(q_star > -1.0, f"q_star must exceed -1 (empty support), got {q_star}.")
    check(q_star <= 1.0, f"q_star must not exceed 1, got {q_star}.")
    upper = Fraction(q_star)
    lower = Fraction(-1)
    values = np.array(
        [
            float(_antiderivative(upper, r) - _antiderivative(lower, r))
            for r in range(DENSITY_ORDER)
        ]
    )
    return TruncatedMoments(q_star=float(q_star), values=values)


def replace_first_column(
    matrix: Float[np.ndarray, "4 4"], column: Float[np.ndarray, "4"]
) -> Float[np.ndarray, "4 4"]:
    replaced = np.array(matrix, dtype=np.float64, copy=True)
    replaced[:, 0] = column
    return replaced


def polynomial_basis(t: Number) -> Float[np.ndarray, "4"]:
    return np.array([1.0, t, t**2, t**3], dtype=np.float64)


def kernel_k4(t: Number, spec: tp.Optional[KernelSpec] = None) -> float:
    """Order-4 biweight kernel as a ratio of Hankel determinants."""
    if spec is None:
        spec = continuous_moments()
    density = biweight_density(t)
    if density == 0.0:
        return 0.0
    numerator = np.linalg.det(replace_first_column(spec.hankel, polynomial_basis(t)))
    return float(numerator / np.linalg.det(spec.hankel) * density)


def kernel_k4_closed_form(
    t: tp.Union[Number, Float[np.ndarray, "..."]],
    spec: tp.Optional[KernelSpec] = None,
) -> tp.Union[float, Float[np.ndarray, "..."]]:
    """Simplified K4: ``(mu4 - mu2 t^2) / (mu0 mu4 - mu2^2) * f(t)``."""
    if spec is None:
        spec = continuous_moments()
    mu0, mu2, mu4 = spec.moment(0), spec.moment(2), spec.moment(4)
    arr = np.asarray(t, dtype=np.float64)
    values = (mu4 - mu2 * arr**2) / (mu0 * mu4 - mu2**2) * biweight_density(arr)
    if np.ndim(t) == 0:
        return float(values)
    return values
