from hypothesis import (
    given,
    strategies as st,
)
import numpy as np
import pytest
from scipy.integrate import quad

from rkhs_trend.errors import ValidationError
from rkhs_trend.kernels import (
    biweight_density,
    continuous_moments,
    hankel_matrix,
    kernel_k4,
    kernel_k4_closed_form,
    truncated_moments,
)


def test_continuous_moments():
    spec = continuous_moments()
    np.testing.assert_allclose(
        spec.moments, [1.0, 0.0, 1 / 7, 0.0, 1 / 21, 0.0, 5 / 231], atol=1e-15
    )
    assert spec.hankel.shape == (4, 4)
    np.testing.assert_array_equal(spec.hankel, spec.hankel.T)
    assert spec.hankel[1, 2] == spec.moment(3)
    assert continuous_moments() is spec


@pytest.mark.parametrize("r", range(7))
def test_moments_match_quadrature(r: int):
    expected, _ = quad(lambda t: t**r * biweight_density(t), -1.0, 1.0)
    assert continuous_moments().moment(r) == pytest.approx(expected, abs=1e-12)


def test_density_support():
    assert biweight_density(0.0) == pytest.approx(15 / 16)
    assert biweight_density(1.0) == 0.0
    assert biweight_density(-1.5) == 0.0
    values = biweight_density(np.linspace(-2.0, 2.0, 41))
    assert values.shape == (41,)
    assert np.all(values >= 0.0)


def test_hankel_matrix():
    moments = np.arange(7, dtype=np.float64)
    hankel = hankel_matrix(moments)
    np.testing.assert_array_equal(hankel[0], [0.0, 1.0, 2.0, 3.0])
    np.testing.assert_array_equal(hankel[3], [3.0, 4.0, 5.0, 6.0])


def test_truncated_moments_full_support():
    result = truncated_moments(1.0)
    np.testing.assert_array_equal(result.values, continuous_moments().moments[:4])


def test_truncated_moments_half_support():
    result = truncated_moments(0)
    assert result.q_star == 0.0
    assert result.values[0] == pytest.approx(0.5, abs=1e-15)
    assert result.values[1] == pytest.approx(-5 / 32, abs=1e-15)
    assert result.values[2] == pytest.approx(1 / 14, abs=1e-15)


@given(q_star=st.floats(min_value=-0.99, max_value=1.0))
def test_truncated_moments_quadrature(q_star: float):
    result = truncated_moments(q_star)
    for r in range(4):
        expected, _ = quad(lambda t: t**r * biweight_density(t), -1.0, q_star)
        assert result.values[r] == pytest.approx(expected, abs=1e-10)


@pytest.mark.parametrize("q_star", [-1.0, -2.0, 1.5])
def test_truncated_moments_invalid(q_star: float):
    with pytest.raises(ValidationError):
        truncated_moments(q_star)


def test_kernel_at_origin():
    assert kernel_k4(0.0) == pytest.approx(1.640625, abs=1e-12)
    assert kernel_k4_closed_form(0.0) == pytest.approx(1.640625, abs=1e-12)


@given(t=st.floats(min_value=-1.2, max_value=1.2))
def test_determinant_and_closed_form_agree(t: float):
    assert kernel_k4(t) == pytest.approx(kernel_k4_closed_form(t), abs=1e-12)


def test_kernel_outside_support():
    assert kernel_k4(1.0) == 0.0
    assert kernel_k4(-3) == 0.0


@pytest.mark.parametrize("r, expected", [(0, 1.0), (1, 0.0), (2, 0.0), (3, 0.0)])
def test_kernel_reproduces_cubics(r: int, expected: float):
    value, _ = quad(lambda t: t**r * kernel_k4_closed_form(t), -1.0, 1.0)
    assert value == pytest.approx(expected, abs=1e-12)


def test_closed_form_vectorised():
    grid = np.linspace(-1.0, 1.0, 11)
    values = kernel_k4_closed_form(grid)
    assert values.shape == (11,)
    np.testing.assert_allclose(values, values[::-1], atol=1e-15)
