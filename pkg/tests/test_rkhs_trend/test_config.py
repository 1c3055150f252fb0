import numpy as np
import pytest

from rkhs_trend.config import (
    OptimizerConfig,
    SimulationConfig,
    SmoothingConfig,
)
from rkhs_trend.errors import (
    IngestionError,
    RkhsTrendError,
    ValidationError,
)


def test_smoothing_defaults():
    config = SmoothingConfig()
    assert config.m is None
    assert config.family == "rkhs"
    assert config.criterion == "gain"
    assert config.use_builtin
    assert isinstance(config.optimizer, OptimizerConfig)


@pytest.mark.parametrize(
    "kwargs, label",
    [
        ({}, "rkhs-gain"),
        ({"criterion": "total"}, "rkhs-total"),
        ({"global_bandwidth": True}, "rkhs-global"),
        ({"family": "musgrave"}, "musgrave"),
    ],
)
def test_smoothing_label(kwargs: dict, label: str):
    assert SmoothingConfig(**kwargs).label == label


def test_smoothing_invalid():
    with pytest.raises(ValidationError):
        SmoothingConfig(m=1)
    with pytest.raises(ValidationError):
        SmoothingConfig(ic_ratio=0.0)
    with pytest.raises(TypeError):
        SmoothingConfig(6)


@pytest.mark.parametrize(
    "kwargs", [{"step": 0.0}, {"tol": -1.0}, {"upper_factor": 1.0}]
)
def test_optimizer_invalid(kwargs: dict):
    with pytest.raises(ValidationError):
        OptimizerConfig(**kwargs)


def test_simulation_rng():
    first = SimulationConfig(n_timepoints=10, seed=7)
    second = SimulationConfig(n_timepoints=10, seed=7)
    assert isinstance(first.rng, np.random.RandomState)
    np.testing.assert_array_equal(first.rng.normal(size=5), second.rng.normal(size=5))
    with pytest.raises(ValidationError):
        SimulationConfig(n_timepoints=0)


def test_error_hierarchy():
    error = IngestionError(4, "duplicate date 1990-03")
    assert str(error) == "row 4: duplicate date 1990-03"
    assert error.row == 4
    assert isinstance(error, ValidationError)
    assert isinstance(error, ValueError)
    assert isinstance(error, RkhsTrendError)
