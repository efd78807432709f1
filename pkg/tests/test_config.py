from fractions import Fraction

import pytest

from singan.config import AnalysisConfig
from singan.errors import ConfigError


def test_defaults():
    config = AnalysisConfig()
    assert config.echo() == {"steps": 14, "horizon": 20, "trunc": 8, "seeds": 3, "seed": 0}
    assert config.root_tol == Fraction(1, 10**12)


def test_environment_then_overrides():
    environ = {"SINGAN_STEPS": "10", "SINGAN_HORIZON": "30", "UNRELATED": "1"}
    config = AnalysisConfig.from_env({"steps": 12, "seed": None}, environ=environ)
    assert config.steps == 12
    assert config.horizon == 30
    assert config.seed == 0


@pytest.mark.parametrize(
    "environ",
    [
        {"SINGAN_STEPS": "2"},
        {"SINGAN_SEEDS": "many"},
        {"SINGAN_HOLDOUT": "1"},
    ],
)
def test_invalid_values_are_config_errors(environ):
    with pytest.raises(ConfigError, match="invalid configuration"):
        AnalysisConfig.from_env(environ=environ)


def test_config_is_frozen():
    config = AnalysisConfig()
    with pytest.raises(Exception):
        config.steps = 3
