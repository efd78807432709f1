"""
Analysis configuration.

Defaults match the scales at which the classic worked examples reproduce.
Every field can be overridden through a ``SINGAN_<FIELD>`` environment
variable, and CLI flags override the environment.
"""

import os
from fractions import Fraction
from typing import Any, Dict, Optional

from pydantic import BaseModel, ConfigDict, Field, ValidationError

from .errors import ConfigError

ENV_PREFIX = "SINGAN_"


class AnalysisConfig(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    steps: int = Field(14, ge=4, description="degree iterations N")
    horizon: int = Field(20, ge=4, description="epsilon-orbit length each way")
    trunc: int = Field(8, ge=0, description="initial Laurent truncation T")
    max_trunc: int = Field(64, ge=0)
    seeds: int = Field(3, ge=1, description="number of random x0 seeds")
    seed: int = Field(0, description="PRNG seed")
    holdout: int = Field(2, ge=2)
    max_steps: int = Field(24, ge=4, description="ceiling for automatic extension of degree sequences")
    slow_growth_steps: int = Field(20, ge=4, description="extension ceiling for degrees that do not grow exponentially")
    tail: int = Field(10, ge=2, description="singular steps required at both ends of an anticonfined orbit")
    root_tol_exponent: int = Field(12, ge=1, description="dominant roots are isolated to width 10^-k")
    sample_range: int = Field(10_000, ge=2)
    x0_height: int = Field(50, ge=2)
    exact_steps: int = Field(4, ge=0, description="steps each way computed over Q(c) with the tracker kept symbolic")
    max_valuation: int = Field(16384, ge=16, description="a direction stops once a valuation magnitude passes this")

    @property
    def root_tol(self) -> Fraction:
        return Fraction(1, 10**self.root_tol_exponent)

    @classmethod
    def from_env(cls, overrides: Optional[Dict[str, Any]] = None, environ=None) -> "AnalysisConfig":
        """
        Build a config from ``SINGAN_*`` environment variables plus explicit overrides.

        Overrides whose value is None are ignored so that unset CLI flags fall
        through to the environment and then to the defaults.
        """
        environ = os.environ if environ is None else environ
        values: Dict[str, Any] = {}
        for name in cls.model_fields:
            raw = environ.get(ENV_PREFIX + name.upper())
            if raw is not None:
                values[name] = raw
        for name, value in (overrides or {}).items():
            if value is not None:
                values[name] = value
        try:
            return cls(**values)
        except ValidationError as e:
            raise ConfigError(f"invalid configuration: {e}") from e

    def echo(self) -> Dict[str, int]:
        """The subset of the configuration echoed into reports."""
        return {
            "steps": self.steps,
            "horizon": self.horizon,
            "trunc": self.trunc,
            "seeds": self.seeds,
            "seed": self.seed,
        }
