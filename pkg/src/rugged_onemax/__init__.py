"""Frozen-noise rugged OneMax: landscapes, optimizers, oracles, harness."""

from .landscape import (
    BitString,
    ConfigurationError,
    FrozenLandscape,
    NoiseModel,
    geometric_p_for_variance,
    onemax,
    sample_geometric,
    sample_normal,
)

__version__ = "0.1.0"

__all__ = [
    "BitString",
    "ConfigurationError",
    "FrozenLandscape",
    "NoiseModel",
    "geometric_p_for_variance",
    "onemax",
    "sample_geometric",
    "sample_normal",
    "__version__",
]
