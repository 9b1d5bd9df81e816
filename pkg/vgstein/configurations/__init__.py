from .loader import ConfigLoader
from .schema import ConfigError
from .sections import (
    ExperimentConfig,
    ExperimentSection,
    KernelSection,
    LoggingConfig,
    MonteCarloSection,
    ObservabilityConfig,
    OutputSection,
    TargetSection,
    TensorSection,
)

__all__ = [
    "ConfigLoader",
    "ConfigError",
    "ExperimentConfig",
    "ExperimentSection",
    "KernelSection",
    "TensorSection",
    "TargetSection",
    "MonteCarloSection",
    "OutputSection",
    "ObservabilityConfig",
    "LoggingConfig",
]
