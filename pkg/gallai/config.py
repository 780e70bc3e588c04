"""
This module loads the suite configuration from a .yml file and makes it available as dataclasses. It
1. documents the possible values of every field in the configuration file
2. gives IDEs type information for auto complete.

Every section is optional and falls back to the defaults below. dacite converts the nested dicts;
the float type hook lets YAML write 1e-9 (which PyYAML reads as a string) or 1 for a float field.
"""

import logging
from dataclasses import dataclass, field
from typing import List, Optional

import yaml
from dacite import Config as DaciteConfig
from dacite import from_dict

from gallai.models.point import Tolerance

log = logging.getLogger(__name__)


@dataclass
class ToleranceConfig:
    abs_eps: float = 1e-9
    rel_eps: float = 1e-12

    def make(self) -> Tolerance:
        return Tolerance(self.abs_eps, self.rel_eps)


@dataclass
class SamplerConfig:
    trials: int = 100_000
    seed: int = 0
    batch_size: int = 4096


@dataclass
class OptimizerConfig:
    restarts: int = 64
    seed: int = 0


@dataclass
class RenderConfig:
    pixels_per_unit: float = 20
    palette: Optional[List[str]] = None


@dataclass
class OperatorParameters:
    name: str
    type: str
    parameters: object = None


@dataclass
class OperatorConfig:
    label: str
    parameters: List[OperatorParameters]


@dataclass
class Config:
    tolerance: ToleranceConfig = field(default_factory=ToleranceConfig)
    sampler: SamplerConfig = field(default_factory=SamplerConfig)
    optimizer: OptimizerConfig = field(default_factory=OptimizerConfig)
    render: RenderConfig = field(default_factory=RenderConfig)
    operators: Optional[OperatorConfig] = None


def from_mapping(parameters: Optional[dict]) -> Config:
    return from_dict(data_class=Config, data=parameters or {}, config=DaciteConfig(type_hooks={float: float}))


def load(filepath) -> Config:
    log.info("Loading config from " + str(filepath))
    with open(filepath) as f:
        parameters = yaml.safe_load(f)
    config = from_mapping(parameters)
    return config
