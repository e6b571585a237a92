import logging
import os
from collections import defaultdict
from pathlib import Path
from typing import Any, Dict, Optional, Sequence, Tuple, Type, Union

import yaml
from pydantic import BaseModel, validator

from treecode.constants import (
    DEFAULT_CONFIG_FILE,
    DEFAULT_KEY,
    MAX_DISTRIBUTION_N,
    MAX_ETA_INTERNAL_NODES,
    TREECODE_CONFIG,
)
from treecode.utils import update_dict

logger = logging.getLogger(__name__)


class DefaultConfigDict(defaultdict):
    def __getitem__(self, key):
        defaults: BaseModel = super().__getitem__(DEFAULT_KEY)
        this: BaseModel = super().__getitem__(key)
        return defaults.copy(update=this.dict(exclude_none=True)) if defaults else this


class SchemeIntervalsConfig(BaseModel):
    birth_low: Optional[float] = None
    birth_high: Optional[float] = None
    death_low: Optional[float] = None
    death_high: Optional[float] = None


class SamplingConfig(BaseModel):
    @staticmethod
    def _create_default_dict_with(
        value: dict, default, dict_cls: Type = DefaultConfigDict
    ):
        default_value = (value := value or {}).get(DEFAULT_KEY, default)
        return dict_cls(lambda: default_value, value)

    @validator("schemes", always=True)
    def _validate_schemes(cls, value):
        return SamplingConfig._create_default_dict_with(
            value,
            SchemeIntervalsConfig(birth_low=0.0, birth_high=100.0, death_high=100.0),
        )

    @validator("trials", "chunk_size", "jobs")
    def _validate_positive(cls, value, field):
        if value < 1:
            raise ValueError(f"{field.name} must be a positive integer")
        return value

    seed: int = 0
    trials: int = 60000
    chunk_size: int = 10000
    jobs: int = 1
    schemes: Optional[Dict[str, SchemeIntervalsConfig]] = None


class LimitsConfig(BaseModel):
    max_distribution_n: int = MAX_DISTRIBUTION_N
    max_eta_internal_nodes: int = MAX_ETA_INTERNAL_NODES


class CurvesConfig(BaseModel):
    max_n: int = 500
    empirical_trials: int = 2000


class TreecodeConfig(BaseModel):
    sampling: SamplingConfig = SamplingConfig()
    limits: LimitsConfig = LimitsConfig()
    curves: CurvesConfig = CurvesConfig()


CONFIG_TEMPLATE_YAML = """
sampling:
  # Seed of the root random stream; every chunk of trials gets its own child stream
  seed: {seed}
  # Number of barcodes drawn by `treecode hist`
  trials: 60000
  # Trials per independent random stream, results do not depend on the number of jobs
  chunk_size: 10000
  # Worker processes used by `treecode sample` and `treecode hist`
  jobs: {jobs}
  schemes:
    # Interval bounds of the barcode generators. Each scheme inherits from __default__.
    # conditioned: births uniform on [birth_low, birth_high], death_i uniform on [b_i, death_high]
    __default__:
      birth_low: 0.0
      birth_high: 100.0
      death_high: 100.0
    # separated: births uniform on [birth_low, birth_high], deaths uniform on [death_low, death_high]
    separated:
      birth_high: 49.0
      death_low: 50.0
limits:
  # Largest n accepted by `treecode dist`, the support of the distribution grows quickly
  max_distribution_n: 40
  # Largest number of internal nodes for the exhaustive eta count
  max_eta_internal_nodes: 12
curves:
  # Largest n emitted by `treecode curves`
  max_n: 500
  # Samples per n for the empirical curve of the conditioned scheme
  empirical_trials: 2000
""".strip()

# This auto-validates the template above during import
_CONFIG_TEMPLATE = TreecodeConfig.parse_obj(
    yaml.safe_load(CONFIG_TEMPLATE_YAML.format(seed=0, jobs=1))
)


def resolve_config_path(path: Optional[Union[str, Path]] = None) -> Optional[Path]:
    """
    Picks the configuration file: explicit path, then ``$TREECODE_CONFIG``, then ``./treecode.yml``
    when it exists. Returns None when nothing applies.
    """
    if path:
        return Path(path)
    if env_path := os.environ.get(TREECODE_CONFIG):
        return Path(env_path)
    default = Path.cwd() / DEFAULT_CONFIG_FILE
    return default if default.exists() else None


def load_config(
    path: Optional[Union[str, Path]] = None, overrides: Sequence[Tuple[str, Any]] = ()
) -> TreecodeConfig:
    """
    Reads the YAML configuration into ``TreecodeConfig``. ``overrides`` are ``(dotted.key, value)``
    pairs applied on top of the file, e.g. ``("sampling.seed", 7)``.
    A missing explicitly named file raises ``FileNotFoundError``; with no file at all the defaults apply.
    """
    resolved = resolve_config_path(path)
    if resolved is None:
        logger.info("No %s found, using built-in defaults", DEFAULT_CONFIG_FILE)
        raw = {}
    elif not resolved.exists():
        raise FileNotFoundError(f"Configuration file {resolved} does not exist")
    else:
        logger.debug("Loading configuration from %s", resolved)
        raw = yaml.safe_load(resolved.read_text()) or {}
    if overrides:
        logger.debug("Overriding configuration keys %s", [key for key, _ in overrides])
        raw = update_dict(raw, *overrides)
    return TreecodeConfig.parse_obj(raw)
