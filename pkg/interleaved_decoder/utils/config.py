"""
Configuration management for the interleaved decoder.

Pydantic models validate code spec JSON and command runs; a YAML file
supplies defaults for simulations, decoding and logging.
"""

from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

import structlog
import yaml
from pydantic import BaseModel, Field, field_validator, model_validator

from ..core.finite_field import FieldSpec, TowerSpec
from ..core.gabidulin import GabidulinCode, gab_make
from ..core.rs_codes import CodeFlavor, CodeParameterError, IRSCode, make_rs, make_rs_star, shorten

logger = structlog.get_logger(__name__)

DEFAULT_CONFIG_PATH = "config/decoder_config.yaml"
DEFAULT_P_GRID = [0.005, 0.01, 0.02, 0.03, 0.04, 0.05, 0.06, 0.07, 0.08, 0.09, 0.1]


class FieldSpecModel(BaseModel):
    """Pydantic model for a field descriptor."""

    p: int = Field(description="Characteristic")
    e: int = Field(default=1, ge=1, description="Extension degree")
    modulus: Optional[List[int]] = Field(default=None, description="Modulus, low order first")
    alpha: Optional[int] = Field(default=None, description="Primitive element")

    def build(self) -> FieldSpec:
        return FieldSpec(self.p, self.e, self.modulus, self.alpha)


class CodeSpecModel(BaseModel):
    """
    Pydantic model for an interleaved RS code spec.

    n and k describe the final code; the parent code before shortening
    is (n + shorten, k + shorten).
    """

    field: FieldSpecModel
    n: int = Field(ge=2)
    k: int = Field(ge=1)
    flavor: str = Field(default=CodeFlavor.RS_STAR.value)
    shorten: int = Field(default=0, ge=0)
    l: int = Field(default=1, ge=1)

    @field_validator("flavor")
    @classmethod
    def _known_flavor(cls, value: str) -> str:
        flavor = CodeFlavor(value)
        if flavor is CodeFlavor.GENERIC:
            raise ValueError("generic GRS codes have no parity-check matrix")
        return value

    def build(self) -> IRSCode:
        gf = self.field.build()
        flavor = CodeFlavor(self.flavor)
        parent_k = self.k + self.shorten
        if flavor in (CodeFlavor.RS_STAR, CodeFlavor.SHORTENED_RS_STAR):
            parent = make_rs_star(gf, parent_k)
        else:
            parent = make_rs(gf, parent_k)
        if parent.n != self.n + self.shorten:
            raise CodeParameterError(
                f"Parent length {parent.n} does not match n + shorten = {self.n + self.shorten}"
            )
        return IRSCode(shorten(parent, self.shorten), self.l)


class GabidulinSpecModel(BaseModel):
    """Pydantic model for a Gabidulin code spec."""

    q: int = Field(ge=2)
    m: int = Field(ge=1)
    n: int = Field(ge=2)
    k: int = Field(ge=1)
    g: List[int]
    l: Optional[int] = Field(default=None, ge=1)

    def build(self) -> GabidulinCode:
        return gab_make(TowerSpec.over_prime(self.q, self.m), self.n, self.k, self.g)


CodeSpec = Union[CodeSpecModel, GabidulinSpecModel]


def parse_code_spec(data: Dict[str, Any]) -> CodeSpec:
    """Pick the spec model by its keys: Gabidulin specs carry q and m."""
    if "q" in data and "m" in data:
        return GabidulinSpecModel(**data)
    return CodeSpecModel(**data)


class RunConfig(BaseModel):
    """One CLI invocation."""

    command: str
    code_spec: Optional[str] = None
    input: Optional[str] = None
    output: Optional[str] = None
    report: Optional[str] = None
    seed: int = Field(default=0, ge=0, lt=1 << 64)
    trials: int = Field(default=1000, ge=0)
    workers: int = Field(default=1, ge=1)

    @model_validator(mode="after")
    def _inputs_exist(self) -> "RunConfig":
        for name in ("code_spec", "input"):
            path = getattr(self, name)
            if path is not None and not Path(path).is_file():
                raise ValueError(f"{name} file not found: {path}")
        return self


class SimulationConfigModel(BaseModel):
    """Pydantic model for simulation defaults."""

    trials: int = Field(default=1000, ge=0, description="Trials per parameter cell")
    seed: int = Field(default=0, ge=0, lt=1 << 64, description="Master seed")
    workers: int = Field(default=1, ge=1, description="Worker processes")
    p_grid: List[float] = Field(default_factory=lambda: list(DEFAULT_P_GRID))


class DecoderSectionModel(BaseModel):
    """Pydantic model for decoder options."""

    verify: bool = Field(default=False, description="Recompute all syndromes after decoding")


class LoggingConfigModel(BaseModel):
    """Pydantic model for logging options."""

    level: str = Field(default="WARNING")
    format: str = Field(default="console")
    file: Optional[str] = Field(default=None)


@dataclass
class DecoderConfig:
    """Configuration defaults for the command-line tools."""

    simulation: SimulationConfigModel = field(default_factory=SimulationConfigModel)
    decoder: DecoderSectionModel = field(default_factory=DecoderSectionModel)
    logging: LoggingConfigModel = field(default_factory=LoggingConfigModel)

    def __post_init__(self) -> None:
        self._validate()

    def _validate(self) -> None:
        if self.logging.format not in ("json", "console"):
            raise ValueError(f"Invalid log format: {self.logging.format}")
        if self.logging.level.upper() not in ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"):
            raise ValueError(f"Invalid log level: {self.logging.level}")
        if any(not 0 <= p <= 1 for p in self.simulation.p_grid):
            raise ValueError("Grid probabilities must lie in [0, 1]")

    def to_dict(self) -> Dict[str, Any]:
        return {
            "simulation": self.simulation.model_dump(),
            "decoder": self.decoder.model_dump(),
            "logging": self.logging.model_dump(),
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "DecoderConfig":
        return cls(
            simulation=SimulationConfigModel(**data.get("simulation", {})),
            decoder=DecoderSectionModel(**data.get("decoder", {})),
            logging=LoggingConfigModel(**data.get("logging", {})),
        )


def load_config(config_path: Optional[str] = None) -> DecoderConfig:
    """
    Load configuration from YAML file.

    Args:
        config_path: Path to configuration file. If None, uses default path.

    Returns:
        DecoderConfig instance; defaults when the file does not exist

    Raises:
        yaml.YAMLError: If config file is invalid YAML
        ValueError: If config validation fails
    """
    config_file = Path(config_path or DEFAULT_CONFIG_PATH)

    if not config_file.exists():
        logger.warning("Config file not found, using default configuration", config_path=str(config_file))
        return DecoderConfig()

    try:
        with open(config_file, "r", encoding="utf-8") as f:
            data = yaml.safe_load(f)
        if data is None:
            logger.warning("Config file is empty, using default configuration")
            return DecoderConfig()
        config = DecoderConfig.from_dict(data)
        logger.info("Configuration loaded successfully", config_path=str(config_file))
        return config
    except yaml.YAMLError as e:
        logger.error("Invalid YAML in config file", config_path=str(config_file), error=str(e))
        raise
    except ValueError as e:
        logger.error("Error loading configuration", config_path=str(config_file), error=str(e))
        raise


def save_config(config: DecoderConfig, config_path: str) -> None:
    """
    Save configuration to YAML file.

    Args:
        config: Configuration to save
        config_path: Path to save configuration file
    """
    config_file = Path(config_path)
    config_file.parent.mkdir(parents=True, exist_ok=True)
    with open(config_file, "w", encoding="utf-8") as f:
        yaml.safe_dump(config.to_dict(), f, default_flow_style=False, indent=2)
    logger.info("Configuration saved successfully", config_path=str(config_file))


def create_default_config(config_path: str) -> DecoderConfig:
    """
    Create default configuration and save to file.

    Args:
        config_path: Path to save default configuration
    """
    config = DecoderConfig()
    save_config(config, config_path)
    return config
