"""
COLOR ALGEBRA ENGINE - CONFIG LOADER
====================================
Load engine settings from a JSON file, with environment overrides
"""

import json
import logging
import os
import sys
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Any, Dict, Optional

from dotenv import load_dotenv

from errors import ConfigError
from oscillator import MIN_LAMBDA_MULTIPLICITY

logger = logging.getLogger(__name__)

DEFAULT_CONFIG_PATH = "config/engine.json"
LOG_FORMAT = "%(asctime)s - %(levelname)s - %(name)s - %(message)s"

ENV_OVERRIDES = {
    "COLORLIE_BUDGET": "budget",
    "COLORLIE_SEED": "seed",
    "COLORLIE_LOG_LEVEL": "log_level",
}


@dataclass
class EngineConfig:
    """Engine settings - loaded from JSON file"""
    # Sweeps
    budget: int = 200000
    seed: int = 1729

    # Lambda check
    lambda_multiplicity: int = 3

    # Output
    log_level: str = "WARNING"
    report_indent: int = 2
    max_counterexamples: int = 1

    def __post_init__(self):
        """Coerce and validate values coming from files or the environment"""
        try:
            self.budget = int(self.budget)
            self.seed = int(self.seed)
            self.lambda_multiplicity = int(self.lambda_multiplicity)
            self.report_indent = int(self.report_indent)
            self.max_counterexamples = int(self.max_counterexamples)
        except (TypeError, ValueError) as e:
            raise ConfigError(f"invalid engine setting: {e}") from e
        self.log_level = str(self.log_level).upper()
        if self.budget < 1:
            raise ConfigError(f"budget must be positive, got {self.budget}")
        if self.lambda_multiplicity < MIN_LAMBDA_MULTIPLICITY:
            raise ConfigError(f"lambda_multiplicity must be >= {MIN_LAMBDA_MULTIPLICITY}, "
                              f"got {self.lambda_multiplicity}")
        if self.max_counterexamples < 1:
            raise ConfigError(f"max_counterexamples must be positive, got {self.max_counterexamples}")
        if not isinstance(logging.getLevelName(self.log_level), int):
            raise ConfigError(f"unknown log level {self.log_level!r}")

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'EngineConfig':
        """Create EngineConfig from dictionary, ignoring unknown and comment keys"""
        return cls(**{k: v for k, v in data.items() if k in cls.__dataclass_fields__})

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary"""
        return asdict(self)


def _apply_env(data: Dict[str, Any]) -> Dict[str, Any]:
    data = dict(data)
    for var, key in ENV_OVERRIDES.items():
        value = os.getenv(var)
        if value:
            data[key] = value
    return data


def load_config(config_path: Optional[str] = None) -> EngineConfig:
    """
    Load configuration from JSON file

    Args:
        config_path: Path to config file. If None, uses COLORLIE_CONFIG env var or default path

    Returns:
        EngineConfig instance

    Raises:
        FileNotFoundError: If config file not found
        ConfigError: If config file is invalid JSON or holds invalid values
    """
    load_dotenv()
    if config_path is None:
        config_path = os.getenv("COLORLIE_CONFIG", DEFAULT_CONFIG_PATH)

    config_file = Path(config_path)

    if not config_file.exists():
        raise FileNotFoundError(
            f"Config file not found: {config_path}\n"
            f"Create a config file or set COLORLIE_CONFIG environment variable.\n"
            f"See config/engine.example.json for reference."
        )

    try:
        with open(config_file, 'r', encoding='utf-8') as f:
            data = json.load(f)
    except json.JSONDecodeError as e:
        raise ConfigError(f"config file {config_path} is not valid JSON: {e}") from e
    if not isinstance(data, dict):
        raise ConfigError(f"config file {config_path} must hold a JSON object")

    return EngineConfig.from_dict(_apply_env(data))


def load_config_or_default(config_path: Optional[str] = None) -> EngineConfig:
    """
    Load configuration from JSON file, return defaults if not found

    Args:
        config_path: Path to config file

    Returns:
        EngineConfig instance (defaults plus environment overrides if file not found)
    """
    try:
        return load_config(config_path)
    except FileNotFoundError:
        logger.warning("Config file not found, using default configuration")
        return EngineConfig.from_dict(_apply_env({}))


# For convenience
def get_config(config_path: Optional[str] = None) -> EngineConfig:
    """Get configuration - alias for load_config_or_default"""
    return load_config_or_default(config_path)


def setup_logging(level: str = "WARNING") -> None:
    """Route engine logs to stderr once; later calls only change the level"""
    root = logging.getLogger()
    root.setLevel(getattr(logging, level.upper(), logging.WARNING))
    if not any(getattr(h, "_colorlie", False) for h in root.handlers):
        handler = logging.StreamHandler(sys.stderr)
        handler.setFormatter(logging.Formatter(LOG_FORMAT))
        handler._colorlie = True
        root.addHandler(handler)
