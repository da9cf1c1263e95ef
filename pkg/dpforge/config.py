"""
Runtime configuration for dpforge.

Values come from built-in defaults, an optional YAML file, the environment
(after loading a ``.env`` file from the working directory) and finally
explicit command-line flags, each layer overriding the previous one.
"""

from __future__ import annotations

import os
from pathlib import Path
from typing import Any, Dict, Optional, Union

import psutil
import yaml
from dotenv import load_dotenv
from pydantic import BaseModel, Field, ValidationError, field_validator

from .errors import ConfigError

ENV_VARS = {
    "jobs": "DPFORGE_JOBS",
    "log_level": "DPFORGE_LOG_LEVEL",
    "brute_force_cap": "DPFORGE_BRUTE_CAP",
}

LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")


def default_jobs() -> int:
    return psutil.cpu_count(logical=True) or 1


class ForgeConfig(BaseModel):
    """Limits and worker settings shared by the CLI commands."""

    jobs: int = Field(default_factory=default_jobs, ge=1)
    brute_force_cap: int = Field(13, ge=1)
    regular_survey_cap: int = Field(10, ge=1)
    deep_survey_cap: int = Field(13, ge=1)
    hh_survey_cap: int = Field(12, ge=1)
    log_level: str = "WARNING"

    @field_validator("log_level")
    @classmethod
    def _known_level(cls, value: str) -> str:
        value = value.upper()
        if value not in LOG_LEVELS:
            raise ValueError(f"log level must be one of {', '.join(LOG_LEVELS)}")
        return value


def _read_yaml(path: Union[str, Path]) -> Dict[str, Any]:
    try:
        with open(path, encoding="utf-8") as handle:
            data = yaml.safe_load(handle) or {}
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from exc
    except yaml.YAMLError as exc:
        raise ConfigError(f"config file {path} is not valid YAML: {exc}") from exc
    if not isinstance(data, dict):
        raise ConfigError(f"config file {path} must hold a mapping of settings")
    unknown = set(data) - set(ForgeConfig.model_fields)
    if unknown:
        raise ConfigError(f"unknown settings in {path}: {', '.join(sorted(unknown))}")
    return data


def _read_env(environ: Optional[Dict[str, str]] = None) -> Dict[str, Any]:
    environ = os.environ if environ is None else environ
    return {name: environ[var] for name, var in ENV_VARS.items() if environ.get(var)}


def load_config(
    path: Optional[Union[str, Path]] = None,
    overrides: Optional[Dict[str, Any]] = None,
    environ: Optional[Dict[str, str]] = None,
    dotenv: bool = True,
) -> ForgeConfig:
    """Merge every configuration layer; ``overrides`` with value ``None`` are ignored."""
    if dotenv and environ is None:
        load_dotenv(Path.cwd() / ".env", override=False)
    values: Dict[str, Any] = {}
    if path is not None:
        values.update(_read_yaml(path))
    values.update(_read_env(environ))
    values.update({k: v for k, v in (overrides or {}).items() if v is not None})
    try:
        return ForgeConfig(**values)
    except ValidationError as exc:
        raise ConfigError(f"invalid configuration: {exc}") from exc
