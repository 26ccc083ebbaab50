"""Run configuration shared by the command line and the suite runner."""
from __future__ import annotations

import os
from dataclasses import asdict, dataclass, field
from typing import Mapping, Optional

ENV_PREFIX = "KPETERSON_"

DEFAULTS = {
    "n": 3,
    "D": 5,
    "L": 4,
    "mode": "SL",
    "cache_dir": None,
    "jobs": 1,
    "seed": 0,
}

# config field -> environment variable suffix
ENV_NAMES = {
    "n": "N",
    "D": "DEG",
    "L": "MAX_LENGTH",
    "mode": "MODE",
    "cache_dir": "CACHE_DIR",
    "jobs": "JOBS",
    "seed": "SEED",
}


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    n: int = 3
    D: int = 5
    L: int = 4
    mode: str = "SL"
    cache_dir: Optional[str] = None
    jobs: int = 1
    seed: int = 0
    extra: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if self.n < 2:
            raise ConfigError("n must be at least 2")
        if self.D < 0:
            raise ConfigError("degree must be nonnegative")
        if self.L < 0:
            raise ConfigError("max length must be nonnegative")
        if self.mode not in ("GL", "SL"):
            raise ConfigError("mode must be GL or SL")
        if self.jobs < 1:
            raise ConfigError("jobs must be positive")

    @property
    def sl(self) -> bool:
        return self.mode == "SL"

    def as_dict(self) -> dict:
        d = asdict(self)
        d.pop("extra")
        return d


def _coerce(name: str, raw: str):
    if name in ("n", "D", "L", "jobs", "seed"):
        try:
            return int(raw)
        except ValueError as exc:
            raise ConfigError(f"{ENV_PREFIX}{ENV_NAMES[name]} must be an integer") from exc
    if name == "mode":
        return raw.upper()
    return raw


def resolve(cli: Mapping[str, object], env: Optional[Mapping[str, str]] = None) -> RunConfig:
    """Command-line values win over environment values, which win over defaults."""
    env = os.environ if env is None else env
    values = dict(DEFAULTS)
    for name, suffix in ENV_NAMES.items():
        raw = env.get(ENV_PREFIX + suffix)
        if raw not in (None, ""):
            values[name] = _coerce(name, raw)
    for name, v in cli.items():
        if name in values and v is not None:
            values[name] = v.upper() if name == "mode" else v
    return RunConfig(**values)
