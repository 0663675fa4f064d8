"""
Configuration management for GhostRing.
"""

from dataclasses import dataclass, field, fields
from pathlib import Path
from typing import Any, Dict, Mapping, Optional, Type, TypeVar

import toml

from .vectors import Window

T = TypeVar("T")


@dataclass
class ExecutionConfig:
    """Seed, parallelism and output locations."""
    seed: int = 20240521
    workers: int = 0  # 0 means one per physical core
    certificates: str = ""


@dataclass
class ClosureConfig:
    """Subring closure settings."""
    cap: int = 2_000_000


@dataclass
class ClaimConfig:
    """Parity-check claim verification settings."""
    range: str = "-6:6"
    sum_length: int = 8
    samples: int = 10_000
    chunk_size: int = 500
    witness_window: str = "-5:5"
    witness_indices: list = field(default_factory=lambda: [-1, 0, 1, 2])


@dataclass
class HomConfig:
    """Homomorphism enumeration settings."""
    window: str = "-1:1"
    budget: int = 5_000_000


@dataclass
class GhostConfig:
    """Ghost map demonstration settings."""
    window: str = "-2:2"
    subset_size: int = 4
    subset_samples: int = 2_000


@dataclass
class SindiConfig:
    """Quadratic-set search settings."""
    dim: int = 4
    mode: str = "exhaustive"
    budget: int = 100_000
    restarts: int = 16


@dataclass
class LoggingConfig:
    """Logging configuration settings."""
    level: str = "INFO"
    file: str = ""
    max_size: int = 10
    backup_count: int = 3


def _has_type(value: Any, expected: Any) -> bool:
    # bool is an int subclass; TOML lists must hold integers
    if expected is int:
        return isinstance(value, int) and not isinstance(value, bool)
    if expected is list:
        return isinstance(value, list) and all(isinstance(v, int) and not isinstance(v, bool) for v in value)
    return isinstance(value, expected)


def _section(cls: Type[T], data: Mapping[str, Any], name: str) -> T:
    values = data.get(name, {})
    if not isinstance(values, Mapping):
        raise ValueError(f"Configuration section [{name}] must be a table")
    known = {f.name for f in fields(cls)}  # type: ignore[arg-type]
    unknown = set(values) - known
    if unknown:
        raise ValueError(f"Unknown keys in [{name}]: {', '.join(sorted(unknown))}")
    for f in fields(cls):  # type: ignore[arg-type]
        if f.name in values and not _has_type(values[f.name], f.type):
            raise ValueError(
                f"[{name}] {f.name} must be of type {getattr(f.type, '__name__', f.type)}, "
                f"got {values[f.name]!r}"
            )
    return cls(**values)  # type: ignore[call-arg]


@dataclass
class Config:
    """Main configuration class."""
    execution: ExecutionConfig = field(default_factory=ExecutionConfig)
    closure: ClosureConfig = field(default_factory=ClosureConfig)
    claim: ClaimConfig = field(default_factory=ClaimConfig)
    homs: HomConfig = field(default_factory=HomConfig)
    ghost: GhostConfig = field(default_factory=GhostConfig)
    sindi: SindiConfig = field(default_factory=SindiConfig)
    logging: LoggingConfig = field(default_factory=LoggingConfig)

    @classmethod
    def from_dict(cls, config_data: Mapping[str, Any]) -> 'Config':
        return cls(
            execution=_section(ExecutionConfig, config_data, 'execution'),
            closure=_section(ClosureConfig, config_data, 'closure'),
            claim=_section(ClaimConfig, config_data, 'claim'),
            homs=_section(HomConfig, config_data, 'homs'),
            ghost=_section(GhostConfig, config_data, 'ghost'),
            sindi=_section(SindiConfig, config_data, 'sindi'),
            logging=_section(LoggingConfig, config_data, 'logging'),
        )

    @classmethod
    def from_file(cls, config_path: Path) -> 'Config':
        """Load configuration from TOML file; missing sections take defaults."""
        try:
            config_data = toml.load(config_path)
        except Exception as e:
            raise ValueError(f"Failed to load configuration: {e}")
        return cls.from_dict(config_data)

    @classmethod
    def load(cls, config_path: Optional[Path]) -> 'Config':
        config = cls.from_file(config_path) if config_path else cls()
        config.validate()
        return config

    def validate(self) -> bool:
        """Validate configuration values."""
        for text in (self.claim.range, self.claim.witness_window, self.homs.window, self.ghost.window):
            Window.parse(text)

        if self.closure.cap <= 0 or self.homs.budget <= 0 or self.sindi.budget <= 0:
            raise ValueError("Budgets must be positive")

        if self.execution.workers < 0:
            raise ValueError("Worker count cannot be negative")

        if self.claim.sum_length < 1 or self.claim.samples < 0 or self.claim.chunk_size < 1:
            raise ValueError("Claim sum length and chunk size must be positive, samples non-negative")

        if self.sindi.mode not in ("exhaustive", "random"):
            raise ValueError(f"Unknown search mode '{self.sindi.mode}'")

        if self.sindi.dim < 3:
            raise ValueError("Quadratic-set search needs dimension at least 3")

        if self.ghost.subset_size < 1:
            raise ValueError("Subset size must be positive")

        return True

    def to_dict(self) -> Dict[str, Any]:
        return {
            f.name: dict(vars(getattr(self, f.name)))
            for f in fields(self)
        }


@dataclass
class RunConfig:
    """One command invocation as resolved from flags and the config file."""
    command: str
    window: Optional[Window] = None
    budget: int = 0
    seed: int = 0
    workers: int = 1
    json_output: bool = False
    resume: Optional[Path] = None
    certificates: Optional[Path] = None
    options: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        if self.budget < 0:
            raise ValueError("Budget cannot be negative")
        if self.workers < 1:
            raise ValueError("Worker count must be at least 1")
