"""The on-disk run configuration.

A configuration file is UTF-8 text with one ``section.key = value`` entry per
line. Blank lines and everything after ``#`` are ignored. The section dict
built from the lines is turned into :class:`RunConfig` by the parser
registry in :mod:`donflow.parsers`.
"""
from __future__ import annotations
from dataclasses import MISSING, dataclass, field, fields, is_dataclass
import enum
import logging
import os
from pathlib import Path
import re
from typing import Any, Mapping

from .exceptions import ConfigError, ConfigSyntaxError, ConfigValueError
from .flow.config import FlowConfig, Schedule, Tolerances
from .grid.sampling import DEFAULT_DECAY
from .grid.spec import GridSpec
from .parsers import DataclassParser, default_parsers, join_key

logger = logging.getLogger(__name__)

OUTPUT_DIR_ENV = "DONFLOW_OUT_DIR"

ENTRY = re.compile(
    r"^(?P<key>[A-Za-z_][A-Za-z0-9_]*(?:\.[A-Za-z_][A-Za-z0-9_]*)*)\s*=\s*(?P<value>\S.*?)\s*$"
)


class InitialKind(enum.Enum):
    """Where the initial field comes from."""

    PERTURBED_MIN = "perturbed_min"
    CUSTOM_SNAPSHOT = "custom_snapshot"


@dataclass(frozen=True)
class InitialConfig:
    """The initial condition ω₁ + Σ shift_i·ω_i + ε·dλ.

    Attributes:
        amplitude (float): Size ε of the exact perturbation.
        kind (InitialKind): ``perturbed_min`` or ``custom_snapshot``.
        max_mode (int): Largest wavenumber per axis in λ.
        seed (int): Seed of the random potential λ.
        harmonic_shift (tuple[float, float, float]): Multiples of ω₁, ω₂, ω₃
            added to the class.
        spectral_decay (float): Exponent s of the mode weights (1 + |k|²)^(−s).
        snapshot (str | None): DONF file read for ``custom_snapshot``.
    """

    amplitude: float
    kind: InitialKind = InitialKind.PERTURBED_MIN
    max_mode: int = 2
    seed: int = 0
    harmonic_shift: tuple[float, float, float] = (0.0, 0.0, 0.0)
    spectral_decay: float = DEFAULT_DECAY
    snapshot: str | None = None

    def __post_init__(self) -> None:
        if not self.amplitude >= 0:
            raise ConfigValueError("initial.amplitude", self.amplitude, ">= 0")
        if self.max_mode < 1:
            raise ConfigValueError("initial.max_mode", self.max_mode, ">= 1")
        if self.seed < 0:
            raise ConfigValueError("initial.seed", self.seed, ">= 0")
        if self.spectral_decay < 0:
            raise ConfigValueError("initial.spectral_decay", self.spectral_decay, ">= 0")
        if self.kind is InitialKind.CUSTOM_SNAPSHOT and self.snapshot is None:
            raise ConfigValueError("initial.snapshot", None, "a path for custom_snapshot")


@dataclass(frozen=True)
class OutputConfig:
    """Where artifacts go.

    Attributes:
        directory (str): Output directory, overridden by DONFLOW_OUT_DIR and --out.
        emit_svg (bool): Also draw energy.svg and distance.svg.
    """

    directory: str = "donflow-out"
    emit_svg: bool = False


@dataclass(frozen=True)
class RunConfig:
    """A complete run description.

    Attributes:
        initial (InitialConfig): The initial condition.
        grid (GridSpec): The lattice.
        flow (Schedule): Integrator, time step policy and cadences.
        tolerances (Tolerances): Numerical thresholds.
        output (OutputConfig): Artifact location.
    """

    initial: InitialConfig
    grid: GridSpec = field(default_factory=GridSpec)
    flow: Schedule = field(default_factory=Schedule)
    tolerances: Tolerances = field(default_factory=Tolerances)
    output: OutputConfig = field(default_factory=OutputConfig)

    def __post_init__(self) -> None:
        if self.initial.max_mode >= self.grid.n // 2:
            raise ConfigValueError(
                "initial.max_mode", self.initial.max_mode, f"< n/2 = {self.grid.n // 2}"
            )

    def flow_config(self) -> FlowConfig:
        """The parameters :func:`donflow.flow.run` needs."""
        return FlowConfig(self.grid, self.flow, self.tolerances, self.initial.seed)


def split_entries(text: str) -> dict[str, Any]:
    """Turn ``key = value`` lines into nested section dicts.

    Raises:
        ConfigSyntaxError: On a malformed line, a duplicate key, or a key
            used both as a value and as a section.
    """
    root: dict[str, Any] = {}
    for number, line in enumerate(text.splitlines(), start=1):
        content = line.split("#", 1)[0].strip()
        if not content:
            continue
        match = ENTRY.match(content)
        if match is None:
            raise ConfigSyntaxError(number, line)
        key = match["key"]
        *sections, name = key.split(".")
        node = root
        for depth, section in enumerate(sections):
            node = node.setdefault(section, {})
            if not isinstance(node, dict):
                raise ConfigSyntaxError(number, line, ".".join(sections[: depth + 1]))
        if name in node:
            raise ConfigSyntaxError(number, line, key)
        node[name] = match["value"]
    return root


def parse_config_text(text: str) -> RunConfig:
    """Parse the text of a configuration file.

    Raises:
        ConfigError: Any subclass, naming the offending key where one exists.
    """
    parser = DataclassParser(RunConfig, default_parsers)
    config = parser.parse_value(split_entries(text), "")
    return config  # type: ignore[return-value]


def load_config(path: str | os.PathLike[str]) -> RunConfig:
    """Read and parse a configuration file."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as error:
        raise ConfigError(f"Cannot read configuration {os.fspath(path)!r}: {error}") from error
    config = parse_config_text(text)
    logger.info("Loaded configuration from %s", os.fspath(path))
    return config


def resolve_output_directory(
    config: RunConfig | None,
    override: str | os.PathLike[str] | None = None,
    environ: Mapping[str, str] | None = None,
) -> Path:
    """--out beats DONFLOW_OUT_DIR beats ``output.directory``."""
    environ = os.environ if environ is None else environ
    if override is not None:
        return Path(override)
    if environ.get(OUTPUT_DIR_ENV):
        return Path(environ[OUTPUT_DIR_ENV])
    if config is not None:
        return Path(config.output.directory)
    return Path(OutputConfig().directory)


def _render_default(value: Any) -> str:
    if isinstance(value, enum.Enum):
        return str(value.value)
    if isinstance(value, bool):
        return str(value).lower()
    if value is None:
        return "none"
    if isinstance(value, tuple):
        return ",".join(_render_default(item) for item in value)
    return str(value)


def _render_schema(schema: Mapping[str, Any]) -> str:
    if "anyOf" in schema:
        return " | ".join(_render_schema(option) for option in schema["anyOf"])
    if "enum" in schema:
        return "|".join(schema["enum"])
    if schema.get("type") == "array":
        return ",".join(_render_schema(item) for item in schema["items"])
    return str(schema.get("type", "?"))


def _describe(parser: DataclassParser, prefix: str, lines: list[str]) -> None:
    types = parser.types
    descriptions = parser.descriptions
    for item in fields(parser.argtype):
        key = join_key(prefix, item.name)
        if is_dataclass(types[item.name]):
            _describe(DataclassParser(types[item.name], default_parsers), key, lines)
            continue
        if item.default is not MISSING:
            default = _render_default(item.default)
        else:
            default = "required"
        kind = _render_schema(parser.parse_rec(types[item.name]).schema)
        description = " ".join(descriptions.get(item.name, "").split())
        lines.append(f"{key:<32} {kind:<28} {default:<14} {description}")


def describe_config() -> str:
    """Every configuration key with its type, default and description."""
    lines = [
        "# donflow configuration: one 'section.key = value' per line, '#' starts a comment",
        f"# the output directory may also be set with {OUTPUT_DIR_ENV}",
        f"{'key':<32} {'type':<28} {'default':<14} description",
    ]
    _describe(DataclassParser(RunConfig, default_parsers), "", lines)
    return "\n".join(lines) + "\n"
