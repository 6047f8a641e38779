"""Flat `key = value` experiment configuration.

One key per line, `#` starts a comment, lists are comma-separated.  Parsing
and rendering are mutually inverse on canonical (rendered) configs.
"""

from __future__ import annotations

from dataclasses import dataclass, field, fields, replace

from .graphs import FAMILIES, GraphSpec

KINDS = ("count", "sample-census", "balls-bins", "bounds", "enumerate-trees", "otter-fit")


class ConfigError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(message if line is None else f"line {line}: {message}")


@dataclass(frozen=True)
class ExperimentConfig:
    kind: str = ""
    family: str = ""
    input: str = ""
    n: int = 0
    d: int = 0
    nx: int = 0
    ny: int = 0
    delta: float = 0.0
    samples: int = 1000
    kmax: int = 3
    gammas: tuple[float, ...] = ()
    leaves: int = -1
    n_min: int = 0
    n_max: int = 0
    exact_cap: int = 500
    out: str = "out"
    seed: int = 0

    def graph_spec(self) -> GraphSpec:
        if self.input:
            return GraphSpec(family="from-file", path=self.input, seed=self.seed)
        return GraphSpec(
            family=self.family,
            n=self.n,
            d=self.d,
            nx=self.nx,
            ny=self.ny,
            delta=self.delta,
            seed=self.seed,
        )

    def validate(self) -> None:
        if self.kind not in KINDS:
            raise ConfigError(f"kind must be one of {', '.join(KINDS)}; got {self.kind!r}")
        if self.samples < 1:
            raise ConfigError("samples must be at least 1")
        if self.seed < 0:
            raise ConfigError("seed must be a nonnegative integer")
        needs_graph = self.kind in ("count", "sample-census", "balls-bins")
        if needs_graph:
            if bool(self.family) == bool(self.input):
                raise ConfigError("exactly one of family/input must be set")
            if self.family:
                try:
                    self.graph_spec().validate()
                except ValueError as e:
                    raise ConfigError(str(e)) from e
        if self.kind == "balls-bins":
            if self.kmax < 0:
                raise ConfigError("kmax must be nonnegative")
            if self.family and self.family not in ("complete-bipartite", "random-bipartite-regular"):
                raise ConfigError("balls-bins needs a bipartite graph family")
            if any(g < 0 for g in self.gammas):
                raise ConfigError("gammas must be nonnegative")
        if self.kind == "bounds":
            if self.n < 2:
                raise ConfigError("bounds kind needs n >= 2")
            if self.d < 1:
                raise ConfigError("bounds kind needs d >= 1")
            if not 0 <= self.leaves <= self.n - 1:
                raise ConfigError("bounds kind needs leaves in [0, n-1]")
        if self.kind in ("enumerate-trees", "otter-fit"):
            if not 1 <= self.n_min <= self.n_max:
                raise ConfigError("need 1 <= n_min <= n_max")
            if self.kind == "otter-fit" and self.n_max - self.n_min < 2:
                raise ConfigError("otter-fit needs at least 3 sizes")
        if not self.out:
            raise ConfigError("out directory must be set")


_FIELD_TYPES = {f.name: f.type for f in fields(ExperimentConfig)}
_RENDER_ORDER = [f.name for f in fields(ExperimentConfig)]
_DEFAULTS = ExperimentConfig()


def _parse_value(key: str, raw: str, line: int):
    ftype = _FIELD_TYPES[key]
    raw = raw.strip()
    try:
        if key == "gammas":
            if not raw:
                return ()
            return tuple(float(tok.strip()) for tok in raw.split(","))
        if ftype == "int":
            return int(raw)
        if ftype == "float":
            return float(raw)
        return raw
    except ValueError as e:
        raise ConfigError(f"bad value {raw!r} for key {key!r}", line) from e


def parse_config(text: str) -> ExperimentConfig:
    """Parse and validate a config; errors carry the offending line number."""
    values: dict[str, object] = {}
    seen: dict[str, int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError("expected `key = value`", lineno)
        key, _, val = line.partition("=")
        key = key.strip()
        if key not in _FIELD_TYPES:
            raise ConfigError(f"unknown key {key!r}", lineno)
        if key in seen:
            raise ConfigError(f"duplicate key {key!r} (first on line {seen[key]})", lineno)
        seen[key] = lineno
        values[key] = _parse_value(key, val, lineno)
    if "kind" not in values:
        raise ConfigError("missing required key 'kind'")
    cfg = ExperimentConfig(**values)
    cfg.validate()
    return cfg


def render_config(cfg: ExperimentConfig) -> str:
    """Canonical text form: defaulted keys omitted, fixed key order."""
    lines = []
    for name in _RENDER_ORDER:
        value = getattr(cfg, name)
        if name != "kind" and value == getattr(_DEFAULTS, name):
            continue
        if name == "gammas":
            value = ", ".join(repr(g) for g in value)
        lines.append(f"{name} = {value}")
    return "\n".join(lines) + "\n"


def apply_overrides(cfg: ExperimentConfig, **overrides) -> ExperimentConfig:
    """Replace fields with CLI-provided values (None entries are ignored)."""
    live = {k: v for k, v in overrides.items() if v is not None}
    if not live:
        return cfg
    out = replace(cfg, **live)
    out.validate()
    return out
