"""key=value run configuration."""
from __future__ import annotations

from dataclasses import dataclass, field, fields
from pathlib import Path
from typing import Optional

from . import benchmarks
from .core import CfoSettings, DecisionSpace, ObjectiveHandle


class ConfigError(ValueError):
    pass


_SETTING_TYPES = {f.name: f.type for f in fields(CfoSettings)}
_SETTING_KEYS = set(_SETTING_TYPES)
_TOP_KEYS = {"objective", "fitness", "nd", "z0", "bounds", "backend", "seed", "output",
             "efficiency", "nec_workdir", "nec_timeout"}
KNOWN_KEYS = _TOP_KEYS | _SETTING_KEYS

MONOPOLE_ID = "LD_MONO"


@dataclass
class RunConfig:
    objective: str = "F18"
    fitness: str = "f3"
    nd: Optional[int] = None
    z0: float = 50.0
    bounds: Optional[list[tuple[float, float]]] = None
    backend: Optional[str] = None        # stub:<json> | nec:<exe> | pynec
    seed: int = 0
    output: str = "cfo_out"
    efficiency: str = "power_budget"
    nec_workdir: Optional[str] = None
    nec_timeout: float = 60.0
    settings: dict = field(default_factory=dict)
    base_dir: Path = field(default_factory=Path.cwd)

    @property
    def is_monopole(self) -> bool:
        return self.objective.upper() == MONOPOLE_ID

    def resolved_nd(self) -> int:
        if self.is_monopole:
            return 2
        try:
            return benchmarks._resolve_nd(benchmarks.get_entry(self.objective), self.nd)
        except (KeyError, ValueError) as exc:
            raise ConfigError(str(exc)) from exc

    def cfo_settings(self) -> CfoSettings:
        try:
            return CfoSettings.for_problem(self.objective, self.resolved_nd(), **self.settings)
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"bad CFO setting: {exc}") from exc

    def space(self) -> DecisionSpace:
        if self.bounds is not None:
            b = self.bounds
        elif self.is_monopole:
            from .antenna import LD_MONO_BOUNDS
            b = LD_MONO_BOUNDS
        else:
            b = benchmarks.default_bounds(self.objective, self.resolved_nd())
        if len(b) != self.resolved_nd():
            raise ConfigError(f"bounds give {len(b)} dimensions, objective needs {self.resolved_nd()}")
        try:
            return DecisionSpace.from_bounds(b)
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc

    def make_backend(self):
        from .antenna import ExternalNecBackend, PyNecBackend, StubBackend
        if not self.backend:
            raise ConfigError("monopole objectives need backend = stub:<file> | nec:<exe> | pynec")
        kind, _, arg = self.backend.partition(":")
        kind = kind.strip().lower()
        if kind == "stub":
            path = Path(arg)
            if not path.is_absolute():
                path = self.base_dir / path
            if not path.exists():
                raise ConfigError(f"stub fixture not found: {path}")
            return StubBackend.from_json(path)
        if kind == "nec":
            if not arg:
                raise ConfigError("backend nec:<exe> needs an executable path")
            return ExternalNecBackend(arg, workdir=self.nec_workdir, timeout=self.nec_timeout)
        if kind == "pynec":
            try:
                return PyNecBackend()
            except ImportError as exc:
                raise ConfigError(f"PyNEC is not importable: {exc}") from exc
        raise ConfigError(f"unknown backend {self.backend!r}")

    def make_objective(self) -> ObjectiveHandle:
        if self.is_monopole:
            from .antenna import make_monopole_objective
            if self.fitness.lower() not in ("f1", "f2", "f3"):
                raise ConfigError(f"fitness must be f1, f2 or f3, got {self.fitness!r}")
            return make_monopole_objective(self.fitness.lower(), self.z0, self.make_backend(),
                                           efficiency=self.efficiency)
        try:
            return benchmarks.make_objective(self.objective, self.resolved_nd(), seed=self.seed)
        except (KeyError, ValueError, benchmarks.BenchmarkUnavailable) as exc:
            raise ConfigError(str(exc)) from exc

    def objective_name(self) -> str:
        if self.is_monopole:
            return f"{MONOPOLE_ID}:{self.fitness.lower()}:z0={self.z0!r}"
        return benchmarks.get_entry(self.objective).id

    def effective_lines(self) -> list[str]:
        """Fully resolved config, minus the output directory, which must not
        leak into outputs that are byte-compared across directories."""
        nd = self.resolved_nd()
        st = self.cfo_settings()
        sp = self.space()
        lines = [f"objective = {self.objective.upper() if self.is_monopole else self.objective_name()}",
                 f"nd = {nd}",
                 "bounds = " + ";".join(f"{lo!r},{hi!r}" for lo, hi in sp.bounds())]
        if self.is_monopole:
            lines += [f"fitness = {self.fitness.lower()}", f"z0 = {self.z0!r}",
                      f"backend = {self.backend}", f"efficiency = {self.efficiency}"]
        else:
            lines.append(f"seed = {self.seed}")
        for f in fields(CfoSettings):
            lines.append(f"{f.name} = {getattr(st, f.name)!r}")
        return lines


def parse_bounds(text: str) -> list[tuple[float, float]]:
    """'lo,hi;lo,hi' -> [(lo, hi), (lo, hi)]"""
    out = []
    for part in text.split(";"):
        part = part.strip()
        if not part:
            continue
        bits = part.split(",")
        if len(bits) != 2:
            raise ConfigError(f"bounds entry {part!r} is not 'lo,hi'")
        try:
            out.append((float(bits[0]), float(bits[1])))
        except ValueError:
            raise ConfigError(f"non-numeric bounds entry {part!r}") from None
    if not out:
        raise ConfigError("empty bounds")
    return out


def _coerce_setting(key: str, value: str):
    typ = _SETTING_TYPES[key]
    typ = typ if isinstance(typ, str) else typ.__name__
    try:
        if typ == "bool":
            low = value.strip().lower()
            if low in ("1", "true", "yes", "on"):
                return True
            if low in ("0", "false", "no", "off"):
                return False
            raise ValueError(value)
        if typ == "int":
            return int(value)
        return float(value)
    except ValueError:
        raise ConfigError(f"{key}: cannot parse {value!r} as {typ}") from None


def parse_pairs(lines, source: str = "<config>") -> dict[str, str]:
    out: dict[str, str] = {}
    for n, raw in enumerate(lines, 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{source}:{n}: expected key = value, got {raw.strip()!r}")
        key, value = (s.strip() for s in line.split("=", 1))
        key = key.lower()
        if key not in KNOWN_KEYS:
            raise ConfigError(f"{source}:{n}: unknown key {key!r}")
        out[key] = value
    return out


def build_config(pairs: dict[str, str], base_dir: Optional[Path] = None) -> RunConfig:
    cfg = RunConfig(base_dir=base_dir or Path.cwd())
    for key, value in pairs.items():
        if key not in KNOWN_KEYS:
            raise ConfigError(f"unknown key {key!r}")
        try:
            if key in _SETTING_KEYS:
                cfg.settings[key] = _coerce_setting(key, value)
            elif key == "bounds":
                cfg.bounds = parse_bounds(value)
            elif key in ("nd", "seed"):
                setattr(cfg, key, int(value))
            elif key in ("z0", "nec_timeout"):
                setattr(cfg, key, float(value))
            else:
                setattr(cfg, key, value)
        except ValueError as exc:
            if isinstance(exc, ConfigError):
                raise
            raise ConfigError(f"{key}: bad value {value!r}") from None
    if not cfg.is_monopole:
        try:
            entry = benchmarks.get_entry(cfg.objective)
        except KeyError as exc:
            raise ConfigError(str(exc)) from exc
        if not entry.implemented:
            raise ConfigError(f"{entry.id} is not implemented")
    if cfg.efficiency not in ("power_budget", "average_gain"):
        raise ConfigError("efficiency must be power_budget or average_gain")
    if cfg.z0 <= 0:
        raise ConfigError("z0 must be positive")
    return cfg


def load_config(path=None, overrides: Optional[list[str]] = None) -> RunConfig:
    pairs: dict[str, str] = {}
    base = Path.cwd()
    if path is not None:
        p = Path(path)
        try:
            text = p.read_text()
        except OSError as exc:
            raise ConfigError(f"cannot read config {p}: {exc}") from exc
        pairs.update(parse_pairs(text.splitlines(), str(p)))
        base = p.resolve().parent
    if overrides:
        pairs.update(parse_pairs(overrides, "--set"))
    return build_config(pairs, base)
