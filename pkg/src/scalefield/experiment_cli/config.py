"""Flat ``key = value`` experiment configuration.

Lines starting with ``#`` are comments.  Lists are comma separated,
matrices use ``;`` between rows.  Every value a run reads is recorded so
the effective configuration, defaults included, can be echoed into the
output, and keys nobody read are reported as errors.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

from ..errors import ConfigError, UsageError
from ..fields import ConstantScalar, LinearScalar, QuadraticScalar, SineScalar, ZeroScalar
from ..gauge_paths import GaugeFieldSpec
from ..quantum_scaling import DetectorPartition, Grid
from ..scaled_algebra import format_value

EXPERIMENTS = ("axioms", "paths", "packet", "detector-sweep", "gauge-check", "commerce-demo")


def parse_lines(lines, source="<config>") -> dict[str, str]:
    out: dict[str, str] = {}
    for lineno, raw in enumerate(lines, 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ConfigError(f"{source}:{lineno}: expected key=value, got {raw.rstrip()!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        if not key:
            raise ConfigError(f"{source}:{lineno}: empty key")
        if key in out:
            raise ConfigError(f"{source}:{lineno}: duplicate key {key!r}")
        out[key] = value
    return out


def parse_override(text: str) -> tuple[str, str]:
    if "=" not in text:
        raise ConfigError(f"override {text!r} is not KEY=VALUE")
    key, value = (part.strip() for part in text.split("=", 1))
    if not key:
        raise ConfigError(f"override {text!r} has an empty key")
    return key, value


def _fmt(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (list, tuple)):
        if v and isinstance(v[0], (list, tuple)):
            return ";".join(_fmt(row) for row in v)
        return ",".join(_fmt(x) for x in v)
    if isinstance(v, (int, str)):
        return str(v)
    return format_value(v)


@dataclass
class ExperimentConfig:
    experiment: str
    values: dict[str, str] = field(default_factory=dict)
    out: str | None = None
    seed: int = 0
    used: dict[str, str] = field(default_factory=dict, repr=False)

    def __post_init__(self):
        if self.experiment not in EXPERIMENTS:
            raise ConfigError(f"unknown experiment {self.experiment!r}")
        if isinstance(self.seed, bool) or not isinstance(self.seed, int) or self.seed < 0:
            raise ConfigError("seed must be a natural number")

    @classmethod
    def load(cls, experiment, path=None, overrides=(), out=None, seed=None):
        values = {}
        if path is not None:
            try:
                text = Path(path).read_text()
            except OSError as exc:
                raise ConfigError(f"cannot read config {path}: {exc}") from exc
            values = parse_lines(text.splitlines(), str(path))
        for item in overrides:
            k, v = parse_override(item)
            values[k] = v
        if seed is None:
            seed = int(cls._raw_int(values.pop("seed", "0"), "seed"))
        else:
            values.pop("seed", None)
        return cls(experiment, values, out, seed)

    @staticmethod
    def _raw_int(text, key):
        try:
            return int(text)
        except ValueError:
            raise ConfigError(f"{key}: expected an integer, got {text!r}") from None

    # typed getters

    def has(self, key) -> bool:
        return key in self.values

    def _get(self, key, default, convert):
        if key in self.values:
            text = self.values[key]
            try:
                v = convert(text)
            except (ValueError, TypeError):
                raise ConfigError(f"{key}: cannot parse {text!r}") from None
        elif default is None:
            raise ConfigError(f"missing required key {key!r}")
        else:
            v = default
        self.used[key] = _fmt(v)
        return v

    def str(self, key, default=None, choices=None):
        v = self._get(key, default, str)
        if choices is not None and v not in choices:
            raise ConfigError(f"{key}: {v!r} is not one of {', '.join(choices)}")
        return v

    def float(self, key, default=None):
        v = self._get(key, default, _float)
        return float(v)

    def complex(self, key, default=None):
        return self._get(key, default, lambda t: complex(t.replace(" ", "")))

    def int(self, key, default=None, minimum=None):
        v = self._get(key, default, int)
        if minimum is not None and v < minimum:
            raise ConfigError(f"{key}: must be at least {minimum}, got {v}")
        return v

    def bool(self, key, default=None):
        return self._get(key, default, _bool)

    def floats(self, key, default=None, length=None):
        v = self._get(key, default, lambda t: [_float(x) for x in t.split(",")])
        v = [float(x) for x in (v if isinstance(v, (list, tuple)) else [v])]
        if length is not None and len(v) != length:
            raise ConfigError(f"{key}: expected {length} numbers, got {len(v)}")
        return v

    def ints(self, key, default=None):
        return [int(x) for x in self._get(key, default, lambda t: [int(x) for x in t.split(",")])]

    def matrix(self, key, default=None):
        return self._get(key, default, lambda t: [[_float(x) for x in row.split(",")] for row in t.split(";")])

    def points(self, key, default=None, dim=None):
        pts = self.matrix(key, default)
        if dim is not None and any(len(p) != dim for p in pts):
            raise ConfigError(f"{key}: every point needs {dim} coordinates")
        return pts

    def finish(self):
        """Raise on keys that were given but never read."""
        unused = sorted(set(self.values) - set(self.used))
        if unused:
            raise ConfigError(f"unknown keys for {self.experiment}: {', '.join(unused)}")

    def echo(self) -> list[tuple[str, str]]:
        return [("experiment", self.experiment), ("seed", str(self.seed))] + sorted(self.used.items())


def _float(t) -> float:
    v = float(t)
    if v != v or v in (float("inf"), float("-inf")):
        raise ValueError(t)
    return v


def _bool(t) -> bool:
    t = t.strip().lower()
    if t in ("1", "true", "yes", "on"):
        return True
    if t in ("0", "false", "no", "off"):
        return False
    raise ValueError(t)


def _broadcast(v, dim, key):
    if len(v) == 1:
        return v * dim
    if len(v) != dim:
        raise ConfigError(f"{key}: expected 1 or {dim} values, got {len(v)}")
    return v


def scalar_field(cfg: ExperimentConfig, prefix: str, dim: int, default_kind="zero"):
    """Scalar field from keys ``<prefix>`` (kind) and ``<prefix>.<param>``."""
    kind = cfg.str(prefix, default_kind, ("zero", "constant", "linear", "quadratic", "sine"))
    try:
        if kind == "zero":
            return ZeroScalar(dim)
        if kind == "constant":
            return ConstantScalar(cfg.float(f"{prefix}.value", 1.0), dim)
        if kind == "linear":
            slope = _broadcast(cfg.floats(f"{prefix}.slope", [0.8]), dim, f"{prefix}.slope")
            return LinearScalar(tuple(slope), cfg.float(f"{prefix}.offset", 0.0))
        if kind == "quadratic":
            center = _broadcast(cfg.floats(f"{prefix}.center", [0.0]), dim, f"{prefix}.center")
            if cfg.has(f"{prefix}.matrix"):
                m = cfg.matrix(f"{prefix}.matrix")
                return QuadraticScalar(tuple(tuple(row) for row in m), tuple(center))
            return QuadraticScalar.isotropic(cfg.float(f"{prefix}.stiffness", 0.1), dim, center)
        k = _broadcast(cfg.floats(f"{prefix}.wavevector", [1.0]), dim, f"{prefix}.wavevector")
        return SineScalar(cfg.float(f"{prefix}.amplitude", 0.5), tuple(k), cfg.float(f"{prefix}.phase", 0.0))
    except UsageError as exc:
        raise ConfigError(f"{prefix}: {exc}") from exc


def field_spec(
    cfg: ExperimentConfig, default_kind="constant", default_dim=1, default_vector=(0.05,), default_potential="quadratic"
) -> GaugeFieldSpec:
    """Gauge field from ``field.*`` keys."""
    kind = cfg.str("field.kind", default_kind, ("zero", "constant", "gradient", "rotational"))
    dim = cfg.int("field.dim", default_dim)
    coupling = cfg.float("field.coupling", 1.0)
    try:
        if kind == "zero":
            spec = GaugeFieldSpec.zero(dim, coupling)
        elif kind == "constant":
            vec = cfg.floats("field.vector", list(default_vector))
            spec = GaugeFieldSpec.constant(_broadcast(vec, dim, "field.vector"), coupling)
        elif kind == "gradient":
            spec = GaugeFieldSpec.gradient(scalar_field(cfg, "field.potential", dim, default_potential), coupling)
        else:
            plane = cfg.ints("field.plane", [0, 1])
            spec = GaugeFieldSpec.rotational(cfg.float("field.strength", 0.05), dim, tuple(plane), coupling)
    except UsageError as exc:
        raise ConfigError(f"field: {exc}") from exc
    if spec.dim != dim:
        raise ConfigError(f"field.dim={dim} does not match the field parameters")
    return spec


def grid_spec(cfg: ExperimentConfig, dim: int, lo=-10.0, hi=10.0, n=256) -> Grid:
    los = _broadcast(cfg.floats("grid.lo", [lo]), dim, "grid.lo")
    his = _broadcast(cfg.floats("grid.hi", [hi]), dim, "grid.hi")
    ns = _broadcast(cfg.ints("grid.n", [n]), dim, "grid.n")
    try:
        return Grid(tuple(los), tuple(his), tuple(ns))
    except UsageError as exc:
        raise ConfigError(f"grid: {exc}") from exc


def partition_specs(cfg: ExperimentConfig, grid: Grid, default_divisions=(8, 16, 32, 64)):
    """Detector partitions ``delta = L / k`` for every ``k`` in ``partition.divisions``."""
    if len(set(grid.extent)) != 1 or len(set(grid.n)) != 1:
        raise ConfigError("detector partitions need a cubic grid")
    anchor = cfg.str("partition.anchor", "corner", ("corner", "face_center"))
    divisions = cfg.ints("partition.divisions", list(default_divisions))
    out = []
    for k in divisions:
        if k < 1 or grid.n[0] % k:
            raise ConfigError(f"partition.divisions: {k} does not divide the {grid.n[0]} grid points per axis")
        part = DetectorPartition(grid.extent[0] / k, anchor)
        try:
            part.points_per_side(grid)
        except UsageError as exc:
            raise ConfigError(f"partition: {exc}") from exc
        out.append((k, part))
    return out
