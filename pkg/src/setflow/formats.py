"""File formats: JSON set exchange, CSV trajectories/curves, scenario configs."""

from __future__ import annotations

import csv
import json
import os
from dataclasses import dataclass, field

import numpy as np

from .duality import DiscreteMeasure
from .dynamics import (
    METHODS,
    POLICIES,
    GrowthFunction,
    RhsField,
    Trajectory,
    constant_field,
    expansion_field,
    linear_growth,
    relax_to,
    zero_growth,
)
from .errors import ConfigError
from .hukuhara import SetCurve
from .sampling import DEFAULT_SEED
from .support import (
    ConvexPolygon,
    DirectionGrid,
    SupportDelta,
    SupportSample,
    support_of_polygon,
)

FLOAT_FMT = "%.17g"


def _fmt(x: float) -> str:
    return FLOAT_FMT % float(x)


# ---------------------------------------------------------------- JSON payloads

def parse_set(obj) -> ConvexPolygon:
    """Build a polygon from {"vertices": [[x,y],...]} or {"box": [[a,b],[c,d]]}."""
    if not isinstance(obj, dict):
        raise ConfigError("bad_set", f"set descriptor must be an object, got {type(obj).__name__}")
    if "vertices" in obj:
        try:
            return ConvexPolygon.from_points(np.asarray(obj["vertices"], dtype=float))
        except (ValueError, TypeError) as exc:
            raise ConfigError("bad_set", f"bad vertex list: {exc}") from exc
    if "box" in obj:
        box = obj["box"]
        try:
            (a1, b1), (a2, b2) = box
            return ConvexPolygon.box((float(a1), float(b1)), (float(a2), float(b2)))
        except (ValueError, TypeError) as exc:
            raise ConfigError("bad_set", f"bad box descriptor {box!r}: {exc}") from exc
    raise ConfigError("bad_set", "set descriptor needs 'vertices' or 'box'")


def set_payload(p: ConvexPolygon) -> dict:
    return {"vertices": [[float(x), float(y)] for x, y in p.vertices]}


def load_set(path) -> ConvexPolygon:
    try:
        with open(path) as fh:
            obj = json.load(fh)
    except OSError as exc:
        raise ConfigError("io", f"cannot read set file {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError("bad_json", f"{path}: {exc}") from exc
    return parse_set(obj)


def parse_support_sample(obj) -> SupportSample:
    """Build a sample from {"n": int, "values": [..]}; the grid is implied by n."""
    if not isinstance(obj, dict) or "n" not in obj or "values" not in obj:
        raise ConfigError("bad_sample", "sample descriptor needs 'n' and 'values'")
    n = int(obj["n"])
    values = np.asarray(obj["values"], dtype=float)
    if values.shape != (n,):
        raise ConfigError("bad_sample", f"expected {n} values, got {values.shape}")
    return SupportSample(DirectionGrid(n), values)


def sample_payload(s: SupportSample) -> dict:
    return {"n": s.grid.n, "values": [float(v) for v in s.values]}


def parse_measure(obj) -> DiscreteMeasure:
    if not isinstance(obj, dict) or "atoms" not in obj:
        raise ConfigError("bad_measure", "measure descriptor needs 'atoms'")
    return DiscreteMeasure(tuple((int(i), float(w)) for i, w in obj["atoms"]))


def measure_payload(m: DiscreteMeasure) -> dict:
    return {"atoms": [[i, w] for i, w in m.atoms]}


# ------------------------------------------------------------------- CSV output

def write_trajectory_csv(traj: Trajectory, path) -> None:
    """One row per stored step: t, residual, regularized, v0..v{n-1}."""
    n = traj.grid.n
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["t", "residual", "regularized"] + [f"v{i}" for i in range(n)])
        for k in range(len(traj)):
            w.writerow(
                [_fmt(traj.times[k]), _fmt(traj.residuals[k]), int(traj.regularized[k])]
                + [_fmt(v) for v in traj.states[k]]
            )


def write_curve_csv(curve: SetCurve, path) -> None:
    """One row per time: t, v0..v{n-1}."""
    n = curve.grid.n
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["t"] + [f"v{i}" for i in range(n)])
        for t, s in zip(curve.times, curve.samples):
            w.writerow([_fmt(t)] + [_fmt(v) for v in s.values])


def read_curve_csv(path) -> SetCurve:
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    header, body = rows[0], rows[1:]
    n = len(header) - 1
    grid = DirectionGrid(n)
    times = [float(r[0]) for r in body]
    samples = tuple(SupportSample(grid, np.asarray(r[1:], dtype=float)) for r in body)
    return SetCurve(np.asarray(times), samples)


def write_values_csv(times, rows, path) -> None:
    """Generic t, v0..v{n-1} table for deltas and differentials."""
    rows = [np.asarray(getattr(r, "values", r), dtype=float) for r in rows]
    n = len(rows[0]) if rows else 0
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["t"] + [f"v{i}" for i in range(n)])
        for t, r in zip(times, rows):
            w.writerow([_fmt(t)] + [_fmt(v) for v in r])


# -------------------------------------------------------------- scenario config

@dataclass
class ScenarioConfig:
    """Parsed scenario file driving the CLI front end."""

    grid_n: int
    T: float
    h: float
    method: str
    policy: str
    rhs: dict
    initial: ConvexPolygon | None
    output: dict = field(default_factory=dict)
    seed: int | None = None
    samples: int = 200
    r: float = 1.0
    omega: dict = field(default_factory=lambda: {"kind": "linear", "rate": 1.0})

    @property
    def grid(self) -> DirectionGrid:
        return DirectionGrid(self.grid_n)


def _require(obj: dict, key: str):
    if key not in obj:
        raise ConfigError("missing_key", f"config needs '{key}'")
    return obj[key]


def load_scenario(path) -> ScenarioConfig:
    try:
        with open(path) as fh:
            obj = json.load(fh)
    except OSError as exc:
        raise ConfigError("io", f"cannot read config {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError("bad_json", f"{path}: {exc}") from exc
    if not isinstance(obj, dict):
        raise ConfigError("bad_json", "config root must be an object")

    grid_n = int(_require(obj, "grid_n"))
    if grid_n < 3 or grid_n % 2 != 0:
        raise ConfigError("bad_value", f"grid_n must be even and >= 4, got {grid_n}")
    T = float(_require(obj, "T"))
    h = float(_require(obj, "h"))
    if T <= 0:
        raise ConfigError("bad_value", f"T must be positive, got {T}")
    if h <= 0:
        raise ConfigError("bad_value", f"h must be positive, got {h}")
    method = str(obj.get("method", "rk4"))
    if method not in METHODS:
        raise ConfigError("bad_value", f"method must be one of {METHODS}")
    policy = str(obj.get("policy", "on_violation"))
    if policy not in POLICIES:
        raise ConfigError("bad_value", f"policy must be one of {POLICIES}")
    rhs = _require(obj, "rhs")
    if not isinstance(rhs, dict) or "kind" not in rhs:
        raise ConfigError("bad_value", "rhs needs a 'kind'")
    initial = parse_set(obj["initial"]) if "initial" in obj else None
    seed = int(obj["seed"]) if "seed" in obj else None
    cfg = ScenarioConfig(
        grid_n=grid_n,
        T=T,
        h=h,
        method=method,
        policy=policy,
        rhs=rhs,
        initial=initial,
        output=obj.get("output", {}),
        seed=seed,
        samples=int(obj.get("samples", 200)),
        r=float(obj.get("r", 1.0)),
        omega=obj.get("omega", {"kind": "linear", "rate": 1.0}),
    )
    build_field(cfg)  # validate the rhs descriptor eagerly
    build_omega(cfg)
    return cfg


def build_field(cfg: ScenarioConfig) -> RhsField:
    """Instantiate the configured right-hand side on the configured grid."""
    grid = cfg.grid
    kind = cfg.rhs.get("kind")
    if kind == "relax_to":
        if "target" not in cfg.rhs:
            raise ConfigError("bad_value", "relax_to rhs needs a 'target' set")
        target = parse_set(cfg.rhs["target"])
        return relax_to(support_of_polygon(target, grid))
    if kind == "constant":
        vals = np.asarray(cfg.rhs.get("delta", []), dtype=float)
        if vals.shape != (grid.n,):
            raise ConfigError(
                "bad_value", f"constant rhs needs {grid.n} delta values"
            )
        return constant_field(SupportDelta(grid, vals))
    if kind == "expand":
        return expansion_field(grid, float(cfg.rhs.get("rate", 1.0)))
    raise ConfigError("bad_value", f"unknown rhs kind {kind!r}")


def build_omega(cfg: ScenarioConfig) -> GrowthFunction:
    kind = cfg.omega.get("kind", "linear")
    if kind == "linear":
        return linear_growth(float(cfg.omega.get("rate", 1.0)))
    if kind == "zero":
        return zero_growth()
    raise ConfigError("bad_value", f"unknown omega kind {kind!r}")


def resolve_seed(cfg: ScenarioConfig) -> int:
    """Config seed, overridden by SETFLOW_SEED, defaulting to a fixed constant."""
    env = os.environ.get("SETFLOW_SEED")
    if env is not None:
        return int(env)
    if cfg.seed is not None:
        return cfg.seed
    return DEFAULT_SEED
