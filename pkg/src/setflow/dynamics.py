"""Set dynamics on the support cone: feasibility diagnostics and integration.

A right-hand side maps (t, support sample) to a delta.  Solutions stay in
the cone when the field values are subtangent to it, which on the grid is a
one-parameter family of linear inequalities solved in closed form.  The
integrator is fixed-step explicit (Euler or classical RK4) with a stated
drift-repair policy; existence-horizon, Lipschitz, and one-sided-Lipschitz
checks are sampled estimates, never certificates.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import (
    DegenerateDistance,
    DegenerateField,
    EmptyIntersection,
    GridMismatch,
    NonFiniteValue,
)
from .hukuhara import SetCurve
from .sampling import perturb_in_ball, random_cone_sample
from .support import (
    ConvexPolygon,
    DirectionGrid,
    SupportDelta,
    SupportSample,
    cone_margins,
    cone_residual,
    default_cone_tol,
    default_geom_tol,
    farthest_realizer,
    hausdorff_onesided,
    regularize,
    support_of_polygon,
)

METHODS = ("euler", "rk4")
POLICIES = ("never", "on_violation", "always")


@dataclass(frozen=True)
class RhsField:
    """Right-hand side f(t, sigma) -> delta, evaluated on raw value vectors.

    fn must be reentrant and deterministic; lipschitz is an optional declared
    constant used only for reporting.
    """

    grid: DirectionGrid
    fn: Callable[[float, np.ndarray], np.ndarray]
    name: str = "field"
    lipschitz: float | None = None

    def eval(self, t: float, values: np.ndarray) -> np.ndarray:
        out = np.asarray(self.fn(t, values), dtype=float)
        if out.shape != (self.grid.n,):
            raise GridMismatch(
                f"field '{self.name}' returned shape {out.shape}, expected {(self.grid.n,)}"
            )
        return out

    def __call__(self, t: float, sigma: SupportSample) -> SupportDelta:
        if sigma.grid.n != self.grid.n:
            raise GridMismatch(f"grids of size {sigma.grid.n} and {self.grid.n}")
        return SupportDelta(self.grid, self.eval(t, sigma.values))


def relax_to(target: SupportSample, name: str = "relax_to") -> RhsField:
    """Field sigma' = sigma_target - sigma: exponential relaxation to target."""
    tvals = target.values

    def fn(t, y):
        return tvals - y

    return RhsField(target.grid, fn, name=name, lipschitz=1.0)


def constant_field(delta: SupportDelta, name: str = "constant") -> RhsField:
    def fn(t, y):
        return delta.values.copy()

    return RhsField(delta.grid, fn, name=name, lipschitz=0.0)


def expansion_field(grid: DirectionGrid, rate: float, name: str = "expand") -> RhsField:
    """Field sigma' = rate * sigma; expands sets for rate > 0."""

    def fn(t, y):
        return rate * y

    return RhsField(grid, fn, name=name, lipschitz=abs(rate))


@dataclass(frozen=True)
class GrowthFunction:
    """Comparison growth bound omega(t, s); class membership is declared only."""

    fn: Callable[[float, float], float]
    declared_class: str = "Unchecked"

    def __call__(self, t: float, s: float) -> float:
        return float(self.fn(t, s))


def linear_growth(rate: float) -> GrowthFunction:
    return GrowthFunction(lambda t, s: rate * s, declared_class="U1")


def zero_growth() -> GrowthFunction:
    return GrowthFunction(lambda t, s: 0.0, declared_class="Unchecked")


@dataclass(frozen=True)
class SubtangentResult:
    """Feasible lambda interval for v + lambda*sigma to lie in the cone."""

    feasible: bool
    lam_min: float
    lam_max: float

    def contains(self, lam: float) -> bool:
        return self.feasible and self.lam_min <= lam <= self.lam_max


def subtangent_feasible(
    v, sigma: SupportSample, tol: float | None = None
) -> SubtangentResult:
    """Decide whether v lies in the tangent cone to the support cone at sigma.

    Each grid index contributes a linear constraint a_i + lambda*b_i >= -tol
    on lambda >= 0, where a and b are the three-term margins of v and sigma.
    The margins of sigma are nonnegative (up to rounding), so the feasible
    set is a closed interval computed exactly.
    """
    vvals = np.asarray(getattr(v, "values", v), dtype=float)
    grid = sigma.grid
    a = cone_margins(vvals, grid)
    b = cone_margins(sigma.values, grid)
    if tol is None:
        tol = default_cone_tol(vvals)
    flat = 1e-12 * max(1.0, float(np.max(np.abs(sigma.values))))
    lam_min, lam_max = 0.0, math.inf
    for ai, bi in zip(a, b):
        if bi > flat:
            lam_min = max(lam_min, (-tol - ai) / bi)
        elif bi < -flat:
            lam_max = min(lam_max, (-tol - ai) / bi)
        elif ai < -tol:
            return SubtangentResult(False, math.nan, math.nan)
    if lam_min > lam_max:
        return SubtangentResult(False, math.nan, math.nan)
    return SubtangentResult(True, lam_min, lam_max)


def existence_horizon(
    f: RhsField,
    sigma0: SupportSample,
    r: float,
    T: float,
    budget: int = 64,
    time_samples: int = 9,
    seed: int = 0,
) -> tuple[float, float]:
    """Sampled field bound c on [0, T] x (cone ball of radius r) and b = min(T, r/c).

    The bound is a lower-confidence estimate from a deterministic seeded
    sweep, not a certified supremum.  Raises DegenerateField (carrying
    horizon = T) when every sample evaluates to zero.
    """
    if r <= 0 or T <= 0:
        raise ValueError("r and T must be positive")
    rng = np.random.default_rng(seed)
    states = [sigma0.values, sigma0.values + r]
    for _ in range(budget):
        s = perturb_in_ball(sigma0, r, rng)
        if s is not None:
            states.append(s.values)
    c = 0.0
    for t in np.linspace(0.0, T, time_samples):
        for y in states:
            c = max(c, float(np.max(np.abs(f.eval(float(t), y)))))
    if c == 0.0:
        raise DegenerateField(T)
    return c, min(T, r / c)


@dataclass(frozen=True)
class OslCase:
    """One applicable realizer condition of the one-sided Lipschitz check."""

    order: str  # "forward": dist(A,B) = dist_H; "reverse": dist(B,A) = dist_H
    a: np.ndarray
    b: np.ndarray
    direction_index: int
    snap_error: float
    lhs: float
    bound: float
    satisfied: bool


@dataclass(frozen=True)
class OslReport:
    satisfied: bool
    hausdorff: float
    cases: tuple[OslCase, ...]

    @property
    def witness(self) -> OslCase | None:
        for c in self.cases:
            if not c.satisfied:
                return c
        return None


def osl_check(
    f: RhsField,
    a: ConvexPolygon,
    b: ConvexPolygon,
    t: float,
    omega: GrowthFunction,
    tol: float | None = None,
) -> OslReport:
    """Check the relative-velocity bound at the Hausdorff-realizing direction.

    For each one-sided distance that attains dist_H(A, B), the realizing pair
    gives a critical direction p (snapped to the nearest grid index, with the
    snap error recorded), and the scalar inequality
    f(t, sigma_A)(p) - f(t, sigma_B)(p) <= omega(t, dist_H) is evaluated
    there (with roles swapped for the reverse order).  The report is
    satisfied when at least one applicable case holds.
    """
    if tol is None:
        tol = default_geom_tol(np.vstack([a.vertices, b.vertices]))
    d_ab = hausdorff_onesided(a, b)
    d_ba = hausdorff_onesided(b, a)
    dh = max(d_ab, d_ba)
    if dh <= tol:
        raise DegenerateDistance("sets coincide within tolerance")
    grid = f.grid
    fa = f.eval(t, support_of_polygon(a, grid).values)
    fb = f.eval(t, support_of_polygon(b, grid).values)
    bound = omega(t, dh)
    cases = []
    if d_ab >= dh - tol:
        pa, pb = farthest_realizer(a, b, tol)
        idx, err = grid.nearest_index(pa - pb)
        lhs = float(fa[idx] - fb[idx])
        cases.append(
            OslCase("forward", pa, pb, idx, err, lhs, bound, lhs <= bound + tol)
        )
    if d_ba >= dh - tol:
        qb, qa = farthest_realizer(b, a, tol)
        idx, err = grid.nearest_index(qb - qa)
        lhs = float(fb[idx] - fa[idx])
        cases.append(
            OslCase("reverse", qa, qb, idx, err, lhs, bound, lhs <= bound + tol)
        )
    return OslReport(any(c.satisfied for c in cases), dh, tuple(cases))


@dataclass(frozen=True)
class Trajectory:
    """Stored output of integrate: states plus per-step drift diagnostics.

    residuals[k] is the worst cone violation of the raw step before the
    regularization policy ran; regularized[k] flags whether it did run.
    """

    grid: DirectionGrid
    times: np.ndarray
    states: np.ndarray
    residuals: np.ndarray
    regularized: np.ndarray
    method: str
    policy: str
    threshold: float | None = None
    completed: bool = True
    failure: str | None = None

    def __len__(self) -> int:
        return len(self.times)

    @property
    def step_sizes(self) -> np.ndarray:
        return np.diff(self.times)

    def sample(self, k: int) -> SupportSample:
        state = self.states[k]
        bound = self.threshold
        if bound is None:
            bound = 10.0 * default_cone_tol(state)
        return SupportSample(self.grid, state, tol=bound)

    @property
    def final(self) -> SupportSample:
        return self.sample(len(self) - 1)

    def curve(self) -> SetCurve:
        return SetCurve(
            self.times, tuple(self.sample(k) for k in range(len(self)))
        )


def _euler_step(f: RhsField, t: float, y: np.ndarray, h: float) -> np.ndarray:
    return y + h * f.eval(t, y)


def _rk4_step(f: RhsField, t: float, y: np.ndarray, h: float) -> np.ndarray:
    k1 = f.eval(t, y)
    k2 = f.eval(t + h / 2.0, y + (h / 2.0) * k1)
    k3 = f.eval(t + h / 2.0, y + (h / 2.0) * k2)
    k4 = f.eval(t + h, y + h * k3)
    return y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)


def integrate(
    f: RhsField,
    sigma0: SupportSample,
    T: float,
    h: float,
    method: str = "rk4",
    policy: str = "on_violation",
    threshold: float | None = None,
) -> Trajectory:
    """Fixed-step explicit integration of the support-value vector.

    The final time is hit exactly by shortening the last step.  After every
    step the cone residual is recorded and the drift-repair policy applied:
    "never" keeps the raw state, "on_violation" regularizes when the
    residual exceeds the threshold (default 10x the scale-aware cone
    tolerance), "always" regularizes unconditionally.  An empty halfplane
    intersection during repair truncates the trajectory with a diagnostic;
    non-finite field output raises NonFiniteValue.
    """
    if method not in METHODS:
        raise ValueError(f"method must be one of {METHODS}")
    if policy not in POLICIES:
        raise ValueError(f"policy must be one of {POLICIES}")
    if h <= 0 or T <= 0:
        raise ValueError("T and h must be positive")
    step = _euler_step if method == "euler" else _rk4_step
    grid = f.grid
    if sigma0.grid.n != grid.n:
        raise GridMismatch(f"grids of size {sigma0.grid.n} and {grid.n}")

    n_full = int(math.floor(T / h + 1e-9))
    times = [k * h for k in range(n_full + 1)]
    if T - times[-1] > 1e-9 * max(1.0, T):
        times.append(T)
    else:
        times[-1] = T

    y = sigma0.values.copy()
    ts = [0.0]
    states = [y.copy()]
    residuals = [cone_residual(y, grid)]
    regularized = [False]
    completed = True
    failure = None
    for k in range(1, len(times)):
        t_prev, t_next = times[k - 1], times[k]
        y_new = step(f, t_prev, y, t_next - t_prev)
        if not np.all(np.isfinite(y_new)):
            raise NonFiniteValue(
                f"non-finite state at t = {t_next} under field '{f.name}'"
            )
        res = cone_residual(y_new, grid)
        did_reg = False
        if threshold is None:
            limit = 10.0 * default_cone_tol(y_new)
        else:
            limit = threshold
        if policy == "always" or (policy == "on_violation" and res > limit):
            try:
                y_new = regularize(y_new, grid).values.copy()
                did_reg = True
            except EmptyIntersection:
                completed = False
                failure = f"empty halfplane intersection at t = {t_next}"
                break
        ts.append(t_next)
        states.append(y_new.copy())
        residuals.append(res)
        regularized.append(did_reg)
        y = y_new
    return Trajectory(
        grid,
        np.asarray(ts),
        np.asarray(states),
        np.asarray(residuals),
        np.asarray(regularized, dtype=bool),
        method,
        policy,
        threshold,
        completed,
        failure,
    )


def relaxation_closed_form(
    a0: ConvexPolygon, q: ConvexPolygon, t: float, grid: DirectionGrid
) -> SupportSample:
    """Exact state of the relaxation field at time t >= 0.

    The solution is the Minkowski combination exp(-t)*A0 + (1 - exp(-t))*Q,
    so its support values are the same convex combination of the endpoint
    samples.
    """
    if t < 0:
        raise ValueError("t must be nonnegative")
    w = math.exp(-t)
    sa = support_of_polygon(a0, grid)
    sq = support_of_polygon(q, grid)
    return SupportSample(grid, w * sa.values + (1.0 - w) * sq.values)


def relaxation_curve(
    a0: ConvexPolygon, q: ConvexPolygon, times, grid: DirectionGrid
) -> SetCurve:
    ts = np.asarray(times, dtype=float)
    return SetCurve(ts, tuple(relaxation_closed_form(a0, q, t, grid) for t in ts))


def lipschitz_estimate(
    f: RhsField, budget: int = 200, seed: int = 0, radius: float = 1.5
) -> float:
    """Empirical sup of the field's difference quotients over cone pairs.

    A lower bound on any true Lipschitz constant of f in its second
    argument.
    """
    if budget < 1:
        raise ValueError("budget must be at least 1")
    rng = np.random.default_rng(seed)
    grid = f.grid
    best = 0.0
    for _ in range(budget):
        t = float(rng.uniform(0.0, 1.0))
        y1 = random_cone_sample(grid, rng, radius=radius).values
        y2 = random_cone_sample(grid, rng, radius=radius).values
        den = float(np.max(np.abs(y1 - y2)))
        if den == 0.0:
            continue
        num = float(np.max(np.abs(f.eval(t, y1) - f.eval(t, y2))))
        best = max(best, num / den)
    return best
