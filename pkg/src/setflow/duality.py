"""Semi-inner product, extremal sets, and discrete dual representatives.

On the grid, the dual of the sup-norm function space reduces to finite
signed combinations of point masses.  The semi-inner product <f, g>_ is the
smallest pairing mu(f) over normalized dual elements mu concentrated on the
extremal sets of g; for nonzero g the single-atom representatives
+-||g|| delta_i at extremal indices already attain the minimum.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import AsymmetricDistance, Contained, ZeroFunction
from .support import (
    ConvexPolygon,
    DirectionGrid,
    SupportDelta,
    _require_same_grid,
    default_geom_tol,
    hausdorff_onesided,
    point_to_polygon,
    project_point,
)


def _default_ext_tol(values) -> float:
    return 1e-9 * max(1.0, float(np.max(np.abs(values))))


@dataclass(frozen=True)
class ExtremalSets:
    """Grid indices where a delta attains +||f|| (positive) or -||f|| (negative).

    For the zero function both sets are the whole grid by convention.
    """

    positive: tuple[int, ...]
    negative: tuple[int, ...]


@dataclass(frozen=True)
class DiscreteMeasure:
    """Finite signed combination of point masses on grid indices."""

    atoms: tuple[tuple[int, float], ...]

    def __post_init__(self):
        idx = [i for i, _ in self.atoms]
        if len(set(idx)) != len(idx):
            raise ValueError("atoms must have distinct indices")
        object.__setattr__(
            self, "atoms", tuple((int(i), float(w)) for i, w in self.atoms)
        )

    @property
    def total_variation(self) -> float:
        return sum(abs(w) for _, w in self.atoms)

    def __call__(self, f) -> float:
        """Pairing mu(f); accepts a delta/sample or a raw value vector."""
        vals = np.asarray(getattr(f, "values", f), dtype=float)
        return float(sum(w * vals[i] for i, w in self.atoms))


def extremal_sets(f, tol_ext: float | None = None) -> ExtremalSets:
    """Indices attaining the sup-norm of f from above and below."""
    vals = np.asarray(getattr(f, "values", f), dtype=float)
    if tol_ext is None:
        tol_ext = _default_ext_tol(vals)
    norm = float(np.max(np.abs(vals)))
    if norm <= tol_ext:
        full = tuple(range(len(vals)))
        return ExtremalSets(full, full)
    pos = tuple(int(i) for i in np.flatnonzero(vals >= norm - tol_ext))
    neg = tuple(int(i) for i in np.flatnonzero(vals <= -norm + tol_ext))
    return ExtremalSets(pos, neg)


def semi_inner(f: SupportDelta, g: SupportDelta, tol_ext: float | None = None) -> float:
    """One-sided pairing ||g|| * min{min_{E+} f, min_{E-} -f}, min over empty = inf.

    At least one extremal set of g is nonempty, so the result is always
    finite; for g == 0 it is 0 by the full-grid convention.
    """
    _require_same_grid(f, g)
    gvals = g.values
    gnorm = float(np.max(np.abs(gvals)))
    es = extremal_sets(g, tol_ext)
    if gnorm <= (_default_ext_tol(gvals) if tol_ext is None else tol_ext):
        return 0.0
    fvals = f.values
    mpos = float(np.min(fvals[list(es.positive)])) if es.positive else math.inf
    mneg = float(np.min(-fvals[list(es.negative)])) if es.negative else math.inf
    m = min(mpos, mneg)
    if not math.isfinite(m):
        raise RuntimeError("both extremal sets empty for a nonzero function")
    return gnorm * m


def dual_representatives(
    g: SupportDelta, tol_ext: float | None = None
) -> list[DiscreteMeasure]:
    """Single-atom elements of the duality map of g: +-||g|| delta_i at extrema.

    Every returned measure mu has total variation ||g|| and pairs with g to
    ||g||^2.  The minimum of mu(f) over the list equals semi_inner(f, g).
    """
    gvals = g.values
    gnorm = float(np.max(np.abs(gvals)))
    if gnorm <= (_default_ext_tol(gvals) if tol_ext is None else tol_ext):
        raise ZeroFunction("the zero function has no normalized representatives")
    es = extremal_sets(g, tol_ext)
    reps = [DiscreteMeasure(((i, gnorm),)) for i in es.positive]
    reps += [DiscreteMeasure(((i, -gnorm),)) for i in es.negative]
    return reps


def hausdorff_realizing_directions(
    a: ConvexPolygon,
    b: ConvexPolygon,
    grid: DirectionGrid,
    tol: float | None = None,
) -> tuple[int, ...]:
    """Grid indices nearest to the directions (a* - b*) of farthest pairs.

    Requires dist(A, B) > 0 and dist(A, B) = dist_H(A, B); otherwise raises
    Contained or AsymmetricDistance (swap the arguments in the latter case).
    Each returned index lies within one grid step of a maximizer of
    sigma_A - sigma_B.
    """
    if tol is None:
        tol = default_geom_tol(np.vstack([a.vertices, b.vertices]))
    d_ab = hausdorff_onesided(a, b)
    d_ba = hausdorff_onesided(b, a)
    if d_ab <= tol:
        raise Contained("A is contained in B; no realizing direction")
    if d_ab < max(d_ab, d_ba) - tol:
        raise AsymmetricDistance(
            "dist(A, B) < dist_H(A, B); swap the arguments to characterize E^N"
        )
    indices = set()
    for v in a.vertices:
        if point_to_polygon(v, b) >= d_ab - tol:
            w = project_point(v, b)
            k, _ = grid.nearest_index(v - w)
            indices.add(k)
    return tuple(sorted(indices))
