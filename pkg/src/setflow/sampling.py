"""Deterministic random geometry used by diagnostics and tests."""

from __future__ import annotations

import numpy as np

from .errors import EmptyIntersection
from .support import (
    ConvexPolygon,
    DirectionGrid,
    SupportSample,
    regularize,
    support_of_polygon,
)

DEFAULT_SEED = 20240


def random_rectangle(
    rng: np.random.Generator,
    center_scale: float = 2.0,
    max_side: float = 3.0,
    min_side: float = 0.0,
) -> ConvexPolygon:
    """Axis-aligned rectangle with uniform center and side lengths."""
    cx, cy = rng.uniform(-center_scale, center_scale, 2)
    wx, wy = rng.uniform(min_side, max_side, 2) / 2.0
    return ConvexPolygon.box((cx - wx, cx + wx), (cy - wy, cy + wy))


def random_convex_polygon(
    rng: np.random.Generator, max_vertices: int = 8, radius: float = 1.5
) -> ConvexPolygon:
    """Hull of a handful of uniform points in a square of the given radius."""
    k = int(rng.integers(3, max_vertices + 1))
    pts = rng.uniform(-radius, radius, (k, 2))
    return ConvexPolygon.from_points(pts)


def random_cone_sample(
    grid: DirectionGrid, rng: np.random.Generator, radius: float = 1.5
) -> SupportSample:
    """Support sample of a random convex polygon."""
    return support_of_polygon(random_convex_polygon(rng, radius=radius), grid)


def perturb_in_ball(
    base: SupportSample, r: float, rng: np.random.Generator
) -> SupportSample | None:
    """Cone element within sup-distance r of base, via a regularized bump.

    Regularization can push the perturbed vector far below the base, so the
    result is blended back toward base onto the sphere of radius r when
    needed; the blend stays in the cone because the cone is convex.  Returns
    None when the perturbed halfplanes have empty intersection.
    """
    bump = rng.uniform(-r, r, base.grid.n)
    try:
        reg = regularize(base.values + bump, base.grid)
    except EmptyIntersection:
        return None
    gap = float(np.max(np.abs(reg.values - base.values)))
    if gap <= r:
        return reg
    lam = r / gap
    return SupportSample(base.grid, base.values + lam * (reg.values - base.values))
