"""Hukuhara differences and differential classification of sampled set curves.

The Hukuhara difference A -_H B is the set C with B + C = A; in support
values it is the componentwise difference, and it exists exactly when that
difference is again in the support cone.  A sampled curve is classified per
interior step from its one-sided difference quotients: first-type steps have
both quotients in the cone (the curve grows), second-type steps have both
negated quotients in the cone (the curve shrinks), and reversing time swaps
the two classes.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import GridMismatch
from .support import SupportDelta, SupportSample, is_in_cone


class HukuharaClass(Enum):
    FIRST_TYPE = "FirstType"
    SECOND_TYPE = "SecondType"
    BOTH = "Both"
    NEITHER = "Neither"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class SetCurve:
    """Sampled curve of convex sets: strictly increasing times, one sample each."""

    times: np.ndarray
    samples: tuple[SupportSample, ...]

    def __post_init__(self):
        times = np.asarray(self.times, dtype=float)
        samples = tuple(self.samples)
        if times.ndim != 1 or len(times) != len(samples):
            raise ValueError("times and samples must have matching lengths")
        if len(samples) < 2:
            raise ValueError("a curve needs at least two samples")
        if np.any(np.diff(times) <= 0):
            raise ValueError("times must be strictly increasing")
        n = samples[0].grid.n
        for s in samples[1:]:
            if s.grid.n != n:
                raise GridMismatch("all samples must share one grid")
        times.setflags(write=False)
        object.__setattr__(self, "times", times)
        object.__setattr__(self, "samples", samples)

    @property
    def grid(self):
        return self.samples[0].grid

    def __len__(self) -> int:
        return len(self.samples)


def hukuhara_difference(
    a: SupportSample, b: SupportSample, tol: float | None = None
) -> SupportSample | None:
    """A -_H B as a support sample, or None when no such set exists.

    The only candidate is the componentwise difference (uniqueness of C in
    B + C = A); it is accepted exactly when it passes the cone test.
    """
    if a.grid.n != b.grid.n:
        raise GridMismatch(f"grids of size {a.grid.n} and {b.grid.n}")
    c = a.values - b.values
    if not is_in_cone(c, a.grid, tol):
        return None
    return SupportSample(a.grid, c, tol=tol)


def difference_quotients(c: SetCurve, k: int) -> tuple[SupportDelta, SupportDelta]:
    """Forward and backward difference quotients at interior index k.

    Always well-defined as deltas, even when the corresponding Hukuhara
    differences do not exist.
    """
    if not 0 < k < len(c) - 1:
        raise IndexError(f"index {k} is not interior to the curve")
    t = c.times
    fwd = (c.samples[k + 1].values - c.samples[k].values) / (t[k + 1] - t[k])
    bwd = (c.samples[k].values - c.samples[k - 1].values) / (t[k] - t[k - 1])
    return SupportDelta(c.grid, fwd), SupportDelta(c.grid, bwd)


def quotient_gap(c: SetCurve, k: int) -> float:
    """Sup-norm disagreement of the two one-sided quotients at index k."""
    fwd, bwd = difference_quotients(c, k)
    return (fwd - bwd).norm_inf


def classify_step(c: SetCurve, k: int, tol: float | None = None) -> HukuharaClass:
    """Differentiability type at interior index k from the one-sided quotients."""
    fwd, bwd = difference_quotients(c, k)
    first = bool(is_in_cone(fwd.values, c.grid, tol)) and bool(
        is_in_cone(bwd.values, c.grid, tol)
    )
    second = bool(is_in_cone(-fwd.values, c.grid, tol)) and bool(
        is_in_cone(-bwd.values, c.grid, tol)
    )
    if first and second:
        return HukuharaClass.BOTH
    if first:
        return HukuharaClass.FIRST_TYPE
    if second:
        return HukuharaClass.SECOND_TYPE
    return HukuharaClass.NEITHER


def classify_curve(
    c: SetCurve, tol: float | None = None
) -> tuple[HukuharaClass, list[HukuharaClass]]:
    """Whole-curve class (conjunction over interior steps) plus the breakdown.

    Boundary indices have only one-sided information and are excluded.
    """
    steps = [classify_step(c, k, tol) for k in range(1, len(c) - 1)]
    first = all(s in (HukuharaClass.FIRST_TYPE, HukuharaClass.BOTH) for s in steps)
    second = all(s in (HukuharaClass.SECOND_TYPE, HukuharaClass.BOTH) for s in steps)
    if first and second:
        whole = HukuharaClass.BOTH
    elif first:
        whole = HukuharaClass.FIRST_TYPE
    elif second:
        whole = HukuharaClass.SECOND_TYPE
    else:
        whole = HukuharaClass.NEITHER
    return whole, steps


def time_reverse(c: SetCurve) -> SetCurve:
    """The curve t -> A(-t): times negated and reversed, samples reversed."""
    return SetCurve(-c.times[::-1], c.samples[::-1])


def second_type_differential(delta: SupportDelta) -> SupportSample | None:
    """Set-valued second-type differential for a derivative delta, if it exists.

    When -delta is a support sample of some set D, the second-type
    differential is the reflection -D, whose support values are the
    antipodal flip of -delta.  Requires an even grid; returns None when
    -delta is not in the cone.
    """
    grid = delta.grid
    if not grid.is_even:
        raise ValueError("second-type differentials need an even grid")
    neg = -delta.values
    if not is_in_cone(neg, grid):
        return None
    return SupportSample(grid, np.roll(neg, -(grid.n // 2)))
