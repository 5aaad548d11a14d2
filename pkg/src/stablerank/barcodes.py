"""Barcodes and their contour-driven invariants.

A barcode is a finite multiset of (birth, death) bars in one homology
degree. Under a contour C each bar carries a life span, the budget at
which the contour line first swallows it, and the stable rank of the
barcode at t counts the bars whose life span strictly exceeds t. The
truncated family C/alpha turns the same barcode into a two-parameter
invariant that separates barcodes the one-parameter curve cannot.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .contours import Contour, contour_inverse, eval_contour, truncate
from .stepfun import INF, Grid2DFunction, StepFunction

__all__ = [
    "Bar",
    "Barcode",
    "rank",
    "life_span",
    "stable_rank",
    "shift_barcode",
    "stable_rank_2d",
    "d_c_to_zero",
    "default_alpha_grid",
]


@dataclass(frozen=True, order=True)
class Bar:
    """A feature born at ``birth`` and dead at ``death`` (possibly inf)."""

    birth: float
    death: float

    def __post_init__(self):
        object.__setattr__(self, "birth", float(self.birth))
        object.__setattr__(self, "death", float(self.death))
        if not (0 <= self.birth < self.death):
            raise ValueError(f"need 0 <= birth < death, got ({self.birth}, {self.death})")
        if self.birth == INF:
            raise ValueError("birth must be finite")

    @property
    def finite(self) -> bool:
        return self.death != INF


class Barcode:
    """A multiset of bars in a single homology degree.

    Bars are kept sorted, so two barcodes are equal exactly when they are
    equal as multisets.
    """

    __slots__ = ("degree", "bars")

    def __init__(self, degree: int, bars=()):
        if degree < 0 or int(degree) != degree:
            raise ValueError("degree must be a non-negative integer")
        bars = tuple(sorted(b if isinstance(b, Bar) else Bar(*b) for b in bars))
        object.__setattr__(self, "degree", int(degree))
        object.__setattr__(self, "bars", bars)

    def __setattr__(self, name, value):
        raise AttributeError("Barcode is immutable")

    def __reduce__(self):
        return (Barcode, (self.degree, self.bars))

    def __len__(self) -> int:
        return len(self.bars)

    def __iter__(self):
        return iter(self.bars)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Barcode):
            return NotImplemented
        return self.degree == other.degree and self.bars == other.bars

    __hash__ = None

    def __repr__(self) -> str:
        return f"Barcode(degree={self.degree}, bars={list(self.bars)})"

    def union(self, other: "Barcode") -> "Barcode":
        if self.degree != other.degree:
            raise ValueError("cannot merge barcodes of different degrees")
        return Barcode(self.degree, self.bars + other.bars)


def rank(b: Barcode) -> int:
    """Number of bars; additive under disjoint union, zero iff empty."""
    return len(b.bars)


def _swallow_threshold(c: Contour, birth: float, death: float) -> float:
    """inf{t | C(birth, t) >= min(alpha, death)}, in closed form.

    This is where the bar stops counting: either the contour reaches the
    bar's death or it reaches the truncation level, whichever is lower.
    """
    target = min(c.alpha, death)
    if target == INF:
        return INF
    if target <= birth:
        return 0.0
    if c.kind == "exponential":
        if birth == 0.0:
            return INF  # C(0, t) stays 0, never reaches a positive target
        return math.log(target / birth) / math.log(c.param)
    base = c if not c.truncated else replace(c, alpha=INF)
    return contour_inverse(base, birth, target)


def life_span(c: Contour, bar: Bar) -> float:
    """Life span of a bar, honoring the contour's truncation level.

    Untruncated: inf for immortal bars, else the eps-inverse at the death.
    Truncated at alpha: 0 when alpha <= birth, the inverse at alpha when
    the bar outlives it, and the plain inverse otherwise.
    """
    if c.kind == "exponential":
        raise ValueError("life span needs a regular base contour")
    return _swallow_threshold(c, bar.birth, bar.death)


def stable_rank(c: Contour, b: Barcode) -> StepFunction:
    """t -> number of bars whose life span strictly exceeds t.

    Right-continuous by construction: a bar does not count at its own
    life span. The value at 0 is the rank for untruncated contours and
    the limit is the number of immortal bars.
    """
    thresholds = [_swallow_threshold(c, bar.birth, bar.death) for bar in b.bars]
    finite = sorted({t for t in thresholds if t != INF and t > 0})
    counts = [sum(1 for x in thresholds if x > t) for t in [0.0, *finite]]
    return StepFunction(finite, counts)


def shift_barcode(c: Contour, b: Barcode, t: float) -> Barcode:
    """Re-birth every bar at C(birth, t), dropping the ones it swallows."""
    if t < 0 or t == INF:
        raise ValueError("t must be finite and non-negative")
    moved = []
    for bar in b.bars:
        nb = eval_contour(c, bar.birth, t)
        if nb < bar.death:
            moved.append(Bar(nb, bar.death))
    return Barcode(b.degree, moved)


def d_c_to_zero(c: Contour, b: Barcode) -> float:
    """Distance from the barcode to the empty one: the largest life span."""
    if c.kind == "exponential":
        raise ValueError("needs a regular base contour")
    if not b.bars:
        return 0.0
    return max(life_span(c, bar) for bar in b.bars)


def default_alpha_grid(*barcodes: Barcode) -> np.ndarray:
    """Truncation grid that resolves every case split of the life span.

    The truncated life span is piecewise in alpha with breakpoints at bar
    births and deaths, so the grid takes 0, every distinct finite
    endpoint, the midpoints between consecutive ones, and infinity.
    """
    pts = set()
    for bc in barcodes:
        for bar in bc.bars:
            pts.add(bar.birth)
            if bar.finite:
                pts.add(bar.death)
    finite = sorted(pts)
    grid = {0.0, INF}
    grid.update(finite)
    for lo, hi in zip(finite, finite[1:]):
        grid.add(0.5 * (lo + hi))
    if finite:
        grid.add(finite[-1] + 1.0)  # one sample beyond every endpoint
    return np.array(sorted(grid))


def refine_alpha_grid(grid: np.ndarray, levels: int = 1) -> np.ndarray:
    """Insert midpoints between consecutive finite samples, repeatedly."""
    g = np.asarray(grid, dtype=float)
    for _ in range(levels):
        finite = g[np.isfinite(g)]
        mids = 0.5 * (finite[:-1] + finite[1:])
        g = np.unique(np.concatenate([g, mids]))
    return g


def stable_rank_2d(c: Contour, b: Barcode, alphas=None) -> Grid2DFunction:
    """One stable-rank slice per truncation level of the contour.

    The slice at alpha = inf is the plain stable rank and the slice at
    alpha = 0 is identically zero. ``alphas`` defaults to the
    endpoint-refined grid of the barcode.
    """
    if c.kind == "exponential":
        raise ValueError("needs a regular base contour")
    if alphas is None:
        alphas = default_alpha_grid(b)
    alphas = np.asarray(alphas, dtype=float)
    slices = [stable_rank(truncate(c, float(a)), b) for a in alphas]
    return Grid2DFunction(alphas, slices)
