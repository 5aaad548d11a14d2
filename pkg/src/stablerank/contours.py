"""Contours: two-argument expansion laws on [0, inf] and their algebra.

A contour C(a, eps) tells how far the scale ``a`` must expand to absorb a
perturbation budget ``eps``. The supported families:

* ``standard``          C(a, eps) = a + eps
* ``superlinear``       C(a, eps) = a + eps**p, p >= 1
* ``exponential``       C(a, eps) = r**eps * a, r > 1
* ``distance``          eps is the area under a density between a and C
* ``shift``             C translates a by eps steps of the density's
                        cumulative integral

Densities are piecewise constant with strictly positive values, which
keeps every evaluation and inverse in closed form. A contour may carry a
truncation level ``alpha``: evaluations reaching ``alpha`` are sent to
infinity, which is the knob the two-parameter invariants turn.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np

from .stepfun import INF

__all__ = [
    "Density",
    "Contour",
    "ContourLine",
    "standard_contour",
    "exponential_contour",
    "superlinear_contour",
    "distance_contour",
    "shift_contour",
    "eval_contour",
    "contour_inverse",
    "truncate",
    "is_regular",
    "check_contour_axioms",
    "contour_lines",
    "bin_density",
]

KINDS = ("standard", "exponential", "superlinear", "distance", "shift")


@dataclass(frozen=True)
class Density:
    """Strictly positive piecewise-constant function on [0, inf).

    ``values[i]`` holds on ``[breakpoints[i-1], breakpoints[i])`` and
    ``values[-1]`` on the unbounded tail, so the cumulative integral is
    piecewise linear, strictly increasing and onto [0, inf).
    """

    breakpoints: tuple
    values: tuple

    def __post_init__(self):
        bp = tuple(float(b) for b in self.breakpoints)
        va = tuple(float(v) for v in self.values)
        if len(va) != len(bp) + 1:
            raise ValueError("need len(values) == len(breakpoints) + 1")
        if any(b <= 0 or not math.isfinite(b) for b in bp):
            raise ValueError("density breakpoints must be positive and finite")
        if any(b2 <= b1 for b1, b2 in zip(bp, bp[1:])):
            raise ValueError("density breakpoints must be strictly increasing")
        if any(v <= 0 or not math.isfinite(v) for v in va):
            raise ValueError("density values must be strictly positive and finite")
        object.__setattr__(self, "breakpoints", bp)
        object.__setattr__(self, "values", va)
        knots = np.concatenate([[0.0], np.asarray(bp)])
        vals = np.asarray(va)
        cum = np.concatenate([[0.0], np.cumsum(vals[:-1] * np.diff(knots))])
        object.__setattr__(self, "_knots", knots)
        object.__setattr__(self, "_vals", vals)
        object.__setattr__(self, "_cum", cum)

    def integral(self, y: float) -> float:
        """Cumulative integral F(y) = int_0^y of the density."""
        if y == INF:
            return INF
        if y < 0:
            raise ValueError("integral argument must be non-negative")
        i = int(np.searchsorted(self._knots, y, side="right")) - 1
        return float(self._cum[i] + self._vals[i] * (y - self._knots[i]))

    def integral_inverse(self, area: float) -> float:
        """The unique y with F(y) = area."""
        if area == INF:
            return INF
        if area < 0:
            raise ValueError("area must be non-negative")
        i = min(int(np.searchsorted(self._cum, area, side="right")) - 1, len(self._vals) - 1)
        return float(self._knots[i] + (area - self._cum[i]) / self._vals[i])


def bin_density(fn, hi: float, bins: int = 256) -> Density:
    """Approximate a positive callable by midpoint-binning on [0, hi].

    The tail keeps the last bin's value so the cumulative integral still
    diverges. Useful for smooth density shapes the editor cannot express.
    """
    if hi <= 0 or bins < 1:
        raise ValueError("need hi > 0 and bins >= 1")
    edges = np.linspace(0.0, hi, bins + 1)
    mids = 0.5 * (edges[:-1] + edges[1:])
    vals = [float(fn(m)) for m in mids]
    if any(v <= 0 for v in vals):
        raise ValueError("density must be strictly positive")
    return Density(tuple(edges[1:-1]), tuple(vals))


@dataclass(frozen=True)
class Contour:
    """One of the supported contour families, optionally truncated.

    ``param`` is the base r for ``exponential`` and the exponent p for
    ``superlinear``; ``density`` feeds the ``distance`` and ``shift``
    kinds. ``alpha`` is the truncation level, ``inf`` meaning none.
    """

    kind: str
    param: float | None = None
    density: Density | None = None
    alpha: float = INF

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown contour kind {self.kind!r}")
        if self.kind == "exponential":
            if self.param is None or self.param <= 1:
                raise ValueError("exponential contour needs base > 1")
        elif self.kind == "superlinear":
            if self.param is None or self.param < 1:
                raise ValueError("superlinear contour needs exponent >= 1")
        elif self.kind in ("distance", "shift"):
            if self.density is None:
                raise ValueError(f"{self.kind} contour needs a density")
        if self.alpha < 0:
            raise ValueError("truncation level must be non-negative")

    @property
    def truncated(self) -> bool:
        return self.alpha != INF

    def __call__(self, a: float, eps: float) -> float:
        return eval_contour(self, a, eps)


def standard_contour(alpha: float = INF) -> Contour:
    return Contour("standard", alpha=alpha)


def exponential_contour(base: float, alpha: float = INF) -> Contour:
    return Contour("exponential", param=base, alpha=alpha)


def superlinear_contour(exponent: float, alpha: float = INF) -> Contour:
    return Contour("superlinear", param=exponent, alpha=alpha)


def distance_contour(density: Density, alpha: float = INF) -> Contour:
    return Contour("distance", density=density, alpha=alpha)


def shift_contour(density: Density, alpha: float = INF) -> Contour:
    return Contour("shift", density=density, alpha=alpha)


def _eval_base(c: Contour, a: float, eps: float) -> float:
    if a == INF:
        return INF
    if c.kind == "standard":
        return a + eps
    if c.kind == "superlinear":
        return a + eps**c.param
    if c.kind == "exponential":
        return c.param**eps * a
    if eps == 0.0:
        return a  # distance and shift contours act, keep C(a, 0) = a exact
    if c.kind == "distance":
        d = c.density
        return d.integral_inverse(d.integral(a) + eps)
    # shift
    d = c.density
    return d.integral(d.integral_inverse(a) + eps)


def eval_contour(c: Contour, a: float, eps: float) -> float:
    """C(a, eps), with the truncation case split applied last."""
    if eps < 0 or eps == INF:
        raise ValueError("eps must be finite and non-negative")
    if a < 0:
        raise ValueError("a must be non-negative")
    value = _eval_base(c, a, eps)
    if value >= c.alpha:
        return INF
    return value


def is_regular(c: Contour) -> bool:
    """Regular contours admit an exact eps-inverse; truncation breaks it."""
    return c.kind in ("standard", "superlinear", "distance", "shift") and not c.truncated


def contour_inverse(c: Contour, s: float, b: float) -> float:
    """The unique eps with C(s, eps) = b, for regular contours.

    Returns inf when b is inf and 0 when b <= s.
    """
    if not is_regular(c):
        raise ValueError("contour inverse requires a regular, untruncated contour")
    if s < 0 or s == INF:
        raise ValueError("s must be finite and non-negative")
    if b == INF:
        return INF
    if b <= s:
        return 0.0
    if c.kind == "standard":
        return b - s
    if c.kind == "superlinear":
        return (b - s) ** (1.0 / c.param)
    if c.kind == "distance":
        return c.density.integral(b) - c.density.integral(s)
    # shift
    return c.density.integral_inverse(b) - c.density.integral_inverse(s)


def truncate(c: Contour, alpha: float) -> Contour:
    """Truncation at ``alpha``: values reaching alpha become infinite.

    Truncating twice equals truncating at the minimum, so the result of
    composing is folded into a single level.
    """
    return replace(c, alpha=min(c.alpha, alpha))


@dataclass(frozen=True)
class ContourLine:
    """Samples of s -> C(s, t) - s at a fixed t (heights may be inf)."""

    t: float
    samples: tuple  # of (s, height) pairs


def contour_lines(c: Contour, ts, s_range=(0.0, 1.0), n_samples: int = 100):
    """Sample the level curves of the contour over a uniform s grid."""
    lo, hi = float(s_range[0]), float(s_range[1])
    if not (0 <= lo < hi):
        raise ValueError("need 0 <= lo < hi")
    if n_samples < 2:
        raise ValueError("need at least two samples")
    grid = np.linspace(lo, hi, n_samples)
    lines = []
    for t in ts:
        pts = []
        for s in grid:
            v = eval_contour(c, float(s), float(t))
            pts.append((float(s), INF if v == INF else v - float(s)))
        lines.append(ContourLine(float(t), tuple(pts)))
    return lines


@dataclass(frozen=True)
class AxiomViolation:
    axiom: str
    point: tuple
    detail: str


def _integral_array(d: Density, y: np.ndarray) -> np.ndarray:
    i = np.clip(np.searchsorted(d._knots, y, side="right") - 1, 0, len(d._vals) - 1)
    out = d._cum[i] + d._vals[i] * (y - d._knots[i])
    return np.where(np.isinf(y), INF, out)


def _integral_inverse_array(d: Density, area: np.ndarray) -> np.ndarray:
    i = np.clip(np.searchsorted(d._cum, area, side="right") - 1, 0, len(d._vals) - 1)
    out = d._knots[i] + (area - d._cum[i]) / d._vals[i]
    return np.where(np.isinf(area), INF, out)


def eval_contour_array(c: Contour, a, eps) -> np.ndarray:
    """Vectorized twin of ``eval_contour``.

    Entry-wise identical for the piecewise-linear kinds; the power-based
    kinds may differ from the scalar path by an ulp (numpy's pow vs libm).
    """
    a = np.asarray(a, dtype=np.float64)
    eps = np.asarray(eps, dtype=np.float64)
    if c.kind == "standard":
        v = a + eps
    elif c.kind == "superlinear":
        v = a + eps**c.param
    elif c.kind == "exponential":
        v = c.param**eps * a
    elif c.kind == "distance":
        v = _integral_inverse_array(c.density, _integral_array(c.density, a) + eps)
    else:
        v = _integral_array(c.density, _integral_inverse_array(c.density, a) + eps)
    v = np.where(eps == 0.0, a, v)
    return np.where(v >= c.alpha, INF, v)


def check_contour_axioms(
    c: Contour, sample_count: int = 10_000, seed: int = 0, tol: float = 1e-9
):
    """Randomized check of the three contour axioms (and action equalities).

    Samples (a, eps, tau) with a in [0, 10] plus occasional infinities and
    eps, tau in [0, 5]; those ranges keep every closed-form evaluation well
    inside the absolute tolerance. Returns the list of violations (empty
    for every supported kind).
    """
    if sample_count < 1:
        raise ValueError("sample_count must be positive")
    rng = np.random.default_rng(seed)
    n = sample_count
    a = rng.uniform(0, 10, n)
    a[rng.random(n) < 0.02] = INF
    b = np.where(rng.random(n) < 0.2, a, rng.uniform(0, 10, n))
    a, b = np.minimum(a, b), np.maximum(a, b)
    eps = rng.uniform(0, 5, n)
    tau = rng.uniform(0, 5, n)

    c_a_eps = eval_contour_array(c, a, eps)
    monotone_bad = eval_contour_array(c, a, np.minimum(eps, tau)) > (
        eval_contour_array(c, b, np.maximum(eps, tau)) + tol
    )
    expansion_bad = c_a_eps < a - tol
    lhs = eval_contour_array(c, c_a_eps, tau)
    rhs = eval_contour_array(c, a, eps + tau)
    subadd_bad = lhs > rhs + tol  # inf > inf is false, so joint blowups pass

    out = []

    def collect(name, mask, *cols):
        for i in np.flatnonzero(mask)[:10]:
            out.append(AxiomViolation(name, tuple(float(col[i]) for col in cols), ""))

    collect("monotone", monotone_bad, a, b, eps, tau)
    collect("expansion", expansion_bad, a, eps)
    collect("subadditive", subadd_bad, a, eps, tau)
    if c.kind in ("distance", "shift", "exponential") and not c.truncated:
        a_fin = np.where(np.isfinite(a), a, 0.0)
        identity_bad = np.abs(eval_contour_array(c, a_fin, np.zeros(n)) - a_fin) > tol
        both = np.isfinite(lhs) & np.isfinite(rhs)
        equality_bad = both & (
            np.abs(np.where(both, lhs, 0.0) - np.where(both, rhs, 0.0)) > tol
        )
        collect("action-identity", identity_bad, a_fin)
        collect("action-equality", equality_bad, a, eps, tau)
    return out
