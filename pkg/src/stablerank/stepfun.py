"""Non-increasing step functions on [0, inf) and the metrics between them.

Everything this package produces as an invariant lives here: piecewise
constant, right-continuous, non-increasing functions with finitely many
breakpoints, plus their two-parameter analogue sampled on a shared alpha
grid. All arithmetic is exact over the merged breakpoint partitions; no
sampling grids are involved except where a docstring says so.
"""
from __future__ import annotations

import math

import numpy as np

__all__ = [
    "INF",
    "StepFunction",
    "Grid2DFunction",
    "evaluate",
    "limit_value",
    "pointwise_mean",
    "lp_distance",
    "interleaving_distance",
    "lp_hat_distance",
    "interleaving_2d",
]

INF = math.inf


def _readonly(a) -> np.ndarray:
    arr = np.array(a, dtype=np.float64)
    arr.setflags(write=False)
    return arr


class StepFunction:
    """A non-increasing, right-continuous step function on [0, inf).

    ``values[i]`` holds on ``[breakpoints[i-1], breakpoints[i])``, with
    ``values[0]`` on ``[0, breakpoints[0])`` and ``values[-1]`` on the
    unbounded tail.  The representation is canonical (adjacent equal
    values are merged at construction), so ``==`` is structural equality.
    """

    __slots__ = ("breakpoints", "values")

    def __init__(self, breakpoints, values):
        bp = np.asarray(breakpoints, dtype=np.float64)
        va = np.asarray(values, dtype=np.float64)
        if bp.ndim != 1 or va.ndim != 1 or len(va) != len(bp) + 1:
            raise ValueError("need len(values) == len(breakpoints) + 1")
        if len(bp):
            if not np.all(np.isfinite(bp)) or bp[0] < 0:
                raise ValueError("breakpoints must be finite and non-negative")
            if np.any(np.diff(bp) <= 0):
                raise ValueError("breakpoints must be strictly increasing")
        if not np.all(np.isfinite(va)) or np.any(va < 0):
            raise ValueError("values must be finite and non-negative")
        if np.any(np.diff(va) > 0):
            raise ValueError("values must be non-increasing")
        if len(bp) and bp[0] == 0.0:
            # [0, 0) is empty, the leading value is unreachable
            bp, va = bp[1:], va[1:]
        if len(bp):
            keep = va[:-1] != va[1:]
            bp = bp[keep]
            va = np.concatenate([va[:-1][keep], va[-1:]])
        object.__setattr__(self, "breakpoints", _readonly(bp))
        object.__setattr__(self, "values", _readonly(va))

    def __setattr__(self, name, value):
        raise AttributeError("StepFunction is immutable")

    def __reduce__(self):
        return (StepFunction, (self.breakpoints.tolist(), self.values.tolist()))

    @classmethod
    def constant(cls, value: float) -> "StepFunction":
        return cls([], [value])

    def __call__(self, t: float) -> float:
        return evaluate(self, t)

    def __eq__(self, other) -> bool:
        if not isinstance(other, StepFunction):
            return NotImplemented
        return np.array_equal(self.breakpoints, other.breakpoints) and np.array_equal(
            self.values, other.values
        )

    __hash__ = None

    def __repr__(self) -> str:
        return f"StepFunction({self.breakpoints.tolist()}, {self.values.tolist()})"

    def evaluate_many(self, ts: np.ndarray) -> np.ndarray:
        """Vectorized right-continuous evaluation."""
        idx = np.searchsorted(self.breakpoints, ts, side="right")
        return self.values[idx]

    def left_limit(self, t: float) -> float:
        """Value of the left limit at ``t > 0`` (equals f(t) off breakpoints)."""
        if t <= 0:
            return float(self.values[0])
        idx = np.searchsorted(self.breakpoints, t, side="left")
        return float(self.values[idx])


def evaluate(f: StepFunction, t: float) -> float:
    """Value of ``f`` at ``t``; right-continuous at every breakpoint."""
    if not math.isfinite(t):
        raise ValueError("evaluation point must be finite")
    idx = np.searchsorted(f.breakpoints, t, side="right")
    return float(f.values[idx])


def limit_value(f: StepFunction) -> float:
    """The eventually-constant value of ``f``."""
    return float(f.values[-1])


def _merged_grid(fs) -> np.ndarray:
    bps = [f.breakpoints for f in fs if len(f.breakpoints)]
    if not bps:
        return np.empty(0)
    return np.unique(np.concatenate(bps))


def pointwise_mean(fs) -> StepFunction:
    """Exact pointwise mean of a non-empty collection of step functions."""
    fs = list(fs)
    if not fs:
        raise ValueError("cannot average an empty collection")
    grid = _merged_grid(fs)
    probes = np.concatenate([[0.0], grid])
    acc = np.zeros(len(probes))
    for f in fs:
        acc += f.evaluate_many(probes)
    return StepFunction(grid, acc / len(fs))


def lp_distance(f: StepFunction, g: StepFunction, p: float = 1.0) -> float:
    """L_p distance, integrated in closed form over the merged partition.

    When the limit values differ the integrand is eventually a positive
    constant and the integral diverges; the distance is then ``inf``.
    """
    if p < 1:
        raise ValueError("p must be >= 1")
    if limit_value(f) != limit_value(g):
        return INF
    grid = _merged_grid((f, g))
    if not len(grid):
        return 0.0
    probes = np.concatenate([[0.0], grid])
    diff = np.abs(f.evaluate_many(probes) - g.evaluate_many(probes))
    widths = np.diff(probes)  # the tail cell has diff == 0 and is dropped
    total = float(np.sum(diff[:-1] ** p * widths))
    return total ** (1.0 / p)


def _shift_bound(f: StepFunction, w: float) -> float:
    """sup{x >= 0 | left-limit of f at x >= w}, with sup of [0,inf) = inf.

    This is the point past which f can no longer dominate the level w.
    """
    if limit_value(f) >= w:
        return INF
    if f.values[0] < w:
        return 0.0
    # values are non-increasing; find the last index with values[k] >= w
    k = int(np.searchsorted(-f.values, -w, side="right")) - 1
    return float(f.breakpoints[k])


def interleaving_distance(f: StepFunction, g: StepFunction) -> float:
    """inf{eps | f(t) >= g(t+eps) and g(t) >= f(t+eps) for all t}.

    For non-increasing step functions the infimum is attained and is a
    difference of breakpoints, computed here exactly: for every bounded
    level interval of one function, the other must still dominate that
    level after the shift.
    """
    if limit_value(f) != limit_value(g):
        return INF
    eps = 0.0
    for a, b in ((f, g), (g, f)):
        # a must dominate b shifted left by eps: for each bounded interval
        # of b at level w ending at r, need eps >= r - sup{x | a >= w left of x}
        for i in range(len(b.breakpoints)):
            r = float(b.breakpoints[i])
            w = float(b.values[i])
            bound = _shift_bound(a, w)
            if bound == INF:
                continue
            eps = max(eps, r - bound)
    return eps


def pointwise_le(f: StepFunction, g: StepFunction) -> bool:
    """True when f(t) <= g(t) for all t."""
    grid = _merged_grid((f, g))
    probes = np.concatenate([[0.0], grid])
    return bool(np.all(f.evaluate_many(probes) <= g.evaluate_many(probes)))


class Grid2DFunction:
    """A function of (alpha, t) sampled as one step function per alpha.

    ``slices[i]`` represents t -> F(alpha, t) for alpha in
    ``[alphas[i], alphas[i+1])``; the last sample may sit at infinity.
    Slices must grow pointwise with alpha, which is how every
    two-parameter invariant in this package behaves.
    """

    __slots__ = ("alphas", "slices")

    def __init__(self, alphas, slices):
        al = np.asarray(alphas, dtype=np.float64)
        slices = tuple(slices)
        if al.ndim != 1 or len(al) != len(slices) or not len(slices):
            raise ValueError("need one slice per alpha sample")
        if np.any(al < 0) or np.any(np.diff(al) <= 0):
            raise ValueError("alphas must be non-negative and strictly increasing")
        if np.any(np.isinf(al[:-1])):
            raise ValueError("only the last alpha may be infinite")
        for lo, hi in zip(slices, slices[1:]):
            if not pointwise_le(lo, hi):
                raise ValueError("slices must be pointwise non-decreasing in alpha")
        object.__setattr__(self, "alphas", _readonly(al))
        object.__setattr__(self, "slices", slices)

    def __setattr__(self, name, value):
        raise AttributeError("Grid2DFunction is immutable")

    def __reduce__(self):
        return (Grid2DFunction, (self.alphas.tolist(), self.slices))

    def __eq__(self, other) -> bool:
        if not isinstance(other, Grid2DFunction):
            return NotImplemented
        return np.array_equal(self.alphas, other.alphas) and self.slices == other.slices

    __hash__ = None

    def __repr__(self) -> str:
        return f"Grid2DFunction(alphas={self.alphas.tolist()}, {len(self.slices)} slices)"

    def max_finite_alpha(self) -> float:
        finite = self.alphas[np.isfinite(self.alphas)]
        if not len(finite):
            raise ValueError("grid has no finite alpha sample")
        return float(finite[-1])


def _check_shared_grid(F: Grid2DFunction, G: Grid2DFunction) -> None:
    if not np.array_equal(F.alphas, G.alphas):
        raise ValueError("grids must share the same alpha samples")


def lp_hat_distance(
    F: Grid2DFunction, G: Grid2DFunction, p: float = 1.0, a_max: float | None = None
) -> float:
    """Normalized L_p between two-parameter invariants on a shared grid.

    Approximates the limiting normalized average by
    ``(1/a_max) * integral_0^a_max L_p(F(alpha,.), G(alpha,.)) d(alpha)``
    with the integrand held constant on each alpha cell (the first slice
    extends down to 0 when the grid starts above 0). For stable ranks the
    integrand stabilizes once alpha clears every bar endpoint, so the
    truncated average is the practical stand-in for the true limit.
    """
    _check_shared_grid(F, G)
    if a_max is None:
        a_max = F.max_finite_alpha()
    if a_max <= 0:
        raise ValueError("a_max must be positive")
    if a_max > F.max_finite_alpha():
        raise ValueError("a_max exceeds the finite alpha grid")
    total = 0.0
    al = F.alphas
    for i in range(len(al)):
        lo = 0.0 if i == 0 else float(al[i])
        hi = a_max if i + 1 == len(al) else min(float(al[i + 1]), a_max)
        if hi <= lo:
            continue
        d = lp_distance(F.slices[i], G.slices[i], p)
        if d == INF:
            return INF
        total += (hi - lo) * d
    return total / a_max


def interleaving_2d(F: Grid2DFunction, G: Grid2DFunction) -> float:
    """Uniform interleaving on the shared alpha grid.

    The uniform eps must work for every alpha, so this is the maximum of
    the per-slice distances; a lower bound for the continuum version,
    exact whenever the true invariants are constant between samples.
    """
    _check_shared_grid(F, G)
    eps = 0.0
    for sf, sg in zip(F.slices, G.slices):
        d = interleaving_distance(sf, sg)
        if d == INF:
            return INF
        eps = max(eps, d)
    return eps
