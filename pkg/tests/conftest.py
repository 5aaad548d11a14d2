import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from stablerank import (
    Bar,
    Barcode,
    Density,
    StepFunction,
    distance_contour,
    exponential_contour,
    shift_contour,
    standard_contour,
    superlinear_contour,
)
from stablerank.stepfun import INF


def random_step_function(rng, max_breaks=8, limit=None) -> StepFunction:
    """Random non-increasing step function with well-separated breakpoints."""
    k = int(rng.integers(0, max_breaks + 1))
    bps = np.sort(rng.uniform(0.05, 10.0, k))
    while len(bps) > 1 and np.min(np.diff(bps)) < 1e-3:
        bps = np.sort(rng.uniform(0.05, 10.0, k))
    tail = float(rng.uniform(0, 2)) if limit is None else float(limit)
    steps = rng.uniform(0.0, 2.0, k)
    values = tail + np.concatenate([np.cumsum(steps[::-1])[::-1], [0.0]])
    return StepFunction(bps, values)


def random_barcode(rng, max_bars=20, degree=0, p_infinite=0.15) -> Barcode:
    n = int(rng.integers(0, max_bars + 1))
    bars = []
    for _ in range(n):
        birth = float(rng.uniform(0, 5))
        if rng.random() < p_infinite:
            bars.append(Bar(birth, INF))
        else:
            bars.append(Bar(birth, birth + float(rng.uniform(0.01, 3))))
    return Barcode(degree, bars)


def random_density(rng, max_breaks=4) -> Density:
    k = int(rng.integers(0, max_breaks + 1))
    bps = np.sort(rng.uniform(0.2, 8.0, k))
    while len(bps) > 1 and np.min(np.diff(bps)) < 1e-2:
        bps = np.sort(rng.uniform(0.2, 8.0, k))
    values = rng.uniform(0.2, 3.0, k + 1)
    return Density(tuple(bps), tuple(values))


def random_contour(rng, kinds=("standard", "superlinear", "distance", "shift")):
    kind = kinds[int(rng.integers(0, len(kinds)))]
    if kind == "standard":
        return standard_contour()
    if kind == "superlinear":
        return superlinear_contour(float(rng.uniform(1.0, 3.0)))
    if kind == "exponential":
        return exponential_contour(float(rng.uniform(1.2, 2.5)))
    if kind == "distance":
        return distance_contour(random_density(rng))
    return shift_contour(random_density(rng))


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)
