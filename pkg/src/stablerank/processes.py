"""Six seeded point processes on the unit square.

Every sampler routes all randomness through ``numpy.random.default_rng``
on an explicit seed, so a process spec pins its output bit for bit.
Cluster children (Matern, Thomas) may land outside the square and are
kept; the normal process is likewise left unclipped.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "ProcessSpec",
    "PROCESS_DEFAULTS",
    "sample_poisson",
    "sample_normal",
    "sample_matern",
    "sample_thomas",
    "sample_baddeley_silverman",
    "sample_ifs",
    "sample_process",
    "simulate_batch",
]

PROCESS_DEFAULTS = {
    "poisson": {"lam": 200.0},
    "normal": {"lam": 200.0, "mu": 0.5, "sigma": 0.2},
    "matern": {"kappa": 40.0, "mu": 5.0, "r": 0.1},
    "thomas": {"kappa": 40.0, "mu": 5.0, "sigma_child": 0.1},
    "baddeley-silverman": {"tile_side": 1.0 / 14.0},
    "ifs": {"lam": 200.0},
}


@dataclass(frozen=True)
class ProcessSpec:
    """A named process with its parameters and seed."""

    kind: str
    params: dict = field(default_factory=dict)
    seed: int = 0

    def __post_init__(self):
        if self.kind not in PROCESS_DEFAULTS:
            raise ValueError(f"unknown process kind {self.kind!r}")
        merged = dict(PROCESS_DEFAULTS[self.kind])
        for key, value in self.params.items():
            if key not in merged:
                raise ValueError(f"unknown parameter {key!r} for {self.kind}")
            merged[key] = float(value)
        object.__setattr__(self, "params", merged)


def sample_poisson(lam: float = 200.0, seed: int = 0) -> np.ndarray:
    """Poisson(lam) many points, uniform on the unit square."""
    if lam <= 0:
        raise ValueError("lam must be positive")
    rng = np.random.default_rng(seed)
    n = rng.poisson(lam)
    return rng.random((n, 2))


def sample_normal(
    lam: float = 200.0, mu: float = 0.5, sigma: float = 0.2, seed: int = 0
) -> np.ndarray:
    """Poisson(lam) many points with i.i.d. normal coordinates (unclipped)."""
    if lam <= 0 or sigma <= 0:
        raise ValueError("lam and sigma must be positive")
    rng = np.random.default_rng(seed)
    n = rng.poisson(lam)
    return rng.normal(mu, sigma, size=(n, 2))


def sample_matern(
    kappa: float = 40.0, mu: float = 5.0, r: float = 0.1, seed: int = 0
) -> np.ndarray:
    """Matern cluster process: uniform-on-disk children, parents dropped."""
    if kappa <= 0 or mu <= 0 or r <= 0:
        raise ValueError("kappa, mu and r must be positive")
    rng = np.random.default_rng(seed)
    parents = rng.random((rng.poisson(kappa), 2))
    counts = rng.poisson(mu, size=len(parents))
    total = int(counts.sum())
    if total == 0:
        return np.empty((0, 2))
    theta = rng.uniform(0.0, 2.0 * np.pi, total)
    rad = r * np.sqrt(rng.random(total))
    offsets = np.column_stack([rad * np.cos(theta), rad * np.sin(theta)])
    return np.repeat(parents, counts, axis=0) + offsets


def sample_thomas(
    kappa: float = 40.0, mu: float = 5.0, sigma_child: float = 0.1, seed: int = 0
) -> np.ndarray:
    """Thomas cluster process: isotropic normal children around parents."""
    if kappa <= 0 or mu <= 0 or sigma_child <= 0:
        raise ValueError("kappa, mu and sigma_child must be positive")
    rng = np.random.default_rng(seed)
    parents = rng.random((rng.poisson(kappa), 2))
    counts = rng.poisson(mu, size=len(parents))
    total = int(counts.sum())
    if total == 0:
        return np.empty((0, 2))
    offsets = rng.normal(0.0, sigma_child, size=(total, 2))
    return np.repeat(parents, counts, axis=0) + offsets


def sample_baddeley_silverman(tile_side: float = 1.0 / 14.0, seed: int = 0) -> np.ndarray:
    """Per-tile counts drawn from {0, 1, 10} with odds (1/10, 8/9, 1/90)."""
    if tile_side <= 0:
        raise ValueError("tile_side must be positive")
    k = round(1.0 / tile_side)
    if abs(k * tile_side - 1.0) > 1e-9 or k < 1:
        raise ValueError("1/tile_side must be a positive integer")
    rng = np.random.default_rng(seed)
    counts = rng.choice([0, 1, 10], size=k * k, p=[1.0 / 10.0, 8.0 / 9.0, 1.0 / 90.0])
    total = int(counts.sum())
    corners = np.indices((k, k)).reshape(2, -1).T  # row-major tile corners
    origins = np.repeat(corners, counts, axis=0)
    return (origins + rng.random((total, 2))) * tile_side


def _ifs_step(x: float, y: float, branch: int) -> tuple:
    if branch == 0:
        return x / 2.0, y / 2.0
    if branch == 1:
        return x / 2.0 + 0.5, y / 2.0
    if branch == 2:
        return x / 2.0, y / 2.0 + 0.5
    if branch == 3:
        return abs(x / 2.0 - 1.0), y / 2.0
    return x / 2.0, abs(y / 2.0 - 1.0)


def sample_ifs(lam: float = 200.0, seed: int = 0) -> np.ndarray:
    """Iterated function system orbit, initial point included.

    Branches are drawn from (1/3, 1/6, 1/6, 1/6, 1/6); every map sends the
    unit square into itself, so the whole orbit stays inside it.
    """
    if lam <= 0:
        raise ValueError("lam must be positive")
    rng = np.random.default_rng(seed)
    n = rng.poisson(lam)
    x, y = rng.random(), rng.random()
    pts = [(x, y)]
    branches = rng.choice(5, size=n, p=[1 / 3, 1 / 6, 1 / 6, 1 / 6, 1 / 6])
    for branch in branches:
        x, y = _ifs_step(x, y, int(branch))
        pts.append((x, y))
    return np.array(pts)


_SAMPLERS = {
    "poisson": sample_poisson,
    "normal": sample_normal,
    "matern": sample_matern,
    "thomas": sample_thomas,
    "baddeley-silverman": sample_baddeley_silverman,
    "ifs": sample_ifs,
}


def sample_process(spec: ProcessSpec) -> np.ndarray:
    """One realization of the spec'd process."""
    return _SAMPLERS[spec.kind](**spec.params, seed=spec.seed)


def simulate_batch(spec: ProcessSpec, count: int, base_seed: int | None = None):
    """``count`` independent samples with per-index derived seeds.

    Sample i uses seed ``base_seed + i`` (default base: the spec's own
    seed), so batches are reproducible and order-independent to
    parallelize.
    """
    if count < 1:
        raise ValueError("count must be positive")
    base = spec.seed if base_seed is None else base_seed
    return [
        _SAMPLERS[spec.kind](**spec.params, seed=base + i) for i in range(count)
    ]
