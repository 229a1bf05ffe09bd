"""Seeded random d-regular multigraphs from the configuration model."""

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace

from .graph import build_graph, is_connected
from .rng import MASK64, Xoshiro256, mix

DEFAULT_MAX_REJECTS = 100_000


class SamplingError(RuntimeError):
    """Rejection sampling gave up before finding an admissible graph."""


@dataclass(frozen=True)
class SampleConfig:
    d: int
    n: int
    seed: int = 0
    require_simple: bool = True
    require_connected: bool = True
    max_rejects: int = DEFAULT_MAX_REJECTS

    def __post_init__(self):
        if self.d < 2:
            raise ValueError("degree d must be at least 2")
        if self.n < 1:
            raise ValueError("n must be positive")
        if (self.d * self.n) % 2:
            raise ValueError(f"d*n = {self.d * self.n} is odd")
        if self.require_simple and self.n < max(3, self.d + 1):
            raise ValueError(f"a simple {self.d}-regular graph needs n >= {max(3, self.d + 1)}")
        if self.max_rejects < 0:
            raise ValueError("max_rejects must be non-negative")
        object.__setattr__(self, "seed", self.seed & MASK64)


def random_pairing(d, n, rng):
    """Uniform perfect matching of the ``d*n`` half-edges, as an edge list.

    Half-edge slot ``v*d + j`` belongs to vertex ``v``; the slots are
    Fisher-Yates shuffled and consecutive entries paired.
    """
    stubs = [v for v in range(n) for _ in range(d)]
    rng.shuffle(stubs)
    return [(stubs[2 * i], stubs[2 * i + 1]) for i in range(len(stubs) // 2)]


def _simple(edges):
    seen = set()
    for u, v in edges:
        if u == v:
            return False
        key = (u, v) if u < v else (v, u)
        if key in seen:
            return False
        seen.add(key)
    return True


def sample_regular(cfg):
    """Draw one graph; rejected draws continue the same RNG stream."""
    rng = Xoshiro256(cfg.seed)
    for _ in range(cfg.max_rejects + 1):
        edges = random_pairing(cfg.d, cfg.n, rng)
        if cfg.require_simple and not _simple(edges):
            continue
        g = build_graph(cfg.n, edges)
        if cfg.require_connected and not is_connected(g):
            continue
        return g
    raise SamplingError(
        f"no admissible sample for d={cfg.d}, n={cfg.n} after {cfg.max_rejects} rejections")


def batch_seed(seed, index):
    return mix(seed, index)


def sample_at(cfg, index):
    """Sample ``index`` of the batch rooted at ``cfg.seed``."""
    return sample_regular(replace(cfg, seed=batch_seed(cfg.seed, index)))


def sample_batch(cfg, k, workers=1):
    if k < 1:
        raise ValueError("k must be at least 1")
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(sample_at, [cfg] * k, range(k)))
    return [sample_at(cfg, i) for i in range(k)]
