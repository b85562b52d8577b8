"""Seeded random instances for each solver's precondition class."""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

from copic import INF, Instance
from copic.diagonal import DiagonalInstance
from copic.families import (
    BipartitePerfectMatching,
    GraphicMatroid,
    PartitionMatroid,
    StPath,
    Unconstrained,
    UniformMatroid,
)


def ints(rng: random.Random, size: int, lo: int = -9, hi: int = 9) -> list[Fraction]:
    return [Fraction(rng.randint(lo, hi)) for _ in range(size)]


def with_infs(rng: random.Random, values: list, prob: float = 0.15) -> list:
    return [INF if rng.random() < prob else v for v in values]


def random_uniform(rng, n):
    return UniformMatroid(n, rng.randint(0, n))


def random_partition(rng, n):
    if n == 0:
        return PartitionMatroid(((),), (0,))
    blocks = rng.randint(1, n)
    cuts = sorted(rng.sample(range(1, n), blocks - 1))
    bounds = [0] + cuts + [n]
    parts = tuple(tuple(range(x, y)) for x, y in zip(bounds, bounds[1:]))
    return PartitionMatroid(parts, tuple(rng.randint(0, len(p)) for p in parts))


def random_edges(rng, vertices, count, dag=False):
    edges = []
    for _ in range(count):
        u, v = rng.sample(range(vertices), 2)
        if dag and u > v:
            u, v = v, u
        edges.append((u, v))
    return tuple(edges)


def random_graphic(rng, n):
    v = rng.randint(2, 5)
    return GraphicMatroid(v, random_edges(rng, v, n))


def random_path_family(rng, n, directed=None, dag=False, max_vertices=6):
    """Random (di)graph with ``n`` edges; usually seeded with one s-t path."""
    v = rng.randint(2, max_vertices)
    if directed is None:
        directed = rng.random() < 0.5
    edges = list(random_edges(rng, v, n, dag))
    if rng.random() < 0.85:
        middle = sorted(rng.sample(range(1, v - 1), rng.randint(0, min(v - 2, n - 1))))
        hops = [0] + middle + [v - 1]
        edges[: len(hops) - 1] = zip(hops, hops[1:])
        rng.shuffle(edges)
    return StPath(v, tuple(edges), 0, v - 1, directed)


def random_lcop_family(rng, n):
    """A family whose LCOP oracle accepts arbitrary finite weights."""
    choice = rng.choice(["unconstrained", "uniform", "partition", "graphic", "dagpath", "pm"])
    if choice == "pm":
        p = rng.choice([1, 2])
        return BipartitePerfectMatching(p)
    if choice == "unconstrained":
        return Unconstrained(n)
    if choice == "uniform":
        return random_uniform(rng, n)
    if choice == "partition":
        return random_partition(rng, n)
    if choice == "graphic":
        return random_graphic(rng, n)
    return random_path_family(rng, n, directed=True, dag=True)


def random_matroid(rng, n):
    return rng.choice([random_uniform, random_partition, random_graphic])(rng, n)


# ---------------------------------------------------------------------------
# diagonal precondition classes


def diag_unconstrained(rng):
    n = rng.randint(1, 6)
    u = Unconstrained(n)
    return DiagonalInstance(n, with_infs(rng, ints(rng, n)), ints(rng, n), ints(rng, n), u, u)


def diag_one_side(rng):
    n = rng.randint(1, 6)
    fam = random_lcop_family(rng, n)
    n = fam.ground_size
    inst = DiagonalInstance(n, with_infs(rng, ints(rng, n)), ints(rng, n), ints(rng, n),
                            fam, Unconstrained(n))
    return inst.transposed() if rng.random() < 0.5 else inst


def diag_uniform(rng):
    n = rng.randint(1, 8)
    return DiagonalInstance(n, with_infs(rng, ints(rng, n)), ints(rng, n), ints(rng, n),
                            random_uniform(rng, n), random_uniform(rng, n))


def diag_uniform_path(rng):
    n = rng.randint(1, 8)
    return DiagonalInstance(n, with_infs(rng, ints(rng, n, 0, 9), 0.1), [0] * n,
                            ints(rng, n, 0, 9), random_uniform(rng, n),
                            random_path_family(rng, n))


def diag_matroid(rng):
    n = rng.randint(1, 7)
    c = ints(rng, n)
    return DiagonalInstance(n, with_infs(rng, ints(rng, n, 0, 9), 0.1), c, c,
                            random_matroid(rng, n), random_matroid(rng, n))


def diag_common_paths(rng):
    n = rng.randint(1, 8)
    fam = random_path_family(rng, n)
    c = ints(rng, n, 0, 9)
    return DiagonalInstance(n, with_infs(rng, ints(rng, n, 0, 9), 0.2), c, c, fam, fam)


# ---------------------------------------------------------------------------
# fixed rank


def random_rank_matrix(rng, m, n, r, lo=-5, hi=5):
    """An ``m x n`` integer matrix of rank exactly ``r`` (retries until so)."""
    from copic.fixedrank import factorize

    while True:
        q = [[Fraction(0)] * n for _ in range(m)]
        for _ in range(r):
            a, b = ints(rng, m, lo, hi), ints(rng, n, lo, hi)
            for i, j in itertools.product(range(m), range(n)):
                q[i][j] += a[i] * b[j]
        if factorize(q).r == r:
            return q


def copic(q, c, d, f1, f2) -> Instance:
    return Instance(len(c), len(d), q, c, d, f1, f2)
