"""Seeded random instance generation.

Family tokens:

``unconstrained``, ``uniform:K``, ``partition:B`` (``B`` contiguous blocks
with random quotas), ``complete:V`` (spanning trees of ``K_V``),
``graphic:V`` (spanning trees of a random connected multigraph on ``V``
vertices), ``stpath:V`` / ``dstpath:V`` (undirected / directed paths from 0
to ``V-1`` in a random graph containing at least one such path), ``pm:P``
(perfect matchings of ``K_{P,P}``) and, for the second family only,
``same`` (a copy of the first).

Tokens that fix their own ground size (``complete``, ``pm``) override the
requested size.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

from .core import DiagonalCosts, DomainError, Instance, validate_instance
from .families import (
    BipartitePerfectMatching,
    GraphicMatroid,
    PartitionMatroid,
    StPath,
    Unconstrained,
    UniformMatroid,
)

STRUCTURES = ("random", "rank:R", "diagonal", "linearizable")


def _arg(token: str) -> int:
    try:
        return int(token.split(":", 1)[1])
    except (IndexError, ValueError):
        raise DomainError(f"family token {token!r} needs an integer argument") from None


def _random_graph_edges(rng: random.Random, vertices: int, count: int, s: int | None = None,
                        t: int | None = None) -> list[tuple[int, int]]:
    if vertices < 2:
        raise DomainError("graph families need at least 2 vertices")
    edges: list[tuple[int, int]] = []
    if s is not None:
        middle = [v for v in range(vertices) if v not in (s, t)]
        hops = [s] + rng.sample(middle, rng.randint(0, len(middle))) + [t]
        edges.extend(zip(hops, hops[1:]))
    else:
        order = list(range(vertices))
        rng.shuffle(order)
        edges.extend((order[rng.randrange(i)], order[i]) for i in range(1, vertices))
    if count < len(edges):
        raise DomainError(f"{count} edges are too few for {vertices} vertices")
    while len(edges) < count:
        u, v = rng.sample(range(vertices), 2)
        edges.append((u, v))
    rng.shuffle(edges)
    return edges


def make_family(token: str, size: int, rng: random.Random):
    token = token.strip()
    if token == "unconstrained":
        return Unconstrained(size)
    if token.startswith("uniform:"):
        return UniformMatroid(size, _arg(token))
    if token.startswith("partition:"):
        blocks = max(1, min(_arg(token), size)) if size else 0
        cuts = sorted(rng.sample(range(1, size), blocks - 1)) if blocks > 1 else []
        bounds = [0] + cuts + [size]
        parts = tuple(tuple(range(x, y)) for x, y in zip(bounds, bounds[1:]))
        return PartitionMatroid(parts, tuple(rng.randint(0, len(p)) for p in parts))
    if token.startswith("complete:"):
        return GraphicMatroid.complete(_arg(token))
    if token.startswith("graphic:"):
        v = _arg(token)
        return GraphicMatroid(v, tuple(_random_graph_edges(rng, v, size)))
    if token.startswith(("stpath:", "dstpath:")):
        v = _arg(token)
        directed = token.startswith("d")
        edges = _random_graph_edges(rng, v, size, 0, v - 1)
        return StPath(v, tuple(edges), 0, v - 1, directed)
    if token.startswith("pm:"):
        return BipartitePerfectMatching(_arg(token))
    raise DomainError(f"unknown family token {token!r}")


def _cvp_vector(family, rng: random.Random, lo: int, hi: int) -> list[Fraction]:
    """A random vector with constant sum over the feasible sets of ``family``."""
    g = family.ground_size
    draw = lambda: Fraction(rng.randint(lo, hi))  # noqa: E731
    if isinstance(family, UniformMatroid):
        if family.k in (0, g):
            return [draw() for _ in range(g)]
        return [draw()] * g
    if isinstance(family, GraphicMatroid) and family.is_complete:
        if family.vertices <= 2:
            return [draw() for _ in range(g)]
        return [draw()] * g
    if isinstance(family, BipartitePerfectMatching):
        p = family.p
        s = [draw() for _ in range(p)]
        t = [draw() for _ in range(p)]
        return [s[i] + t[j] for i in range(p) for j in range(p)]
    if isinstance(family, PartitionMatroid):
        v = [Fraction(0)] * g
        for part, quota in zip(family.parts, family.quotas):
            if quota in (0, len(part)):
                for i in part:
                    v[i] = draw()
            else:
                k = draw()
                for i in part:
                    v[i] = k
        return v
    return [Fraction(0)] * g


def generate_instance(family1: str, family2: str, m: int, n: int, seed: int,
                      cost_range: tuple[int, int] = (-9, 9),
                      structure: str = "random") -> Instance:
    lo, hi = cost_range
    if lo > hi:
        raise DomainError("cost range is empty")
    rng = random.Random(seed)
    f1 = make_family(family1, m, rng)
    f2 = f1 if family2.strip() == "same" else make_family(family2, n, rng)
    m, n = f1.ground_size, f2.ground_size
    draw = lambda: Fraction(rng.randint(lo, hi))  # noqa: E731

    if structure == "random":
        q = [[draw() for _ in range(n)] for _ in range(m)]
    elif structure == "diagonal":
        if m != n:
            raise DomainError("diagonal structure needs equal ground sizes")
        q = DiagonalCosts(tuple(draw() for _ in range(n)))
    elif structure.startswith("rank:"):
        r = _arg(structure)
        q = [[Fraction(0)] * n for _ in range(m)]
        for _ in range(r):
            a = [draw() for _ in range(m)]
            b = [draw() for _ in range(n)]
            for i, j in itertools.product(range(m), range(n)):
                q[i][j] += a[i] * b[j]
    elif structure == "linearizable":
        cols = [_cvp_vector(f1, rng, lo, hi) for _ in range(n)]
        rows = [_cvp_vector(f2, rng, lo, hi) for _ in range(m)]
        q = [[cols[j][i] + rows[i][j] for j in range(n)] for i in range(m)]
    else:
        raise DomainError(f"unknown structure {structure!r}; expected one of {STRUCTURES}")
    c = [draw() for _ in range(m)]
    d = [draw() for _ in range(n)]
    inst = Instance(m, n, q, c, d, f1, f2)
    problems = validate_instance(inst)
    if problems:
        raise DomainError("; ".join(problems))
    return inst
