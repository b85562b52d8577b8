"""Feasible-solution families.

Every family offers a membership test, exhaustive enumeration in canonical
order (by size, then lexicographic) and an exact solver for the linear cost
problem ``min_{S in F} sum_{i in S} w_i`` (LCOP). Matroid families also
expose an independence oracle.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from . import graphkit
from .core import (
    INF,
    DomainError,
    EnumerationTooLarge,
    NoSolutionError,
    UnsupportedError,
    set_key,
    to_cost,
)

DEFAULT_ENUM_CAP = 10**6

IndexSet = tuple[int, ...]


def _weights(w: Sequence, size: int) -> list[Fraction]:
    out = [to_cost(x) for x in w]
    if len(out) != size:
        raise DomainError(f"weight vector has length {len(out)}, expected {size}")
    if any(x is INF for x in out):
        raise DomainError("LCOP weights must be finite")
    return out


def _total(w, s) -> Fraction:
    return sum((w[i] for i in s), Fraction(0))


def _canonical(s) -> IndexSet:
    return tuple(sorted(s))


class Family:
    """Base class; subclasses are frozen dataclasses."""

    ground_size: int

    def contains(self, s) -> bool:
        raise NotImplementedError

    def enumerate(self, cap: int = DEFAULT_ENUM_CAP) -> Iterator[IndexSet]:
        raise NotImplementedError

    def lcop(self, w: Sequence) -> tuple[IndexSet, Fraction]:
        raise NotImplementedError

    def matroid(self) -> "MatroidOracle":
        raise UnsupportedError(f"{type(self).__name__} is not a matroid family")

    def count(self, cap: int = DEFAULT_ENUM_CAP) -> int:
        return sum(1 for _ in self.enumerate(cap))

    def _in_ground(self, s) -> bool:
        return all(isinstance(i, int) and 0 <= i < self.ground_size for i in s)


def _collect(gen, cap: int) -> list[IndexSet]:
    out = []
    for s in gen:
        out.append(s)
        if len(out) > cap:
            raise EnumerationTooLarge(cap)
    out.sort(key=set_key)
    return out


@dataclass(frozen=True)
class Unconstrained(Family):
    """All subsets of the ground set."""

    ground_size: int

    def contains(self, s) -> bool:
        return self._in_ground(s) and len(set(s)) == len(list(s))

    def enumerate(self, cap: int = DEFAULT_ENUM_CAP) -> Iterator[IndexSet]:
        if 2**self.ground_size > cap:
            raise EnumerationTooLarge(cap)
        for size in range(self.ground_size + 1):
            yield from itertools.combinations(range(self.ground_size), size)

    def lcop(self, w):
        w = _weights(w, self.ground_size)
        s = tuple(i for i, x in enumerate(w) if x < 0)
        return s, _total(w, s)

    def count(self, cap: int = DEFAULT_ENUM_CAP) -> int:
        return 2**self.ground_size


@dataclass(frozen=True)
class UniformMatroid(Family):
    """Bases of the uniform matroid: all ``k``-subsets."""

    ground_size: int
    k: int

    def __post_init__(self):
        if not 0 <= self.k <= self.ground_size:
            raise DomainError(f"uniform matroid needs 0 <= k <= {self.ground_size}, got {self.k}")

    def contains(self, s) -> bool:
        s = list(s)
        return self._in_ground(s) and len(set(s)) == len(s) == self.k

    def enumerate(self, cap: int = DEFAULT_ENUM_CAP) -> Iterator[IndexSet]:
        if math.comb(self.ground_size, self.k) > cap:
            raise EnumerationTooLarge(cap)
        yield from itertools.combinations(range(self.ground_size), self.k)

    def lcop(self, w):
        w = _weights(w, self.ground_size)
        order = sorted(range(self.ground_size), key=lambda i: (w[i], i))
        s = _canonical(order[: self.k])
        return s, _total(w, s)

    def matroid(self):
        return UniformOracle(self.ground_size, self.k)

    def count(self, cap: int = DEFAULT_ENUM_CAP) -> int:
        return math.comb(self.ground_size, self.k)


@dataclass(frozen=True)
class PartitionMatroid(Family):
    """Sets meeting each block ``parts[t]`` in exactly ``quotas[t]`` elements."""

    parts: tuple[tuple[int, ...], ...]
    quotas: tuple[int, ...]

    def __post_init__(self):
        parts = tuple(tuple(sorted(p)) for p in self.parts)
        object.__setattr__(self, "parts", parts)
        object.__setattr__(self, "quotas", tuple(self.quotas))
        flat = sorted(i for p in parts for i in p)
        if flat != list(range(len(flat))):
            raise DomainError("partition blocks must be disjoint and cover 0..n-1")
        if len(self.quotas) != len(parts):
            raise DomainError("one quota per block required")
        for p, g in zip(parts, self.quotas):
            if not 0 <= g <= len(p):
                raise DomainError(f"quota {g} out of range for block of size {len(p)}")

    @property
    def ground_size(self) -> int:
        return sum(len(p) for p in self.parts)

    def contains(self, s) -> bool:
        s = list(s)
        if not self._in_ground(s) or len(set(s)) != len(s):
            return False
        chosen = set(s)
        return all(len(chosen.intersection(p)) == g for p, g in zip(self.parts, self.quotas))

    def enumerate(self, cap: int = DEFAULT_ENUM_CAP) -> Iterator[IndexSet]:
        total = math.prod(math.comb(len(p), g) for p, g in zip(self.parts, self.quotas))
        if total > cap:
            raise EnumerationTooLarge(cap)
        pools = [itertools.combinations(p, g) for p, g in zip(self.parts, self.quotas)]
        sets = [_canonical(itertools.chain.from_iterable(c)) for c in itertools.product(*pools)]
        yield from sorted(sets, key=set_key)

    def lcop(self, w):
        w = _weights(w, self.ground_size)
        chosen = []
        for p, g in zip(self.parts, self.quotas):
            chosen.extend(sorted(p, key=lambda i: (w[i], i))[:g])
        s = _canonical(chosen)
        return s, _total(w, s)

    def matroid(self):
        return PartitionOracle(self.parts, self.quotas)

    def count(self, cap: int = DEFAULT_ENUM_CAP) -> int:
        return math.prod(math.comb(len(p), g) for p, g in zip(self.parts, self.quotas))


def _norm_edges(edges) -> tuple[tuple[int, int], ...]:
    return tuple((int(u), int(v)) for u, v in edges)


def _check_graph(vertices: int, edges) -> None:
    for u, v in edges:
        if not (0 <= u < vertices and 0 <= v < vertices):
            raise DomainError(f"edge ({u}, {v}) has an endpoint outside 0..{vertices - 1}")


@dataclass(frozen=True)
class GraphicMatroid(Family):
    """Spanning trees (spanning forests if disconnected) of a multigraph.

    Edge ``e`` of ``edges`` is ground element ``e``.
    """

    vertices: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        object.__setattr__(self, "edges", _norm_edges(self.edges))
        _check_graph(self.vertices, self.edges)

    @property
    def ground_size(self) -> int:
        return len(self.edges)

    @property
    def rank(self) -> int:
        return graphkit.forest_rank(self.vertices, self.edges)

    @classmethod
    def complete(cls, vertices: int) -> "GraphicMatroid":
        return cls(vertices, tuple(itertools.combinations(range(vertices), 2)))

    @property
    def is_complete(self) -> bool:
        pairs = sorted(tuple(sorted(e)) for e in self.edges)
        return pairs == list(itertools.combinations(range(self.vertices), 2))

    def contains(self, s) -> bool:
        s = list(s)
        if not self._in_ground(s) or len(set(s)) != len(s):
            return False
        return len(s) == self.rank and graphkit.is_forest(self.vertices, self.edges, s)

    def enumerate(self, cap: int = DEFAULT_ENUM_CAP) -> Iterator[IndexSet]:
        r = self.rank
        n = self.ground_size
        out: list[IndexSet] = []

        def rec(start: int, chosen: list[int], uf_parent: list[int]):
            if len(chosen) == r:
                out.append(tuple(chosen))
                if len(out) > cap:
                    raise EnumerationTooLarge(cap)
                return
            for e in range(start, n - (r - len(chosen)) + 1):
                u, v = self.edges[e]
                parent = list(uf_parent)

                def find(x):
                    while parent[x] != x:
                        x = parent[x]
                    return x

                ru, rv = find(u), find(v)
                if ru == rv:
                    continue
                parent[max(ru, rv)] = min(ru, rv)
                chosen.append(e)
                rec(e + 1, chosen, parent)
                chosen.pop()

        rec(0, [], list(range(self.vertices)))
        yield from out

    def lcop(self, w):
        w = _weights(w, self.ground_size)
        s = graphkit.mst(self.vertices, self.edges, w)
        return s, _total(w, s)

    def matroid(self):
        return GraphicOracle(self.vertices, self.edges)


@dataclass(frozen=True)
class StPath(Family):
    """Edge sets of simple ``s``-``t`` paths in a (di)graph."""

    vertices: int
    edges: tuple[tuple[int, int], ...]
    s: int
    t: int
    directed: bool = True

    def __post_init__(self):
        object.__setattr__(self, "edges", _norm_edges(self.edges))
        _check_graph(self.vertices, self.edges)
        if not (0 <= self.s < self.vertices and 0 <= self.t < self.vertices):
            raise DomainError("terminals must be vertices of the graph")
        if self.s == self.t:
            raise DomainError("s and t must differ")

    @property
    def ground_size(self) -> int:
        return len(self.edges)

    def _out_arcs(self) -> list[list[tuple[int, int]]]:
        """Per vertex, the ``(edge, head)`` pairs leaving it (loops dropped)."""
        out = [[] for _ in range(self.vertices)]
        for e, (u, v) in enumerate(self.edges):
            if u == v:
                continue
            out[u].append((e, v))
            if not self.directed:
                out[v].append((e, u))
        return out

    def contains(self, s) -> bool:
        s = list(s)
        if not s or not self._in_ground(s) or len(set(s)) != len(s):
            return False
        remaining = set(s)
        out = self._out_arcs()
        visited = {self.s}
        v = self.s
        while v != self.t:
            step = [(e, h) for e, h in out[v] if e in remaining]
            if len(step) != 1:
                return False
            e, h = step[0]
            if h in visited:
                return False
            remaining.discard(e)
            visited.add(h)
            v = h
        return not remaining

    def enumerate(self, cap: int = DEFAULT_ENUM_CAP) -> Iterator[IndexSet]:
        out = self._out_arcs()
        found: list[IndexSet] = []
        on_path = [False] * self.vertices

        def dfs(v: int, used: list[int]):
            if v == self.t:
                found.append(_canonical(used))
                if len(found) > cap:
                    raise EnumerationTooLarge(cap)
                return
            on_path[v] = True
            for e, h in out[v]:
                if not on_path[h]:
                    used.append(e)
                    dfs(h, used)
                    used.pop()
            on_path[v] = False

        dfs(self.s, [])
        yield from sorted(found, key=set_key)

    def lcop(self, w):
        w = _weights(w, self.ground_size)
        if not self.directed and any(x < 0 for x in w):
            raise UnsupportedError("negative weights on undirected s-t paths are not supported")
        return graphkit.shortest_st_path(self.vertices, self.edges, w, self.s, self.t, self.directed)


@dataclass(frozen=True)
class BipartitePerfectMatching(Family):
    """Perfect matchings of ``K_{p,p}``; edge ``(i, j)`` is element ``i*p + j``."""

    p: int

    @property
    def ground_size(self) -> int:
        return self.p * self.p

    def edge(self, e: int) -> tuple[int, int]:
        return divmod(e, self.p)

    def from_permutation(self, perm: Sequence[int]) -> IndexSet:
        return tuple(i * self.p + j for i, j in enumerate(perm))

    def contains(self, s) -> bool:
        s = list(s)
        if not self._in_ground(s) or len(set(s)) != len(s) or len(s) != self.p:
            return False
        rows = {e // self.p for e in s}
        cols = {e % self.p for e in s}
        return len(rows) == len(cols) == self.p

    def enumerate(self, cap: int = DEFAULT_ENUM_CAP) -> Iterator[IndexSet]:
        if math.factorial(self.p) > cap:
            raise EnumerationTooLarge(cap)
        for perm in itertools.permutations(range(self.p)):
            yield self.from_permutation(perm)

    def lcop(self, w):
        w = _weights(w, self.ground_size)
        p = self.p
        perm, value = graphkit.hungarian([[w[i * p + j] for j in range(p)] for i in range(p)])
        return self.from_permutation(perm), value

    def count(self, cap: int = DEFAULT_ENUM_CAP) -> int:
        return math.factorial(self.p)


# ---------------------------------------------------------------------------
# matroid oracles


class MatroidOracle:
    """Independence oracle with a known rank."""

    ground_size: int
    rank: int

    def is_independent(self, s) -> bool:
        raise NotImplementedError


class UniformOracle(MatroidOracle):
    def __init__(self, ground_size: int, k: int):
        self.ground_size = ground_size
        self.rank = k

    def is_independent(self, s) -> bool:
        return len(set(s)) <= self.rank


class PartitionOracle(MatroidOracle):
    def __init__(self, parts, quotas):
        self.block = {}
        for t, p in enumerate(parts):
            for i in p:
                self.block[i] = t
        self.quotas = tuple(quotas)
        self.ground_size = len(self.block)
        self.rank = sum(self.quotas)

    def is_independent(self, s) -> bool:
        counts = [0] * len(self.quotas)
        for i in set(s):
            t = self.block[i]
            counts[t] += 1
            if counts[t] > self.quotas[t]:
                return False
        return True


class GraphicOracle(MatroidOracle):
    def __init__(self, vertices: int, edges):
        self.vertices = vertices
        self.edges = tuple(edges)
        self.ground_size = len(self.edges)
        self.rank = graphkit.forest_rank(vertices, self.edges)

    def is_independent(self, s) -> bool:
        return graphkit.is_forest(self.vertices, self.edges, set(s))


# ---------------------------------------------------------------------------
# functional surface


def contains(family: Family, s) -> bool:
    return family.contains(s)


def enumerate_family(family: Family, cap: int = DEFAULT_ENUM_CAP) -> Iterator[IndexSet]:
    """Every feasible set exactly once, in canonical order."""
    return family.enumerate(cap)


def lcop_solve(family: Family, w: Sequence) -> tuple[IndexSet, Fraction]:
    return family.lcop(w)


def as_matroid_oracle(family: Family) -> MatroidOracle:
    return family.matroid()


def lcop_solve_avoiding(family: Family, w: Sequence) -> tuple[IndexSet, Fraction] | None:
    """LCOP where ``inf`` weights mark forbidden elements.

    Forbidden elements get a finite penalty larger than twice the total
    absolute finite weight, so any optimum that still uses one proves that
    no feasible set avoids them. Returns ``None`` in that case.
    """
    w = [to_cost(x) for x in w]
    forbidden = {i for i, x in enumerate(w) if x is INF}
    if not forbidden:
        try:
            return family.lcop(w)
        except NoSolutionError:
            return None
    bound = sum((abs(x) for x in w if x is not INF), Fraction(0))
    penalty = 2 * bound + 1
    try:
        s, _ = family.lcop([penalty if x is INF else x for x in w])
    except NoSolutionError:
        return None
    if forbidden.intersection(s):
        return None
    return s, _total(w, s)
