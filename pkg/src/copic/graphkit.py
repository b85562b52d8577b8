"""Combinatorial kernels: spanning trees, shortest paths, min-cost flow,
assignment, and minimum-weight disjoint bases of two matroids.

Everything runs on exact rationals. Graphs are given as a vertex count plus
an indexed list of ``(u, v)`` pairs; the index is the element id the rest of
the package refers to.
"""

from __future__ import annotations

import heapq
import math
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Hashable, Protocol, Sequence

from .core import InfeasibleError, NegativeCycleError, NoSolutionError, to_cost, INF


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[max(ra, rb)] = min(ra, rb)
        return True


def is_forest(num_vertices: int, edges: Sequence[tuple[int, int]], subset) -> bool:
    uf = _UnionFind(num_vertices)
    for e in subset:
        u, v = edges[e]
        if not uf.union(u, v):
            return False
    return True


def forest_rank(num_vertices: int, edges: Sequence[tuple[int, int]]) -> int:
    """Size of a spanning forest of the whole graph."""
    uf = _UnionFind(num_vertices)
    return sum(1 for u, v in edges if uf.union(u, v))


def mst(num_vertices: int, edges: Sequence[tuple[int, int]], w: Sequence) -> tuple[int, ...]:
    """Minimum spanning forest by Kruskal; ties go to the smaller edge index."""
    order = sorted(range(len(edges)), key=lambda e: (w[e], e))
    uf = _UnionFind(num_vertices)
    chosen = [e for e in order if uf.union(*edges[e])]
    return tuple(sorted(chosen))


def _arc_list(edges, directed: bool):
    """Expand to directed arcs ``(tail, head, element)``."""
    arcs = []
    for idx, (u, v) in enumerate(edges):
        arcs.append((u, v, idx))
        if not directed and u != v:
            arcs.append((v, u, idx))
    return arcs


def bellman_ford(num_vertices: int, arcs: Sequence[tuple[int, int]], w: Sequence, source: int,
                 ) -> tuple[list, list]:
    """Single-source shortest paths with negative arc costs allowed.

    Returns ``(dist, pred)`` where ``dist[v]`` is ``None`` for unreachable
    vertices and ``pred[v]`` is the index of the last arc on a shortest path.
    Raises :class:`NegativeCycleError` carrying the arc indices of a
    negative cycle reachable from ``source``.
    """
    dist: list = [None] * num_vertices
    pred: list = [None] * num_vertices
    dist[source] = Fraction(0)
    last = None
    for _ in range(num_vertices):
        last = None
        for a, (u, v) in enumerate(arcs):
            if dist[u] is None:
                continue
            nd = dist[u] + w[a]
            if dist[v] is None or nd < dist[v]:
                dist[v] = nd
                pred[v] = a
                last = v
        if last is None:
            break
    if last is not None:
        # walk back far enough to land on the cycle itself
        v = last
        for _ in range(num_vertices):
            v = arcs[pred[v]][0]
        cycle = []
        u = v
        while True:
            a = pred[u]
            cycle.append(a)
            u = arcs[a][0]
            if u == v:
                break
        cycle.reverse()
        raise NegativeCycleError("negative-cost cycle reachable from source", cycle)
    return dist, pred


def dijkstra(num_vertices: int, arcs: Sequence[tuple[int, int]], w: Sequence, source: int,
             ) -> tuple[list, list]:
    """Shortest paths for nonnegative arc costs; same return shape as
    :func:`bellman_ford`."""
    out = [[] for _ in range(num_vertices)]
    for a, (u, v) in enumerate(arcs):
        out[u].append(a)
    dist: list = [None] * num_vertices
    pred: list = [None] * num_vertices
    dist[source] = Fraction(0)
    done = [False] * num_vertices
    heap = [(Fraction(0), source)]
    while heap:
        du, u = heapq.heappop(heap)
        if done[u]:
            continue
        done[u] = True
        for a in out[u]:
            v = arcs[a][1]
            nd = du + w[a]
            if dist[v] is None or nd < dist[v]:
                dist[v] = nd
                pred[v] = a
                heapq.heappush(heap, (nd, v))
    return dist, pred


def _reaches(num_vertices: int, arcs, target: int) -> list[bool]:
    back = [[] for _ in range(num_vertices)]
    for u, v in arcs:
        back[v].append(u)
    seen = [False] * num_vertices
    seen[target] = True
    stack = [target]
    while stack:
        v = stack.pop()
        for u in back[v]:
            if not seen[u]:
                seen[u] = True
                stack.append(u)
    return seen


def shortest_st_path(num_vertices: int, edges: Sequence[tuple[int, int]], w: Sequence,
                     s: int, t: int, directed: bool = True) -> tuple[tuple[int, ...], Fraction]:
    """Cheapest simple ``s``-``t`` path as a sorted tuple of edge indices.

    Negative costs are only accepted on directed graphs, and only when no
    negative cycle lies on an ``s``-``t`` walk.
    """
    arcs3 = _arc_list(edges, directed)
    useful = _reaches(num_vertices, [(u, v) for u, v, _ in arcs3], t)
    arcs3 = [(u, v, e) for u, v, e in arcs3 if useful[u] and useful[v] and u != v]
    arcs = [(u, v) for u, v, _ in arcs3]
    aw = [w[e] for _, _, e in arcs3]
    if all(x >= 0 for x in aw):
        dist, pred = dijkstra(num_vertices, arcs, aw, s)
    else:
        try:
            dist, pred = bellman_ford(num_vertices, arcs, aw, s)
        except NegativeCycleError as exc:
            raise NegativeCycleError(str(exc), [arcs3[a][2] for a in exc.cycle]) from None
    if dist[t] is None:
        raise NoSolutionError(f"no path from {s} to {t}")
    path = []
    v = t
    while v != s:
        a = pred[v]
        path.append(arcs3[a][2])
        v = arcs3[a][0]
    return tuple(sorted(path)), dist[t]


# ---------------------------------------------------------------------------
# min-cost flow


@dataclass(frozen=True)
class Arc:
    tail: int
    head: int
    capacity: int
    cost: Any
    label: Hashable = None


@dataclass
class FlowNetwork:
    """Directed network with integral capacities and vertex supplies.

    ``supplies[v] > 0`` means ``v`` emits flow; supplies must sum to zero.
    """

    num_vertices: int
    arcs: list[Arc] = field(default_factory=list)
    supplies: dict[int, int] = field(default_factory=dict)

    def add_arc(self, tail: int, head: int, capacity: int, cost, label: Hashable = None) -> int:
        self.arcs.append(Arc(tail, head, capacity, to_cost(cost), label))
        return len(self.arcs) - 1


@dataclass(frozen=True)
class FlowResult:
    flow: tuple[int, ...]
    cost: Fraction


def min_cost_flow(net: FlowNetwork) -> FlowResult:
    """Integral minimum-cost flow meeting all supplies.

    Successive shortest augmenting paths with vertex potentials; the initial
    potentials come from Bellman-Ford so negative arc costs are fine as long
    as no negative cycle exists among positive-capacity arcs.
    """
    if sum(net.supplies.values()) != 0:
        raise InfeasibleError("supplies do not balance")
    for arc in net.arcs:
        if arc.cost is INF:
            raise ValueError("arc costs must be finite")
        if arc.capacity < 0:
            raise ValueError("capacities must be nonnegative")
    n = net.num_vertices
    src, snk = n, n + 1
    nv = n + 2
    # residual graph in parallel arrays; arc 2k is forward, 2k+1 its reverse
    head: list[int] = []
    cap: list[int] = []
    cost: list[Fraction] = []
    adj: list[list[int]] = [[] for _ in range(nv)]

    def add(u, v, c, w):
        adj[u].append(len(head))
        head.append(v); cap.append(c); cost.append(Fraction(w))
        adj[v].append(len(head))
        head.append(u); cap.append(0); cost.append(-Fraction(w))

    for arc in net.arcs:
        add(arc.tail, arc.head, arc.capacity, arc.cost)
    need = 0
    for v in sorted(net.supplies):
        b = net.supplies[v]
        if b > 0:
            add(src, v, b, 0)
            need += b
        elif b < 0:
            add(v, snk, -b, 0)

    tail = [0] * len(head)
    for u in range(nv):
        for a in adj[u]:
            tail[a] = u

    # potentials: Bellman-Ford from a virtual root over positive-capacity arcs
    pot = [Fraction(0)] * nv
    for it in range(nv + 1):
        changed = False
        for a in range(len(head)):
            if cap[a] > 0 and pot[tail[a]] + cost[a] < pot[head[a]]:
                pot[head[a]] = pot[tail[a]] + cost[a]
                changed = True
        if not changed:
            break
    else:
        raise NegativeCycleError("negative-cost cycle in flow network")

    sent = 0
    while sent < need:
        dist: list = [None] * nv
        pred = [-1] * nv
        dist[src] = Fraction(0)
        heap = [(Fraction(0), src)]
        done = [False] * nv
        while heap:
            du, u = heapq.heappop(heap)
            if done[u]:
                continue
            done[u] = True
            for a in adj[u]:
                if cap[a] <= 0:
                    continue
                v = head[a]
                nd = du + cost[a] + pot[u] - pot[v]
                if dist[v] is None or nd < dist[v]:
                    dist[v] = nd
                    pred[v] = a
                    heapq.heappush(heap, (nd, v))
        if dist[snk] is None:
            raise InfeasibleError("supplies cannot be routed")
        for v in range(nv):
            if dist[v] is not None:
                pot[v] += dist[v]
        push = need - sent
        v = snk
        while v != src:
            a = pred[v]
            push = min(push, cap[a])
            v = tail[a]
        v = snk
        while v != src:
            a = pred[v]
            cap[a] -= push
            cap[a ^ 1] += push
            v = tail[a]
        sent += push

    flow = tuple(cap[2 * k + 1] for k in range(len(net.arcs)))
    total = sum((Fraction(f) * net.arcs[k].cost for k, f in enumerate(flow)), Fraction(0))
    return FlowResult(flow, total)


# ---------------------------------------------------------------------------
# assignment


def _hungarian_int(c: list[list[int]]) -> list[int]:
    """O(p^3) Hungarian method with potentials on integer costs."""
    p = len(c)
    inf = float("inf")
    u = [0] * (p + 1)
    v = [0] * (p + 1)
    match = [0] * (p + 1)  # column -> row, 1-based, 0 = free
    way = [0] * (p + 1)
    for i in range(1, p + 1):
        match[0] = i
        j0 = 0
        minv = [inf] * (p + 1)
        used = [False] * (p + 1)
        while True:
            used[j0] = True
            i0 = match[j0]
            delta = inf
            j1 = 0
            for j in range(1, p + 1):
                if used[j]:
                    continue
                cur = c[i0 - 1][j - 1] - u[i0] - v[j]
                if cur < minv[j]:
                    minv[j] = cur
                    way[j] = j0
                if minv[j] < delta:
                    delta = minv[j]
                    j1 = j
            for j in range(p + 1):
                if used[j]:
                    u[match[j]] += delta
                    v[j] -= delta
                else:
                    minv[j] -= delta
            j0 = j1
            if match[j0] == 0:
                break
        while True:
            j1 = way[j0]
            match[j0] = match[j1]
            j0 = j1
            if j0 == 0:
                break
    perm = [0] * p
    for j in range(1, p + 1):
        perm[match[j] - 1] = j - 1
    return perm


def hungarian(costs: Sequence[Sequence]) -> tuple[tuple[int, ...], Fraction]:
    """Minimum-cost perfect matching of a square matrix.

    Returns ``(perm, cost)`` with row ``i`` matched to column ``perm[i]``.
    Among optimal matchings the lexicographically least ``perm`` is returned:
    costs are scaled to integers and perturbed by ``perm[i] * p**(p-1-i)``,
    which is smaller than one unit of the scaled cost.
    """
    p = len(costs)
    if p == 0:
        return (), Fraction(0)
    vals = [[to_cost(x) for x in row] for row in costs]
    if any(len(row) != p for row in vals):
        raise ValueError("cost matrix must be square")
    if any(x is INF for row in vals for x in row):
        raise ValueError("assignment costs must be finite")
    den = 1
    for row in vals:
        for x in row:
            den = math.lcm(den, x.denominator)
    base = p**p
    scaled = [[int(vals[i][j] * den) * base + j * p ** (p - 1 - i) for j in range(p)]
              for i in range(p)]
    perm = _hungarian_int(scaled)
    return tuple(perm), sum((vals[i][perm[i]] for i in range(p)), Fraction(0))


# ---------------------------------------------------------------------------
# matroid union


class IndependenceOracle(Protocol):
    ground_size: int
    rank: int

    def is_independent(self, s) -> bool: ...


@dataclass(frozen=True)
class DisjointBasePair:
    b1: tuple[int, ...]
    b2: tuple[int, ...]
    total_weight: Fraction


def _augment(e: int, parts: list[set], oracles) -> bool:
    """Try to insert ``e`` into ``parts[0] | parts[1]`` by a shortest exchange
    path (matroid partition augmentation). Mutates ``parts`` on success."""
    owner = {x: i for i, part in enumerate(parts) for x in part}
    prev = {e: None}
    queue = deque([e])
    while queue:
        x = queue.popleft()
        for i in (0, 1):
            if owner.get(x) != i and oracles[i].is_independent(parts[i] | {x}):
                path = [x]
                while prev[path[-1]] is not None:
                    path.append(prev[path[-1]])
                path.reverse()  # e, ..., x
                dest = [owner[path[k + 1]] for k in range(len(path) - 1)] + [i]
                for y in path:
                    if y in owner:
                        parts[owner[y]].discard(y)
                for y, d in zip(path, dest):
                    parts[d].add(y)
                return True
        for i in (0, 1):
            if owner.get(x) == i:
                continue
            for y in sorted(parts[i]):
                if y in prev:
                    continue
                if oracles[i].is_independent((parts[i] - {y}) | {x}):
                    prev[y] = x
                    queue.append(y)
    return False


def min_weight_disjoint_bases(m1: IndependenceOracle, m2: IndependenceOracle,
                              w: Sequence) -> DisjointBasePair | None:
    """Disjoint bases ``B1`` of ``m1`` and ``B2`` of ``m2`` minimising
    ``w(B1) + w(B2)``, or ``None`` when no disjoint pair exists.

    Greedy over the union matroid by ascending weight; each candidate element
    is accepted iff an augmenting path exists in the exchange digraph.
    """
    if m1.ground_size != m2.ground_size:
        raise ValueError("matroids must share a ground set")
    weights = [to_cost(x) for x in w]
    if any(x is INF for x in weights):
        raise ValueError("weights must be finite")
    oracles = (m1, m2)
    parts: list[set] = [set(), set()]
    target = m1.rank + m2.rank
    for e in sorted(range(m1.ground_size), key=lambda e: (weights[e], e)):
        if len(parts[0]) + len(parts[1]) == target:
            break
        _augment(e, parts, oracles)
    if len(parts[0]) != m1.rank or len(parts[1]) != m2.rank:
        return None
    b1, b2 = tuple(sorted(parts[0])), tuple(sorted(parts[1]))
    total = sum((weights[e] for e in b1 + b2), Fraction(0))
    return DisjointBasePair(b1, b2, total)
