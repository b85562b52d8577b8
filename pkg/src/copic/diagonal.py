"""Polynomial solvers for diagonal COPIC.

With a diagonal interaction matrix the objective is

    f(S1, S2) = sum_{i in S1 & S2} a_i + sum_{i in S1} c_i + sum_{i in S2} d_i,

so both sides share one ground set ``[n]`` and only overlap is charged.
``a_i = inf`` forbids selecting ``i`` on both sides.

Each element has four membership states, always tried in the order
``none, S1 only, S2 only, both``; when several states are optimal the first
one wins.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any

from . import families, graphkit
from .core import (
    INF,
    DiagonalCosts,
    Instance,
    NoSolutionError,
    PreconditionError,
    Solution,
    UnsupportedError,
    evaluate_objective,
    to_cost,
)
from .families import StPath, Unconstrained, UniformMatroid


@dataclass(frozen=True)
class DiagonalInstance:
    n: int
    a: DiagonalCosts
    c: tuple
    d: tuple
    family1: Any
    family2: Any

    def __post_init__(self):
        if not isinstance(self.a, DiagonalCosts):
            object.__setattr__(self, "a", DiagonalCosts(self.a))
        object.__setattr__(self, "c", tuple(to_cost(x) for x in self.c))
        object.__setattr__(self, "d", tuple(to_cost(x) for x in self.d))

    def to_instance(self) -> Instance:
        return Instance(self.n, self.n, self.a, self.c, self.d, self.family1, self.family2)

    @classmethod
    def from_instance(cls, instance: Instance) -> "DiagonalInstance":
        """Accepts a diagonal ``q`` or a square dense ``q`` that is zero off
        the diagonal."""
        if instance.m != instance.n:
            raise PreconditionError("diagonal solvers require m == n")
        if instance.is_diagonal:
            a = instance.q
        else:
            n = instance.n
            for i in range(n):
                for j in range(n):
                    if i != j and instance.q[i][j] != 0:
                        raise PreconditionError("requires a diagonal interaction matrix")
            a = DiagonalCosts(tuple(instance.q[i][i] for i in range(n)))
        return cls(instance.n, a, instance.c, instance.d, instance.family1, instance.family2)

    def transposed(self) -> "DiagonalInstance":
        return DiagonalInstance(self.n, self.a, self.d, self.c, self.family2, self.family1)

    def objective(self, s1, s2):
        return evaluate_objective(self.to_instance(), s1, s2)


def _coerce(inst) -> DiagonalInstance:
    if isinstance(inst, DiagonalInstance):
        return inst
    return DiagonalInstance.from_instance(inst)


def _state_costs(a, c, d) -> list:
    """Costs of (none, S1 only, S2 only, both); ``None`` marks a forbidden state."""
    return [Fraction(0), c, d, None if a is INF else a + c + d]


def _require(cond: bool, message: str, exc=PreconditionError) -> None:
    if not cond:
        raise exc(message)


def _nonneg(values) -> bool:
    return all(x is INF or x >= 0 for x in values)


# ---------------------------------------------------------------------------


def solve_diag_unconstrained_pair(inst) -> Solution:
    """Both sides unconstrained: every element is decided on its own."""
    inst = _coerce(inst)
    _require(isinstance(inst.family1, Unconstrained) and isinstance(inst.family2, Unconstrained),
             "requires both families unconstrained")
    s1, s2 = [], []
    total = Fraction(0)
    for i in range(inst.n):
        options = _state_costs(inst.a.a[i], inst.c[i], inst.d[i])
        state = min((k for k in range(4) if options[k] is not None), key=lambda k: options[k])
        total += options[state]
        if state in (1, 3):
            s1.append(i)
        if state in (2, 3):
            s2.append(i)
    return Solution(s1, s2, total)


def solve_diag_one_side_unconstrained(inst) -> Solution:
    """One side unconstrained, the other any family with an LCOP oracle.

    The unconstrained side is optimised away per element, leaving a linear
    problem on the constrained side with weights
    ``f_i = min(c_i + d_i + a_i, c_i) - min(d_i, 0)``.
    """
    inst = _coerce(inst)
    if not isinstance(inst.family2, Unconstrained):
        if isinstance(inst.family1, Unconstrained):
            return solve_diag_one_side_unconstrained(inst.transposed()).swapped()
        raise PreconditionError("requires one family unconstrained")
    a, c, d = inst.a.a, inst.c, inst.d
    f = []
    for i in range(inst.n):
        joint = c[i] if a[i] is INF else min(c[i] + d[i] + a[i], c[i])
        f.append(joint - min(d[i], Fraction(0)))
    s1, _ = families.lcop_solve(inst.family1, f)
    chosen = set(s1)
    s2 = [i for i in range(inst.n)
          if (i in chosen and a[i] is not INF and a[i] + d[i] <= 0)
          or (i not in chosen and d[i] < 0)]
    return Solution(s1, s2, inst.objective(s1, s2))


def solve_diag_uniform_pair(inst) -> Solution:
    """Two uniform matroids, by dynamic programming over (|S1|, |S2|) counts."""
    inst = _coerce(inst)
    f1, f2 = inst.family1, inst.family2
    _require(isinstance(f1, UniformMatroid) and isinstance(f2, UniformMatroid),
             "requires both families uniform matroids")
    n, k1, k2 = inst.n, f1.k, f2.k
    # best[i][j1][j2]: cheapest way to pick j1 more for S1 and j2 more for S2
    # among elements i..n-1
    best = [[[None] * (k2 + 1) for _ in range(k1 + 1)] for _ in range(n + 1)]
    best[n][0][0] = Fraction(0)
    moves = ((0, 0), (1, 0), (0, 1), (1, 1))
    for i in range(n - 1, -1, -1):
        options = _state_costs(inst.a.a[i], inst.c[i], inst.d[i])
        for j1 in range(k1 + 1):
            for j2 in range(k2 + 1):
                cur = None
                for state, (x1, x2) in enumerate(moves):
                    if options[state] is None or j1 < x1 or j2 < x2:
                        continue
                    rest = best[i + 1][j1 - x1][j2 - x2]
                    if rest is None:
                        continue
                    cand = options[state] + rest
                    if cur is None or cand < cur:
                        cur = cand
                best[i][j1][j2] = cur
    total = best[0][k1][k2]
    if total is None:
        raise NoSolutionError("no admissible pair of uniform bases")
    s1, s2 = [], []
    j1, j2 = k1, k2
    for i in range(n):
        options = _state_costs(inst.a.a[i], inst.c[i], inst.d[i])
        target = best[i][j1][j2]
        for state, (x1, x2) in enumerate(moves):
            if options[state] is None or j1 < x1 or j2 < x2:
                continue
            rest = best[i + 1][j1 - x1][j2 - x2]
            if rest is not None and options[state] + rest == target:
                break
        if x1:
            s1.append(i)
        if x2:
            s2.append(i)
        j1, j2 = j1 - x1, j2 - x2
    return Solution(s1, s2, total)


def _simple_subpath(steps: list[tuple[int, int, Any]], start: int) -> list[tuple[int, int, Any]]:
    """Remove cycles from a walk given as ``(edge, head, tag)`` steps."""
    path: list[tuple[int, int, Any]] = []
    position = {start: 0}
    for e, head, tag in steps:
        if head in position:
            cut = position[head]
            for _, h, _ in path[cut:]:
                del position[h]
            path = path[:cut]
            position[head] = cut
        else:
            path.append((e, head, tag))
            position[head] = len(path)
    return path


def _out_arcs(fam: StPath) -> list[list[tuple[int, int]]]:
    return fam._out_arcs()


def solve_diag_uniform_path(inst) -> Solution:
    """Uniform matroid on side 1, s-t paths on side 2, ``a, d >= 0``, ``c = 0``.

    A path edge placed in S1 pays ``a_e`` on top of ``d_e``; the remaining
    members of S1 are taken off the path for free. The DP runs over walks
    with state (vertex, length, number of path edges placed in S1); dropping
    a cycle from a walk never raises its cost and only relaxes the room
    needed for the off-path part, so the optimum is attained by a path.
    """
    inst = _coerce(inst)
    f1, f2 = inst.family1, inst.family2
    _require(isinstance(f1, UniformMatroid) and isinstance(f2, StPath),
             "requires a uniform matroid on side 1 and s-t paths on side 2")
    _require(_nonneg(inst.a.a), "requires a >= 0", UnsupportedError)
    _require(_nonneg(inst.d), "requires d >= 0", UnsupportedError)
    _require(all(x == 0 for x in inst.c), "requires c = 0", UnsupportedError)
    n, k = inst.n, f1.k
    a, d = inst.a.a, inst.d
    nv = f2.vertices
    out = _out_arcs(f2)
    max_len = min(n, nv - 1)
    # layer[l][v][j] = (cost, predecessor info)
    layers = [[[None] * (k + 1) for _ in range(nv)] for _ in range(max_len + 1)]
    layers[0][f2.s][0] = (Fraction(0), None)
    for length in range(max_len):
        cur, nxt = layers[length], layers[length + 1]
        for u in range(nv):
            for j in range(k + 1):
                entry = cur[u][j]
                if entry is None:
                    continue
                base = entry[0]
                for e, v in out[u]:
                    options = [(j, base + d[e], False)]
                    if j < k and a[e] is not INF:
                        options.append((j + 1, base + d[e] + a[e], True))
                    for jj, cost, placed in options:
                        old = nxt[v][jj]
                        if old is None or cost < old[0]:
                            nxt[v][jj] = (cost, (u, j, e, placed))
    best = None
    for length in range(1, max_len + 1):
        for j in range(k + 1):
            entry = layers[length][f2.t][j]
            if entry is None or k - j > n - length:
                continue
            if best is None or entry[0] < best[0]:
                best = (entry[0], length, j)
    if best is None:
        raise NoSolutionError("no s-t path admits a base of the uniform matroid")
    _, length, j = best
    steps = []
    v = f2.t
    while length > 0:
        _, (u, pj, e, placed) = layers[length][v][j]
        steps.append((e, v, placed))
        v, j, length = u, pj, length - 1
    steps.reverse()
    path = _simple_subpath(steps, f2.s)
    on_path = {e for e, _, _ in path}
    s1 = sorted({e for e, _, placed in path if placed})
    spare = [i for i in range(n) if i not in on_path][: k - len(s1)]
    s1 = sorted(s1 + spare)
    s2 = sorted(on_path)
    return Solution(s1, s2, inst.objective(s1, s2))


class _DoubledOracle(families.MatroidOracle):
    """Matroid on ``2n`` elements where ``i`` and ``n + i`` are parallel
    copies of ``i``; copies listed in ``forbidden`` are loops."""

    def __init__(self, base: families.MatroidOracle, forbidden: frozenset):
        self.base = base
        self.n = base.ground_size
        self.ground_size = 2 * self.n
        self.rank = base.rank
        self.forbidden = forbidden

    def is_independent(self, s) -> bool:
        s = set(s)
        if s & self.forbidden:
            return False
        proj = [e % self.n for e in s]
        if len(set(proj)) != len(proj):
            return False
        return self.base.is_independent(proj)


def solve_diag_matroid_pair(inst) -> Solution:
    """Bases of two matroids with ``a >= 0`` and ``c = d``.

    Every element gets two parallel copies: copy ``i`` costs ``a_i + c_i``
    and copy ``n + i`` costs ``c_i``. A minimum-weight pair of disjoint bases
    of the doubled matroids projects to an optimal pair; an element lands in
    both bases exactly when both of its copies are used.
    """
    inst = _coerce(inst)
    m1 = families.as_matroid_oracle(inst.family1)
    m2 = families.as_matroid_oracle(inst.family2)
    _require(_nonneg(inst.a.a), "requires a >= 0", UnsupportedError)
    _require(tuple(inst.c) == tuple(inst.d), "requires c = d", UnsupportedError)
    n = inst.n
    a, c = inst.a.a, inst.c
    forbidden = frozenset(i for i in range(n) if a[i] is INF)
    w = [Fraction(0) if a[i] is INF else a[i] + c[i] for i in range(n)] + list(c)
    pair = graphkit.min_weight_disjoint_bases(
        _DoubledOracle(m1, forbidden), _DoubledOracle(m2, forbidden), w)
    if pair is None:
        raise NoSolutionError("no pair of bases avoids every forbidden overlap")
    s1 = sorted(e % n for e in pair.b1)
    s2 = sorted(e % n for e in pair.b2)
    return Solution(s1, s2, inst.objective(s1, s2))


def _same_paths(f1, f2) -> bool:
    return (isinstance(f1, StPath) and isinstance(f2, StPath)
            and (f1.vertices, f1.edges, f1.directed, f1.s, f1.t)
            == (f2.vertices, f2.edges, f2.directed, f2.s, f2.t))


def solve_diag_common_paths(inst) -> Solution:
    """Two s-t paths in one graph with shared terminals, ``a >= 0``,
    ``c = d >= 0``, via a 2-unit minimum-cost flow.

    Each edge becomes two parallel unit arcs costing ``c_e`` and
    ``a_e + c_e``; the second is omitted when ``a_e = inf``.
    """
    inst = _coerce(inst)
    f1, f2 = inst.family1, inst.family2
    _require(_same_paths(f1, f2), "requires both families s-t paths in the same graph")
    _require(_nonneg(inst.a.a), "requires a >= 0", UnsupportedError)
    _require(tuple(inst.c) == tuple(inst.d), "requires c = d", UnsupportedError)
    _require(_nonneg(inst.c), "requires c >= 0", UnsupportedError)
    a, c = inst.a.a, inst.c
    net = graphkit.FlowNetwork(f1.vertices, supplies={f1.s: 2, f1.t: -2})
    for e, (u, v) in enumerate(f1.edges):
        if u == v:
            continue
        ends = [(u, v)] if f1.directed else [(u, v), (v, u)]
        for x, y in ends:
            net.add_arc(x, y, 1, c[e], (e, x, y))
            if a[e] is not INF:
                net.add_arc(x, y, 1, a[e] + c[e], (e, x, y))
    result = graphkit.min_cost_flow(net)

    # units per (edge, direction); opposite units on an undirected edge cancel
    units: dict[tuple[int, int, int], int] = {}
    for arc, flow in zip(net.arcs, result.flow):
        if flow:
            units[arc.label] = units.get(arc.label, 0) + flow
    if not f1.directed:
        for e, (u, v) in enumerate(f1.edges):
            fwd, back = units.get((e, u, v), 0), units.get((e, v, u), 0)
            cancel = min(fwd, back)
            if cancel:
                units[(e, u, v)] = fwd - cancel
                units[(e, v, u)] = back - cancel

    def walk() -> list[tuple[int, int, Any]]:
        steps = []
        v = f1.s
        while v != f1.t:
            e, x, y = min(lab for lab, k in units.items() if k > 0 and lab[1] == v)
            units[(e, x, y)] -= 1
            steps.append((e, y, None))
            v = y
        return steps

    p1 = sorted(e for e, _, _ in _simple_subpath(walk(), f1.s))
    p2 = sorted(e for e, _, _ in _simple_subpath(walk(), f1.s))
    s1, s2 = (p1, p2) if (len(p1), p1) <= (len(p2), p2) else (p2, p1)
    return Solution(s1, s2, inst.objective(s1, s2))


SOLVERS = {
    "diag-unconstrained": solve_diag_unconstrained_pair,
    "diag-one-side": solve_diag_one_side_unconstrained,
    "diag-uniform": solve_diag_uniform_pair,
    "diag-uniform-path": solve_diag_uniform_path,
    "diag-matroid": solve_diag_matroid_pair,
    "diag-common-paths": solve_diag_common_paths,
}
