"""k-cardinality minimum directed cut on complete bipartite digraphs.

Arcs of ``K_{m,n}`` run from left vertex ``i`` to right vertex ``j`` with
cost ``q_ij``. The arcs leaving ``S`` are ``S_L x (R - S_R)``, so a cut of
cardinality ``k`` is a pair of uniform bases with ``k1 * k2 = k``, and the
minimum cut is the best uniform x uniform COPIC over all divisor pairs.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .bruteforce import solve_bruteforce
from .core import DomainError, Instance, NoSolutionError, Solution, to_cost
from .families import UniformMatroid


@dataclass(frozen=True)
class KCardCutInstance:
    m: int
    n: int
    q: tuple[tuple[Fraction, ...], ...]
    k: int

    def __post_init__(self):
        object.__setattr__(self, "q", tuple(tuple(to_cost(x) for x in row) for row in self.q))
        if len(self.q) != self.m or any(len(row) != self.n for row in self.q):
            raise DomainError("q must be an m x n matrix")
        if not 1 <= self.k <= self.m * self.n:
            raise DomainError(f"k must lie in 1..{self.m * self.n}")


@dataclass(frozen=True)
class CutResult:
    """``left`` and ``right`` are the vertices of ``S`` on each side."""

    left: tuple[int, ...]
    right: tuple[int, ...]
    cost: Fraction
    k1: int
    k2: int


def cut_arcs(inst: KCardCutInstance, left, right) -> list[tuple[int, int]]:
    right = set(right)
    return [(i, j) for i in sorted(left) for j in range(inst.n) if j not in right]


def copic_instance(inst: KCardCutInstance, k1: int, k2: int) -> Instance:
    zeros_m = (Fraction(0),) * inst.m
    zeros_n = (Fraction(0),) * inst.n
    return Instance(inst.m, inst.n, inst.q, zeros_m, zeros_n,
                    UniformMatroid(inst.m, k1), UniformMatroid(inst.n, k2))


def solve_kcard_cut_via_copic(inst: KCardCutInstance,
                              copic_solver: Callable[[Instance], Solution] = solve_bruteforce,
                              ) -> CutResult:
    best = None
    for k1 in range(1, inst.m + 1):
        if inst.k % k1:
            continue
        k2 = inst.k // k1
        if k2 > inst.n:
            continue
        sol = copic_solver(copic_instance(inst, k1, k2))
        if best is None or sol.objective < best[0].objective:
            best = (sol, k1, k2)
    if best is None:
        raise NoSolutionError(f"no divisor pair k1 * k2 = {inst.k} fits {inst.m} x {inst.n}")
    sol, k1, k2 = best
    right = tuple(j for j in range(inst.n) if j not in set(sol.s2))
    return CutResult(sol.s1, right, sol.objective, k1, k2)


def enumerate_cuts(inst: KCardCutInstance) -> CutResult:
    """Reference answer: try every vertex subset of the digraph."""
    best = None
    for left_size in range(inst.m + 1):
        for left in itertools.combinations(range(inst.m), left_size):
            for right_size in range(inst.n + 1):
                for right in itertools.combinations(range(inst.n), right_size):
                    arcs = cut_arcs(inst, left, right)
                    if len(arcs) != inst.k:
                        continue
                    cost = sum((inst.q[i][j] for i, j in arcs), Fraction(0))
                    if best is None or cost < best.cost:
                        best = CutResult(left, right, cost, len(left), inst.n - len(right))
    if best is None:
        raise NoSolutionError(f"no cut has exactly {inst.k} arcs")
    return best
