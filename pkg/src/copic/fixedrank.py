"""COPIC with a low-rank interaction matrix and an unconstrained first side.

Write ``Q = sum_p a_p b_p^T``. For a fixed second side ``y`` the best ``x``
sets ``x_i = 1`` exactly when ``c_i + sum_p a_pi * lambda_p < 0`` with
``lambda_p = b_p^T y``. As ``lambda`` ranges over ``R^r`` only finitely many
such ``x`` arise: they are read off the vertices of the hyperplane
arrangement ``{c_i + a_i . lambda = 0}``. Each vertex is fixed by ``r``
linearly independent hyperplanes (a basis ``B``); the remaining elements
take the sign of their reduced cost there and the basic ones take every
0/1 combination. An element with reduced cost exactly zero branches both
ways, which replaces symbolic perturbation.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from . import families
from .core import (
    INF,
    DomainError,
    EnumerationTooLarge,
    Instance,
    NoSolutionError,
    PreconditionError,
    Solution,
    evaluate_objective,
    set_key,
    to_cost,
)
from .exact import solve_square
from .families import Unconstrained

DEFAULT_CANDIDATE_CAP = 10**6


@dataclass(frozen=True)
class RankFactorization:
    """``Q = sum_p a_vectors[p] (b_vectors[p])^T`` with ``r`` terms."""

    a_vectors: tuple[tuple[Fraction, ...], ...]
    b_vectors: tuple[tuple[Fraction, ...], ...]

    @property
    def r(self) -> int:
        return len(self.a_vectors)

    def reconstruct(self, m: int, n: int) -> list[list[Fraction]]:
        q = [[Fraction(0)] * n for _ in range(m)]
        for a, b in zip(self.a_vectors, self.b_vectors):
            for i in range(m):
                if a[i]:
                    row = q[i]
                    for j in range(n):
                        row[j] += a[i] * b[j]
        return q


@dataclass(frozen=True)
class CandidateSet:
    candidates: tuple[tuple[int, ...], ...]

    def __contains__(self, s) -> bool:
        return tuple(sorted(s)) in set(self.candidates)

    def __len__(self) -> int:
        return len(self.candidates)

    def __iter__(self):
        return iter(self.candidates)


@dataclass(frozen=True)
class ApproximateSolution:
    solution: Solution
    alpha: Fraction


def _finite_matrix(q) -> list[list[Fraction]]:
    rows = [[to_cost(x) for x in r] for r in q]
    if any(x is INF for r in rows for x in r):
        raise PreconditionError("requires a finite interaction matrix")
    return rows


def factorize(q: Sequence[Sequence]) -> RankFactorization:
    """Exact rank factorization by Gaussian elimination with full pivoting.

    The pivot is the entry of largest absolute value, ties to the smallest
    ``(row, column)``. Each step peels off ``column / pivot`` times ``row``.
    """
    work = _finite_matrix(q)
    m = len(work)
    n = len(work[0]) if work else 0
    a_vecs, b_vecs = [], []
    while True:
        pivot = None
        for i in range(m):
            for j in range(n):
                v = work[i][j]
                if v and (pivot is None or abs(v) > abs(work[pivot[0]][pivot[1]])):
                    pivot = (i, j)
        if pivot is None:
            break
        pi, pj = pivot
        pv = work[pi][pj]
        a = tuple(work[i][pj] / pv for i in range(m))
        b = tuple(work[pi])
        for i in range(m):
            if a[i]:
                for j in range(n):
                    work[i][j] -= a[i] * b[j]
        a_vecs.append(a)
        b_vecs.append(b)
    return RankFactorization(tuple(a_vecs), tuple(b_vecs))


def check_factorization(q: Sequence[Sequence], fact: RankFactorization) -> bool:
    rows = _finite_matrix(q)
    m = len(rows)
    n = len(rows[0]) if rows else 0
    if any(len(a) != m for a in fact.a_vectors) or any(len(b) != n for b in fact.b_vectors):
        return False
    return fact.reconstruct(m, n) == [[Fraction(x) for x in r] for r in rows]


def _dense(instance: Instance):
    return instance.dense_q()


def _factor_for(instance: Instance, fact: RankFactorization | None) -> RankFactorization:
    q = _dense(instance)
    if fact is None:
        return factorize(q)
    if not check_factorization(q, fact):
        raise DomainError("factorization does not reproduce Q")
    return fact


def rank1_candidates(c: Sequence[Fraction], a: Sequence[Fraction]) -> CandidateSet:
    """Candidates of the one-parameter sweep over ``mu``.

    Breakpoints are ``-c_i / a_i``. Every open interval between breakpoints
    contributes one ``x``; each breakpoint contributes the two variants with
    the tied elements all in or all out.
    """
    m = len(c)
    breaks = sorted({-c[i] / a[i] for i in range(m) if a[i] != 0})
    out = set()

    def x_at(mu, ties_in: bool):
        chosen = []
        for i in range(m):
            v = c[i] + mu * a[i]
            if v < 0 or (ties_in and v == 0):
                chosen.append(i)
        return tuple(chosen)

    if not breaks:
        out.add(x_at(Fraction(0), False))
    else:
        probes = [breaks[0] - 1, breaks[-1] + 1]
        probes += [(x + y) / 2 for x, y in zip(breaks, breaks[1:])]
        for mu in probes:
            out.add(x_at(mu, False))
        for mu in breaks:
            out.add(x_at(mu, False))
            out.add(x_at(mu, True))
    return CandidateSet(tuple(sorted(out, key=set_key)))


def candidate_set(c: Sequence[Fraction], fact: RankFactorization,
                  cap: int = DEFAULT_CANDIDATE_CAP) -> CandidateSet:
    """Candidate first-side solutions for a rank-``r`` factorization."""
    m = len(c)
    r = fact.r
    c = [Fraction(x) for x in c]
    if r == 0:
        return CandidateSet((tuple(i for i in range(m) if c[i] < 0),))
    if math.comb(m, r) * 2**r > cap:
        raise EnumerationTooLarge(cap, "basis enumeration")
    a_rows = [tuple(fact.a_vectors[p][i] for p in range(r)) for i in range(m)]
    out: set[tuple[int, ...]] = set()
    for basis in itertools.combinations(range(m), r):
        # vertex of the arrangement: a_i . lam = -c_i for i in the basis
        lam = solve_square([a_rows[i] for i in basis], [-c[i] for i in basis])
        if lam is None:
            continue
        fixed, ties = [], []
        for j in range(m):
            if j in basis:
                continue
            reduced = c[j] + sum((x * y for x, y in zip(a_rows[j], lam)), Fraction(0))
            if reduced < 0:
                fixed.append(j)
            elif reduced == 0:
                ties.append(j)
        free = list(basis) + ties
        for bits in itertools.product((0, 1), repeat=len(free)):
            out.add(tuple(sorted(fixed + [i for i, bit in zip(free, bits) if bit])))
            if len(out) > cap:
                raise EnumerationTooLarge(cap, "candidate set")
    return CandidateSet(tuple(sorted(out, key=set_key)))


def _induced(instance: Instance, fact: RankFactorization, x) -> list:
    h = list(instance.d)
    for a, b in zip(fact.a_vectors, fact.b_vectors):
        coef = sum((a[i] for i in x), Fraction(0))
        if coef:
            h = [hj + coef * bj for hj, bj in zip(h, b)]
    return h


def _solve_over(instance: Instance, fact: RankFactorization, cands: CandidateSet,
                lcop: Callable) -> Solution:
    best = None
    for x in cands:
        y = lcop(instance.family2, _induced(instance, fact, x))
        if y is None:
            continue
        value = evaluate_objective(instance, x, y)
        if best is None or value < best.objective:
            best = Solution(x, y, value)
    if best is None:
        raise NoSolutionError("second family has no feasible set")
    return best


def _exact_lcop(family, w):
    return families.lcop_solve(family, w)[0]


def _check_side(instance: Instance) -> None:
    if not isinstance(instance.family1, Unconstrained):
        raise PreconditionError("requires family1 unconstrained")


def solve_rank1_unconstrained_side(instance: Instance,
                                   fact: RankFactorization | None = None) -> Solution:
    _check_side(instance)
    fact = _factor_for(instance, fact)
    if fact.r != 1:
        raise PreconditionError(f"requires rank(Q) = 1, got {fact.r}")
    cands = rank1_candidates(instance.c, fact.a_vectors[0])
    return _solve_over(instance, fact, cands, _exact_lcop)


def rankr_candidates(instance: Instance, fact: RankFactorization | None = None,
                     cap: int = DEFAULT_CANDIDATE_CAP) -> CandidateSet:
    fact = _factor_for(instance, fact)
    return candidate_set(instance.c, fact, cap)


def solve_rankr_unconstrained_side(instance: Instance, fact: RankFactorization | None = None,
                                   cap: int = DEFAULT_CANDIDATE_CAP) -> Solution:
    _check_side(instance)
    fact = _factor_for(instance, fact)
    return _solve_over(instance, fact, candidate_set(instance.c, fact, cap), _exact_lcop)


def solve_rankr_with_approximate_oracle(instance: Instance, oracle: Callable, alpha,
                                        fact: RankFactorization | None = None,
                                        cap: int = DEFAULT_CANDIDATE_CAP,
                                        ) -> ApproximateSolution:
    """Run the candidate scheme with an ``alpha``-approximate LCOP oracle.

    ``oracle(family, w)`` must return a feasible set of cost at most
    ``alpha`` times optimal for nonnegative ``w``. Every induced weight
    vector is checked for nonnegativity. The result is within ``alpha`` of
    optimal when ``c`` is nonnegative on the optimal first side, which holds
    in particular for nonnegative ``c``.
    """
    _check_side(instance)
    fact = _factor_for(instance, fact)
    alpha = Fraction(alpha)
    if alpha < 1:
        raise DomainError("alpha must be at least 1")

    def guarded(family, w):
        if any(x < 0 for x in w):
            raise PreconditionError("approximate oracle needs nonnegative induced weights")
        s = oracle(family, w)
        if s is None or not family.contains(s):
            raise PreconditionError("approximate oracle returned an infeasible set")
        return tuple(sorted(s))

    cands = candidate_set(instance.c, fact, cap)
    return ApproximateSolution(_solve_over(instance, fact, cands, guarded), alpha)
