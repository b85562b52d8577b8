"""Exhaustive reference solvers.

These are deliberately naive: they exist to be trusted, and every faster
solver in the package is tested against them.
"""

from __future__ import annotations

import concurrent.futures
from fractions import Fraction

from . import families
from .core import (
    INF,
    EnumerationTooLarge,
    Instance,
    LinearizabilityCertificate,
    NoSolutionError,
    Solution,
    evaluate_objective,
)
from .exact import LinearSystem

DEFAULT_PAIR_CAP = 10**7


def _enumerate_both(instance: Instance, cap: int):
    f1 = list(families.enumerate_family(instance.family1, cap))
    f2 = list(families.enumerate_family(instance.family2, cap))
    if len(f1) * len(f2) > cap:
        raise EnumerationTooLarge(cap, "pair enumeration")
    return f1, f2


def _best_in_block(instance: Instance, block: list[tuple[int, ...]], f2: list[tuple[int, ...]],
                   offset: int):
    """Best ``(objective, i1, i2)`` over ``block x f2``; indices are global
    enumeration positions so blocks can be merged deterministically."""
    best = None
    for k, s1 in enumerate(block):
        for i2, s2 in enumerate(f2):
            value = evaluate_objective(instance, s1, s2)
            if value is INF:
                continue
            if best is None or value < best[0]:
                best = (value, offset + k, i2)
    return best


def solve_bruteforce(instance: Instance, cap: int = DEFAULT_PAIR_CAP, workers: int = 1) -> Solution:
    """Globally optimal solution by evaluating every feasible pair.

    Ties go to the first pair in enumeration order, which is canonical order
    on ``s1`` and then on ``s2``. With ``workers > 1`` the first side is split
    into blocks evaluated in separate processes; the merge keeps the same
    tie rule, so the answer does not depend on the worker count.
    """
    f1, f2 = _enumerate_both(instance, cap)
    if workers <= 1 or len(f1) < 2:
        results = [_best_in_block(instance, f1, f2, 0)]
    else:
        size = -(-len(f1) // workers)
        blocks = [(f1[i:i + size], i) for i in range(0, len(f1), size)]
        with concurrent.futures.ProcessPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(_best_in_block, instance, b, f2, off) for b, off in blocks]
            results = [f.result() for f in futures]
    results = [r for r in results if r is not None]
    if not results:
        raise NoSolutionError("no feasible pair with finite objective")
    value, i1, i2 = min(results, key=lambda r: (r[0], r[1], r[2]))
    return Solution(f1[i1], f2[i2], value)


def _induced_weights(instance: Instance, s1) -> list:
    h = list(instance.d)
    for j in range(instance.n):
        for i in s1:
            h[j] = h[j] + instance.entry(i, j)
    return h


def solve_by_side_enumeration(instance: Instance, side: int = 1,
                              cap: int = families.DEFAULT_ENUM_CAP) -> Solution:
    """Enumerate one side and solve the induced linear problem on the other.

    For fixed ``S1`` the objective is linear in ``S2`` with weights
    ``h_j = d_j + sum_{i in S1} q_ij``. Elements whose weight is ``inf`` are
    excluded from the second side for that candidate.
    """
    if side == 2:
        return solve_by_side_enumeration(instance.transposed(), 1, cap).swapped()
    if side != 1:
        raise ValueError("side must be 1 or 2")
    best = None
    for s1 in families.enumerate_family(instance.family1, cap):
        h = _induced_weights(instance, s1)
        found = families.lcop_solve_avoiding(instance.family2, h)
        if found is None:
            continue
        s2, value = found
        total = sum((instance.c[i] for i in s1), Fraction(0)) + value
        if best is None or total < best.objective:
            best = Solution(s1, s2, total)
    if best is None:
        raise NoSolutionError("no feasible pair with finite objective")
    return best


def linearizable_bruteforce(instance: Instance, cap: int = families.DEFAULT_ENUM_CAP,
                            ) -> LinearizabilityCertificate:
    """Decide linearizability by solving the affine system over all pairs.

    Unknowns are ``a_0..a_{m-1}, b_0..b_{n-1}``; each feasible pair
    contributes ``sum_{S1} a + sum_{S2} b = sum_{S1 x S2} q``. An inconsistent
    row yields a witness: pairs and multipliers whose left-hand sides cancel
    while the right-hand sides leave a nonzero residual.
    """
    f1, f2 = _enumerate_both(instance, cap)
    m = instance.m
    system = LinearSystem(m + instance.n)
    pairs = []
    for s1 in f1:
        for s2 in f2:
            rhs = sum((instance.entry(i, j) for i in s1 for j in s2), Fraction(0))
            tag = len(pairs)
            pairs.append((s1, s2))
            if rhs is INF:
                return LinearizabilityCertificate(False, witness={
                    "terms": [(Fraction(1), s1, s2)], "residual": INF})
            coeffs = {i: 1 for i in s1}
            coeffs.update({m + j: 1 for j in s2})
            bad = system.add(coeffs, rhs, tag)
            if bad is not None:
                terms = [(coef, *pairs[t]) for t, coef in sorted(bad.combination.items())]
                return LinearizabilityCertificate(False, witness={
                    "terms": terms, "residual": bad.residual})
    x = system.solution()
    return LinearizabilityCertificate(True, tuple(x[:m]), tuple(x[m:]))
