"""Generated properties: oracle optimality, matroid axioms, objective algebra."""

import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from copic import Instance, NoSolutionError, evaluate_objective, format_cost, solve_bruteforce, to_cost
from copic.families import enumerate_family, lcop_solve

from . import helpers

seeds = st.integers(min_value=0, max_value=2**32 - 1)
fractions = st.fractions(min_value=-20, max_value=20, max_denominator=12)


@settings(max_examples=80, deadline=None)
@given(seeds)
def test_lcop_equals_enumeration_minimum(seed):
    rng = random.Random(seed)
    family = helpers.random_lcop_family(rng, rng.randint(1, 6))
    w = helpers.ints(rng, family.ground_size)
    feasible = list(enumerate_family(family))
    if not feasible:
        with pytest.raises(NoSolutionError):
            lcop_solve(family, w)
        return
    s, value = lcop_solve(family, w)
    best = min(sum((w[i] for i in f), Fraction(0)) for f in feasible)
    assert family.contains(s) and value == best == sum((w[i] for i in s), Fraction(0))


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_matroid_axioms(seed):
    rng = random.Random(seed)
    family = helpers.random_matroid(rng, rng.randint(1, 5))
    oracle = family.matroid()
    n = family.ground_size
    indep = [set(s) for r in range(n + 1) for s in itertools.combinations(range(n), r)
             if oracle.is_independent(s)]
    assert set() in indep
    for a in indep:
        for x in a:
            assert a - {x} in indep
        for b in indep:
            if len(b) > len(a):
                assert any(a | {y} in indep for y in b - a)
    # bases are the maximal independent sets
    rank = max(len(a) for a in indep)
    assert {tuple(sorted(a)) for a in indep if len(a) == rank} == set(family.enumerate())


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_objective_additive(seed):
    rng = random.Random(seed)
    m, n = rng.randint(1, 4), rng.randint(1, 4)
    q = [helpers.ints(rng, n) for _ in range(m)]
    c, d = helpers.ints(rng, m), helpers.ints(rng, n)
    inst = helpers.copic(q, c, d, helpers.random_matroid(rng, m), helpers.random_matroid(rng, n))
    s1 = [i for i in range(m) if rng.random() < 0.5]
    s2 = [j for j in range(n) if rng.random() < 0.5]
    extra = [i for i in range(m) if i not in s1 and rng.random() < 0.5]
    # adding first-side elements adds their linear and interaction terms
    gain = sum(c[i] + sum(q[i][j] for j in s2) for i in extra)
    assert evaluate_objective(inst, s1 + extra, s2) == evaluate_objective(inst, s1, s2) + gain


@given(fractions)
def test_costs_round_trip_exactly(x):
    assert to_cost(format_cost(x)) == x


@settings(max_examples=30, deadline=None)
@given(st.lists(fractions, min_size=4, max_size=4), st.lists(fractions, min_size=2, max_size=2))
def test_bruteforce_is_exact_for_rationals(entries, lin):
    q = [entries[:2], entries[2:]]
    inst = Instance(2, 2, q, lin, lin, helpers.random_uniform(random.Random(0), 2),
                    helpers.random_uniform(random.Random(1), 2))
    sol = solve_bruteforce(inst)
    assert isinstance(sol.objective, Fraction)
    assert sol.objective == evaluate_objective(inst, sol.s1, sol.s2)
