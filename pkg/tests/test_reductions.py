import itertools
import random

import pytest

from copic import DomainError, NoSolutionError
from copic.reductions import (
    KCardCutInstance,
    cut_arcs,
    enumerate_cuts,
    solve_kcard_cut_via_copic,
)

from . import helpers


def test_single_arc():
    res = solve_kcard_cut_via_copic(KCardCutInstance(2, 2, [[1, 2], [3, 4]], 1))
    assert (res.left, res.right, res.cost, res.k1, res.k2) == ((0,), (1,), 1, 1, 1)
    assert cut_arcs(KCardCutInstance(2, 2, [[1, 2], [3, 4]], 1), res.left, res.right) == [(0, 0)]


def test_full_cut():
    q = [[1, -2, 3], [4, 5, -6]]
    res = solve_kcard_cut_via_copic(KCardCutInstance(2, 3, q, 6))
    assert (res.left, res.right, res.cost) == ((0, 1), (), 5)


def test_only_square_split():
    rng = random.Random(0)
    q = [helpers.ints(rng, 3) for _ in range(3)]
    inst = KCardCutInstance(3, 3, q, 4)
    res = solve_kcard_cut_via_copic(inst)
    assert (res.k1, res.k2) == (2, 2) and res.cost == enumerate_cuts(inst).cost
    assert len(cut_arcs(inst, res.left, res.right)) == 4


def test_bijection_with_exhaustive_cuts():
    rng = random.Random(12)
    for m, n in itertools.product(range(1, 5), repeat=2):
        q = [helpers.ints(rng, n) for _ in range(m)]
        for k in range(1, m * n + 1):
            inst = KCardCutInstance(m, n, q, k)
            try:
                ref = enumerate_cuts(inst)
            except NoSolutionError:
                with pytest.raises(NoSolutionError):
                    solve_kcard_cut_via_copic(inst)
                continue
            res = solve_kcard_cut_via_copic(inst)
            assert res.cost == ref.cost
            arcs = cut_arcs(inst, res.left, res.right)
            assert len(arcs) == k and sum(q[i][j] for i, j in arcs) == res.cost


def test_validation():
    with pytest.raises(DomainError):
        KCardCutInstance(2, 2, [[1, 2]], 1)
    with pytest.raises(DomainError):
        KCardCutInstance(1, 1, [[1]], 2)
    with pytest.raises(NoSolutionError):
        solve_kcard_cut_via_copic(KCardCutInstance(2, 2, [[1, 2], [3, 4]], 3))
