import itertools
import random
from fractions import Fraction

import pytest

from copic import UnsupportedError, linearizable_bruteforce
from copic.families import (
    BipartitePerfectMatching,
    GraphicMatroid,
    StPath,
    Unconstrained,
    UniformMatroid,
)
from copic.linearize import (
    check_2index_decomposition,
    check_3index_decomposition,
    check_copic_linearizable,
    check_pattern_decomposition,
    cvp_membership,
    verify_linearization,
)

from . import helpers


def test_2index_examples():
    dec = check_2index_decomposition([[1, 6], [2, 7]])
    assert dec.components == ((1, 2), (0, 5))
    dec = check_2index_decomposition([[0, 1], [1, 0]])
    assert not dec and dec.witness == {"index": (1, 1), "residual": -2}
    assert check_2index_decomposition([[4, 4], [4, 4], [4, 4]]).components == ((4, 4, 4), (0, 0))


def test_3index_constant_tensor():
    a, b, c = check_3index_decomposition([[[3] * 2 for _ in range(2)] for _ in range(2)]).components
    assert {x for row in a + b + c for x in row} == {1}


def _random_3(rng, m, n):
    a = [[Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(m)] for _ in range(m)]
    b = [[Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(n)] for _ in range(m)]
    c = [[Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(n)] for _ in range(m)]
    return [[[a[i][j] + b[i][k] + c[j][k] for k in range(n)] for j in range(m)] for i in range(m)]


def test_3index_round_trip_and_perturbation():
    rng = random.Random(8)
    for _ in range(10):
        t = _random_3(rng, 3, 3)
        a, b, c = check_3index_decomposition(t).components
        for i, j, k in itertools.product(range(3), repeat=3):
            assert a[i][j] + b[i][k] + c[j][k] == t[i][j][k]
        i, j, k = rng.randint(1, 2), rng.randint(1, 2), rng.randint(1, 2)
        t[i][j][k] += 1
        dec = check_3index_decomposition(t)
        assert not dec and dec.witness == {"index": (i, j, k), "residual": 1}


def test_3index_identity_vacuous_at_anchor():
    rng = random.Random(1)
    t = [[[rng.randint(-9, 9) for _ in range(3)] for _ in range(3)] for _ in range(3)]
    for i, j, k in itertools.product(range(3), repeat=3):
        if 0 in (i, j, k):
            assert (t[i][j][k] + t[0][0][k] + t[0][j][0] + t[i][0][0]
                    == t[0][0][0] + t[i][j][0] + t[0][j][k] + t[i][0][k])


def test_pattern_matches_2index():
    rng = random.Random(20)
    for _ in range(20):
        m, n = rng.randint(1, 4), rng.randint(1, 4)
        if rng.random() < 0.5:
            a, b = helpers.ints(rng, m), helpers.ints(rng, n)
            q = [[a[i] + b[j] for j in range(n)] for i in range(m)]
        else:
            q = [helpers.ints(rng, n) for _ in range(m)]
        assert bool(check_pattern_decomposition(q, [[0], [1]])) == bool(
            check_2index_decomposition(q))


def test_pattern_zero_and_four_index():
    zero = check_pattern_decomposition([[[0, 0], [0, 0]]] * 2, [[0, 1], [0, 2], [1, 2]])
    assert all(v == 0 for comp in zero.components for v in comp.values())

    rng = random.Random(4)
    patterns = [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)]
    parts = [{idx: Fraction(rng.randint(-5, 5)) for idx in itertools.product(range(2), repeat=3)}
             for _ in patterns]
    def entry(idx):
        return sum(parts[p][tuple(idx[ax] for ax in pat)] for p, pat in enumerate(patterns))

    t = [[[[entry((i, j, k, l)) for l in range(2)] for k in range(2)] for j in range(2)]
         for i in range(2)]
    dec = check_pattern_decomposition(t, patterns)
    assert dec
    for idx in itertools.product(range(2), repeat=4):
        total = sum(dec.components[p][tuple(idx[ax] for ax in pat)]
                    for p, pat in enumerate(patterns))
        assert total == t[idx[0]][idx[1]][idx[2]][idx[3]]


def test_cvp_examples():
    res = cvp_membership([[2], [2], [2]], 1, UniformMatroid(3, 2))
    assert res.certificate.constants == (4,)
    k3 = GraphicMatroid.complete(3)
    assert cvp_membership([[1, 1, 1]], 2, k3).certificate.constants == (2,)
    bad = cvp_membership([[1, 2, 3]], 2, k3)
    assert not bad and bad.witness["residual"] != 0
    assert not cvp_membership([[0, 1]], 2, Unconstrained(2))
    assert cvp_membership([[0, 0]], 2, Unconstrained(2))


def test_cvp_pm_closed_form_matches_enumeration():
    rng = random.Random(6)
    pm = BipartitePerfectMatching(3)
    for _ in range(20):
        if rng.random() < 0.5:
            s, t = helpers.ints(rng, 3), helpers.ints(rng, 3)
            row = [s[i] + t[j] for i in range(3) for j in range(3)]
        else:
            row = helpers.ints(rng, 9, -2, 2)
        sums = {sum(row[e] for e in m) for m in pm.enumerate()}
        res = cvp_membership([row], 2, pm)
        assert bool(res) == (len(sums) == 1)
        if not res:
            s1, s2 = res.witness["sets"]
            assert pm.contains(s1) and pm.contains(s2)
            assert sum(row[e] for e in s2) - sum(row[e] for e in s1) == res.witness["residual"]


def test_copic_examples():
    u = UniformMatroid(2, 1)
    cert = check_copic_linearizable(helpers.copic([[1, 6], [2, 7]], [0, 0], [0, 0], u, u))
    assert cert.linearizable and (cert.a, cert.b) == ((1, 2), (0, 5))
    inst = helpers.copic([[0, 1], [1, 0]], [0, 0], [0, 0], u, u)
    assert not check_copic_linearizable(inst).linearizable
    assert not linearizable_bruteforce(inst).linearizable
    inst = helpers.copic([[1, 2, 3]], [0], [0, 0, 0], Unconstrained(1), GraphicMatroid.complete(3))
    assert not check_copic_linearizable(inst).linearizable


def test_uniform_scaling_of_linearization():
    inst = helpers.copic([[1, 6, 1], [2, 7, 2]], [0, 0], [0, 0, 0], UniformMatroid(2, 1),
                         UniformMatroid(3, 2))
    cert = check_copic_linearizable(inst)
    assert (cert.a, cert.b) == ((2, 4), (0, 5, 0))
    assert verify_linearization(inst, cert.a, cert.b)


def test_unsupported_pair():
    path = StPath(3, ((0, 1), (1, 2), (0, 2)), 0, 2)
    inst = helpers.copic([[1, 2, 3]] * 3, [0] * 3, [0] * 3, UniformMatroid(3, 1), path)
    with pytest.raises(UnsupportedError):
        check_copic_linearizable(inst)


@pytest.mark.parametrize("f1,f2", [
    (BipartitePerfectMatching(3), BipartitePerfectMatching(2)),
    (BipartitePerfectMatching(3), UniformMatroid(4, 2)),
    (GraphicMatroid.complete(4), BipartitePerfectMatching(3)),
])
def test_pm_pairs_agree_with_bruteforce(f1, f2):
    rng = random.Random(f"{f1}{f2}")
    m, n = f1.ground_size, f2.ground_size
    for trial in range(12):
        if trial % 2:
            q = [helpers.ints(rng, n, -1, 1) for _ in range(m)]
        else:
            # a sum of one-sided terms plus an occasional spoiler
            a, b = helpers.ints(rng, m), helpers.ints(rng, n)
            q = [[a[i] + b[j] for j in range(n)] for i in range(m)]
            if trial % 4 == 2:
                q[rng.randrange(m)][rng.randrange(n)] += 1
        inst = helpers.copic(q, [0] * m, [0] * n, f1, f2)
        cert = check_copic_linearizable(inst)
        assert cert.linearizable == linearizable_bruteforce(inst).linearizable
        if cert.linearizable:
            assert verify_linearization(inst, cert.a, cert.b)
