from fractions import Fraction

import pytest

from copic import (
    INF,
    DiagonalCosts,
    DomainError,
    Instance,
    Unconstrained,
    UniformMatroid,
    evaluate_objective,
    format_cost,
    to_cost,
    validate_instance,
)
from copic.core import Solution, set_key


def test_to_cost_parses_exactly():
    assert to_cost("-3.5") == Fraction(-7, 2)
    assert to_cost("2/3") == Fraction(2, 3)
    assert to_cost("inf") is INF
    assert to_cost(4) == 4 and isinstance(to_cost(4), Fraction)
    with pytest.raises(TypeError):
        to_cost(0.1)
    with pytest.raises(TypeError):
        to_cost(True)
    with pytest.raises(DomainError):
        to_cost("abc")


def test_infinity_arithmetic():
    assert INF + 5 is INF
    assert 5 + INF is INF
    assert INF > Fraction(10**100)
    assert not INF < 0
    assert min(INF, Fraction(3)) == 3
    with pytest.raises(ArithmeticError):
        -INF


@pytest.mark.parametrize("value,text", [
    (Fraction(5), "5"), (Fraction(-7, 2), "-3.5"), (Fraction(1, 3), "1/3"),
    (Fraction(-1, 8), "-0.125"), (INF, "inf"), (Fraction(0), "0"),
])
def test_format_cost(value, text):
    assert format_cost(value) == text
    assert to_cost(text) == value


def _inst(q, c, d):
    return Instance.build(q, c, d, Unconstrained(len(c)), Unconstrained(len(d)))


def test_evaluate_zero_interaction():
    assert evaluate_objective(_inst([[0, 0], [0, 0]], [1, 2], [3, 4]), [0], [1]) == 5


def test_evaluate_rank_one_cancellation():
    assert evaluate_objective(_inst([[2, 3], [-2, -3]], [0, 0], [0, 0]), [0, 1], [0, 1]) == 0


def test_evaluate_diagonal():
    inst = _inst(DiagonalCosts((5, -4)), [1, -2], [3, 1])
    assert evaluate_objective(inst, [1], [1]) == -5


def test_evaluate_inf_and_range():
    inst = _inst([[INF, 1]], [0], [0, 0])
    assert evaluate_objective(inst, [0], [0]) is INF
    assert evaluate_objective(inst, [0], [1]) == 1
    with pytest.raises(DomainError):
        evaluate_objective(inst, [1], [])


def test_validate_instance():
    good = Instance.build([[1, 2, 3], [4, 5, 6]], [0, 0], [0, 0, 0],
                          UniformMatroid(2, 1), Unconstrained(3))
    assert validate_instance(good) == []
    long_c = Instance(2, 3, good.q, (0, 0, 0), good.d, good.family1, good.family2)
    assert validate_instance(long_c) == ["c length mismatch"]
    inf_d = Instance(2, 3, good.q, good.c, (0, "inf", 0), good.family1, good.family2)
    assert validate_instance(inf_d) == ["inf outside Q"]
    diag = Instance(2, 3, DiagonalCosts((1, 2)), (0, 0), (0, 0, 0), good.family1, good.family2)
    assert "diagonal Q requires m == n" in validate_instance(diag)


def test_transpose_and_solution_order():
    inst = _inst([[1, 2, 3]], [4], [5, 6, 7])
    t = inst.transposed()
    assert (t.m, t.n) == (3, 1) and t.q == ((1,), (2,), (3,))
    assert evaluate_objective(t, [0, 2], [0]) == evaluate_objective(inst, [0], [0, 2])
    assert Solution((2, 0), (1,), 0).s1 == (0, 2)
    assert sorted([(1, 2), (0,), (), (0, 1)], key=set_key) == [(), (0,), (0, 1), (1, 2)]
