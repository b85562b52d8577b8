"""Data model for COPIC instances: exact costs, instances, solutions.

A COPIC instance asks for ``S1`` in one family over ``[m]`` and ``S2`` in
another family over ``[n]`` minimising

    sum_{i in S1, j in S2} q_ij + sum_{i in S1} c_i + sum_{j in S2} d_j.

All arithmetic is exact: finite costs are :class:`fractions.Fraction` and the
only non-finite value is the :data:`INF` sentinel, which is reserved for
interaction entries that forbid co-selection.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Iterable, Sequence, Union


class CopicError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(CopicError, ValueError):
    """An index or value lies outside its admissible range."""


class PreconditionError(CopicError):
    """A solver was called outside the class of instances it handles."""


class UnsupportedError(PreconditionError):
    """The requested capability is not available for this input."""


class NoSolutionError(CopicError):
    """The instance has no feasible solution of finite cost."""


class InfeasibleError(NoSolutionError):
    """A flow or assignment subproblem has no feasible solution."""


class NegativeCycleError(CopicError):
    """A negative-cost cycle makes a shortest path problem unbounded."""

    def __init__(self, message: str, cycle: Sequence[int] = ()):
        super().__init__(message)
        self.cycle = tuple(cycle)


class EnumerationTooLarge(CopicError):
    """An exhaustive enumeration would exceed the configured cap."""

    def __init__(self, cap: int, what: str = "enumeration"):
        super().__init__(f"{what} exceeds cap of {cap}")
        self.cap = cap


class _Infinity:
    """Positive infinity that composes with exact rationals."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "INF"

    def __str__(self) -> str:
        return "inf"

    def __reduce__(self):
        return (_Infinity, ())

    def __hash__(self) -> int:
        return hash("copic-inf")

    def __eq__(self, other: object) -> bool:
        return other is self

    def __lt__(self, other: object) -> bool:
        return False

    def __le__(self, other: object) -> bool:
        return other is self

    def __gt__(self, other: object) -> bool:
        return other is not self

    def __ge__(self, other: object) -> bool:
        return True

    def __add__(self, other: object) -> "_Infinity":
        if isinstance(other, (_Infinity, int, Fraction)):
            return self
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        raise ArithmeticError("negative infinity is not a valid cost")

    def __sub__(self, other: object) -> "_Infinity":
        if isinstance(other, (int, Fraction)):
            return self
        raise ArithmeticError("inf - inf is undefined")

    def __mul__(self, other: object) -> Any:
        if isinstance(other, (int, Fraction)):
            if other > 0:
                return self
            if other == 0:
                return Fraction(0)
            raise ArithmeticError("negative multiple of inf")
        return NotImplemented

    __rmul__ = __mul__


INF = _Infinity()

Cost = Union[Fraction, _Infinity]


def is_inf(x: object) -> bool:
    return x is INF


def to_cost(value: Any) -> Cost:
    """Convert ints, Fractions, decimal strings or ``"inf"`` into a Cost.

    Floats are rejected: they would silently import rounding error.
    """
    if value is INF:
        return INF
    if isinstance(value, bool):
        raise TypeError("booleans are not costs")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, Fraction):
        return value
    if isinstance(value, str):
        text = value.strip()
        if text.lower() in ("inf", "+inf", "infinity", "+infinity"):
            return INF
        try:
            return Fraction(text)
        except (ValueError, ZeroDivisionError) as exc:
            raise DomainError(f"not a cost string: {value!r}") from exc
    if isinstance(value, float):
        raise TypeError("floating-point costs are not supported; use strings or Fractions")
    raise TypeError(f"cannot convert {type(value).__name__} to a cost")


def format_cost(value: Cost) -> str:
    """Exact string form: integers plainly, terminating decimals as decimals,
    everything else as ``p/q``."""
    if value is INF:
        return "inf"
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    den = value.denominator
    twos = fives = 0
    while den % 2 == 0:
        den //= 2
        twos += 1
    while den % 5 == 0:
        den //= 5
        fives += 1
    if den != 1:
        return f"{value.numerator}/{value.denominator}"
    digits = max(twos, fives)
    scaled = abs(value.numerator) * 10**digits // value.denominator
    sign = "-" if value < 0 else ""
    whole, frac = divmod(scaled, 10**digits)
    return f"{sign}{whole}.{frac:0{digits}d}"


def cost_sum(values: Iterable[Cost]) -> Cost:
    total: Cost = Fraction(0)
    for v in values:
        total = total + v
    return total


@dataclass(frozen=True)
class DiagonalCosts:
    """Diagonal interaction matrix: ``q_ii = a_i`` and zero elsewhere."""

    a: tuple[Cost, ...]

    def __post_init__(self):
        object.__setattr__(self, "a", tuple(to_cost(x) for x in self.a))

    @property
    def size(self) -> int:
        return len(self.a)

    def dense(self) -> tuple[tuple[Cost, ...], ...]:
        n = len(self.a)
        zero = Fraction(0)
        return tuple(tuple(self.a[i] if i == j else zero for j in range(n)) for i in range(n))


def _as_matrix(q: Any) -> tuple[tuple[Cost, ...], ...] | DiagonalCosts:
    if isinstance(q, DiagonalCosts):
        return q
    return tuple(tuple(to_cost(x) for x in row) for row in q)


@dataclass(frozen=True)
class Instance:
    """A COPIC instance.

    ``q`` is either a dense row-major matrix or :class:`DiagonalCosts`.
    Construction converts values to exact costs but does not validate
    shapes; call :func:`validate_instance` for that.
    """

    m: int
    n: int
    q: tuple[tuple[Cost, ...], ...] | DiagonalCosts
    c: tuple[Cost, ...]
    d: tuple[Cost, ...]
    family1: Any
    family2: Any

    def __post_init__(self):
        object.__setattr__(self, "q", _as_matrix(self.q))
        object.__setattr__(self, "c", tuple(to_cost(x) for x in self.c))
        object.__setattr__(self, "d", tuple(to_cost(x) for x in self.d))

    @classmethod
    def build(cls, q, c, d, family1, family2) -> "Instance":
        """Infer ``m`` and ``n`` from the linear cost vectors."""
        return cls(len(c), len(d), q, c, d, family1, family2)

    @property
    def is_diagonal(self) -> bool:
        return isinstance(self.q, DiagonalCosts)

    def dense_q(self) -> tuple[tuple[Cost, ...], ...]:
        if isinstance(self.q, DiagonalCosts):
            return self.q.dense()
        return self.q

    def entry(self, i: int, j: int) -> Cost:
        if isinstance(self.q, DiagonalCosts):
            return self.q.a[i] if i == j else Fraction(0)
        return self.q[i][j]

    def transposed(self) -> "Instance":
        """Swap the roles of the two sides."""
        if isinstance(self.q, DiagonalCosts):
            q = self.q
        else:
            q = tuple(zip(*self.q)) if self.q else tuple(() for _ in range(self.n))
        return Instance(self.n, self.m, q, self.d, self.c, self.family2, self.family1)


@dataclass(frozen=True)
class Solution:
    s1: tuple[int, ...]
    s2: tuple[int, ...]
    objective: Cost

    def __post_init__(self):
        object.__setattr__(self, "s1", tuple(sorted(self.s1)))
        object.__setattr__(self, "s2", tuple(sorted(self.s2)))

    def swapped(self) -> "Solution":
        return Solution(self.s2, self.s1, self.objective)


@dataclass(frozen=True)
class LinearizabilityCertificate:
    """Outcome of a linearizability test.

    ``a`` and ``b`` are present iff the verdict is positive; ``witness`` is
    present iff it is negative and carries a nonzero ``residual``.
    """

    linearizable: bool
    a: tuple[Cost, ...] | None = None
    b: tuple[Cost, ...] | None = None
    witness: dict | None = field(default=None, compare=False)

    @property
    def verdict(self) -> str:
        return "linearizable" if self.linearizable else "not-linearizable"


def set_key(s: Sequence[int]) -> tuple[int, tuple[int, ...]]:
    """Canonical order on index sets: by size, then lexicographically.

    Every enumeration and every tie-break in the package uses this order.
    """
    t = tuple(sorted(s))
    return (len(t), t)


def _check_indices(s: Iterable[int], size: int, side: str) -> tuple[int, ...]:
    out = tuple(sorted(set(s)))
    for i in out:
        if not isinstance(i, int) or i < 0 or i >= size:
            raise DomainError(f"index {i!r} out of range for {side} of size {size}")
    return out


def evaluate_objective(instance: Instance, s1: Iterable[int], s2: Iterable[int]) -> Cost:
    """Objective value of ``(s1, s2)``; family membership is not checked."""
    s1 = _check_indices(s1, instance.m, "side 1")
    s2 = _check_indices(s2, instance.n, "side 2")
    total: Cost = Fraction(0)
    if isinstance(instance.q, DiagonalCosts):
        both = set(s1).intersection(s2)
        for i in both:
            total = total + instance.q.a[i]
    else:
        for i in s1:
            row = instance.q[i]
            for j in s2:
                total = total + row[j]
    for i in s1:
        total = total + instance.c[i]
    for j in s2:
        total = total + instance.d[j]
    return total


def validate_instance(instance: Instance) -> list[str]:
    """List every violated structural invariant; empty means well formed."""
    problems: list[str] = []
    m, n = instance.m, instance.n
    q = instance.q
    if isinstance(q, DiagonalCosts):
        if m != n:
            problems.append("diagonal Q requires m == n")
        if q.size != m or q.size != n:
            problems.append("Q shape mismatch")
    else:
        if len(q) != m:
            problems.append("Q row count mismatch")
        if any(len(row) != n for row in q):
            problems.append("Q column count mismatch")
    if len(instance.c) != m:
        problems.append("c length mismatch")
    if len(instance.d) != n:
        problems.append("d length mismatch")
    g1 = getattr(instance.family1, "ground_size", None)
    g2 = getattr(instance.family2, "ground_size", None)
    if g1 != m:
        problems.append("family1 ground size mismatch")
    if g2 != n:
        problems.append("family2 ground size mismatch")
    if any(x is INF for x in instance.c) or any(x is INF for x in instance.d):
        problems.append("inf outside Q")
    return problems
