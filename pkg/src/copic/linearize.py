"""Linearizability of the interaction term.

``Q`` is linearizable over ``F1 x F2`` when vectors ``a`` and ``b`` exist
with ``sum_{S1 x S2} q_ij = sum_{S1} a_i + sum_{S2} b_j`` for every feasible
pair. For the family pairs handled here linearizability reduces to a
decomposition of ``Q`` (or of ``Q`` reshaped into a tensor when a side is an
assignment family) into terms that each miss one index. The decompositions
are anchored at index 0 throughout.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import families
from .core import (
    INF,
    EnumerationTooLarge,
    Instance,
    LinearizabilityCertificate,
    UnsupportedError,
    to_cost,
)
from .exact import LinearSystem
from .families import (
    BipartitePerfectMatching,
    GraphicMatroid,
    Unconstrained,
    UniformMatroid,
)

HALF = Fraction(1, 2)
THIRD = Fraction(1, 3)


@dataclass(frozen=True)
class DecompositionResult:
    """Outcome of a decomposition test; truthy iff decomposable.

    ``components`` holds the recovered terms; ``witness`` holds the first
    failing index (lexicographic) and its nonzero residual.
    """

    components: tuple | None = None
    witness: dict | None = None

    def __bool__(self) -> bool:
        return self.components is not None


def _finite(values) -> list:
    out = [to_cost(x) for x in values]
    if any(x is INF for x in out):
        raise UnsupportedError("decomposition needs finite entries")
    return out


def check_2index_decomposition(q: Sequence[Sequence]) -> DecompositionResult:
    """``q_ij = a_i + b_j`` with ``a_i = q_i0`` and ``b_j = q_0j - q_00``."""
    rows = [_finite(r) for r in q]
    if not rows or not rows[0]:
        return DecompositionResult(((Fraction(0),) * len(rows), ()))
    a = tuple(r[0] for r in rows)
    b = tuple(x - rows[0][0] for x in rows[0])
    for i, r in enumerate(rows):
        for j, x in enumerate(r):
            residual = x - a[i] - b[j]
            if residual:
                return DecompositionResult(witness={"index": (i, j), "residual": residual})
    return DecompositionResult((a, b))


def check_3index_decomposition(t) -> DecompositionResult:
    """``t_ijk = A_ij + B_ik + C_jk``.

    Tested through the identity
    ``t_ijk + t_00k + t_0j0 + t_i00 = t_000 + t_ij0 + t_0jk + t_i0k``; when it
    holds everywhere the components are built directly from slices through
    the anchor.
    """
    t = [[_finite(row) for row in plane] for plane in t]
    ni = len(t)
    nj = len(t[0]) if ni else 0
    nk = len(t[0][0]) if nj else 0
    if not (ni and nj and nk):
        return DecompositionResult((
            tuple(tuple(Fraction(0) for _ in range(nj)) for _ in range(ni)),
            tuple(tuple(Fraction(0) for _ in range(nk)) for _ in range(ni)),
            tuple(tuple(Fraction(0) for _ in range(nk)) for _ in range(nj))))
    for i, j, k in itertools.product(range(ni), range(nj), range(nk)):
        residual = (t[i][j][k] + t[0][0][k] + t[0][j][0] + t[i][0][0]
                    - t[0][0][0] - t[i][j][0] - t[0][j][k] - t[i][0][k])
        if residual:
            return DecompositionResult(witness={"index": (i, j, k), "residual": residual})
    t000 = t[0][0][0]
    a = tuple(tuple(t[i][j][0] - HALF * t[0][j][0] - HALF * t[i][0][0] + THIRD * t000
                    for j in range(nj)) for i in range(ni))
    b = tuple(tuple(t[i][0][k] - HALF * t[0][0][k] - HALF * t[i][0][0] + THIRD * t000
                    for k in range(nk)) for i in range(ni))
    c = tuple(tuple(t[0][j][k] - HALF * t[0][0][k] - HALF * t[0][j][0] + THIRD * t000
                    for k in range(nk)) for j in range(nj))
    return DecompositionResult((a, b, c))


def _shape(t) -> tuple[int, ...]:
    dims = []
    while isinstance(t, (list, tuple)):
        dims.append(len(t))
        if not t:
            break
        t = t[0]
    return tuple(dims)


def _at(t, idx):
    for i in idx:
        t = t[i]
    return t


def check_pattern_decomposition(t, patterns: Sequence[Sequence[int]],
                                cap: int = 10**5) -> DecompositionResult:
    """Write ``t`` as a sum of tensors, one per pattern, where the pattern
    lists the axes its tensor depends on.

    Components come back as one dict per pattern, keyed by the index tuple
    restricted to the pattern's axes. Free unknowns are fixed at zero.
    """
    shape = _shape(t)
    patterns = [tuple(sorted(p)) for p in patterns]
    for p in patterns:
        if len(p) >= len(shape) or any(not 0 <= ax < len(shape) for ax in p):
            raise ValueError(f"pattern {p} is not a proper subset of the axes")
    slots = {}
    for pi, p in enumerate(patterns):
        for sub in itertools.product(*(range(shape[ax]) for ax in p)):
            slots[(pi, sub)] = len(slots)
    equations = 1
    for s in shape:
        equations *= s
    if equations > cap or len(slots) > cap:
        raise EnumerationTooLarge(cap, "pattern system")
    system = LinearSystem(len(slots))
    for idx in itertools.product(*(range(s) for s in shape)):
        value = to_cost(_at(t, idx))
        if value is INF:
            raise UnsupportedError("decomposition needs finite entries")
        coeffs = {slots[(pi, tuple(idx[ax] for ax in p))]: 1 for pi, p in enumerate(patterns)}
        bad = system.add(coeffs, value, idx)
        if bad is not None:
            return DecompositionResult(witness={"index": idx, "residual": bad.residual})
    x = system.solution()
    comps = tuple({sub: x[k] for (pi, sub), k in slots.items() if pi == i}
                  for i in range(len(patterns)))
    return DecompositionResult(comps)


# ---------------------------------------------------------------------------
# constant objective property


@dataclass(frozen=True)
class ConstantObjectiveCertificate:
    """``constants[v]`` is the common value of ``sum_{i in S} vector_v[i]``
    over all feasible ``S``. Side 1 tests the columns of ``Q`` against
    ``F1``; side 2 tests the rows against ``F2``."""

    side: int
    constants: tuple


@dataclass(frozen=True)
class CvpResult:
    certificate: ConstantObjectiveCertificate | None
    witness: dict | None = None

    def __bool__(self) -> bool:
        return self.certificate is not None


def _complete_index(g: GraphicMatroid) -> dict[frozenset, int]:
    return {frozenset(e): idx for idx, e in enumerate(g.edges)}


def _vector_cvp(v: list, family, cap: int):
    """Return ``(K, None)`` if every feasible set has sum ``K`` under ``v``,
    else ``(None, (S, S'))`` for two sets with different sums."""
    if isinstance(family, Unconstrained):
        for i, x in enumerate(v):
            if x != 0:
                return None, ((), (i,))
        return Fraction(0), None
    if isinstance(family, UniformMatroid):
        g, k = family.ground_size, family.k
        if k == g:
            return sum(v, Fraction(0)), None
        if k == 0:
            return Fraction(0), None
        for i in range(1, g):
            if v[i] != v[0]:
                others = [x for x in range(1, g) if x != i][: k - 1]
                s = tuple(sorted([0] + others))
                return None, (s, tuple(sorted(others + [i])))
        return k * v[0], None
    if isinstance(family, GraphicMatroid) and family.is_complete and family.vertices >= 3:
        p = family.vertices
        index = _complete_index(family)
        for e, f in itertools.combinations(range(len(v)), 2):
            shared = set(family.edges[e]) & set(family.edges[f])
            if v[e] == v[f] or not shared:
                continue
            (x,) = shared
            (y,) = set(family.edges[e]) - shared
            (z,) = set(family.edges[f]) - shared
            star_y = [index[frozenset((y, w))] for w in range(p) if w != y]
            t1 = tuple(sorted(star_y))
            t2 = tuple(sorted(set(star_y) - {e} | {f}))
            return None, (t1, t2)
        return (p - 1) * v[0], None
    if isinstance(family, BipartitePerfectMatching) and family.p >= 2:
        p = family.p
        r = [v[i * p:(i + 1) * p] for i in range(p)]
        dec = check_2index_decomposition(r)
        if dec:
            s, t = dec.components
            return sum(s, Fraction(0)) + sum(t, Fraction(0)), None
        i, j = dec.witness["index"]
        rest_rows = [x for x in range(p) if x not in (0, i)]
        rest_cols = [x for x in range(p) if x not in (0, j)]
        base = list(zip(rest_rows, rest_cols))
        m1 = [(0, 0), (i, j)] + base
        m2 = [(0, j), (i, 0)] + base
        return None, (tuple(sorted(a * p + b for a, b in m1)),
                      tuple(sorted(a * p + b for a, b in m2)))
    first = None
    for s in families.enumerate_family(family, cap):
        total = sum((v[i] for i in s), Fraction(0))
        if first is None:
            first = (s, total)
        elif total != first[1]:
            return None, (first[0], s)
    return (Fraction(0) if first is None else first[1]), None


def cvp_membership(q: Sequence[Sequence], side: int, family,
                   cap: int = families.DEFAULT_ENUM_CAP) -> CvpResult:
    rows = [_finite(r) for r in q]
    if side == 1:
        n = len(rows[0]) if rows else 0
        vectors = [[rows[i][j] for i in range(len(rows))] for j in range(n)]
    elif side == 2:
        vectors = rows
    else:
        raise ValueError("side must be 1 or 2")
    constants = []
    for idx, v in enumerate(vectors):
        k, pair = _vector_cvp(v, family, cap)
        if k is None:
            sums = [sum((v[i] for i in s), Fraction(0)) for s in pair]
            return CvpResult(None, {"vector": idx, "sets": pair,
                                    "residual": sums[1] - sums[0]})
        constants.append(k)
    return CvpResult(ConstantObjectiveCertificate(side, tuple(constants)))


# ---------------------------------------------------------------------------
# dispatch


def _degenerate(family) -> bool:
    """At most one feasible set, so any ``Q`` is trivially linearizable."""
    if isinstance(family, Unconstrained):
        return family.ground_size == 0
    if isinstance(family, UniformMatroid):
        return family.k in (0, family.ground_size)
    if isinstance(family, BipartitePerfectMatching):
        return family.p <= 1
    try:
        return len(list(itertools.islice(families.enumerate_family(family, 2), 2))) <= 1
    except EnumerationTooLarge:
        return False


def _kind(family) -> str | None:
    if isinstance(family, UniformMatroid):
        return "uniform"
    if isinstance(family, GraphicMatroid) and family.is_complete:
        return "tree"
    if isinstance(family, BipartitePerfectMatching):
        return "pm"
    if isinstance(family, Unconstrained):
        return "free"
    return None


def _base_size(family) -> int:
    if isinstance(family, UniformMatroid):
        return family.k
    if isinstance(family, GraphicMatroid):
        return family.vertices - 1
    return family.p


def _negative(witness: dict) -> LinearizabilityCertificate:
    return LinearizabilityCertificate(False, witness=witness)


def _pm_tensor(q, p):
    """Rows of ``q`` indexed by assignment edges become the first two axes."""
    return [[list(q[i * p + j]) for j in range(p)] for i in range(p)]


def _pm_vs_other(q, p: int, other_size: int) -> LinearizabilityCertificate:
    dec = check_3index_decomposition(_pm_tensor(q, p))
    if not dec:
        return _negative(dec.witness)
    a3, b3, c3 = dec.components
    n = len(q[0])
    a = tuple(other_size * a3[i][j] for i in range(p) for j in range(p))
    b = tuple(sum((b3[i][k] for i in range(p)), Fraction(0))
              + sum((c3[j][k] for j in range(p)), Fraction(0)) for k in range(n))
    return LinearizabilityCertificate(True, a, b)


def _pm_vs_pm(q, p1: int, p2: int) -> LinearizabilityCertificate:
    t = [[[[q[i * p1 + j][k * p2 + l] for l in range(p2)] for k in range(p2)]
          for j in range(p1)] for i in range(p1)]
    dec = check_pattern_decomposition(t, [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)])
    if not dec:
        return _negative(dec.witness)
    ca, cb, cc, cd = dec.components
    a = tuple(sum((ca[(i, j, k)] for k in range(p2)), Fraction(0))
              + sum((cb[(i, j, l)] for l in range(p2)), Fraction(0))
              for i in range(p1) for j in range(p1))
    b = tuple(sum((cc[(i, k, l)] for i in range(p1)), Fraction(0))
              + sum((cd[(j, k, l)] for j in range(p1)), Fraction(0))
              for k in range(p2) for l in range(p2))
    return LinearizabilityCertificate(True, a, b)


def _swap(cert: LinearizabilityCertificate) -> LinearizabilityCertificate:
    if cert.linearizable:
        return LinearizabilityCertificate(True, cert.b, cert.a)
    return cert


def check_copic_linearizable(instance: Instance,
                             cap: int = families.DEFAULT_ENUM_CAP) -> LinearizabilityCertificate:
    """Structural linearizability test for the supported family pairs.

    Raises :class:`UnsupportedError` for any other pair; callers fall back
    to the enumeration oracle.
    """
    q = [_finite(r) for r in instance.dense_q()]
    m, n = instance.m, instance.n
    f1, f2 = instance.family1, instance.family2
    zero_a, zero_b = (Fraction(0),) * m, (Fraction(0),) * n

    if _degenerate(f1):
        sets = list(families.enumerate_family(f1, 1))
        s1 = sets[0] if sets else ()
        b = tuple(sum((q[i][j] for i in s1), Fraction(0)) for j in range(n))
        return LinearizabilityCertificate(True, zero_a, b)
    if _degenerate(f2):
        return _swap(check_copic_linearizable(instance.transposed(), cap))

    k1, k2 = _kind(f1), _kind(f2)
    if k1 == "free":
        res = cvp_membership(q, 2, f2, cap)
        if not res:
            return _negative(res.witness)
        return LinearizabilityCertificate(True, res.certificate.constants, zero_b)
    if k2 == "free":
        res = cvp_membership(q, 1, f1, cap)
        if not res:
            return _negative(res.witness)
        return LinearizabilityCertificate(True, zero_a, res.certificate.constants)
    if k1 is None or k2 is None:
        raise UnsupportedError(
            f"no structural test for {type(f1).__name__} x {type(f2).__name__}")
    if k1 == "pm" and k2 == "pm":
        return _pm_vs_pm(q, f1.p, f2.p)
    if k1 == "pm":
        return _pm_vs_other(q, f1.p, _base_size(f2))
    if k2 == "pm":
        return _swap(check_copic_linearizable(instance.transposed(), cap))
    dec = check_2index_decomposition(q)
    if not dec:
        return _negative(dec.witness)
    alpha, beta = dec.components
    s1, s2 = _base_size(f1), _base_size(f2)
    return LinearizabilityCertificate(True, tuple(s2 * x for x in alpha),
                                      tuple(s1 * x for x in beta))


def verify_linearization(instance: Instance, a: Sequence, b: Sequence,
                         cap: int = families.DEFAULT_ENUM_CAP) -> bool:
    """Check a linearization against every enumerated feasible pair."""
    f1 = list(families.enumerate_family(instance.family1, cap))
    f2 = list(families.enumerate_family(instance.family2, cap))
    for s1 in f1:
        for s2 in f2:
            lhs = sum((instance.entry(i, j) for i in s1 for j in s2), Fraction(0))
            rhs = sum((a[i] for i in s1), Fraction(0)) + sum((b[j] for j in s2), Fraction(0))
            if lhs != rhs:
                return False
    return True
