"""Exact rational linear algebra used by the factorisation and linearisation code."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Hashable, Mapping, Sequence


@dataclass(frozen=True)
class Inconsistency:
    """A row that reduced to ``0 = residual`` with ``residual != 0``.

    ``combination`` maps equation tags to the multipliers whose weighted sum
    of left-hand sides vanishes while the weighted right-hand sides sum to
    ``residual``.
    """

    tag: Hashable
    residual: Fraction
    combination: dict


class LinearSystem:
    """Incrementally built system ``A x = b`` over the rationals.

    Rows are kept in reduced row echelon form, so adding an equation costs one
    pass over the current pivots. Each stored row remembers which original
    equations it combines; an inconsistent equation is reported together with
    that combination.
    """

    def __init__(self, num_unknowns: int, track: bool = True):
        self.num_unknowns = num_unknowns
        self.track = track
        # pivot column -> (coefficients without pivot, rhs, combination)
        self._rows: dict[int, tuple[dict[int, Fraction], Fraction, dict]] = {}

    @property
    def rank(self) -> int:
        return len(self._rows)

    def add(self, coeffs: Mapping[int, Fraction], rhs, tag: Hashable = None) -> Inconsistency | None:
        row = {k: Fraction(v) for k, v in coeffs.items() if v != 0}
        rhs = Fraction(rhs)
        combo = {tag: Fraction(1)} if self.track else {}
        for p in [p for p in row if p in self._rows]:
            factor = row.pop(p, None)
            if factor is None:
                continue
            other, orhs, ocombo = self._rows[p]
            for k, v in other.items():
                nv = row.get(k, Fraction(0)) - factor * v
                if nv:
                    row[k] = nv
                else:
                    row.pop(k, None)
            rhs -= factor * orhs
            if self.track:
                for t, v in ocombo.items():
                    nv = combo.get(t, Fraction(0)) - factor * v
                    if nv:
                        combo[t] = nv
                    else:
                        combo.pop(t, None)
        if not row:
            if rhs != 0:
                return Inconsistency(tag, rhs, combo)
            return None
        pivot = min(row)
        scale = row.pop(pivot)
        row = {k: v / scale for k, v in row.items()}
        rhs /= scale
        if self.track:
            combo = {t: v / scale for t, v in combo.items()}
        # keep the echelon form reduced: clear the new pivot from old rows
        for p, (other, orhs, ocombo) in list(self._rows.items()):
            factor = other.pop(pivot, None)
            if factor is None:
                continue
            for k, v in row.items():
                nv = other.get(k, Fraction(0)) - factor * v
                if nv:
                    other[k] = nv
                else:
                    other.pop(k, None)
            orhs -= factor * rhs
            if self.track:
                for t, v in combo.items():
                    nv = ocombo.get(t, Fraction(0)) - factor * v
                    if nv:
                        ocombo[t] = nv
                    else:
                        ocombo.pop(t, None)
            self._rows[p] = (other, orhs, ocombo)
        self._rows[pivot] = (row, rhs, combo)
        return None

    def solution(self) -> list[Fraction]:
        """One solution, with every free unknown set to zero."""
        x = [Fraction(0)] * self.num_unknowns
        for p, (_, rhs, _) in self._rows.items():
            x[p] = rhs
        return x


def solve_square(a: Sequence[Sequence[Fraction]], b: Sequence[Fraction]) -> list[Fraction] | None:
    """Solve ``a x = b`` for square ``a``; ``None`` if ``a`` is singular."""
    n = len(a)
    aug = [[Fraction(v) for v in row] + [Fraction(bv)] for row, bv in zip(a, b)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if piv is None:
            return None
        aug[col], aug[piv] = aug[piv], aug[col]
        pv = aug[col][col]
        aug[col] = [v / pv for v in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [rv - f * cv for rv, cv in zip(aug[r], aug[col])]
    return [aug[r][n] for r in range(n)]


def rank(matrix: Sequence[Sequence[Fraction]]) -> int:
    rows = [[Fraction(v) for v in row] for row in matrix]
    if not rows:
        return 0
    ncols = len(rows[0])
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][col] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        for i in range(r + 1, len(rows)):
            if rows[i][col] != 0:
                f = rows[i][col] / rows[r][col]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        r += 1
        if r == len(rows):
            break
    return r
