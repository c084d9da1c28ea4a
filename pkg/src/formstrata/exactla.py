"""Exact rational linear algebra on small dense matrices.

Every value is a `fractions.Fraction`; no floating point enters at any stage.
Elimination pivots deterministically on the first nonzero entry of the current
column, so repeated runs take identical paths and return identical results.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Hashable, Mapping, Sequence

from .errors import BadIndexSet, NonSquare

Rational = Fraction

_ZERO = Fraction(0)
_ONE = Fraction(1)


def _frac(x) -> Fraction:
    return x if type(x) is Fraction else Fraction(x)


@dataclass(frozen=True)
class RationalMatrix:
    """Dense matrix of exact rationals, stored row-major."""

    rows: int
    cols: int
    entries: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if self.rows < 0 or self.cols < 0:
            raise ValueError("matrix dimensions must be nonnegative")
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(
                f"expected {self.rows * self.cols} entries, got {len(self.entries)}"
            )

    @staticmethod
    def from_rows(rows: Sequence[Sequence]) -> "RationalMatrix":
        nr = len(rows)
        nc = len(rows[0]) if nr else 0
        if any(len(row) != nc for row in rows):
            raise ValueError("rows have unequal lengths")
        return RationalMatrix(nr, nc, tuple(_frac(x) for row in rows for x in row))

    @staticmethod
    def zero(rows: int, cols: int) -> "RationalMatrix":
        return RationalMatrix(rows, cols, (_ZERO,) * (rows * cols))

    @staticmethod
    def identity(n: int) -> "RationalMatrix":
        return RationalMatrix(
            n, n, tuple(_ONE if i == j else _ZERO for i in range(n) for j in range(n))
        )

    def entry(self, i: int, j: int) -> Fraction:
        return self.entries[i * self.cols + j]

    def to_rows(self) -> list[list[Fraction]]:
        c = self.cols
        return [list(self.entries[i * c : (i + 1) * c]) for i in range(self.rows)]

    def transpose(self) -> "RationalMatrix":
        return RationalMatrix(
            self.cols,
            self.rows,
            tuple(self.entry(i, j) for j in range(self.cols) for i in range(self.rows)),
        )

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "RationalMatrix":
        return RationalMatrix(
            len(rows), len(cols), tuple(self.entry(i, j) for i in rows for j in cols)
        )

    def is_zero(self) -> bool:
        return all(e == 0 for e in self.entries)


def _integer_rows(m: RationalMatrix) -> list[list[int]]:
    # Scaling a row by the lcm of its denominators preserves rank.
    out = []
    for row in m.to_rows():
        scale = lcm(*(x.denominator for x in row)) if row else 1
        out.append([int(x * scale) for x in row])
    return out


def rank(m: RationalMatrix) -> int:
    """Exact rank over the rationals.

    Rows are cleared to integers first, then reduced fraction-free; all
    interior divisions are exact, which is checked as they happen.
    """
    a = _integer_rows(m)
    nr, nc = m.rows, m.cols
    prev = 1
    rk = 0
    for c in range(nc):
        if rk == nr:
            break
        pivot_row = next((i for i in range(rk, nr) if a[i][c]), None)
        if pivot_row is None:
            continue
        if pivot_row != rk:
            a[pivot_row], a[rk] = a[rk], a[pivot_row]
        piv = a[rk][c]
        arow = a[rk]
        for i in range(rk + 1, nr):
            ai = a[i]
            f = ai[c]
            for j in range(c, nc):
                q, rem = divmod(ai[j] * piv - f * arow[j], prev)
                if rem:
                    raise ArithmeticError("fraction-free elimination left a remainder")
                ai[j] = q
        prev = piv
        rk += 1
    return rk


def det(m: RationalMatrix) -> Fraction:
    """Determinant by exact Gaussian elimination with first-nonzero pivoting."""
    if m.rows != m.cols:
        raise NonSquare(f"determinant of a {m.rows}x{m.cols} matrix")
    n = m.rows
    a = m.to_rows()
    sign = 1
    result = _ONE
    for c in range(n):
        pivot_row = next((i for i in range(c, n) if a[i][c]), None)
        if pivot_row is None:
            return _ZERO
        if pivot_row != c:
            a[pivot_row], a[c] = a[c], a[pivot_row]
            sign = -sign
        piv = a[c][c]
        result *= piv
        ac = a[c]
        for i in range(c + 1, n):
            f = a[i][c]
            if f:
                fi = f / piv
                ai = a[i]
                for j in range(c + 1, n):
                    if ac[j]:
                        ai[j] -= fi * ac[j]
    return result if sign > 0 else -result


def _check_selection(sel: Sequence[int], bound: int, label: str) -> None:
    for a, b in zip(sel, sel[1:]):
        if not a < b:
            raise BadIndexSet(f"{label} indices must be strictly increasing")
    if sel and not (0 <= sel[0] and sel[-1] < bound):
        raise BadIndexSet(f"{label} index out of range 0..{bound - 1}")


def minor(m: RationalMatrix, rows: Sequence[int], cols: Sequence[int]) -> Fraction:
    """Determinant of the square submatrix selected by rows x cols."""
    if len(rows) != len(cols):
        raise BadIndexSet("row and column selections must have equal size")
    _check_selection(tuple(rows), m.rows, "row")
    _check_selection(tuple(cols), m.cols, "column")
    return det(m.submatrix(rows, cols))


def _int_matmul(a: list[list[int]], b: list[list[int]], n: int) -> list[list[int]]:
    out = [[0] * n for _ in range(n)]
    for i in range(n):
        ai = a[i]
        oi = out[i]
        for k in range(n):
            f = ai[k]
            if f:
                bk = b[k]
                for j in range(n):
                    oi[j] += f * bk[j]
    return out


def adjugate(m: RationalMatrix) -> RationalMatrix:
    """Adjugate (transposed cofactor matrix); valid for singular input too.

    Computed through the characteristic-polynomial recurrence after clearing
    denominators, so the core runs on plain integers.  The adjugate scales
    with degree n-1 in the entries, which undoes the clearing at the end.
    """
    if m.rows != m.cols:
        raise NonSquare("adjugate requires a square matrix")
    n = m.rows
    if n == 0:
        return m
    denom = lcm(*(e.denominator for e in m.entries))
    a = [[int(m.entry(i, j) * denom) for j in range(n)] for i in range(n)]
    nmat = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    for step in range(1, n):
        an = _int_matmul(a, nmat, n)
        tr = sum(an[i][i] for i in range(n))
        c, rem = divmod(-tr, step)
        if rem:
            raise ArithmeticError("characteristic recurrence left a remainder")
        for i in range(n):
            an[i][i] += c
        nmat = an
    scale = Fraction(1 if (n - 1) % 2 == 0 else -1, denom ** (n - 1))
    return RationalMatrix(n, n, tuple(scale * x for row in nmat for x in row))


def det_gradient(
    m: RationalMatrix,
    occurrences: Mapping[Hashable, Sequence[tuple[int, int]]],
) -> dict[Hashable, Fraction]:
    """Exact partial derivatives of det(m) for variables placed at given cells.

    Each cell listed for a variable must currently hold that variable's value;
    the derivative is then the sum of the signed cofactors over those cells.
    A variable with no occurrences gets derivative 0.
    """
    if m.rows != m.cols:
        raise NonSquare("det_gradient requires a square matrix")
    n = m.rows
    for var, occ in occurrences.items():
        for pos in occ:
            if len(pos) != 2 or not (0 <= pos[0] < n and 0 <= pos[1] < n):
                raise BadIndexSet(f"occurrence {pos!r} of variable {var!r} out of range")
    adj = adjugate(m)
    out: dict[Hashable, Fraction] = {}
    for var, occ in occurrences.items():
        total = _ZERO
        for i, j in occ:
            total += adj.entry(j, i)
        out[var] = total
    return out
