"""Block coefficient matrices whose rank detects shared roots of a tuple.

For a tuple of r+1 forms of degree d and a block count k (1 <= k <= d), the
matrix has (r+1)k rows and d+k columns.  Block b (0 <= b < k) holds one copy
of every form's coefficient row, shifted right by b: row b(r+1)+i has the
coefficients of form i in columns b..b+d.  The tuple shares roots of total
multiplicity at least d-k+1 exactly when the rank drops below 2k.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from .errors import BadIndexSet, BadK, PreconditionNotMet
from .exactla import RationalMatrix, rank
from .forms import FormTuple

_ZERO = Fraction(0)


def _check_k(k: int, d: int) -> None:
    if not isinstance(k, int) or isinstance(k, bool) or not 1 <= k <= d:
        raise BadK(f"block count {k!r} outside 1..{d}")


@dataclass(frozen=True)
class ResultantMatrix:
    """Assembled block matrix plus the cells each coefficient occupies."""

    k: int
    d: int
    r: int
    matrix: RationalMatrix
    occurrences: dict[tuple[int, int], tuple[tuple[int, int], ...]]


def build_matrix(t: FormTuple, k: int) -> ResultantMatrix:
    _check_k(k, t.d)
    r, d = t.r, t.d
    nrows = (r + 1) * k
    ncols = d + k
    entries = [_ZERO] * (nrows * ncols)
    occ: dict[tuple[int, int], tuple[tuple[int, int], ...]] = {}
    for i in range(r + 1):
        for j in range(d + 1):
            cells = tuple((b * (r + 1) + i, b + j) for b in range(k))
            occ[(i, j)] = cells
            c = t.coeff(i, j)
            if c:
                for row, col in cells:
                    entries[row * ncols + col] = c
    return ResultantMatrix(k, d, r, RationalMatrix(nrows, ncols, tuple(entries)), occ)


def in_stratum(t: FormTuple, k: int) -> bool:
    """Whether the tuple shares roots of total multiplicity >= d-k+1."""
    return rank(build_matrix(t, k).matrix) < 2 * k


def rank_increment_check(t: FormTuple, k: int) -> bool:
    """Dropping rank at level k-1 forces the level-k rank up by exactly one.

    Requires rank of the (k-1)-block matrix below 2(k-1); raises otherwise.
    """
    if not isinstance(k, int) or isinstance(k, bool) or k < 2 or k > t.d:
        raise BadK(f"increment check needs 2 <= k <= {t.d}, got {k!r}")
    prev = rank(build_matrix(t, k - 1).matrix)
    if prev >= 2 * (k - 1):
        raise PreconditionNotMet(
            f"level {k - 1} matrix has full rank {prev}; nothing to increment"
        )
    return rank(build_matrix(t, k).matrix) == prev + 1


@dataclass(frozen=True)
class PairSelection:
    """One ordered choice of a form pair (i <= i') per block."""

    pairs: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        for i, ip in self.pairs:
            if not 0 <= i <= ip:
                raise BadIndexSet(f"pair ({i}, {ip}) must satisfy 0 <= i <= i'")

    @property
    def degenerate(self) -> bool:
        return any(i == ip for i, ip in self.pairs)


def enumerate_pair_selections(k: int, r: int) -> Iterator[PairSelection]:
    per_block = [(i, ip) for i in range(r + 1) for ip in range(i, r + 1)]
    for choice in itertools.product(per_block, repeat=k):
        yield PairSelection(choice)


def selected_submatrix(rm: ResultantMatrix, sel: PairSelection) -> RationalMatrix:
    if len(sel.pairs) != rm.k:
        raise BadIndexSet(f"selection has {len(sel.pairs)} pairs, matrix has {rm.k} blocks")
    rows = []
    for b, (i, ip) in enumerate(sel.pairs):
        if ip > rm.r:
            raise BadIndexSet(f"pair index {ip} exceeds r = {rm.r}")
        rows.append(b * (rm.r + 1) + i)
        rows.append(b * (rm.r + 1) + ip)
    return rm.matrix.submatrix(rows, range(rm.matrix.cols))


def _selection_rank_deficient(rm: ResultantMatrix, sel: PairSelection) -> bool:
    return rank(selected_submatrix(rm, sel)) < 2 * rm.k


def pair_selection_criterion(t: FormTuple, k: int) -> bool:
    """Whether every two-rows-per-block submatrix with distinct pairs drops rank."""
    rm = build_matrix(t, k)
    for sel in enumerate_pair_selections(k, t.r):
        if sel.degenerate:
            continue
        if not _selection_rank_deficient(rm, sel):
            return False
    return True


def pair_selection_equivalence(t: FormTuple, k: int) -> bool:
    """Full-matrix rank drop agrees with the per-selection criterion."""
    return in_stratum(t, k) == pair_selection_criterion(t, k)


def pair_selection_report(t: FormTuple, k: int) -> dict:
    """Exhaustive tally over all selections, repeated pairs included.

    A selection that repeats a form within a block has two equal rows, so it
    is rank deficient for free; the tally shows the quantifier reading with
    and without those cases, and that both agree with the full-rank test.
    """
    rm = build_matrix(t, k)
    deficient = rank(rm.matrix) < 2 * k
    distinct_ok = True
    all_ok = True
    n_degenerate = 0
    n_nondegenerate = 0
    for sel in enumerate_pair_selections(k, t.r):
        drop = _selection_rank_deficient(rm, sel)
        if sel.degenerate:
            n_degenerate += 1
            if not drop:
                raise ArithmeticError("a selection with a repeated row kept full rank")
        else:
            n_nondegenerate += 1
            if not drop:
                distinct_ok = False
        if not drop:
            all_ok = False
    return {
        "rank_deficient": deficient,
        "criterion_distinct_pairs": distinct_ok,
        "criterion_with_repeats": all_ok,
        "equivalent": deficient == distinct_ok,
        "degenerate_selections": n_degenerate,
        "nondegenerate_selections": n_nondegenerate,
    }
