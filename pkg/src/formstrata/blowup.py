"""Blow-up coordinates built from shifted-coefficient minors.

Conventions used throughout: the level-K block matrix of a tuple stacks K
copies of the coefficient rows, the copy for block b shifted right by b
columns, and a coefficient index outside 0..d reads as 0.  A minor is named
by its row pairs (two form indices per block, lesser first) together with a
strictly increasing column selection.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, prod
from typing import Iterator, Optional, Sequence

from .errors import (
    BadIndexSet,
    BadK,
    BadS,
    IndeterminacyLocus,
    InconsistentInput,
    TooLarge,
)
from .exactla import RationalMatrix, _frac, det, rank
from .forms import BinaryForm, FormTuple
from .sylvester import _check_k

_ZERO = Fraction(0)


@dataclass(frozen=True)
class MinorIndex:
    """Row pairs and columns naming one minor of a block matrix.

    ``rows`` lists two form indices per block, lesser first within each
    pair; ``cols`` is strictly increasing and must match ``rows`` in length.
    """

    rows: tuple[int, ...]
    cols: tuple[int, ...]

    def __post_init__(self) -> None:
        n = len(self.rows)
        if n == 0 or n % 2:
            raise BadIndexSet("row selection must come in pairs")
        if len(self.cols) != n:
            raise BadIndexSet("row and column selections must have equal size")
        for a in range(0, n, 2):
            if not 0 <= self.rows[a] < self.rows[a + 1]:
                raise BadIndexSet(
                    f"row pair ({self.rows[a]}, {self.rows[a + 1]}) must increase"
                )
        if self.cols[0] < 0:
            raise BadIndexSet("column indices must be nonnegative")
        for a, b in zip(self.cols, self.cols[1:]):
            if not a < b:
                raise BadIndexSet("column indices must be strictly increasing")

    @property
    def blocks(self) -> int:
        return len(self.rows) // 2

    @property
    def pairs(self) -> tuple[tuple[int, int], ...]:
        return tuple(
            (self.rows[a], self.rows[a + 1]) for a in range(0, len(self.rows), 2)
        )


def minor_value(t: FormTuple, idx: MinorIndex) -> Fraction:
    """Evaluate the named minor on t's shifted coefficient rows."""
    k = idx.blocks
    if idx.rows[-1] > t.r or any(i > t.r for i in idx.rows):
        raise BadIndexSet(f"row index exceeds r = {t.r}")
    if idx.cols[-1] > t.d + k - 1:
        raise BadIndexSet(f"column index exceeds {t.d + k - 1}")
    entries = []
    for p, i in enumerate(idx.rows):
        shift = p // 2
        for m in idx.cols:
            j = m - shift
            entries.append(t.coeff(i, j) if 0 <= j <= t.d else _ZERO)
    return det(RationalMatrix(2 * k, 2 * k, tuple(entries)))


def row_pairs(r: int) -> list[tuple[int, int]]:
    return list(itertools.combinations(range(r + 1), 2))


def level1_indices(d: int, r: int) -> Iterator[MinorIndex]:
    for pair in row_pairs(r):
        for cols in itertools.combinations(range(d + 1), 2):
            yield MinorIndex(pair, cols)


def level1_coords(t: FormTuple) -> tuple[Fraction, ...]:
    """All 2x2 coefficient minors, pair-major then column-pair order.

    These vanish simultaneously exactly when the forms are pairwise
    proportional, where the map they define is undefined.
    """
    vals = []
    for i, ip in row_pairs(t.r):
        for m, n in itertools.combinations(range(t.d + 1), 2):
            vals.append(t.coeff(i, m) * t.coeff(ip, n) - t.coeff(i, n) * t.coeff(ip, m))
    if not vals or all(v == 0 for v in vals):
        raise IndeterminacyLocus("every 2x2 coefficient minor vanishes")
    return tuple(vals)


def level2_indices(d: int, r: int) -> Iterator[MinorIndex]:
    if d < 2:
        raise BadK(f"level-2 coordinates need degree >= 2, got {d}")
    pairs = row_pairs(r)
    for p1 in pairs:
        for p2 in pairs:
            for cols in itertools.combinations(range(d + 2), 4):
                yield MinorIndex(p1 + p2, cols)


def level2_coords(t: FormTuple) -> tuple[Fraction, ...]:
    """All 4x4 two-per-block minors of the two-block matrix."""
    vals = [minor_value(t, idx) for idx in level2_indices(t.d, t.r)]
    if not vals or all(v == 0 for v in vals):
        raise IndeterminacyLocus("every two-per-block 4x4 minor vanishes")
    return tuple(vals)


@lru_cache(maxsize=None)
def _level1_pos(d: int, r: int) -> dict:
    pos = {}
    n = 0
    for pair in row_pairs(r):
        for cols in itertools.combinations(range(d + 1), 2):
            pos[(pair, cols)] = n
            n += 1
    return pos


def six_term_relation(
    u: Sequence,
    d: int,
    r: int,
    i1: int,
    i2: int,
    i3: int,
    i4: int,
    m1: int,
    m2: int,
    m3: int,
    m4: int,
) -> Fraction:
    """Quadratic combination of 2x2 minors that reproduces a 4x4 minor.

    ``u`` must be the level-1 coordinate vector.  The six products pair the
    unshifted columns for (i1, i2) against columns lowered by one for
    (i3, i4); a lookup whose column falls outside 0..d contributes 0.  The
    value equals the two-per-block 4x4 minor with row pairs (i1, i2),
    (i3, i4) and columns m1 < m2 < m3 < m4.
    """
    if not (0 <= i1 < i2 <= r and 0 <= i3 < i4 <= r):
        raise BadIndexSet("row pairs must satisfy 0 <= i < i' <= r")
    if not (0 <= m1 < m2 < m3 < m4 <= d + 1):
        raise BadIndexSet("columns must satisfy 0 <= m1 < m2 < m3 < m4 <= d+1")
    pos = _level1_pos(d, r)
    uu = [_frac(x) for x in u]
    if len(uu) != len(pos):
        raise InconsistentInput(f"expected {len(pos)} coordinates, got {len(uu)}")

    def val(pair: tuple[int, int], a: int, b: int) -> Fraction:
        if a < 0 or b > d:
            return _ZERO
        return uu[pos[(pair, (a, b))]]

    top = (i1, i2)
    bot = (i3, i4)
    return (
        val(top, m1, m2) * val(bot, m3 - 1, m4 - 1)
        - val(top, m1, m3) * val(bot, m2 - 1, m4 - 1)
        + val(top, m1, m4) * val(bot, m2 - 1, m3 - 1)
        + val(top, m2, m3) * val(bot, m1 - 1, m4 - 1)
        - val(top, m2, m4) * val(bot, m1 - 1, m3 - 1)
        + val(top, m3, m4) * val(bot, m1 - 1, m2 - 1)
    )


def _corner_pair(
    sget,
    pairs: tuple[tuple[int, int], tuple[int, int], tuple[int, int]],
    ms: tuple[int, ...],
    ns: tuple[int, ...],
) -> tuple[RationalMatrix, RationalMatrix, Fraction, Fraction]:
    """Assemble the block-diagonal and corner-attached 8x8 matrices.

    The top-left 6x6 holds the three row pairs with shifts 0, 1, 2 on the
    ms columns.  Attachment repeats the middle pair's rows below (shift 1
    on ms, unshifted on ns) and gives the third pair's rows the ns columns
    lowered by one; the block-diagonal form zeroes both couplings.
    """
    a_rows = []
    for t, (i, ip) in enumerate(pairs):
        a_rows.append([sget(i, m - t) for m in ms])
        a_rows.append([sget(ip, m - t) for m in ms])
    d_rows = [[sget(i, n) for n in ns] for i in pairs[1]]
    b_rows = [[_ZERO, _ZERO]] * 4 + [[sget(i, n - 1) for n in ns] for i in pairs[2]]
    c_rows = [a_rows[2], a_rows[3]]

    blk = [row + [_ZERO, _ZERO] for row in a_rows]
    blk += [[_ZERO] * 6 + drow for drow in d_rows]
    att = [arow + brow for arow, brow in zip(a_rows, b_rows)]
    att += [crow + drow for crow, drow in zip(c_rows, d_rows)]

    det6 = det(RationalMatrix.from_rows(a_rows))
    det2 = det(RationalMatrix.from_rows(d_rows))
    return RationalMatrix.from_rows(blk), RationalMatrix.from_rows(att), det6, det2


def corner_identity_check(
    seed: int = 0,
    d: int = 4,
    r: int = 2,
    svals: Optional[dict] = None,
    pairs: Optional[tuple] = None,
    ms: Optional[tuple] = None,
    ns: Optional[tuple] = None,
) -> dict:
    """Check that attaching a 2x2 minor at the corner of a 6x6 one leaves
    the determinant a clean product.

    Entries default to random rationals, since the identity is structural:
    the repeated middle rows wipe out the coupling block regardless of the
    fill.  Explicit ``svals`` (a map (form, coefficient) -> value), row
    pairs, or column choices override the random draw.
    """
    if d < 3 or r < 1:
        raise BadK(f"corner identity needs d >= 3 and r >= 1, got d={d}, r={r}")
    rng = random.Random(seed)
    if svals is None:
        svals = {
            (i, j): Fraction(rng.randint(-9, 9), rng.randint(1, 9))
            for i in range(r + 1)
            for j in range(d + 1)
        }
    if pairs is None:
        choices = row_pairs(r)
        pairs = tuple(rng.choice(choices) for _ in range(3))
    if ms is None:
        ms = tuple(sorted(rng.sample(range(d + 3), 6)))
    if ns is None:
        ns = tuple(sorted(rng.sample(range(d + 1), 2)))
    if len(ms) != 6 or any(not a < b for a, b in zip(ms, ms[1:])):
        raise BadIndexSet("ms must be six strictly increasing columns")
    if len(ns) != 2 or not ns[0] < ns[1]:
        raise BadIndexSet("ns must be two strictly increasing columns")
    for i, ip in pairs:
        if not 0 <= i < ip <= r:
            raise BadIndexSet(f"pair ({i}, {ip}) must satisfy 0 <= i < i' <= {r}")

    def sget(i: int, j: int) -> Fraction:
        return _frac(svals.get((i, j), 0)) if 0 <= j <= d else _ZERO

    blk, att, det6, det2 = _corner_pair(sget, pairs, ms, ns)
    det_block = det(blk)
    det_att = det(att)
    product = det6 * det2
    return {
        "det_root": det6,
        "det_aux": det2,
        "det_block": det_block,
        "det_attached": det_att,
        "ok": det_block == product and det_att == product,
    }


@dataclass(frozen=True)
class AuxTree:
    """A root minor with the auxiliary minors that complete its coordinate.

    Row counts always add up to 2**blocks; a root with one or two blocks
    carries no auxiliaries.
    """

    root: MinorIndex
    aux: tuple[MinorIndex, ...]

    def __post_init__(self) -> None:
        total = 2 * self.root.blocks + sum(2 * a.blocks for a in self.aux)
        if total != 2**self.root.blocks:
            raise ValueError(
                f"auxiliary sizes sum to {total}, need {2**self.root.blocks}"
            )


def _aux_pair_groups(pairs: tuple) -> list[tuple]:
    if len(pairs) <= 2:
        return []
    return (
        [pairs[1:-1]]
        + _aux_pair_groups(pairs[:-1])
        + _aux_pair_groups(pairs[1:])
    )


def attach_auxiliaries(root: MinorIndex) -> AuxTree:
    """Complete a root minor of three or more blocks with its auxiliaries.

    Each auxiliary repeats an inner run of the root's row pairs; the two
    shorter runs recurse.  Auxiliary columns default to the leftmost choice.
    """
    if root.blocks < 3:
        raise BadK(f"auxiliaries start at three blocks, got {root.blocks}")
    aux = tuple(
        MinorIndex(sum(g, ()), tuple(range(2 * len(g))))
        for g in _aux_pair_groups(root.pairs)
    )
    return AuxTree(root, aux)


def aux_size_identity(k: int) -> dict:
    """Row-count bookkeeping for the auxiliary recursion.

    A root of k+1 blocks acquires 2**(j-1) auxiliaries of 2(k-j) rows for
    each j, which together with its own 2(k+1) rows reaches 2**(k+1).
    """
    if k < 1:
        raise BadK(f"identity needs k >= 1, got {k}")
    lhs = 2 ** (k + 1) - 2 * (k + 1)
    rhs = sum(2 ** (j - 1) * 2 * (k - j) for j in range(1, k))
    return {"k": k, "lhs": lhs, "rhs": rhs, "ok": lhs == rhs}


def _aux_sizes(k: int) -> list[int]:
    return [len(g) for g in _aux_pair_groups(tuple(range(k)))]


def coordinate_count(d: int, r: int, k: int) -> int:
    """Number of level-k coordinates without enumerating them."""
    _check_k(k, d)
    if r < 0:
        raise ValueError("r must be nonnegative")
    npairs = comb(r + 1, 2)
    total = npairs**k * comb(d + k, 2 * k)
    for t in _aux_sizes(k):
        total *= comb(d + t, 2 * t)
    return total


def blowup_indices(d: int, r: int, k: int) -> Iterator[AuxTree]:
    """Deterministic enumeration of the level-k coordinate labels."""
    _check_k(k, d)
    if k == 1:
        for idx in level1_indices(d, r):
            yield AuxTree(idx, ())
        return
    if k == 2:
        for idx in level2_indices(d, r):
            yield AuxTree(idx, ())
        return
    pairs = row_pairs(r)
    root_cols = list(itertools.combinations(range(d + k), 2 * k))
    for choice in itertools.product(pairs, repeat=k):
        rows = sum(choice, ())
        groups = _aux_pair_groups(choice)
        aux_rows = [sum(g, ()) for g in groups]
        aux_cols = [
            list(itertools.combinations(range(d + len(g)), 2 * len(g)))
            for g in groups
        ]
        for rc in root_cols:
            root = MinorIndex(rows, rc)
            for acs in itertools.product(*aux_cols):
                yield AuxTree(
                    root,
                    tuple(MinorIndex(ar, ac) for ar, ac in zip(aux_rows, acs)),
                )


def blowup_coords_stream(t: FormTuple, k: int) -> Iterator[tuple[AuxTree, Fraction]]:
    """Stream (label, value) pairs; minor values are cached and shared."""
    cache: dict[tuple, Fraction] = {}

    def val(idx: MinorIndex) -> Fraction:
        key = (idx.rows, idx.cols)
        v = cache.get(key)
        if v is None:
            v = minor_value(t, idx)
            cache[key] = v
        return v

    for tree in blowup_indices(t.d, t.r, k):
        v = val(tree.root)
        for a in tree.aux:
            if v == 0:
                break
            v = v * val(a)
        yield tree, v


def blowup_coords(t: FormTuple, k: int, max_entries: int = 200_000) -> tuple[Fraction, ...]:
    """The level-k coordinate vector of t.

    Levels one and two are plain minors; higher levels multiply each root
    minor by its auxiliaries.  Vectors longer than ``max_entries`` are
    refused; use the streaming variant for those.
    """
    _check_k(k, t.d)
    if coordinate_count(t.d, t.r, k) > max_entries:
        raise TooLarge(
            f"level-{k} vector has {coordinate_count(t.d, t.r, k)} entries"
        )
    if k == 1:
        return level1_coords(t)
    if k == 2:
        return level2_coords(t)
    vals = tuple(v for _, v in blowup_coords_stream(t, k))
    if not vals or all(v == 0 for v in vals):
        raise IndeterminacyLocus("every level coordinate vanishes")
    return vals


def skew_coords(nu: BinaryForm) -> tuple[Fraction, ...]:
    """Shifted self-minors of one form: nu_m nu_{n-1} - nu_{m-1} nu_n.

    Index pairs run over 0 <= m < n <= e+1 for a form of degree e, with
    out-of-range coefficients reading as 0.  For a nonzero form the result
    is never the zero vector.
    """
    if nu.is_zero():
        raise InconsistentInput("skew coordinates need a nonzero form")
    e = nu.degree

    def c(q: int) -> Fraction:
        return nu.coeffs[q] if 0 <= q <= e else _ZERO

    return tuple(
        c(m) * c(n - 1) - c(m - 1) * c(n)
        for m, n in itertools.combinations(range(e + 2), 2)
    )


def veronese(point: Sequence, degree: int) -> tuple[Fraction, ...]:
    """All monomials of the given degree, in lexicographic index order."""
    if degree < 0:
        raise ValueError("degree must be nonnegative")
    cs = [_frac(x) for x in point]
    return tuple(
        prod((cs[i] for i in sel), start=Fraction(1))
        for sel in itertools.combinations_with_replacement(range(len(cs)), degree)
    )


def segre(p: Sequence, q: Sequence) -> tuple[Fraction, ...]:
    """Row-major outer product of two coordinate vectors."""
    qs = [_frac(y) for y in q]
    return tuple(_frac(x) * y for x in p for y in qs)


def projectively_equal(u: Sequence, v: Sequence) -> bool:
    """Whether two vectors agree up to one overall nonzero scale."""
    uu = [_frac(x) for x in u]
    vv = [_frac(x) for x in v]
    if len(uu) != len(vv):
        raise InconsistentInput(f"lengths differ: {len(uu)} vs {len(vv)}")
    pivot = next((i for i, x in enumerate(uu) if x), None)
    if pivot is None or vv[pivot] == 0:
        return False
    up, vp = uu[pivot], vv[pivot]
    return all(x * vp == up * y for x, y in zip(uu, vv))


@dataclass(frozen=True)
class BlowupPoint:
    """Coordinate vectors, one per level, none of them zero."""

    levels: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self) -> None:
        if not self.levels:
            raise InconsistentInput("a lifted point needs at least one level")
        for n, level in enumerate(self.levels):
            if not level or all(x == 0 for x in level):
                raise InconsistentInput(f"level {n} vector is zero")


def lift_product_map(mu: FormTuple, tau: Sequence, nu: BinaryForm) -> BlowupPoint:
    """Lift a factored tuple (mu_i * nu) to coordinates plus a direction.

    ``mu`` holds degree-1 cofactors and ``tau`` the 2x2 minor direction for
    them.  Where some cofactor minor is nonzero, ``tau`` must be its scalar
    multiple; where all vanish (every cofactor proportional), ``tau`` is the
    free datum the lift exists to carry.  Level 0 is the product tuple's
    coefficient vector and level 1 the outer product of ``tau`` with the
    skew coordinates of ``nu``.
    """
    if mu.d != 1:
        raise InconsistentInput(f"cofactors must have degree 1, got {mu.d}")
    if nu.degree < 1 or nu.is_zero():
        raise InconsistentInput("shared factor must be nonzero of degree >= 1")
    pairs = row_pairs(mu.r)
    ts = tuple(_frac(x) for x in tau)
    if len(ts) != len(pairs):
        raise InconsistentInput(f"direction needs {len(pairs)} entries, got {len(ts)}")
    if all(x == 0 for x in ts):
        raise InconsistentInput("direction must be nonzero")
    mvec = tuple(
        mu.coeff(i, 0) * mu.coeff(ip, 1) - mu.coeff(i, 1) * mu.coeff(ip, 0)
        for i, ip in pairs
    )
    if any(m != 0 for m in mvec) and not projectively_equal(ts, mvec):
        raise InconsistentInput("direction must match the nonzero cofactor minors")
    d = 1 + nu.degree

    def c(q: int) -> Fraction:
        return nu.coeffs[q] if 0 <= q <= nu.degree else _ZERO

    level0 = tuple(
        mu.coeff(i, 0) * c(j) + mu.coeff(i, 1) * c(j - 1)
        for i in range(mu.r + 1)
        for j in range(d + 1)
    )
    level1 = segre(ts, skew_coords(nu))
    return BlowupPoint((level0, level1))


def _sorted_with_sign(cs: tuple[int, ...]) -> Optional[tuple[tuple[int, ...], int]]:
    # Inversion count gives the sign of the sorting permutation.
    inv = 0
    n = len(cs)
    for a in range(n):
        for b in range(a + 1, n):
            if cs[a] == cs[b]:
                return None
            if cs[a] > cs[b]:
                inv += 1
    return tuple(sorted(cs)), (-1 if inv % 2 else 1)


def _tau_minor(g: FormTuple, rows: tuple[int, ...], cs: tuple[int, ...]) -> Fraction:
    # Antisymmetric in cs: zero on repeats or out-of-range columns.
    s = len(rows) // 2
    if any(c < 0 or c > g.d + s - 1 for c in cs):
        return _ZERO
    packed = _sorted_with_sign(cs)
    if packed is None:
        return _ZERO
    ordered, sign = packed
    return sign * minor_value(g, MinorIndex(rows, ordered))


def product_minor_expansion_check(
    g: FormTuple, p: BinaryForm, idx: MinorIndex
) -> dict:
    """Expand a minor of the product tuple (g_i * p) column by column.

    Each column of the product's block matrix is a coefficient-weighted sum
    of shifted columns of g's, so the minor equals a sum over shift choices
    of a p-coefficient monomial times the matching antisymmetrized g-minor.
    Only one- and two-block minors are accepted.
    """
    s = idx.blocks
    if s not in (1, 2):
        raise BadS(f"expansion supports one or two blocks, got {s}")
    if p.degree < 1 or p.is_zero():
        raise BadS("shared factor must be nonzero of degree >= 1")
    product_forms = []
    for gf in g.forms:
        cs = [_ZERO] * (gf.degree + p.degree + 1)
        for a, x in enumerate(gf.coeffs):
            if x:
                for b, y in enumerate(p.coeffs):
                    if y:
                        cs[a + b] += x * y
        product_forms.append(BinaryForm.from_coeffs(cs))
    ft = FormTuple(g.r, g.d + p.degree, tuple(product_forms))
    lhs = minor_value(ft, idx)
    nz = [(q, c) for q, c in enumerate(p.coeffs) if c]
    rhs = _ZERO
    for picks in itertools.product(nz, repeat=2 * s):
        weight = prod((c for _, c in picks), start=Fraction(1))
        cs = tuple(m - q for m, (q, _) in zip(idx.cols, picks))
        tau = _tau_minor(g, idx.rows, cs)
        if tau:
            rhs += weight * tau
    return {"minor": lhs, "expansion": rhs, "ok": lhs == rhs}


def monomial_span_check(d: int, k: int) -> dict:
    """Linear independence of the shifted single-form minors.

    Every 2k-column choice from 0..d+k-1 yields a determinant in the
    coefficients of one degree-d form, via entries nu_{m-j} for shift j.
    The check expands each determinant into monomials and confirms the
    collection has full rank, one independent polynomial per choice.
    """
    if k < 1 or d < k:
        raise BadK(f"need 1 <= k <= d, got k={k}, d={d}")
    if k > 2 or d - k > 3:
        raise TooLarge("symbolic expansion is capped at k <= 2 and d-k <= 3")
    n = 2 * k
    polys = []
    monomials: dict[tuple[int, ...], int] = {}
    for ms in itertools.combinations(range(d + k), n):
        poly: dict[tuple[int, ...], int] = {}
        for perm in itertools.permutations(range(n)):
            indices = [ms[a] - perm[a] for a in range(n)]
            if any(q < 0 or q > d for q in indices):
                continue
            sign = _permutation_sign(perm)
            key = tuple(sorted(indices))
            poly[key] = poly.get(key, 0) + sign
        poly = {key: c for key, c in poly.items() if c}
        for key in poly:
            monomials.setdefault(key, len(monomials))
        polys.append(poly)
    mat = [[0] * len(monomials) for _ in polys]
    for row, poly in zip(mat, polys):
        for key, c in poly.items():
            row[monomials[key]] = c
    rk = rank(RationalMatrix.from_rows(mat)) if monomials else 0
    return {
        "minors": len(polys),
        "monomials": len(monomials),
        "rank": rk,
        "ok": rk == len(polys),
    }


def _permutation_sign(perm: Sequence[int]) -> int:
    inv = 0
    for a in range(len(perm)):
        for b in range(a + 1, len(perm)):
            if perm[a] > perm[b]:
                inv += 1
    return -1 if inv % 2 else 1
