"""Strata of form tuples by shared-root multiplicity: parametrization,
dimension counts, and smooth/singular classification of points.

The level-k stratum collects tuples whose forms share roots of total
multiplicity at least d-k+1.  Such a tuple factors as f_i = g_i * p with a
common factor p of degree d-k+1, which gives the parametrization used here.
"""

from __future__ import annotations

import enum
import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import BadK
from .exactla import RationalMatrix, det_gradient, rank
from .forms import BinaryForm, FormTuple, multiply
from .sylvester import _check_k, build_matrix

_ZERO = Fraction(0)


class PointKind(enum.Enum):
    NOT_IN_STRATUM = "not_in_stratum"
    SMOOTH = "smooth"
    SINGULAR = "singular"


@dataclass(frozen=True)
class StratumParam:
    """Factored input (g_0..g_r, p): cofactors of degree k-1 and the shared
    factor p, which must be nonzero of degree at least 1."""

    k: int
    g: FormTuple
    p: BinaryForm

    def __post_init__(self) -> None:
        if self.k < 1:
            raise BadK(f"stratum index {self.k} must be at least 1")
        if self.g.d != self.k - 1:
            raise ValueError(
                f"cofactors must have degree {self.k - 1}, got {self.g.d}"
            )
        if self.p.degree < 1 or self.p.is_zero():
            raise ValueError("shared factor must be nonzero of degree >= 1")

    @property
    def d(self) -> int:
        return self.g.d + self.p.degree


def parametrize_stratum(s: StratumParam) -> FormTuple:
    forms = tuple(multiply(g, s.p) for g in s.g.forms)
    return FormTuple(s.g.r, s.d, forms)


def stratum_dimension(d: int, r: int, k: int) -> int:
    """Projective dimension of the level-k stratum."""
    _check_k(k, d)
    if r < 0:
        raise ValueError("r must be nonnegative")
    return d + k * r


def stratum_codimension(d: int, r: int, k: int) -> int:
    _check_k(k, d)
    if r < 0:
        raise ValueError("r must be nonnegative")
    return r * (d - k + 1)


def parametrization_jacobian(
    mu: FormTuple, nu: BinaryForm, d: int, r: int, k: int
) -> RationalMatrix:
    """Jacobian of (mu, nu) -> (coefficients of mu_i * nu) at the given point.

    Rows run over the (d+1)(r+1) product coefficients s_ij, columns first
    over the (r+1)k cofactor coefficients mu_il, then the d-k+2 coefficients
    nu_q of the shared factor.
    """
    _check_k(k, d)
    if mu.d != k - 1 or mu.r != r or nu.degree != d - k + 1:
        raise ValueError("parametrization point has the wrong shape")
    ncols = (r + 1) * k + (d - k + 2)
    rows = []
    for i in range(r + 1):
        for j in range(d + 1):
            row = [_ZERO] * ncols
            for l in range(k):
                q = j - l
                if 0 <= q <= d - k + 1:
                    row[i * k + l] = nu.coeffs[q]
            for q in range(d - k + 2):
                l = j - q
                if 0 <= l <= k - 1:
                    row[(r + 1) * k + q] = mu.coeff(i, l)
            rows.append(row)
    return RationalMatrix.from_rows(rows)


def verify_dimension(d: int, r: int, k: int, seed: int = 0) -> dict:
    """Check the stated stratum dimension against the parametrization.

    The affine cone over the stratum should have dimension d + kr + 1, and
    the parametrization Jacobian attains exactly that rank at a generic
    point; a handful of random draws is retried in case of unlucky ones.
    The overall scaling (t*mu, nu/t) always sits in the kernel, so the rank
    can never exceed the expected value.
    """
    _check_k(k, d)
    if r < 0:
        raise ValueError("r must be nonnegative")
    expected = d + k * r + 1
    rng = random.Random(seed)
    best = -1
    attempts = 0
    for _ in range(5):
        attempts += 1
        mu_rows = [
            [rng.randint(-9, 9) for _ in range(k)] for _ in range(r + 1)
        ]
        nu_cs = [rng.randint(-9, 9) for _ in range(d - k + 2)]
        if all(all(c == 0 for c in row) for row in mu_rows):
            continue
        if all(c == 0 for c in nu_cs):
            continue
        mu = FormTuple.from_coeff_rows(mu_rows)
        nu = BinaryForm.from_coeffs(nu_cs)
        got = rank(parametrization_jacobian(mu, nu, d, r, k))
        if got > expected:
            raise ArithmeticError(
                f"parametrization rank {got} exceeds the dimension bound {expected}"
            )
        best = max(best, got)
        if best == expected:
            break
    return {
        "expected": expected,
        "achieved": best,
        "ok": best == expected,
        "attempts": attempts,
    }


def minor_jacobian(t: FormTuple, k: int) -> RationalMatrix:
    """Jacobian of every 2k x 2k minor of the level-k block matrix, taken
    with respect to all (d+1)(r+1) coefficients and evaluated at t.

    A coefficient occupies one cell per block, so its derivative collects
    signed cofactors from each cell that the minor's submatrix retains.
    """
    _check_k(k, t.d)
    r, d = t.r, t.d
    rm = build_matrix(t, k)
    nrows, ncols = rm.matrix.rows, rm.matrix.cols
    variables = [(i, j) for i in range(r + 1) for j in range(d + 1)]
    var_pos = {v: n for n, v in enumerate(variables)}
    jac_rows = []
    for row_sel in itertools.combinations(range(nrows), 2 * k):
        row_index = {g: a for a, g in enumerate(row_sel)}
        for col_sel in itertools.combinations(range(ncols), 2 * k):
            sub = rm.matrix.submatrix(row_sel, col_sel)
            occ: dict[tuple[int, int], list[tuple[int, int]]] = {}
            for a, grow in enumerate(row_sel):
                block, i = divmod(grow, r + 1)
                for b, gcol in enumerate(col_sel):
                    j = gcol - block
                    if 0 <= j <= d:
                        occ.setdefault((i, j), []).append((a, b))
            grad = det_gradient(sub, occ)
            row = [_ZERO] * len(variables)
            for v, val in grad.items():
                row[var_pos[v]] = val
            jac_rows.append(row)
    if not jac_rows:
        return RationalMatrix(0, len(variables), ())
    return RationalMatrix.from_rows(jac_rows)


@dataclass(frozen=True)
class PointClassification:
    kind: PointKind
    rank_k: int
    rank_prev: Optional[int]
    jacobian_rank: Optional[int]
    codimension: int


def classify_point(t: FormTuple, k: int) -> PointClassification:
    """Place t relative to the level-k stratum and test smoothness there.

    A point of the stratum is smooth exactly when the Jacobian of the
    defining minors attains the stratum codimension; a lower rank means the
    point is singular.  With r = 0 the codimension is 0 and there are no
    minors, so every point classifies as smooth.
    """
    _check_k(k, t.d)
    rank_k = rank(build_matrix(t, k).matrix)
    rank_prev = rank(build_matrix(t, k - 1).matrix) if k >= 2 else None
    codim = stratum_codimension(t.d, t.r, k)
    if rank_k >= 2 * k:
        return PointClassification(PointKind.NOT_IN_STRATUM, rank_k, rank_prev, None, codim)
    jrank = rank(minor_jacobian(t, k))
    kind = PointKind.SMOOTH if jrank == codim else PointKind.SINGULAR
    return PointClassification(kind, rank_k, rank_prev, jrank, codim)
