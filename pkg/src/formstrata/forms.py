"""Binary forms in two variables and tuples of forms of a shared degree.

A form of degree d is stored as d+1 coefficients, with ``coeffs[j]``
multiplying x^(d-j) y^j.  Tuples bundle r+1 forms of one degree and are the
basic input everywhere else in the package.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import AllZeroTuple
from .exactla import _frac

_ZERO = Fraction(0)


@dataclass(frozen=True)
class BinaryForm:
    """Homogeneous polynomial in (x, y); coeffs[j] goes with x^(d-j) y^j."""

    degree: int
    coeffs: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if self.degree < 0:
            raise ValueError("degree must be nonnegative")
        if len(self.coeffs) != self.degree + 1:
            raise ValueError(
                f"degree {self.degree} needs {self.degree + 1} coefficients, "
                f"got {len(self.coeffs)}"
            )

    @staticmethod
    def from_coeffs(coeffs: Sequence) -> "BinaryForm":
        cs = tuple(_frac(c) for c in coeffs)
        if not cs:
            raise ValueError("a form needs at least one coefficient")
        return BinaryForm(len(cs) - 1, cs)

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def scaled(self, factor) -> "BinaryForm":
        f = _frac(factor)
        return BinaryForm(self.degree, tuple(f * c for c in self.coeffs))


def multiply(f: BinaryForm, g: BinaryForm) -> BinaryForm:
    """Product form; coefficient convolution."""
    d = f.degree + g.degree
    out = [_ZERO] * (d + 1)
    for i, a in enumerate(f.coeffs):
        if a:
            for j, b in enumerate(g.coeffs):
                if b:
                    out[i + j] += a * b
    return BinaryForm(d, tuple(out))


def evaluate(f: BinaryForm, point: tuple) -> Fraction:
    x, y = _frac(point[0]), _frac(point[1])
    d = f.degree
    total = _ZERO
    for j, c in enumerate(f.coeffs):
        if c:
            total += c * x ** (d - j) * y**j
    return total


@dataclass(frozen=True)
class FormTuple:
    """r+1 binary forms of one degree d, not all zero."""

    r: int
    d: int
    forms: tuple[BinaryForm, ...]

    def __post_init__(self) -> None:
        if self.r < 0:
            raise ValueError("r must be nonnegative")
        if len(self.forms) != self.r + 1:
            raise ValueError(f"expected {self.r + 1} forms, got {len(self.forms)}")
        for f in self.forms:
            if f.degree != self.d:
                raise ValueError(
                    f"all forms must have degree {self.d}, found {f.degree}"
                )
        if all(f.is_zero() for f in self.forms):
            raise AllZeroTuple("a form tuple must have at least one nonzero form")

    @staticmethod
    def from_coeff_rows(rows: Sequence[Sequence]) -> "FormTuple":
        forms = tuple(BinaryForm.from_coeffs(row) for row in rows)
        if not forms:
            raise ValueError("a tuple needs at least one form")
        return FormTuple(len(forms) - 1, forms[0].degree, forms)

    def coeff(self, i: int, j: int) -> Fraction:
        return self.forms[i].coeffs[j]

    def scaled(self, factor) -> "FormTuple":
        return FormTuple(self.r, self.d, tuple(f.scaled(factor) for f in self.forms))


def _poly_degree(p: Sequence[Fraction]) -> int:
    # p[i] multiplies x^i; the zero polynomial reports degree -1.
    for i in range(len(p) - 1, -1, -1):
        if p[i]:
            return i
    return -1


def _poly_mod(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    db = _poly_degree(b)
    lead = b[db]
    rem = list(a)
    while True:
        da = _poly_degree(rem)
        if da < db:
            return rem[: max(da + 1, 1)]
        f = rem[da] / lead
        shift = da - db
        for i in range(db + 1):
            rem[shift + i] -= f * b[i]
        rem[da] = _ZERO


def _poly_gcd(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    # Monic normalization each step keeps coefficient growth in check.
    while _poly_degree(b) >= 0:
        a, b = b, _poly_mod(a, b)
    da = _poly_degree(a)
    if da < 0:
        return [_ZERO]
    lead = a[da]
    return [c / lead for c in a[: da + 1]]


def common_root_multiplicity(t: FormTuple) -> int:
    """Total multiplicity of the projective roots shared by every form.

    Dehomogenize each nonzero form at y = 1; the shared finite roots are
    counted by the degree of the polynomial gcd, and the point at infinity
    contributes the smallest degree drop among the forms.
    """
    polys = []
    inf_mult = None
    for f in t.forms:
        if f.is_zero():
            continue
        d = f.degree
        p = [f.coeffs[d - i] for i in range(d + 1)]
        polys.append(p)
        drop = d - _poly_degree(p)
        inf_mult = drop if inf_mult is None else min(inf_mult, drop)
    if inf_mult is None:
        raise AllZeroTuple("every form is zero")
    g = polys[0]
    for p in polys[1:]:
        g = _poly_gcd(g, p)
    return _poly_degree(g) + inf_mult
