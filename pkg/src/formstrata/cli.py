"""Command-line front end: JSON tuple documents, deterministic sampling,
one-shot queries, and the property-suite driver.

Every number crossing the process boundary is a rational string, so no
binary float ever enters the pipeline.  A fixed seed reproduces any report
byte for byte apart from the runtime field.
"""

from __future__ import annotations

import argparse
import hashlib
import itertools
import json
import random
import sys
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Sequence

from .blowup import (
    aux_size_identity,
    attach_auxiliaries,
    blowup_coords_stream,
    coordinate_count,
    corner_identity_check,
    level1_coords,
    lift_product_map,
    minor_value,
    monomial_span_check,
    product_minor_expansion_check,
    projectively_equal,
    row_pairs,
    six_term_relation,
    skew_coords,
    MinorIndex,
)
from .errors import (
    BadK,
    FormstrataError,
    IndeterminacyLocus,
    ParseError,
    PreconditionNotMet,
    UnknownSuite,
)
from .exactla import rank
from .forms import BinaryForm, FormTuple, common_root_multiplicity
from .strata import (
    PointKind,
    StratumParam,
    classify_point,
    minor_jacobian,
    parametrize_stratum,
    stratum_codimension,
    stratum_dimension,
    verify_dimension,
)
from .sylvester import (
    pair_selection_equivalence,
    pair_selection_report,
    build_matrix,
    in_stratum,
    rank_increment_check,
)

STREAM_THRESHOLD = 10_000


# ---------------------------------------------------------------------------
# documents

def parse_rational(x) -> Fraction:
    if isinstance(x, bool):
        raise ParseError("booleans are not rationals")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x)
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"bad rational {x!r}: {exc}") from exc
    raise ParseError(f"rationals must be strings or integers, got {type(x).__name__}")


def parse_document(obj) -> FormTuple:
    """Validate a tuple document {d, r, forms} and build the tuple."""
    if not isinstance(obj, dict):
        raise ParseError("document must be a JSON object")
    for key in ("d", "r", "forms"):
        if key not in obj:
            raise ParseError(f"document is missing {key!r}")
    d, r, forms = obj["d"], obj["r"], obj["forms"]
    if not isinstance(d, int) or isinstance(d, bool) or d < 0:
        raise ParseError("d must be a nonnegative integer")
    if not isinstance(r, int) or isinstance(r, bool) or r < 0:
        raise ParseError("r must be a nonnegative integer")
    if not isinstance(forms, list) or len(forms) != r + 1:
        raise ParseError(f"forms must be a list of {r + 1} rows")
    rows = []
    for row in forms:
        if not isinstance(row, list) or len(row) != d + 1:
            raise ParseError(f"each form needs {d + 1} coefficients")
        rows.append([parse_rational(x) for x in row])
    try:
        return FormTuple.from_coeff_rows(rows)
    except FormstrataError as exc:
        raise ParseError(str(exc)) from exc


def tuple_to_document(t: FormTuple) -> dict:
    return {
        "d": t.d,
        "r": t.r,
        "forms": [[str(c) for c in f.coeffs] for f in t.forms],
    }


def load_document(path: str) -> FormTuple:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            obj = json.load(fh)
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON in {path}: {exc}") from exc
    return parse_document(obj)


# ---------------------------------------------------------------------------
# sampling

def _draw_form(rng: random.Random, degree: int, bound: int) -> BinaryForm:
    while True:
        cs = [rng.randint(-bound, bound) for _ in range(degree + 1)]
        if any(cs):
            return BinaryForm.from_coeffs(cs)


def _draw_tuple(rng: random.Random, d: int, r: int, bound: int) -> FormTuple:
    while True:
        rows = [[rng.randint(-bound, bound) for _ in range(d + 1)] for _ in range(r + 1)]
        if any(any(row) for row in rows):
            return FormTuple.from_coeff_rows(rows)


def sample_tuple(
    d: int,
    r: int,
    seed: int = 0,
    mode: str = "generic",
    k: Optional[int] = None,
    bound: int = 9,
    rng: Optional[random.Random] = None,
) -> FormTuple:
    """Deterministic pseudo-random tuple.

    generic redraws until no common root remains (r >= 1); in_stratum
    multiplies degree k-1 cofactors by a shared degree d-k+1 factor, which
    guarantees membership; in_lower_stratum does the same one level deeper.
    """
    if d < 1:
        raise ParseError(f"degree must be at least 1, got {d}")
    if r < 0:
        raise ParseError(f"r must be nonnegative, got {r}")
    if rng is None:
        rng = random.Random(seed)
    if mode == "generic":
        for _ in range(200):
            t = _draw_tuple(rng, d, r, bound)
            if r == 0 or common_root_multiplicity(t) == 0:
                return t
        raise ArithmeticError("no multiplicity-0 draw in 200 attempts")
    if mode == "in_stratum":
        if k is None:
            raise BadK("in_stratum sampling needs k")
        kk = k
    elif mode == "in_lower_stratum":
        if k is None:
            raise BadK("in_lower_stratum sampling needs k")
        if k < 2:
            raise BadK("no level below k = 1")
        kk = k - 1
    else:
        raise ParseError(f"unknown mode {mode!r}")
    if not 1 <= kk <= d:
        raise BadK(f"level {kk} outside 1..{d}")
    g = _draw_tuple(rng, kk - 1, r, bound)
    p = _draw_form(rng, d - kk + 1, bound)
    return parametrize_stratum(StratumParam(kk, g, p))


def sample_tuple_exact(
    d: int,
    r: int,
    k: int,
    seed: int = 0,
    bound: int = 9,
    rng: Optional[random.Random] = None,
    attempts: int = 500,
) -> FormTuple:
    """A tuple whose shared-root multiplicity is exactly d-k+1."""
    if rng is None:
        rng = random.Random(seed)
    for _ in range(attempts):
        t = sample_tuple(d, r, mode="in_stratum", k=k, bound=bound, rng=rng)
        if common_root_multiplicity(t) == d - k + 1:
            return t
    raise PreconditionNotMet(
        f"no exact level-{k} point found in {attempts} attempts (d={d}, r={r})"
    )


def _mixed_sample(rng: random.Random, d: int, r: int) -> FormTuple:
    mode = rng.choice(("generic", "in_stratum", "in_lower_stratum"))
    if mode == "generic":
        return sample_tuple(d, r, mode="generic", rng=rng)
    if mode == "in_stratum" or d < 2:
        return sample_tuple(d, r, mode="in_stratum", k=rng.randint(1, d), rng=rng)
    return sample_tuple(d, r, mode="in_lower_stratum", k=rng.randint(2, d), rng=rng)


# ---------------------------------------------------------------------------
# reports

@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str = ""


@dataclass(frozen=True)
class Report:
    command: str
    params: dict
    seed: Optional[int]
    inputs_digest: str
    checks: tuple[Check, ...]
    passed: bool
    runtime_seconds: float


def _digest(payload: dict) -> str:
    blob = json.dumps(payload, sort_keys=True, default=str)
    return hashlib.sha256(blob.encode("utf-8")).hexdigest()[:16]


def _report(command: str, params: dict, seed: Optional[int], checks: Sequence[Check], t0: float) -> Report:
    return Report(
        command=command,
        params=params,
        seed=seed,
        inputs_digest=_digest({"command": command, "params": params, "seed": seed}),
        checks=tuple(checks),
        passed=all(c.passed for c in checks),
        runtime_seconds=time.perf_counter() - t0,
    )


def report_to_dict(rep: Report) -> dict:
    return {
        "command": rep.command,
        "params": rep.params,
        "seed": rep.seed,
        "inputs_digest": rep.inputs_digest,
        "checks": [
            {"name": c.name, "passed": c.passed, "detail": c.detail} for c in rep.checks
        ],
        "passed": rep.passed,
        "runtime_seconds": rep.runtime_seconds,
    }


def render_report(rep: Report, as_json: bool) -> str:
    if as_json:
        return json.dumps(report_to_dict(rep), sort_keys=True)
    lines = [f"{rep.command}  seed={rep.seed}  digest={rep.inputs_digest}"]
    for c in rep.checks:
        mark = "PASS" if c.passed else "FAIL"
        lines.append(f"{mark} {c.name}" + (f": {c.detail}" if c.detail else ""))
    lines.append(
        f"{'passed' if rep.passed else 'FAILED'} "
        f"({len(rep.checks)} checks, {rep.runtime_seconds:.2f}s)"
    )
    return "\n".join(lines)


def _witness(t: FormTuple, note: str) -> str:
    return f"{note}; tuple={json.dumps(tuple_to_document(t), sort_keys=True)}"


# ---------------------------------------------------------------------------
# verification suites

def _span(rg: tuple[int, int]) -> range:
    return range(rg[0], rg[1] + 1)


def _suite_membership(
    seed: int = 0,
    d_range: tuple[int, int] = (1, 4),
    r_range: tuple[int, int] = (0, 2),
    n: int = 500,
) -> list[Check]:
    """Rank drop below 2k against the gcd multiplicity oracle, every k."""
    rng = random.Random(seed)
    checks = []
    for d in _span(d_range):
        for r in _span(r_range):
            ok, detail = True, f"{n} tuples, k=1..{d}"
            for _ in range(n):
                t = _mixed_sample(rng, d, r)
                mult = common_root_multiplicity(t)
                for k in range(1, d + 1):
                    if in_stratum(t, k) != (mult >= d - k + 1):
                        ok = False
                        detail = _witness(t, f"k={k} mult={mult}")
                        break
                if not ok:
                    break
            checks.append(Check(f"membership d={d} r={r}", ok, detail))
    return checks


def _suite_increment(
    seed: int = 0,
    d_range: tuple[int, int] = (1, 4),
    r_range: tuple[int, int] = (0, 2),
    n: int = 500,
) -> list[Check]:
    """Rank deficit one level down forces the rank up by exactly one."""
    rng = random.Random(seed)
    checks = []
    for d in _span(d_range):
        for r in _span(r_range):
            ok = True
            applicable = 0
            detail = ""
            for _ in range(n):
                t = _mixed_sample(rng, d, r)
                for k in range(2, d + 1):
                    try:
                        good = rank_increment_check(t, k)
                    except PreconditionNotMet:
                        continue
                    applicable += 1
                    if not good:
                        ok = False
                        detail = _witness(t, f"k={k}")
                        break
                if not ok:
                    break
            if ok:
                detail = f"{applicable} applicable cases out of {n} tuples"
            checks.append(Check(f"increment d={d} r={r}", ok, detail))
    return checks


def _suite_rowpairs(
    seed: int = 0,
    d_range: tuple[int, int] = (1, 4),
    r_range: tuple[int, int] = (0, 2),
    n: int = 200,
) -> list[Check]:
    """Two-rows-per-block criterion against the full-matrix rank test."""
    rng = random.Random(seed)
    checks = []
    for d in _span(d_range):
        for r in _span(r_range):
            for k in range(1, d + 1):
                ok, detail = True, f"{n} tuples"
                for _ in range(n):
                    t = _mixed_sample(rng, d, r)
                    if not pair_selection_equivalence(t, k):
                        ok = False
                        detail = _witness(t, f"k={k}")
                        break
                if ok and k <= 3:
                    # exhaustive tally, repeated pairs included
                    rep = pair_selection_report(_mixed_sample(rng, d, r), k)
                    if not rep["equivalent"] or (
                        rep["criterion_distinct_pairs"] != rep["criterion_with_repeats"]
                    ):
                        ok, detail = False, f"tally disagrees: {rep}"
                checks.append(Check(f"rowpairs d={d} r={r} k={k}", ok, detail))
    return checks


def _suite_dimension(
    seed: int = 0,
    d_range: tuple[int, int] = (1, 4),
    r_range: tuple[int, int] = (0, 2),
) -> list[Check]:
    """Generic rank of the cone parametrization equals d + kr + 1."""
    checks = []
    for d in _span(d_range):
        for r in _span(r_range):
            for k in range(1, d + 1):
                res = verify_dimension(d, r, k, seed=seed + 1000 * d + 100 * r + k)
                checks.append(
                    Check(
                        f"dimension d={d} r={r} k={k}",
                        res["ok"],
                        f"rank {res['achieved']} of expected {res['expected']}",
                    )
                )
    return checks


def _suite_jacobian(
    seed: int = 0,
    d_range: tuple[int, int] = (1, 4),
    r_range: tuple[int, int] = (1, 2),
    n: int = 100,
    n_large: int = 10,
) -> list[Check]:
    """Minor Jacobians: zero matrix one level down, full codimension rank
    at exact-level points."""
    rng = random.Random(seed)
    checks = []
    for d in _span(d_range):
        samples = n if d <= 3 else n_large
        for r in _span(r_range):
            for k in range(2, d + 1):
                ok, detail = True, f"{samples} lower-level points"
                for _ in range(samples):
                    t = sample_tuple(d, r, mode="in_lower_stratum", k=k, rng=rng)
                    if not minor_jacobian(t, k).is_zero():
                        ok, detail = False, _witness(t, f"k={k} nonzero gradient")
                        break
                    cls = classify_point(t, k)
                    if cls.kind is not PointKind.SINGULAR:
                        ok, detail = False, _witness(t, f"k={k} kind={cls.kind.value}")
                        break
                checks.append(Check(f"jacobian-zero d={d} r={r} k={k}", ok, detail))
            for k in range(1, d + 1):
                codim = stratum_codimension(d, r, k)
                ok, detail = True, f"{samples} exact-level points, rank {codim}"
                for _ in range(samples):
                    t = sample_tuple_exact(d, r, k, rng=rng)
                    cls = classify_point(t, k)
                    if cls.kind is not PointKind.SMOOTH or cls.jacobian_rank != codim:
                        ok = False
                        detail = _witness(
                            t, f"k={k} kind={cls.kind.value} jrank={cls.jacobian_rank}"
                        )
                        break
                checks.append(Check(f"jacobian-rank d={d} r={r} k={k}", ok, detail))
    return checks


def _suite_corner(
    seed: int = 0,
    n: int = 50,
    d_range: tuple[int, int] = (4, 4),
    r_range: tuple[int, int] = (2, 2),
) -> list[Check]:
    """Corner attachment of a 2x2 minor to a 6x6 keeps the determinant a
    product, for random, sparse, and structured fills."""
    d, r = d_range[0], r_range[0]
    rng = random.Random(seed)
    checks = []
    ok, detail = True, f"{n} random fills"
    for i in range(n):
        res = corner_identity_check(seed=seed + i, d=d, r=r)
        if not res["ok"]:
            ok, detail = False, f"fill seed {seed + i}: {res}"
            break
    checks.append(Check(f"corner-random d={d} r={r}", ok, detail))

    sparse = {
        (i, j): Fraction(rng.randint(-9, 9)) * rng.randint(0, 1)
        for i in range(r + 1)
        for j in range(d + 1)
    }
    res = corner_identity_check(seed=seed, d=d, r=r, svals=sparse, ns=(0, 1))
    checks.append(Check(f"corner-sparse d={d} r={r}", res["ok"], "zero-heavy fill"))

    t = sample_tuple(d, r, mode="in_stratum", k=3, rng=rng)
    svals = {(i, j): t.coeff(i, j) for i in range(r + 1) for j in range(d + 1)}
    res = corner_identity_check(seed=seed, d=d, r=r, svals=svals)
    checks.append(Check(f"corner-structured d={d} r={r}", res["ok"], "sampled tuple fill"))
    return checks


def _suite_relations(
    seed: int = 0,
    d_range: tuple[int, int] = (2, 4),
    r_range: tuple[int, int] = (1, 2),
    n: int = 100,
) -> list[Check]:
    """Six-term values: all zero on constructed level-2 points, some
    nonzero on generic tuples, and always equal to the 4x4 minor."""
    rng = random.Random(seed)
    checks = []
    for d in _span(d_range):
        for r in _span(r_range):
            pairs = row_pairs(r)
            col_sets = list(itertools.combinations(range(d + 2), 4))

            def all_terms(u):
                for top in pairs:
                    for bot in pairs:
                        for ms in col_sets:
                            yield top, bot, ms, six_term_relation(
                                u, d, r, *top, *bot, *ms
                            )

            ok, detail = True, f"{n} level-2 points, {len(pairs)**2 * len(col_sets)} relations each"
            for _ in range(n):
                t = sample_tuple_exact(d, r, 2, rng=rng)
                u = level1_coords(t)
                bad = next((x for x in all_terms(u) if x[3] != 0), None)
                if bad is not None:
                    ok = False
                    detail = _witness(t, f"nonzero at {bad[:3]}")
                    break
            checks.append(Check(f"relations-vanish d={d} r={r}", ok, detail))

            ok, detail = True, f"{n} generic tuples"
            for _ in range(n):
                t = sample_tuple(d, r, mode="generic", rng=rng)
                u = level1_coords(t)
                if all(x[3] == 0 for x in all_terms(u)):
                    ok, detail = False, _witness(t, "all relations vanish")
                    break
            checks.append(Check(f"relations-nonzero d={d} r={r}", ok, detail))

            ok, detail = True, "10 tuples, sampled index sets"
            for _ in range(10):
                t = _mixed_sample(rng, d, r)
                try:
                    u = level1_coords(t)
                except IndeterminacyLocus:
                    continue
                for _ in range(10):
                    top = rng.choice(pairs)
                    bot = rng.choice(pairs)
                    ms = rng.choice(col_sets)
                    got = six_term_relation(u, d, r, *top, *bot, *ms)
                    want = minor_value(t, MinorIndex(top + bot, ms))
                    if got != want:
                        ok = False
                        detail = _witness(t, f"{(top, bot, ms)}: {got} != {want}")
                        break
                if not ok:
                    break
            checks.append(Check(f"relations-minor d={d} r={r}", ok, detail))
    return checks


def _suite_monomials(
    seed: int = 0,
    pairs: Sequence[tuple[int, int]] = ((2, 1), (3, 1), (4, 1), (3, 2), (4, 2)),
) -> list[Check]:
    """Shifted single-form minors stay linearly independent."""
    checks = []
    for d, k in pairs:
        res = monomial_span_check(d, k)
        checks.append(
            Check(
                f"monomials d={d} k={k}",
                res["ok"],
                f"rank {res['rank']} of {res['minors']} minors "
                f"in {res['monomials']} monomials",
            )
        )
    return checks


def _suite_lift(
    seed: int = 0,
    d_range: tuple[int, int] = (3, 3),
    r_range: tuple[int, int] = (1, 2),
    n: int = 100,
) -> list[Check]:
    """Lift of factored tuples: commutes with the product map, matches the
    level-1 minors exactly, and stays injective."""
    rng = random.Random(seed)
    d = d_range[0]
    checks = []

    def draw_input(r: int, proportional: bool):
        if proportional:
            base = _draw_form(rng, 1, 9)
            scales = [rng.randint(-9, 9) for _ in range(r + 1)]
            while not any(scales):
                scales = [rng.randint(-9, 9) for _ in range(r + 1)]
            mu = FormTuple(
                r, 1, tuple(base.scaled(c) for c in scales)
            )
        else:
            mu = _draw_tuple(rng, 1, r, 9)
        nu = _draw_form(rng, d - 1, 9)
        mvec = tuple(
            mu.coeff(i, 0) * mu.coeff(ip, 1) - mu.coeff(i, 1) * mu.coeff(ip, 0)
            for i, ip in row_pairs(r)
        )
        if any(m != 0 for m in mvec):
            tau = mvec
        else:
            tau = tuple(Fraction(rng.randint(-9, 9)) for _ in row_pairs(r))
            while all(x == 0 for x in tau):
                tau = tuple(Fraction(rng.randint(-9, 9)) for _ in row_pairs(r))
        return mu, tau, nu, mvec

    def flat(t: FormTuple):
        return tuple(c for f in t.forms for c in f.coeffs)

    for r in _span(r_range):
        ok, detail = True, f"{n} points"
        for _ in range(n):
            mu, tau, nu, mvec = draw_input(r, proportional=False)
            pt = lift_product_map(mu, tau, nu)
            prod_t = parametrize_stratum(StratumParam(2, mu, nu))
            if not projectively_equal(pt.levels[0], flat(prod_t)):
                ok, detail = False, _witness(prod_t, "projection mismatch")
                break
            if any(m != 0 for m in mvec) and pt.levels[1] != level1_coords(prod_t):
                ok, detail = False, _witness(prod_t, "level-1 mismatch")
                break
        checks.append(Check(f"lift-commute d={d} r={r}", ok, detail))

        ok, detail = True, f"{n} pairs"
        for i in range(n):
            proportional = i % 3 == 0
            mu, tau, nu, _ = draw_input(r, proportional)
            pt = lift_product_map(mu, tau, nu)

            # a rescaled copy must land on the same projective point
            a, b, c = (Fraction(rng.choice((-3, -2, -1, 1, 2, 3))) for _ in range(3))
            pt2 = lift_product_map(
                mu.scaled(a), tuple(b * x for x in tau), nu.scaled(c)
            )
            same = all(
                projectively_equal(x, y) for x, y in zip(pt.levels, pt2.levels)
            )
            if not same:
                ok, detail = False, f"rescaled copy moved (r={r}, sample {i})"
                break

            # an independent draw with distinct inputs must land elsewhere
            mu3, tau3, nu3, _ = draw_input(r, proportional)
            inputs_equal = (
                projectively_equal(flat(mu), flat(mu3))
                and projectively_equal(tau, tau3)
                and projectively_equal(nu.coeffs, nu3.coeffs)
            )
            pt3 = lift_product_map(mu3, tau3, nu3)
            outputs_equal = all(
                projectively_equal(x, y) for x, y in zip(pt.levels, pt3.levels)
            )
            if inputs_equal != outputs_equal:
                ok, detail = False, f"injectivity broken (r={r}, sample {i})"
                break
        checks.append(Check(f"lift-injective d={d} r={r}", ok, detail))
    return checks


def _suite_expansion(
    seed: int = 0,
    d_range: tuple[int, int] = (2, 4),
    r_range: tuple[int, int] = (1, 2),
    n: int = 100,
) -> list[Check]:
    """Minors of a product tuple against their shift-sum expansion."""
    rng = random.Random(seed)
    checks = []
    for d in _span(d_range):
        for r in _span(r_range):
            pairs = row_pairs(r)
            for s in (1, 2):
                ok, detail = True, f"{n} (g, p) pairs"
                for _ in range(n):
                    e = rng.randint(1, d)
                    g = _draw_tuple(rng, d - e, r, 9)
                    p = _draw_form(rng, e, 9)
                    ncols = d + s
                    for _ in range(3):
                        rows = sum((rng.choice(pairs) for _ in range(s)), ())
                        cols = tuple(sorted(rng.sample(range(ncols), 2 * s)))
                        res = product_minor_expansion_check(
                            g, p, MinorIndex(rows, cols)
                        )
                        if not res["ok"]:
                            ok = False
                            detail = (
                                f"d={d} r={r} s={s} rows={rows} cols={cols}: "
                                f"{res['minor']} != {res['expansion']}"
                            )
                            break
                    if not ok:
                        break
                checks.append(Check(f"expansion d={d} r={r} s={s}", ok, detail))
    return checks


def _suite_auxcount(seed: int = 0, k_range: tuple[int, int] = (1, 8)) -> list[Check]:
    """Auxiliary bookkeeping: the row-count identity and the multiset of
    sizes the recursion actually produces."""
    checks = []
    for k in _span(k_range):
        res = aux_size_identity(k)
        checks.append(
            Check(f"auxcount identity k={k}", res["ok"], f"{res['lhs']} = {res['rhs']}")
        )
    top = max(3, k_range[1])
    for blocks in range(3, top + 1):
        root = MinorIndex((0, 1) * blocks, tuple(range(2 * blocks)))
        try:
            tree = attach_auxiliaries(root)
        except ValueError as exc:
            checks.append(Check(f"auxcount tree blocks={blocks}", False, str(exc)))
            continue
        sizes: dict[int, int] = {}
        for a in tree.aux:
            sizes[2 * a.blocks] = sizes.get(2 * a.blocks, 0) + 1
        kk = blocks - 1
        expected = {2 * (kk - j): 2 ** (j - 1) for j in range(1, kk)}
        ok = sizes == expected
        checks.append(
            Check(
                f"auxcount tree blocks={blocks}",
                ok,
                f"sizes {sorted(sizes.items())}",
            )
        )
    return checks


SUITES: dict[str, tuple[Callable[..., list[Check]], tuple[str, ...]]] = {
    "membership": (_suite_membership, ("d_range", "r_range", "n")),
    "increment": (_suite_increment, ("d_range", "r_range", "n")),
    "rowpairs": (_suite_rowpairs, ("d_range", "r_range", "n")),
    "dimension": (_suite_dimension, ("d_range", "r_range")),
    "jacobian": (_suite_jacobian, ("d_range", "r_range", "n")),
    "corner": (_suite_corner, ("d_range", "r_range", "n")),
    "relations": (_suite_relations, ("d_range", "r_range", "n")),
    "monomials": (_suite_monomials, ()),
    "lift": (_suite_lift, ("d_range", "r_range", "n")),
    "expansion": (_suite_expansion, ("d_range", "r_range", "n")),
    "auxcount": (_suite_auxcount, ("k_range",)),
}


def cmd_verify(
    suite: str,
    seed: int = 0,
    d_range: Optional[tuple[int, int]] = None,
    r_range: Optional[tuple[int, int]] = None,
    k_range: Optional[tuple[int, int]] = None,
    n: Optional[int] = None,
) -> Report:
    if suite not in SUITES:
        raise UnknownSuite(
            f"no suite {suite!r}; available: {', '.join(sorted(SUITES))}"
        )
    fn, allowed = SUITES[suite]
    kwargs = {"seed": seed}
    offered = {"d_range": d_range, "r_range": r_range, "k_range": k_range, "n": n}
    for name, value in offered.items():
        if value is not None:
            if name not in allowed:
                raise ParseError(f"suite {suite!r} does not take {name}")
            kwargs[name] = value
    t0 = time.perf_counter()
    checks = fn(**kwargs)
    params = {
        key: list(value) if isinstance(value, tuple) else value
        for key, value in kwargs.items()
    }
    return _report(f"verify {suite}", params, seed, checks, t0)


# ---------------------------------------------------------------------------
# one-shot commands

def cmd_stratum(t: FormTuple, k: int) -> Report:
    t0 = time.perf_counter()
    rk = rank(build_matrix(t, k).matrix)
    member = rk < 2 * k
    mult = common_root_multiplicity(t)
    agree = member == (mult >= t.d - k + 1)
    checks = [
        Check(
            "rank vs multiplicity",
            agree,
            f"in_stratum={member} rank={rk} mult={mult}",
        )
    ]
    params = {"k": k, "doc": tuple_to_document(t)}
    return _report("stratum", params, None, checks, t0)


def cmd_classify(t: FormTuple, k: int) -> Report:
    t0 = time.perf_counter()
    cls = classify_point(t, k)
    mult = common_root_multiplicity(t)
    if t.r == 0:
        consistent = cls.kind is PointKind.SMOOTH
    elif mult < t.d - k + 1:
        consistent = cls.kind is PointKind.NOT_IN_STRATUM
    elif mult >= t.d - k + 2:
        consistent = cls.kind is PointKind.SINGULAR
    else:
        consistent = cls.kind is PointKind.SMOOTH
    checks = [
        Check(
            "classification",
            consistent,
            f"kind={cls.kind.value} rank={cls.rank_k} mult={mult} "
            f"jrank={cls.jacobian_rank} codim={cls.codimension}",
        )
    ]
    params = {"k": k, "doc": tuple_to_document(t)}
    return _report("classify", params, None, checks, t0)


def cmd_rank(t: FormTuple, k: int) -> Report:
    t0 = time.perf_counter()
    rm = build_matrix(t, k)
    rk = rank(rm.matrix)
    checks = [
        Check(
            "rank",
            True,
            f"rank={rk} shape={rm.matrix.rows}x{rm.matrix.cols} threshold={2 * k}",
        )
    ]
    params = {"k": k, "doc": tuple_to_document(t)}
    return _report("rank", params, None, checks, t0)


def cmd_dim(d: int, r: int, k: int, seed: int = 0) -> Report:
    t0 = time.perf_counter()
    dim = stratum_dimension(d, r, k)
    codim = stratum_codimension(d, r, k)
    res = verify_dimension(d, r, k, seed=seed)
    checks = [
        Check(
            "dimension",
            res["ok"],
            f"dim={dim} codim={codim} cone_rank={res['achieved']}",
        )
    ]
    return _report("dim", {"d": d, "r": r, "k": k}, seed, checks, t0)


def cmd_blowup_coords(
    t: FormTuple, level: int, output: Optional[str], max_stdout: int = STREAM_THRESHOLD
) -> tuple[Report, Optional[list[str]]]:
    """Returns the report and, for small vectors, the values to print."""
    t0 = time.perf_counter()
    count = coordinate_count(t.d, t.r, level)
    params = {"level": level, "doc": tuple_to_document(t)}
    if count > max_stdout and output is None:
        raise ParseError(
            f"level-{level} vector has {count} entries; pass --output FILE"
        )
    nonzero = 0
    if output is not None:
        with open(output, "w", encoding="utf-8") as fh:
            for _, v in blowup_coords_stream(t, level):
                if v:
                    nonzero += 1
                fh.write(f"{v}\n")
        values = None
    else:
        values = []
        for _, v in blowup_coords_stream(t, level):
            if v:
                nonzero += 1
            values.append(str(v))
    checks = [
        Check(
            "coordinates",
            nonzero > 0,
            f"{count} entries, {nonzero} nonzero"
            + (f", written to {output}" if output else ""),
        )
    ]
    return _report("blowup-coords", params, None, checks, t0), values


def cmd_sample(
    d: int,
    r: int,
    k: Optional[int],
    seed: int,
    mode: str,
    bound: int = 9,
) -> dict:
    t = sample_tuple(d, r, seed=seed, mode=mode, k=k, bound=bound)
    return tuple_to_document(t)


# ---------------------------------------------------------------------------
# argument handling

def parse_range(text: str) -> tuple[int, int]:
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            lo, hi = int(lo), int(hi)
        else:
            lo = hi = int(text)
    except ValueError as exc:
        raise ParseError(f"bad range {text!r}; use N or A..B") from exc
    if lo > hi:
        raise ParseError(f"empty range {text!r}")
    return lo, hi


def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="formstrata",
        description="Exact rational toolkit for shared-root loci of binary-form tuples.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--json", action="store_true", help="emit the report as JSON")

    for name, help_text in (
        ("stratum", "membership test with the multiplicity oracle"),
        ("classify", "smooth/singular placement of a tuple"),
        ("rank", "rank of the level-k block matrix"),
    ):
        sp = sub.add_parser(name, help=help_text)
        sp.add_argument("--input", required=True, help="tuple document (JSON)")
        sp.add_argument("--k", type=int, required=True)
        common(sp)

    sp = sub.add_parser("dim", help="stratum dimension bookkeeping")
    sp.add_argument("--d", type=int, required=True)
    sp.add_argument("--r", type=int, required=True)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--seed", type=int, default=0)
    common(sp)

    sp = sub.add_parser("blowup-coords", help="level-k coordinate vector")
    sp.add_argument("--input", required=True)
    sp.add_argument("--level", type=int, required=True)
    sp.add_argument("--output", help="write coordinates here, one per line")
    common(sp)

    sp = sub.add_parser("verify", help="run a property suite")
    sp.add_argument("suite", help=", ".join(sorted(SUITES)))
    sp.add_argument("--d", help="degree or range A..B")
    sp.add_argument("--r", help="tuple size or range A..B")
    sp.add_argument("--k", help="level or range A..B")
    sp.add_argument("--n", type=int, help="samples per configuration")
    sp.add_argument("--seed", type=int, default=0)
    common(sp)

    sp = sub.add_parser("sample", help="draw a deterministic tuple document")
    sp.add_argument("--d", type=int, required=True)
    sp.add_argument("--r", type=int, required=True)
    sp.add_argument("--k", type=int)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument(
        "--mode",
        choices=("generic", "in_stratum", "in_lower_stratum"),
        default="generic",
    )
    sp.add_argument("--bound", type=int, default=9, help="coefficient range")
    sp.add_argument("--output", help="write the document here instead of stdout")
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "sample":
            doc = cmd_sample(args.d, args.r, args.k, args.seed, args.mode, args.bound)
            text = json.dumps(doc, sort_keys=True)
            if args.output:
                with open(args.output, "w", encoding="utf-8") as fh:
                    fh.write(text + "\n")
            else:
                print(text)
            return 0
        if args.command == "verify":
            rep = cmd_verify(
                args.suite,
                seed=args.seed,
                d_range=parse_range(args.d) if args.d else None,
                r_range=parse_range(args.r) if args.r else None,
                k_range=parse_range(args.k) if args.k else None,
                n=args.n,
            )
        elif args.command == "dim":
            rep = cmd_dim(args.d, args.r, args.k, seed=args.seed)
        elif args.command == "blowup-coords":
            t = load_document(args.input)
            rep, values = cmd_blowup_coords(t, args.level, args.output)
            if values is not None and not args.json:
                for v in values:
                    print(v)
        else:
            t = load_document(args.input)
            fn = {"stratum": cmd_stratum, "classify": cmd_classify, "rank": cmd_rank}[
                args.command
            ]
            rep = fn(t, args.k)
    except FormstrataError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(render_report(rep, args.json))
    return 0 if rep.passed else 1


if __name__ == "__main__":
    sys.exit(main())
