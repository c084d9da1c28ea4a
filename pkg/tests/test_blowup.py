"""Minor coordinates, their relations, auxiliary attachments, and the
lifted product map."""

import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from formstrata import (
    AuxTree,
    BadIndexSet,
    BadK,
    BadS,
    BinaryForm,
    BlowupPoint,
    FormTuple,
    InconsistentInput,
    IndeterminacyLocus,
    MinorIndex,
    TooLarge,
)
from formstrata.blowup import (
    attach_auxiliaries,
    aux_size_identity,
    blowup_coords,
    blowup_coords_stream,
    blowup_indices,
    coordinate_count,
    corner_identity_check,
    level1_coords,
    level1_indices,
    level2_coords,
    level2_indices,
    lift_product_map,
    minor_value,
    monomial_span_check,
    product_minor_expansion_check,
    projectively_equal,
    row_pairs,
    segre,
    six_term_relation,
    skew_coords,
    veronese,
)
from formstrata.strata import StratumParam, parametrize_stratum

from oracles import laplace_det

F = Fraction


def rand_tuple(rng, d, r):
    while True:
        rows = [[rng.randint(-9, 9) for _ in range(d + 1)] for _ in range(r + 1)]
        if any(any(row) for row in rows):
            return FormTuple.from_coeff_rows(rows)


def product_tuple(rng, d, r, k):
    """A tuple constructed from cofactors times a shared degree d-k+1 factor."""
    while True:
        g_rows = [[rng.randint(-9, 9) for _ in range(k)] for _ in range(r + 1)]
        if any(any(row) for row in g_rows):
            break
    while True:
        p_cs = [rng.randint(-9, 9) for _ in range(d - k + 2)]
        if any(p_cs):
            break
    return parametrize_stratum(
        StratumParam(
            k, FormTuple.from_coeff_rows(g_rows), BinaryForm.from_coeffs(p_cs)
        )
    )


def shifted_submatrix(t, idx):
    rows = []
    for p, i in enumerate(idx.rows):
        shift = p // 2
        rows.append(
            [
                t.coeff(i, m - shift) if 0 <= m - shift <= t.d else F(0)
                for m in idx.cols
            ]
        )
    return rows


# ---------------------------------------------------------------------------
# minor indexing


def test_minor_index_validation():
    with pytest.raises(BadIndexSet):
        MinorIndex((0,), (0,))
    with pytest.raises(BadIndexSet):
        MinorIndex((1, 0), (0, 1))
    with pytest.raises(BadIndexSet):
        MinorIndex((0, 1), (1, 1))
    with pytest.raises(BadIndexSet):
        MinorIndex((0, 1), (-1, 0))
    with pytest.raises(BadIndexSet):
        MinorIndex((0, 1), (0, 1, 2))


def test_minor_index_block_structure():
    idx = MinorIndex((0, 1, 0, 2), (0, 1, 2, 3))
    assert idx.blocks == 2
    assert idx.pairs == ((0, 1), (0, 2))


def test_minor_value_range_checks():
    t = FormTuple.from_coeff_rows([[1, 0, 0], [0, 0, 1]])
    with pytest.raises(BadIndexSet):
        minor_value(t, MinorIndex((0, 2), (0, 1)))
    with pytest.raises(BadIndexSet):
        minor_value(t, MinorIndex((0, 1), (0, 3)))


def test_full_two_block_minor_of_coprime_squares():
    # the 4x4 block matrix is a row permutation of the identity
    t = FormTuple.from_coeff_rows([[1, 0, 0], [0, 0, 1]])
    idx = MinorIndex((0, 1, 0, 1), (0, 1, 2, 3))
    assert minor_value(t, idx) == -1
    assert laplace_det(shifted_submatrix(t, idx)) == -1


def test_minor_value_matches_laplace_on_random_indices():
    rng = random.Random(5)
    for _ in range(40):
        d = rng.randint(1, 4)
        r = rng.randint(1, 2)
        s = rng.randint(1, min(2, d))
        t = rand_tuple(rng, d, r)
        pairs = row_pairs(r)
        rows = sum((rng.choice(pairs) for _ in range(s)), ())
        cols = tuple(sorted(rng.sample(range(d + s), 2 * s)))
        idx = MinorIndex(rows, cols)
        assert minor_value(t, idx) == laplace_det(shifted_submatrix(t, idx))


# ---------------------------------------------------------------------------
# level-1 and level-2 coordinates


def test_level1_of_independent_linear_forms():
    t = FormTuple.from_coeff_rows([[1, 0], [0, 1]])
    assert level1_coords(t) == (1,)


def test_level1_of_coprime_squares():
    t = FormTuple.from_coeff_rows([[1, 0, 0], [0, 0, 1]])
    assert level1_coords(t) == (0, 1, 0)


def test_level1_undefined_on_proportional_forms():
    t = FormTuple.from_coeff_rows([[1, 0, 0], [1, 0, 0]])
    with pytest.raises(IndeterminacyLocus):
        level1_coords(t)


def test_level1_follows_the_index_enumeration():
    rng = random.Random(11)
    for _ in range(10):
        t = rand_tuple(rng, 3, 2)
        try:
            vals = level1_coords(t)
        except IndeterminacyLocus:
            continue
        expected = tuple(minor_value(t, idx) for idx in level1_indices(t.d, t.r))
        assert vals == expected


def test_level2_contains_the_full_minor():
    t = FormTuple.from_coeff_rows([[1, 0, 0], [0, 0, 1]])
    vals = level2_coords(t)
    idxs = list(level2_indices(2, 1))
    assert len(vals) == len(idxs)
    full = idxs.index(MinorIndex((0, 1, 0, 1), (0, 1, 2, 3)))
    assert vals[full] == -1


def test_level2_needs_degree_two():
    with pytest.raises(BadK):
        list(level2_indices(1, 1))


def test_level2_undefined_inside_the_stratum():
    t = FormTuple.from_coeff_rows([[1, 0, 0], [1, 0, 0]])
    with pytest.raises(IndeterminacyLocus):
        level2_coords(t)


def test_level2_undefined_on_constructed_member():
    rng = random.Random(3)
    t = product_tuple(rng, 3, 1, 2)
    with pytest.raises(IndeterminacyLocus):
        level2_coords(t)


# ---------------------------------------------------------------------------
# six-term relations


def test_six_term_equals_the_minor():
    rng = random.Random(7)
    for d in (2, 3):
        for r in (1, 2):
            pairs = row_pairs(r)
            col_sets = list(itertools.combinations(range(d + 2), 4))
            for _ in range(10):
                t = rand_tuple(rng, d, r)
                try:
                    u = level1_coords(t)
                except IndeterminacyLocus:
                    continue
                for top in pairs:
                    for bot in pairs:
                        for ms in col_sets:
                            got = six_term_relation(u, d, r, *top, *bot, *ms)
                            want = minor_value(t, MinorIndex(top + bot, ms))
                            assert got == want


def test_six_term_vanishes_on_constructed_members():
    rng = random.Random(1)
    for d in (2, 3):
        t = product_tuple(rng, d, 1, 2)
        while True:
            try:
                u = level1_coords(t)
                break
            except IndeterminacyLocus:
                t = product_tuple(rng, d, 1, 2)
        for ms in itertools.combinations(range(d + 2), 4):
            assert six_term_relation(u, d, 1, 0, 1, 0, 1, *ms) == 0


def test_six_term_detects_an_outsider():
    t = FormTuple.from_coeff_rows([[1, 0, 0], [0, 0, 1]])
    u = level1_coords(t)
    vals = [
        six_term_relation(u, 2, 1, 0, 1, 0, 1, *ms)
        for ms in itertools.combinations(range(4), 4)
    ]
    assert any(v != 0 for v in vals)


def test_six_term_on_zero_vector():
    u = [0] * 3
    for ms in itertools.combinations(range(4), 4):
        assert six_term_relation(u, 2, 1, 0, 1, 0, 1, *ms) == 0


def test_six_term_index_validation():
    u = [0, 1, 0]
    with pytest.raises(BadIndexSet):
        six_term_relation(u, 2, 1, 1, 0, 0, 1, 0, 1, 2, 3)
    with pytest.raises(BadIndexSet):
        six_term_relation(u, 2, 1, 0, 1, 0, 1, 0, 1, 2, 4)
    with pytest.raises(InconsistentInput):
        six_term_relation([0, 1], 2, 1, 0, 1, 0, 1, 0, 1, 2, 3)


# ---------------------------------------------------------------------------
# corner attachment


def test_corner_identity_over_seeds():
    for seed in range(10):
        res = corner_identity_check(seed=seed)
        assert res["ok"]
        assert res["det_block"] == res["det_root"] * res["det_aux"]
        assert res["det_attached"] == res["det_block"]


def test_corner_identity_on_zero_fill():
    svals = {(i, j): F(0) for i in range(3) for j in range(5)}
    res = corner_identity_check(svals=svals)
    assert res["ok"]
    assert res["det_attached"] == 0


def test_corner_identity_at_column_boundary():
    res = corner_identity_check(seed=2, ns=(0, 1))
    assert res["ok"]


def test_corner_identity_minimum_shape():
    res = corner_identity_check(seed=4, d=3, r=1)
    assert res["ok"]
    with pytest.raises(BadK):
        corner_identity_check(d=2)
    with pytest.raises(BadK):
        corner_identity_check(r=0)


def test_corner_identity_rejects_bad_columns():
    with pytest.raises(BadIndexSet):
        corner_identity_check(ms=(0, 1, 2, 3, 4))
    with pytest.raises(BadIndexSet):
        corner_identity_check(ns=(3, 1))
    with pytest.raises(BadIndexSet):
        corner_identity_check(pairs=((0, 0), (0, 1), (0, 1)))


# ---------------------------------------------------------------------------
# auxiliary attachment


def test_three_block_root_gets_one_small_auxiliary():
    root = MinorIndex((0, 1) * 3, tuple(range(6)))
    tree = attach_auxiliaries(root)
    assert [a.blocks for a in tree.aux] == [1]
    assert 2 * root.blocks + sum(2 * a.blocks for a in tree.aux) == 8


def test_four_block_root_gets_three_auxiliaries():
    root = MinorIndex((0, 1) * 4, tuple(range(8)))
    tree = attach_auxiliaries(root)
    assert sorted(2 * a.blocks for a in tree.aux) == [2, 2, 4]


def test_auxiliaries_repeat_inner_row_runs():
    root = MinorIndex((0, 1, 0, 2, 1, 2), tuple(range(6)))
    tree = attach_auxiliaries(root)
    assert tree.aux[0].pairs == ((0, 2),)


def test_small_roots_take_no_auxiliaries():
    with pytest.raises(BadK):
        attach_auxiliaries(MinorIndex((0, 1, 0, 1), (0, 1, 2, 3)))


def test_aux_tree_size_invariant():
    root = MinorIndex((0, 1) * 3, tuple(range(6)))
    with pytest.raises(ValueError):
        AuxTree(root, ())


def test_aux_size_identity_values():
    assert aux_size_identity(1) == {"k": 1, "lhs": 0, "rhs": 0, "ok": True}
    assert aux_size_identity(2) == {"k": 2, "lhs": 2, "rhs": 2, "ok": True}
    res = aux_size_identity(5)
    assert (res["lhs"], res["rhs"], res["ok"]) == (52, 52, True)
    for k in range(1, 12):
        assert aux_size_identity(k)["ok"]
    with pytest.raises(BadK):
        aux_size_identity(0)


# ---------------------------------------------------------------------------
# full coordinate vectors


def test_coordinate_count_values():
    assert coordinate_count(3, 2, 3) == 162
    assert coordinate_count(4, 2, 4) == 121500
    assert coordinate_count(2, 1, 1) == 3


def test_coordinate_count_matches_enumeration():
    for d, r, k in [(2, 1, 1), (2, 1, 2), (3, 1, 3), (3, 2, 3)]:
        assert coordinate_count(d, r, k) == sum(1 for _ in blowup_indices(d, r, k))


def test_blowup_delegates_to_plain_minors():
    t = FormTuple.from_coeff_rows([[1, 0, 0], [0, 0, 1]])
    assert blowup_coords(t, 1) == level1_coords(t)
    assert blowup_coords(t, 2) == level2_coords(t)


def test_level3_entry_is_a_product_of_determinants():
    t = FormTuple.from_coeff_rows([[1, 0, 0, 0], [0, 0, 0, 1]])
    root = MinorIndex((0, 1) * 3, tuple(range(6)))
    values = {
        (tree.root, tree.aux): v for tree, v in blowup_coords_stream(t, 3)
    }
    det6 = laplace_det(shifted_submatrix(t, root))
    assert det6 == -1
    aux_a = MinorIndex((0, 1), (0, 1))
    aux_b = MinorIndex((0, 1), (0, 3))
    det2_a = laplace_det(shifted_submatrix(t, aux_a))
    det2_b = laplace_det(shifted_submatrix(t, aux_b))
    assert (det2_a, det2_b) == (0, 1)
    assert values[(root, (aux_a,))] == det6 * det2_a == 0
    assert values[(root, (aux_b,))] == det6 * det2_b == -1


def test_blowup_undefined_when_all_coordinates_vanish():
    t = FormTuple.from_coeff_rows([[1, 0, 0, 0], [0, 1, 0, 0]])
    # shared multiplicity 2 puts the tuple inside the level-3 locus
    with pytest.raises(IndeterminacyLocus):
        blowup_coords(t, 3)


def test_blowup_size_guard():
    t = FormTuple.from_coeff_rows([[1, 0, 0], [0, 0, 1]])
    with pytest.raises(TooLarge):
        blowup_coords(t, 1, max_entries=2)


# ---------------------------------------------------------------------------
# skew coordinates, embeddings


def test_skew_coords_of_a_linear_form():
    nu = BinaryForm.from_coeffs([1, 0])
    assert skew_coords(nu) == (1, 0, 0)


def test_skew_coords_of_a_constant():
    nu = BinaryForm.from_coeffs([1])
    assert skew_coords(nu) == (1,)


def test_skew_coords_reject_zero():
    with pytest.raises(InconsistentInput):
        skew_coords(BinaryForm.from_coeffs([0, 0]))


@given(
    st.lists(st.integers(min_value=-9, max_value=9), min_size=1, max_size=4).filter(
        lambda cs: any(cs)
    )
)
@settings(deadline=None)
def test_skew_coords_never_vanish(cs):
    nu = BinaryForm.from_coeffs(cs)
    assert any(v != 0 for v in skew_coords(nu))
    # degree-2 values are insensitive to a global sign flip
    assert skew_coords(nu.scaled(-1)) == skew_coords(nu)


def test_veronese_values():
    assert veronese((1, 0), 2) == (1, 0, 0)
    assert veronese((1, 1), 2) == (1, 1, 1)
    assert veronese((2, 3), 1) == (2, 3)


def test_veronese_injective_on_distinct_points():
    rng = random.Random(13)
    found_distinct = 0
    while found_distinct < 100:
        n = rng.randint(2, 3)
        a = [rng.randint(-9, 9) for _ in range(n)]
        b = [rng.randint(-9, 9) for _ in range(n)]
        if not any(a) or not any(b):
            continue
        if projectively_equal(a, b):
            continue
        found_distinct += 1
        assert not projectively_equal(veronese(a, 2), veronese(b, 2))


def test_segre_values():
    assert segre((1, 0), (0, 1)) == (0, 1, 0, 0)


@given(
    st.lists(st.integers(min_value=-9, max_value=9), min_size=1, max_size=4).filter(
        lambda cs: any(cs)
    ),
    st.lists(st.integers(min_value=-9, max_value=9), min_size=1, max_size=4).filter(
        lambda cs: any(cs)
    ),
)
@settings(deadline=None)
def test_segre_of_nonzero_factors_is_nonzero(p, q):
    assert any(v != 0 for v in segre(p, q))


def test_projective_equality():
    assert projectively_equal((1, 2, 0), (3, 6, 0))
    assert not projectively_equal((1, 2, 0), (3, 6, 1))
    assert not projectively_equal((1, 0), (0, 0))
    with pytest.raises(InconsistentInput):
        projectively_equal((1, 0), (1, 0, 0))


def test_blowup_point_rejects_zero_levels():
    with pytest.raises(InconsistentInput):
        BlowupPoint(((F(1), F(0)), (F(0),)))
    with pytest.raises(InconsistentInput):
        BlowupPoint(())


# ---------------------------------------------------------------------------
# the lifted product map


def test_lift_matches_direct_coordinates():
    rng = random.Random(17)
    for _ in range(20):
        mu = rand_tuple(rng, 1, rng.randint(1, 2))
        nu = BinaryForm.from_coeffs([rng.randint(-9, 9) for _ in range(3)])
        if nu.is_zero():
            continue
        mvec = tuple(
            mu.coeff(i, 0) * mu.coeff(ip, 1) - mu.coeff(i, 1) * mu.coeff(ip, 0)
            for i, ip in row_pairs(mu.r)
        )
        if all(m == 0 for m in mvec):
            continue
        pt = lift_product_map(mu, mvec, nu)
        prod = parametrize_stratum(StratumParam(2, mu, nu))
        flat = tuple(c for f in prod.forms for c in f.coeffs)
        assert pt.levels[0] == flat
        assert pt.levels[1] == level1_coords(prod)


def test_lift_carries_a_free_direction_on_proportional_cofactors():
    base = BinaryForm.from_coeffs([1, 2])
    mu = FormTuple(1, 1, (base, base.scaled(3)))
    nu = BinaryForm.from_coeffs([1, 0, 1])
    pt = lift_product_map(mu, (F(5),), nu)
    prod = parametrize_stratum(StratumParam(2, mu, nu))
    with pytest.raises(IndeterminacyLocus):
        level1_coords(prod)
    assert any(v != 0 for v in pt.levels[1])


def test_lift_input_validation():
    mu = FormTuple.from_coeff_rows([[1, 0], [0, 1]])
    nu = BinaryForm.from_coeffs([1, 1])
    with pytest.raises(InconsistentInput):
        lift_product_map(FormTuple.from_coeff_rows([[1, 0, 0], [0, 0, 1]]), (1,), nu)
    with pytest.raises(InconsistentInput):
        lift_product_map(mu, (0,), nu)
    with pytest.raises(InconsistentInput):
        lift_product_map(mu, (1, 2), nu)
    with pytest.raises(InconsistentInput):
        lift_product_map(mu, (1,), BinaryForm.from_coeffs([0, 0]))
    # with three cofactors the direction must match the minor vector
    mu3 = FormTuple.from_coeff_rows([[1, 0], [0, 1], [1, 1]])
    with pytest.raises(InconsistentInput):
        lift_product_map(mu3, (1, 1, 1), nu)
    lift_product_map(mu3, (2, 2, -2), nu)  # a scalar multiple is fine


# ---------------------------------------------------------------------------
# product-minor expansion


def test_expansion_exhaustive_for_single_blocks():
    rng = random.Random(19)
    for _ in range(5):
        g = rand_tuple(rng, 1, 1)
        p = BinaryForm.from_coeffs([rng.randint(-9, 9) for _ in range(2)])
        if p.is_zero():
            continue
        d = g.d + p.degree
        for cols in itertools.combinations(range(d + 1), 2):
            res = product_minor_expansion_check(g, p, MinorIndex((0, 1), cols))
            assert res["ok"]


def test_expansion_for_two_blocks():
    rng = random.Random(23)
    for _ in range(5):
        g = rand_tuple(rng, 1, 1)
        p = BinaryForm.from_coeffs([rng.randint(-9, 9) for _ in range(3)])
        if p.is_zero():
            continue
        d = g.d + p.degree
        idx = MinorIndex((0, 1, 0, 1), tuple(sorted(rng.sample(range(d + 2), 4))))
        res = product_minor_expansion_check(g, p, idx)
        assert res["ok"]
        assert res["minor"] == res["expansion"]


def test_expansion_handles_degenerate_cofactors():
    # constant cofactors leave every 2x2 cofactor minor out of range
    g = FormTuple.from_coeff_rows([[2], [3]])
    p = BinaryForm.from_coeffs([1, 1])
    res = product_minor_expansion_check(g, p, MinorIndex((0, 1), (0, 1)))
    assert res["ok"]
    assert res["minor"] == 0 and res["expansion"] == 0


def test_expansion_shape_guards():
    g = FormTuple.from_coeff_rows([[1, 0], [0, 1]])
    with pytest.raises(BadS):
        product_minor_expansion_check(
            g, BinaryForm.from_coeffs([5]), MinorIndex((0, 1), (0, 1))
        )
    with pytest.raises(BadS):
        product_minor_expansion_check(
            g,
            BinaryForm.from_coeffs([1, 1]),
            MinorIndex((0, 1) * 3, tuple(range(6))),
        )


# ---------------------------------------------------------------------------
# monomial spanning


@pytest.mark.parametrize(
    "d,k,minors",
    [(2, 1, 3), (3, 1, 6), (4, 1, 10), (3, 2, 5), (4, 2, 15)],
)
def test_monomial_span_is_full_rank(d, k, minors):
    res = monomial_span_check(d, k)
    assert res["minors"] == minors
    assert res["rank"] == minors
    assert res["ok"]


def test_monomial_span_guards():
    with pytest.raises(BadK):
        monomial_span_check(2, 3)
    with pytest.raises(BadK):
        monomial_span_check(2, 0)
    with pytest.raises(TooLarge):
        monomial_span_check(6, 2)
    with pytest.raises(TooLarge):
        monomial_span_check(6, 3)
