import random
from fractions import Fraction

import pytest

from hkring import (
    Datum,
    DegenerateUSetError,
    IntMatrix,
    MonomialOrder,
    NotSmoothError,
    Poly,
    arrangement_from_datum,
    cohomology_presentation,
    cotangent_iso_certificate,
    cotangent_projective_datum,
    groebner_basis,
    ideal_equal,
    ktheory_presentation,
    normal_form,
    pairing_form,
    product_relation,
    quotient_dimension,
    ranks_and_betti,
    run_verification,
    sample_datum,
    verify_cotangent_iso,
    verify_initial_forms,
    verify_u_stability,
    vertices,
)
from hkring.groebner import IdealSpec

GREVLEX = MonomialOrder.GREVLEX

CP1 = Datum.from_rows([[1, -1]], [1, 1])
CP2 = Datum.from_rows([[1, 0, -1], [0, 1, -1]], [1, 1, 1])
THREE_POINTS = Datum.from_rows([[1, 1, -1]], [1, 2, 1])


# ---------------------------------------------------------------------------
# relation builders
# ---------------------------------------------------------------------------


def test_pairing_form_examples():
    assert pairing_form(CP1, (1,)).render() == "x1 - x2"
    assert pairing_form(CP1, (0,)).is_zero()
    assert pairing_form(CP2, (1, 0)).render() == "x1 - x3"


def test_product_relation_cp1():
    # one positive pairing, one negative: (1-x1) - (1-x2) = x2 - x1
    assert product_relation(CP1, (1,)) == Poly(2, {(0, 1): 1, (1, 0): -1})


def test_product_relation_zero_u():
    assert product_relation(CP2, (0, 0)).is_zero()


def test_product_relation_cp2_diagonal():
    # (1-x1)(1-x2) - (1-x3)^2, frozen from an independent expansion
    expected = Poly(
        3,
        {
            (1, 1, 0): 1,
            (0, 0, 2): -1,
            (1, 0, 0): -1,
            (0, 1, 0): -1,
            (0, 0, 1): 2,
        },
    )
    assert product_relation(CP2, (1, 1)) == expected


def test_product_relation_zero_constant_term(corpus):
    rng = random.Random(31)
    for _, d in corpus[:10]:
        u = tuple(rng.randint(-2, 2) for _ in range(d.n))
        assert product_relation(d, u).constant_term() == 0


def test_lowest_form_is_negated_pairing_form(corpus):
    rng = random.Random(32)
    for _, d in corpus[:10]:
        for _ in range(3):
            u = tuple(rng.randint(-2, 2) for _ in range(d.n))
            z = product_relation(d, u)
            if z.is_zero():
                continue
            assert z.lowest_degree_form() == -pairing_form(d, u)


# ---------------------------------------------------------------------------
# presentations
# ---------------------------------------------------------------------------


def test_cohomology_presentation_cp1():
    cp = cohomology_presentation(CP1)
    assert [g.render() for g in cp.ideal.generators] == ["x1*x2", "x1 - x2"]


def test_cohomology_presentation_cp2():
    cp = cohomology_presentation(CP2)
    assert [g.render() for g in cp.ideal.generators] == [
        "x1*x2*x3",
        "x1 - x3",
        "x2 - x3",
    ]


def test_cohomology_presentation_three_points():
    cp = cohomology_presentation(THREE_POINTS)
    assert [g.render() for g in cp.ideal.generators] == [
        "x1*x2",
        "x1*x3",
        "x2*x3",
        "x1 + x2 - x3",
    ]


def test_ktheory_presentation_cp1():
    kp = ktheory_presentation(CP1)
    assert [g.render() for g in kp.ideal.generators] == ["x1*x2", "- x1 + x2"]
    assert kp.closure_certified


def test_ktheory_presentation_cp2():
    kp = ktheory_presentation(CP2)
    assert [g.render() for g in kp.ideal.generators] == [
        "x1*x2*x3",
        "- x1 + x3",
        "- x2 + x3",
    ]


def test_ktheory_presentation_three_points():
    kp = ktheory_presentation(THREE_POINTS)
    # u = (1): pairings +1, +1, -1 give (1-x1)(1-x2) - (1-x3)
    assert kp.ku_relations[0] == Poly(
        3, {(1, 1, 0): 1, (1, 0, 0): -1, (0, 1, 0): -1, (0, 0, 1): 1}
    )
    assert [mm for mm in kp.monomial_relations] == [
        (1, 1, 0),
        (1, 0, 1),
        (0, 1, 1),
    ]


def test_presentations_reject_non_smooth():
    bad = Datum.from_rows([[1, 0, 1], [0, 1, 1]], [0, 0, 0])
    with pytest.raises(NotSmoothError):
        cohomology_presentation(bad)
    with pytest.raises(NotSmoothError):
        ktheory_presentation(bad)
    not_split = Datum.diagnostic(IntMatrix.from_rows([[2]]), [0])
    with pytest.raises(NotSmoothError):
        cohomology_presentation(not_split)


def test_ktheory_rejects_degenerate_u_set():
    with pytest.raises(DegenerateUSetError):
        ktheory_presentation(CP1, u_set=[(2,)])
    with pytest.raises(DegenerateUSetError):
        ktheory_presentation(CP2, u_set=[(1, 0)])
    with pytest.raises(DegenerateUSetError):
        ktheory_presentation(CP2, u_set=[(1, 0, 0)])


# ---------------------------------------------------------------------------
# ranks
# ---------------------------------------------------------------------------


def test_ranks_cotangent_family():
    for n in range(1, 5):
        rs = ranks_and_betti(cotangent_projective_datum(n))
        assert rs.betti == tuple([1] * (n + 1))
        assert rs.cohom_rank == rs.k_rank == rs.vertex_count == n + 1


def test_ranks_three_points():
    rs = ranks_and_betti(THREE_POINTS)
    assert rs.betti == (1, 2)
    assert rs.cohom_rank == rs.k_rank == rs.vertex_count == 3


def test_ranks_single_hyperplane():
    rs = ranks_and_betti(Datum.from_rows([[1]], [0]))
    assert rs.betti == (1,)
    assert rs.cohom_rank == rs.k_rank == rs.vertex_count == 1


def test_betti_odd_zeros():
    rs = ranks_and_betti(cotangent_projective_datum(2))
    assert rs.betti_with_odd_zeros == (1, 0, 1, 0, 1)


# ---------------------------------------------------------------------------
# verification pieces
# ---------------------------------------------------------------------------


def test_initial_forms_cp1():
    checks = verify_initial_forms(CP1, samples=0)
    assert all(c.ok for c in checks)
    assert {c.sign for c in checks if not c.skipped} == {-1}


def test_initial_forms_skip_zero_u():
    checks = verify_initial_forms(CP2, extra_us=[(0, 0)], samples=0)
    zero_entry = [c for c in checks if c.u == (0, 0)][0]
    assert zero_entry.skipped and zero_entry.ok


def test_initial_form_cp2_diagonal_sign():
    z = product_relation(CP2, (1, 1))
    low = z.lowest_degree_form()
    assert low == Poly(3, {(1, 0, 0): -1, (0, 1, 0): -1, (0, 0, 1): 2})
    assert low == -pairing_form(CP2, (1, 1))


def test_u_stability_examples():
    assert verify_u_stability(CP2, [(1, 1)])
    assert verify_u_stability(CP2, [(0, 0)])
    assert verify_u_stability(CP1, [(-3,)])
    # the same membership via an explicit reduced basis comparison
    kp = ktheory_presentation(CP1)
    enriched = IdealSpec(2, kp.ideal.generators + (product_relation(CP1, (-3,)),), GREVLEX)
    assert ideal_equal(kp.ideal, enriched)


def test_cotangent_datum_shapes():
    d1 = cotangent_projective_datum(1)
    assert d1.b.row_lists() == [[1, -1]] and d1.lift == (Fraction(1), Fraction(1))
    d2 = cotangent_projective_datum(2)
    assert d2.b.row_lists() == [[1, 0, -1], [0, 1, -1]]
    d3 = cotangent_projective_datum(3)
    assert d3.m == 4
    assert len(vertices(arrangement_from_datum(d3))) == 4


def test_cotangent_iso():
    for n in (1, 2, 4):
        assert verify_cotangent_iso(n)
    cert = cotangent_iso_certificate(2)
    assert cert["dimension"] == 3
    assert cert["relation_in_ideal"]
    assert cert["unimodular"]


def test_run_verification_cotangent():
    rep = run_verification(cotangent_projective_datum(2), zz=True)
    assert rep.all_ok
    assert rep.rank_cohomology == rep.rank_ktheory == rep.vertex_count == 3
    assert rep.hilbert == (1, 1, 1)
    assert set(rep.initial_form_signs) == {-1}
    assert rep.zz_summary == "free of rank 3"


# ---------------------------------------------------------------------------
# u-set closure: the standard basis alone can under-generate
# ---------------------------------------------------------------------------


def _undergenerated_instance():
    # found by seeded search; the basis-u ideal has an extra component
    # where 1 - x2 vanishes, so its quotient is too big
    d, _ = sample_datum(3, 2, 46)
    return d


def test_basis_u_set_can_under_generate():
    d = _undergenerated_instance()
    chi = len(vertices(arrangement_from_datum(d)))
    basis_only = ktheory_presentation(d, u_set=[(1, 0), (0, 1)])
    dim = quotient_dimension(basis_only.gb)
    assert dim is not None and dim > chi
    # and the instability is detectable: some nearby relation is missing
    extras = [(1, 1), (1, -1), (-1, 1), (2, 1)]
    assert not all(
        normal_form(product_relation(d, u), basis_only.gb).is_zero() for u in extras
    )


def test_closure_certifies_full_ideal():
    d = _undergenerated_instance()
    chi = len(vertices(arrangement_from_datum(d)))
    kp = ktheory_presentation(d)
    assert kp.closure_certified
    assert quotient_dimension(kp.gb) == chi
    # closure only ever adds relations that hold in the full ideal, so the
    # closed ideal contains the basis one
    basis_only = ktheory_presentation(d, u_set=[(1, 0), (0, 1)])
    for g in basis_only.ideal.generators:
        assert normal_form(g, kp.gb).is_zero()


def test_verification_reports_undergeneration_honestly():
    d = _undergenerated_instance()
    rep = run_verification(d, u_set=[(1, 0), (0, 1)], stability_samples=20)
    assert not rep.checks["rank_triangle"]
    assert not rep.checks["u_stability"]
    assert not rep.checks["units"]  # 1 - x_j fails to act invertibly
    # with the closed default everything passes
    rep2 = run_verification(d)
    assert rep2.all_ok
