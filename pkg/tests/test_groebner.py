import random
from fractions import Fraction

import pytest

from hkring import (
    Budget,
    IdealSpec,
    MonomialOrder,
    NotHomogeneousError,
    Poly,
    ResourceBudgetExceeded,
    cotangent_projective_datum,
    groebner_basis,
    hilbert_function,
    ideal_equal,
    ktheory_presentation,
    normal_form,
    quotient_dimension,
    standard_monomials,
    strong_groebner_zz,
    structure_constants,
    zz_module_report,
)
from hkring.groebner import s_polynomial

GREVLEX = MonomialOrder.GREVLEX
LEX = MonomialOrder.LEX


def x(j, nvars):
    return Poly.variable(j, nvars)


def spec2(*gens, order=GREVLEX):
    nvars = gens[0].nvars
    return IdealSpec(nvars, tuple(gens), order)


@pytest.fixture
def gb_xy():
    # {x1 x2, x1 - x2} reduces to {x1 - x2, x2^2} (one S-polynomial by hand)
    return groebner_basis(spec2(x(0, 2) * x(1, 2), x(0, 2) - x(1, 2)))


def test_groebner_basic_example(gb_xy):
    rendered = sorted(g.render() for g in gb_xy.basis)
    assert rendered == ["x1 - x2", "x2^2"]


def test_groebner_principal():
    gb = groebner_basis(spec2(x(0, 1)))
    assert [g.render() for g in gb.basis] == ["x1"]


def test_groebner_cp1_kideal():
    # monomial x1 x2 plus (1-x1)-(1-x2) = x2 - x1
    gb = groebner_basis(spec2(x(0, 2) * x(1, 2), x(1, 2) - x(0, 2)))
    assert sorted(g.render() for g in gb.basis) == ["x1 - x2", "x2^2"]


def test_normal_form_examples(gb_xy):
    two = Poly.one(2) + Poly.one(2)
    assert normal_form(x(0, 2) ** 2, gb_xy).is_zero()
    assert normal_form(Poly.one(2), gb_xy) == Poly.one(2)
    assert normal_form(x(0, 2), gb_xy) == x(1, 2)
    assert normal_form(two, gb_xy) == two


def test_normal_form_idempotent_and_additive(gb_xy):
    rng = random.Random(4)
    for _ in range(20):
        terms = {
            tuple(rng.randint(0, 3) for _ in range(2)): rng.randint(-4, 4) for _ in range(4)
        }
        p = Poly(2, terms)
        q = Poly(2, {(rng.randint(0, 2), rng.randint(0, 2)): 1})
        np_ = normal_form(p, gb_xy)
        nq = normal_form(q, gb_xy)
        assert normal_form(np_, gb_xy) == np_
        assert normal_form(p + q, gb_xy) == normal_form(np_ + nq, gb_xy)
        # p - NF(p) is in the ideal
        assert normal_form(p - np_, gb_xy).is_zero()


def _corpus_ideals():
    out = [
        spec2(x(0, 2) * x(1, 2), x(0, 2) - x(1, 2)),
        spec2(x(0, 2) ** 2 - x(1, 2), x(1, 2) ** 2 - x(0, 2)),
        spec2(
            x(0, 3) * x(1, 3) * x(2, 3),
            x(0, 3) - x(2, 3),
            x(1, 3) - x(2, 3),
        ),
    ]
    for n in (1, 2, 3):
        out.append(ktheory_presentation(cotangent_projective_datum(n)).ideal)
    return out


@pytest.mark.parametrize("idx", range(6))
def test_buchberger_criterion_posthoc(idx):
    spec = _corpus_ideals()[idx]
    gb = groebner_basis(spec)
    for i in range(len(gb.basis)):
        for j in range(i):
            s = s_polynomial(gb.basis[i], gb.basis[j], gb.order)
            assert normal_form(s, gb).is_zero()
    # every generator is in the ideal of the basis
    for g in spec.generators:
        assert normal_form(g, gb).is_zero()


@pytest.mark.parametrize("idx", range(6))
def test_reduced_basis_unique_under_shuffle(idx):
    spec = _corpus_ideals()[idx]
    base = groebner_basis(spec).basis
    rng = random.Random(idx)
    for _ in range(3):
        gens = list(spec.generators)
        rng.shuffle(gens)
        assert groebner_basis(IdealSpec(spec.nvars, tuple(gens), spec.order)).basis == base


def test_reduced_basis_is_reduced():
    for spec in _corpus_ideals():
        gb = groebner_basis(spec)
        leads = gb.leading_monomials()
        for k, g in enumerate(gb.basis):
            assert g.terms[leads[k]] == 1  # monic
            for mono in g.terms:
                for k2, lm in enumerate(leads):
                    if k2 != k:
                        assert not all(a <= b for a, b in zip(lm, mono))


def test_quotient_dimension_examples(gb_xy):
    assert quotient_dimension(gb_xy) == 2
    assert standard_monomials(gb_xy) == ((0, 0), (0, 1))
    gb_inf = groebner_basis(spec2(x(0, 2) * x(1, 2)))
    assert quotient_dimension(gb_inf) is None
    for n in range(1, 5):
        gb = ktheory_presentation(cotangent_projective_datum(n)).gb
        assert quotient_dimension(gb) == n + 1


def test_quotient_dimension_order_independent():
    for spec in _corpus_ideals():
        d_grev = quotient_dimension(groebner_basis(spec))
        d_lex = quotient_dimension(
            groebner_basis(IdealSpec(spec.nvars, spec.generators, LEX))
        )
        assert d_grev == d_lex


def test_hilbert_cp2():
    spec = spec2(
        x(0, 3) * x(1, 3) * x(2, 3), x(0, 3) - x(2, 3), x(1, 3) - x(2, 3)
    )
    assert hilbert_function(groebner_basis(spec)) == (1, 1, 1)


def test_hilbert_zero_ideal_truncated():
    gb = groebner_basis(IdealSpec(1, (), GREVLEX))
    assert hilbert_function(gb, max_degree=4) == (1, 1, 1, 1, 1)
    with pytest.raises(ValueError):
        hilbert_function(gb)


def test_hilbert_three_points():
    spec = spec2(
        x(0, 3) * x(1, 3),
        x(0, 3) * x(2, 3),
        x(1, 3) * x(2, 3),
        x(0, 3) + x(1, 3) - x(2, 3),
    )
    assert hilbert_function(groebner_basis(spec)) == (1, 2)


def test_hilbert_rejects_inhomogeneous():
    spec = spec2(x(0, 2) ** 2 - x(1, 2))
    with pytest.raises(NotHomogeneousError):
        hilbert_function(groebner_basis(spec))


def test_ideal_equal_examples():
    assert ideal_equal(spec2(x(0, 2)), spec2(2 * x(0, 2)))
    assert not ideal_equal(spec2(x(0, 2)), spec2(x(0, 2) ** 2))
    d = cotangent_projective_datum(2)
    from hkring import product_relation

    kp = ktheory_presentation(d)
    enriched = IdealSpec(3, kp.ideal.generators + (product_relation(d, (1, 1)),), GREVLEX)
    assert ideal_equal(kp.ideal, enriched)


def test_structure_constants_basic(gb_xy):
    qb = structure_constants(gb_xy)
    assert qb.standard_monomials == ((0, 0), (0, 1))
    # x2 * x2 = 0 in the quotient
    assert qb.table[(1, 1)] == (0, 0)
    # 1 * x2 = x2
    assert qb.table[(0, 1)] == (0, 1)


def test_structure_constants_truncated_polynomial_ring():
    n = 4
    gb = groebner_basis(spec2(x(0, 1) ** (n + 1)))
    qb = structure_constants(gb)
    assert qb.dim == n + 1
    for i in range(qb.dim):
        for j in range(i, qb.dim):
            expected = [0] * qb.dim
            if i + j <= n:
                expected[i + j] = 1
            assert list(qb.table[(i, j)]) == expected


def test_structure_constants_associative_commutative():
    for spec in _corpus_ideals():
        gb = groebner_basis(spec)
        if quotient_dimension(gb) is None or quotient_dimension(gb) > 12:
            continue
        qb = structure_constants(gb)
        units = [tuple(1 if t == i else 0 for t in range(qb.dim)) for i in range(qb.dim)]
        for a in units:
            for b in units:
                assert qb.multiply(a, b) == qb.multiply(b, a)
                for c in units:
                    assert qb.multiply(qb.multiply(a, b), c) == qb.multiply(
                        a, qb.multiply(b, c)
                    )


def test_budget_zero_raises():
    with pytest.raises(ResourceBudgetExceeded):
        groebner_basis(
            spec2(x(0, 2) * x(1, 2), x(0, 2) - x(1, 2)), Budget(max_pairs=0)
        )


def test_degree_cap_raises():
    with pytest.raises(ResourceBudgetExceeded):
        groebner_basis(
            spec2(x(0, 2) ** 9 - x(1, 2), x(0, 2) * x(1, 2) ** 9),
            Budget(max_pairs=1000, max_degree=5),
        )


# ---------------------------------------------------------------------------
# integer strong bases
# ---------------------------------------------------------------------------


def test_zz_toy_torsion():
    # Z[x]/(2x, x^2) = Z * 1 + (Z/2) * x, computed by hand
    spec = spec2(2 * x(0, 1), x(0, 1) ** 2)
    strong = strong_groebner_zz(spec)
    assert sorted(g.render() for g in strong) == ["2*x1", "x1^2"]
    rep = zz_module_report(strong, 1, GREVLEX)
    assert rep.finite and rep.free_rank == 1
    assert rep.torsion == (((1,), 2),)
    assert not rep.free


def test_zz_unit_constant():
    # Z[x]/(2, x) = Z/2
    spec = spec2(Poly.constant(2, 1), x(0, 1))
    rep = zz_module_report(strong_groebner_zz(spec), 1, GREVLEX)
    assert rep.finite and rep.free_rank == 0
    assert rep.torsion == ((((0,)), 2),)


def test_zz_cotangent_free():
    for n in (1, 2, 3):
        kp = ktheory_presentation(cotangent_projective_datum(n))
        strong = strong_groebner_zz(kp.ideal)
        rep = zz_module_report(strong, n + 1, GREVLEX)
        assert rep.free
        assert rep.free_rank == n + 1


def test_zz_strong_reduction_of_members():
    from hkring.groebner import strong_normal_form

    kp = ktheory_presentation(cotangent_projective_datum(2))
    strong = strong_groebner_zz(kp.ideal)
    for g in kp.ideal.generators:
        assert strong_normal_form(g, strong, GREVLEX).is_zero()
    # a random integer combination of generators reduces to zero
    rng = random.Random(21)
    for _ in range(5):
        combo = Poly.zero(3)
        for g in kp.ideal.generators:
            mono = tuple(rng.randint(0, 1) for _ in range(3))
            combo = combo + Poly(3, {mono: rng.randint(-2, 2)}) * g
        assert strong_normal_form(combo, strong, GREVLEX).is_zero()


def test_zz_rejects_rational_generators():
    with pytest.raises(ValueError):
        strong_groebner_zz(spec2(Poly.constant(Fraction(1, 2), 1) * x(0, 1)))


# ---------------------------------------------------------------------------
# cross-check against an independent engine
# ---------------------------------------------------------------------------


def _to_sympy(p, xs, sp):
    e = 0
    for mono, c in p.terms.items():
        t = sp.Rational(c.numerator, c.denominator) if isinstance(c, Fraction) else c
        for i, ex in enumerate(mono):
            t *= xs[i] ** ex
        e += t
    return sp.expand(e)


@pytest.mark.parametrize("seed", range(8))
def test_groebner_matches_sympy(seed):
    sp = pytest.importorskip("sympy")
    rng = random.Random(600 + seed)
    nvars = rng.randint(2, 3)
    gens = []
    for _ in range(rng.randint(2, 3)):
        terms = {
            tuple(rng.randint(0, 2) for _ in range(nvars)): rng.randint(-3, 3)
            for _ in range(3)
        }
        p = Poly(nvars, terms)
        if p:
            gens.append(p)
    if not gens:
        pytest.skip("empty generator draw")
    gb = groebner_basis(IdealSpec(nvars, tuple(gens), GREVLEX))
    xs = sp.symbols(f"x1:{nvars + 1}")
    ref = sp.groebner([_to_sympy(g, xs, sp) for g in gens], *xs, order="grevlex")

    # sympy returns an integer-normalized basis; compare monic forms
    def monic_set(exprs):
        out = set()
        for e in exprs:
            p = sp.Poly(e, *xs, domain="QQ")
            out.add((p / p.LC(order="grevlex")).as_expr())
        return out

    assert monic_set(_to_sympy(g, xs, sp) for g in gb.basis) == monic_set(ref.exprs)
