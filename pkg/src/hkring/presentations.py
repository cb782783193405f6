"""Ring presentations attached to an admissible datum.

Two finite presentations of Z[x_1..x_m] quotients are assembled from the
arrangement combinatorics:

* the graded (cohomology) presentation: one square-free monomial per
  minimal empty intersection, plus the linear forms sum_j <u, v_j> x_j
  for u running over the standard basis;
* the K-theory presentation: the same monomials, plus the relations
  prod_{<u,v_j> > 0} (1 - x_j)^{<u,v_j>}  -  prod_{<u,v_j> < 0} (1 - x_j)^{-<u,v_j>}.

Generator x_j stands for 1 - [L_j], where [L_j] is the class of the j-th
canonical line bundle.  The relations are stated for every integer vector
u of length n; a finite generating u-set is used here and its sufficiency
is verified explicitly (``verify_u_stability``).

The verification suite mirrors the structural facts the presentations
rest on: both quotients have rank equal to the number of arrangement
vertices, each product relation degenerates to (minus) its linear form in
lowest degree, the ideal is stable under adjoining further u-relations,
every x_j is nilpotent in the quotient, and every 1 - x_j acts invertibly.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .arrangement import (
    Arrangement,
    Datum,
    arrangement_from_datum,
    certify_smooth,
    minimal_empty_subsets,
    vertices,
)
from .groebner import (
    Budget,
    DEFAULT_BUDGET,
    GroebnerBasis,
    IdealSpec,
    QuotientBasis,
    groebner_basis,
    hilbert_function,
    ideal_equal,
    normal_form,
    quotient_dimension,
    rat_det,
    strong_groebner_zz,
    strong_normal_form,
    structure_constants,
    zz_module_report,
)
from .linalg import IntMatrix, is_split_surjection
from .polynomials import Monomial, MonomialOrder, Poly, one_minus_var

UVector = tuple[int, ...]


class NotSmoothError(ValueError):
    """The datum fails splitness or a smoothness condition."""


class DegenerateUSetError(ValueError):
    """The chosen u-vectors do not span the full lattice."""


def standard_u_set(n: int) -> tuple[UVector, ...]:
    return tuple(tuple(1 if i == k else 0 for i in range(n)) for k in range(n))


def pairing_form(d: Datum, u: Sequence[int]) -> Poly:
    """The linear form sum_j <u, v_j> x_j."""
    terms = {}
    for j, a in enumerate(d.pairings(u)):
        if a:
            terms[tuple(1 if i == j else 0 for i in range(d.m))] = a
    return Poly(d.m, terms)


def product_relation(d: Datum, u: Sequence[int]) -> Poly:
    """The expanded relation prod_+ (1-x_j)^{a_j} - prod_- (1-x_j)^{-a_j}.

    Indices with pairing zero appear in neither product; u = 0 gives the
    zero polynomial.
    """
    pos = Poly.one(d.m)
    neg = Poly.one(d.m)
    for j, a in enumerate(d.pairings(u)):
        if a > 0:
            pos = pos * one_minus_var(j, d.m) ** a
        elif a < 0:
            neg = neg * one_minus_var(j, d.m) ** (-a)
    return pos - neg


def _monomial_relations(d: Datum, arr: Arrangement) -> tuple[Monomial, ...]:
    rels = []
    for subset in minimal_empty_subsets(arr):
        rels.append(tuple(1 if j in subset else 0 for j in range(d.m)))
    return tuple(rels)


def _require_admissible(d: Datum) -> None:
    if not d.is_split():
        raise NotSmoothError("datum is not a split surjection")
    report = certify_smooth(d)
    if not report.smooth:
        kinds = ", ".join(f"{v.kind}@{v.subset}" for v in report.violations)
        raise NotSmoothError(f"arrangement is not smooth: {kinds}")


@dataclass(frozen=True)
class CohomPresentation:
    datum: Datum
    monomial_relations: tuple[Monomial, ...]
    linear_relations: tuple[Poly, ...]
    ideal: IdealSpec


@dataclass(frozen=True)
class KPresentation:
    datum: Datum
    monomial_relations: tuple[Monomial, ...]
    ku_relations: tuple[Poly, ...]
    u_set: tuple[UVector, ...]
    ideal: IdealSpec
    gb: GroebnerBasis
    closure_certified: bool


def cohomology_presentation(
    d: Datum, order: MonomialOrder = MonomialOrder.GREVLEX
) -> CohomPresentation:
    """Graded presentation: minimal-empty monomials plus basis linear forms."""
    _require_admissible(d)
    arr = arrangement_from_datum(d)
    monos = _monomial_relations(d, arr)
    linear = tuple(pairing_form(d, u) for u in standard_u_set(d.n))
    gens = tuple(Poly(d.m, {mm: 1}) for mm in monos) + linear
    return CohomPresentation(d, monos, linear, IdealSpec(d.m, gens, order))


def _ball_u_vectors(n: int, radius: int) -> list[UVector]:
    """Canonical representatives of nonzero u with |entries| <= radius.

    Only one of u, -u is kept (their relations differ by sign), namely the
    one whose first nonzero entry is positive.
    """
    from itertools import product as iproduct

    out = []
    for u in iproduct(range(-radius, radius + 1), repeat=n):
        first = next((e for e in u if e != 0), 0)
        if first > 0:
            out.append(u)
    return out


def ktheory_presentation(
    d: Datum,
    u_set: Sequence[Sequence[int]] | None = None,
    order: MonomialOrder = MonomialOrder.GREVLEX,
    budget: Budget = DEFAULT_BUDGET,
    max_closure_radius: int = 4,
) -> KPresentation:
    """K-theory presentation over a finite generating u-set.

    With an explicit ``u_set`` the ideal is generated by exactly those
    relations (the set must span the full integer lattice).  By default the
    standard basis is used and then closed up: the relations for all u form
    the saturation of the basis relations, and since the quotient by the
    full ideal has rank equal to the vertex count, a u-set is provably
    complete once its quotient dimension drops to that count.  Vectors from
    growing balls are adjoined until the certificate holds;
    ``closure_certified`` records whether it was reached.  Standard-basis
    relations alone are not always sufficient.
    """
    _require_admissible(d)
    arr = arrangement_from_datum(d)
    monos = _monomial_relations(d, arr)
    mono_gens = tuple(Poly(d.m, {mm: 1}) for mm in monos)

    if u_set is not None:
        us = tuple(tuple(int(e) for e in u) for u in u_set)
        if any(len(u) != d.n for u in us):
            raise DegenerateUSetError("u vectors must have length n")
        nonzero = [u for u in us if any(u)]
        if not nonzero or not is_split_surjection(IntMatrix.from_cols(nonzero)):
            raise DegenerateUSetError("u-set does not span the integer lattice")
        rels = tuple(p for p in (product_relation(d, u) for u in us) if p)
        spec = IdealSpec(d.m, mono_gens + rels, order)
        return KPresentation(d, monos, rels, us, spec, groebner_basis(spec, budget), False)

    chi = len(vertices(arr))
    used = list(standard_u_set(d.n))
    rels = [product_relation(d, u) for u in used]
    spec = IdealSpec(d.m, mono_gens + tuple(rels), order)
    gb = groebner_basis(spec, budget)
    certified = quotient_dimension(gb) == chi
    radius = 1
    while not certified and radius <= max_closure_radius:
        added = False
        for u in _ball_u_vectors(d.n, radius):
            if u in used:
                continue
            z = product_relation(d, u)
            if z.is_zero() or normal_form(z, gb).is_zero():
                continue
            used.append(u)
            rels.append(z)
            added = True
        if added:
            spec = IdealSpec(d.m, mono_gens + tuple(rels), order)
            gb = groebner_basis(spec, budget)
            certified = quotient_dimension(gb) == chi
        radius += 1
    return KPresentation(d, monos, tuple(rels), tuple(used), spec, gb, certified)


@dataclass(frozen=True)
class RankSummary:
    betti: tuple[int, ...]  # entry k is the rank in (topological) degree 2k
    cohom_rank: int
    k_rank: int | None  # None when the chosen u-set leaves the quotient infinite
    vertex_count: int

    @property
    def betti_with_odd_zeros(self) -> tuple[int, ...]:
        out = []
        for b in self.betti:
            out.extend((b, 0))
        return tuple(out[:-1]) if out else ()


def ranks_and_betti(
    d: Datum,
    order: MonomialOrder = MonomialOrder.GREVLEX,
    budget: Budget = DEFAULT_BUDGET,
    u_set: Sequence[Sequence[int]] | None = None,
) -> RankSummary:
    """Betti numbers from the graded quotient, both ranks, vertex count.

    A finite u-set can fail to generate the full relation ideal, in which
    case the K-quotient stays infinite-dimensional over the rationals;
    that is reported as k_rank None rather than patched over.  Enlarging
    the u-set (see ``verify_u_stability``) is the remedy.
    """
    cp = cohomology_presentation(d, order)
    kp = ktheory_presentation(d, u_set=u_set, order=order, budget=budget)
    gb_c = groebner_basis(cp.ideal, budget)
    if order.is_graded:
        betti = hilbert_function(gb_c)
    else:
        # the Hilbert data is order-independent but its computation needs a
        # degree-compatible order
        graded = IdealSpec(cp.ideal.nvars, cp.ideal.generators, MonomialOrder.GREVLEX)
        betti = hilbert_function(groebner_basis(graded, budget))
    dim_c = quotient_dimension(gb_c)
    dim_k = quotient_dimension(kp.gb)
    verts = vertices(arrangement_from_datum(d))
    if dim_c is None:
        raise ValueError("graded quotient unexpectedly infinite-dimensional")
    return RankSummary(betti, dim_c, dim_k, len(verts))


@dataclass(frozen=True)
class InitialFormCheck:
    u: UVector
    sign: int | None  # +1/-1 when the lowest form is +/- the linear form
    skipped: bool
    ok: bool


def seeded_u_vectors(n: int, count: int, seed: int, bound: int = 2) -> tuple[UVector, ...]:
    rng = random.Random(seed)
    return tuple(tuple(rng.randint(-bound, bound) for _ in range(n)) for _ in range(count))


def verify_initial_forms(
    d: Datum, extra_us: Sequence[Sequence[int]] = (), seed: int = 0, samples: int = 10
) -> tuple[InitialFormCheck, ...]:
    """Check lowest_degree_form(product relation) = +/- linear form per u.

    Runs over the standard basis, the caller's extra vectors, and a seeded
    sample.  Zero relations are recorded as skipped.
    """
    _require_admissible(d)
    us = list(standard_u_set(d.n))
    us.extend(tuple(int(e) for e in u) for u in extra_us)
    us.extend(seeded_u_vectors(d.n, samples, seed))
    out = []
    for u in us:
        z = product_relation(d, u)
        if z.is_zero():
            out.append(InitialFormCheck(u, None, True, True))
            continue
        h = pairing_form(d, u)
        low = z.lowest_degree_form()
        if low == h:
            out.append(InitialFormCheck(u, 1, False, True))
        elif low == -h:
            out.append(InitialFormCheck(u, -1, False, True))
        else:
            out.append(InitialFormCheck(u, None, False, False))
    return tuple(out)


def _quotient_relation_holds(qb: QuotientBasis, d: Datum, u: UVector) -> bool:
    """Evaluate the u-relation inside the finite quotient.

    Both products are formed by repeated multiplication in the quotient,
    which agrees with reducing the expanded relation because the normal
    form is linear and multiplicative onto the standard basis.
    """
    pos = qb.one()
    neg = qb.one()
    for j, a in enumerate(d.pairings(u)):
        if a == 0:
            continue
        cls = qb.coords(one_minus_var(j, d.m))
        target = qb.power(cls, abs(a))
        if a > 0:
            pos = qb.multiply(pos, target)
        else:
            neg = qb.multiply(neg, target)
    return pos == neg


def verify_u_stability(
    d: Datum,
    extra_us: Sequence[Sequence[int]],
    order: MonomialOrder = MonomialOrder.GREVLEX,
    budget: Budget = DEFAULT_BUDGET,
    u_set: Sequence[Sequence[int]] | None = None,
) -> bool:
    """True iff adjoining the extra u-relations leaves the ideal unchanged.

    Equivalent to each extra relation having normal form zero, and hence to
    equality of the reduced bases with and without the extra generators.
    Finite quotients are checked by evaluating the relation inside the
    quotient; infinite ones (an under-generating u-set) fall back to
    reducing the expanded relation directly.
    """
    kp = ktheory_presentation(d, u_set=u_set, order=order, budget=budget)
    gb = kp.gb
    us = [tuple(int(e) for e in u) for u in extra_us]
    if quotient_dimension(gb) is not None:
        qb = structure_constants(gb)
        return all(_quotient_relation_holds(qb, d, u) for u in us)
    return all(normal_form(product_relation(d, u), gb).is_zero() for u in us)


def cotangent_projective_datum(n: int) -> Datum:
    """The datum of the cotangent bundle of complex projective n-space:
    normals are the standard basis plus the negated all-ones column, with
    the all-ones lift."""
    if n < 1:
        raise ValueError("n must be >= 1")
    rows = [[1 if j == k else 0 for j in range(n)] + [-1] for k in range(n)]
    return Datum(IntMatrix.from_rows(rows), tuple(Fraction(1) for _ in range(n + 1)))


def cotangent_iso_certificate(
    n: int,
    order: MonomialOrder = MonomialOrder.GREVLEX,
    budget: Budget = DEFAULT_BUDGET,
) -> dict:
    """Witnesses that the K-quotient is the one-variable ring mod (1-x)^{n+1}.

    The candidate map sends the single generator to the class of the last
    line bundle, 1 - x_{n+1}.  Checked: the defining relation maps into the
    ideal, the dimensions agree, and the images of the powers of the
    generator form a basis with unimodular change of matrix (so the map is
    an isomorphism over the integers, not just the rationals).
    """
    d = cotangent_projective_datum(n)
    kp = ktheory_presentation(d, order=order, budget=budget)
    gb = kp.gb
    dim = quotient_dimension(gb)
    m = d.m
    # (1-x)^{n+1} maps to (1 - (1 - x_{n+1}))^{n+1} = x_{n+1}^{n+1}
    relation_image = Poly.variable(m - 1, m) ** (n + 1)
    relation_in_ideal = normal_form(relation_image, gb).is_zero()
    qb = structure_constants(gb)
    cls = qb.coords(one_minus_var(m - 1, m))
    rows = []
    power = qb.one()
    for _ in range(qb.dim):
        rows.append([Fraction(c) for c in power])
        power = qb.multiply(power, cls)
    det = rat_det(rows)
    integral = all(c.denominator == 1 for row in rows for c in row)
    return {
        "dimension": dim,
        "dimension_match": dim == n + 1,
        "relation_in_ideal": relation_in_ideal,
        "images_integral": integral,
        "basis_change_det": det,
        "surjective": det != 0,
        "unimodular": integral and abs(det) == 1,
    }


def verify_cotangent_iso(
    n: int,
    order: MonomialOrder = MonomialOrder.GREVLEX,
    budget: Budget = DEFAULT_BUDGET,
) -> bool:
    cert = cotangent_iso_certificate(n, order, budget)
    return bool(
        cert["dimension_match"]
        and cert["relation_in_ideal"]
        and cert["surjective"]
        and cert["unimodular"]
    )


@dataclass(frozen=True)
class VerificationReport:
    rank_cohomology: int
    rank_ktheory: int | None
    vertex_count: int
    hilbert: tuple[int, ...]
    initial_form_checks: tuple[InitialFormCheck, ...]
    u_stability: bool
    checks: dict
    zz_summary: str | None = None

    @property
    def initial_form_signs(self) -> tuple[int, ...]:
        return tuple(c.sign for c in self.initial_form_checks if c.sign is not None)

    @property
    def all_ok(self) -> bool:
        return all(self.checks.values())


def run_verification(
    d: Datum,
    order: MonomialOrder = MonomialOrder.GREVLEX,
    budget: Budget = DEFAULT_BUDGET,
    seed: int = 0,
    extra_us: Sequence[Sequence[int]] = (),
    stability_samples: int = 20,
    initial_samples: int = 10,
    zz: bool = False,
    u_set: Sequence[Sequence[int]] | None = None,
) -> VerificationReport:
    """Run the full structural verification suite on one datum.

    When the chosen u-set under-generates (the K-quotient stays infinite
    over the rationals) the finite-quotient checks report failure and the
    stability check falls back to direct ideal membership; nothing is
    silently repaired.
    """
    cp = cohomology_presentation(d, order)
    kp = ktheory_presentation(d, u_set=u_set, order=order, budget=budget)
    gb_c = groebner_basis(cp.ideal, budget)
    gb_k = kp.gb
    dim_c = quotient_dimension(gb_c)
    dim_k = quotient_dimension(gb_k)
    verts = vertices(arrangement_from_datum(d))
    if order.is_graded:
        hilbert = hilbert_function(gb_c)
    else:
        graded = IdealSpec(cp.ideal.nvars, cp.ideal.generators, MonomialOrder.GREVLEX)
        hilbert = hilbert_function(groebner_basis(graded, budget))
    finite = dim_k is not None
    qb = structure_constants(gb_k) if finite else None

    checks: dict = {}
    checks["k_quotient_finite"] = finite
    checks["rank_triangle"] = dim_c == dim_k == len(verts)

    init_checks = verify_initial_forms(d, extra_us, seed=seed, samples=initial_samples)
    signs = {c.sign for c in init_checks if not c.skipped}
    checks["initial_forms"] = all(c.ok for c in init_checks) and signs <= {-1}

    lowered = tuple(p.lowest_degree_form() for p in kp.ku_relations)
    mono_gens = tuple(Poly(d.m, {mm: 1}) for mm in kp.monomial_relations)
    checks["graded_degeneration"] = ideal_equal(
        IdealSpec(d.m, mono_gens + lowered, order), cp.ideal, budget
    )

    stability_us = list(tuple(int(e) for e in u) for u in extra_us)
    stability_us.extend(seeded_u_vectors(d.n, stability_samples, seed))
    if finite:
        u_stable = all(_quotient_relation_holds(qb, d, u) for u in stability_us)
    else:
        u_stable = all(
            normal_form(product_relation(d, u), gb_k).is_zero() for u in stability_us
        )
    checks["u_stability"] = u_stable

    if finite:
        nilpotent = True
        for j in range(d.m):
            xj = qb.coords(Poly.variable(j, d.m))
            cur = xj
            steps = 1
            while steps < qb.dim and any(cur):
                cur = qb.multiply(cur, xj)
                steps += 1
            if any(cur):
                nilpotent = False
        checks["nilpotence"] = nilpotent

        units = True
        for j in range(d.m):
            mat = qb.operator_matrix(qb.coords(one_minus_var(j, d.m)))
            if rat_det(mat) == 0:
                units = False
        checks["units"] = units
    else:
        checks["nilpotence"] = False
        checks["units"] = False

    zz_summary = None
    if zz and finite:
        strong = strong_groebner_zz(kp.ideal, budget)
        zzrep = zz_module_report(strong, d.m, order)
        zz_summary = zzrep.summary()
        checks["zz_free"] = zzrep.free and zzrep.free_rank == dim_k
        if zzrep.free and zzrep.free_monomials:
            units_zz = True
            basis_monos = zzrep.free_monomials
            idx = {mm: i for i, mm in enumerate(basis_monos)}
            for j in range(d.m):
                cols = []
                for mm in basis_monos:
                    image = strong_normal_form(
                        one_minus_var(j, d.m) * Poly(d.m, {mm: 1}), strong, order
                    )
                    col = [0] * len(basis_monos)
                    for mono, c in image.terms.items():
                        col[idx[mono]] = int(c)
                    cols.append(col)
                if abs(IntMatrix.from_cols(cols).det()) != 1:
                    units_zz = False
            checks["zz_units"] = units_zz
    elif zz:
        zz_summary = "skipped: quotient not finite over Q for this u-set"

    return VerificationReport(
        rank_cohomology=dim_c,
        rank_ktheory=dim_k,
        vertex_count=len(verts),
        hilbert=hilbert,
        initial_form_checks=init_checks,
        u_stability=u_stable,
        checks=checks,
        zz_summary=zz_summary,
    )
