"""Buchberger-style Groebner engine over the rationals.

Provides reduced bases, normal forms, quotient dimensions, Hilbert
functions and multiplication tables, plus an integer-coefficient strong
basis mode used to spot-check freeness of quotients as Z-modules.

Pair selection follows the normal strategy (smallest lcm in the active
order first) with the coprime-lcm and Gebauer-Moeller chain criteria.
Resource use is capped by an explicit budget; exceeding it raises rather
than hanging.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from math import gcd

from .linalg import _xgcd
from .polynomials import (
    Monomial,
    MonomialOrder,
    Poly,
    mono_div,
    mono_divides,
    mono_lcm,
    mono_mul,
)


class ResourceBudgetExceeded(RuntimeError):
    """The pair queue or polynomial degree exceeded the configured caps."""


class NotHomogeneousError(ValueError):
    pass


@dataclass(frozen=True)
class Budget:
    max_pairs: int = 20000
    max_degree: int = 120


DEFAULT_BUDGET = Budget()


@dataclass(frozen=True)
class IdealSpec:
    nvars: int
    generators: tuple[Poly, ...]
    order: MonomialOrder = MonomialOrder.GREVLEX

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(self.generators))
        for g in self.generators:
            if g.is_zero():
                raise ValueError("zero generator")
            if g.nvars != self.nvars:
                raise ValueError("generator variable count mismatch")


@dataclass(frozen=True)
class GroebnerBasis:
    nvars: int
    order: MonomialOrder
    basis: tuple[Poly, ...]  # monic, interreduced, ascending by leading monomial
    source: IdealSpec | None = None
    reduced: bool = True

    def leading_monomials(self) -> tuple[Monomial, ...]:
        return tuple(g.leading_monomial(self.order) for g in self.basis)


class _Reducer:
    """Division by a fixed polynomial list, smallest dividing lead first."""

    __slots__ = ("order", "entries")

    def __init__(self, polys, order: MonomialOrder):
        entries = []
        for g in polys:
            lm = g.leading_monomial(order)
            lc = g.terms[lm]
            tail = [(m, c) for m, c in g.terms.items() if m != lm]
            entries.append((lm, lc, tail))
        entries.sort(key=lambda e: order.key(e[0]))
        self.order = order
        self.entries = entries

    def reduce_terms(self, terms) -> dict:
        order = self.order
        work = dict(terms)
        heap = [(order.heap_key(m), m) for m in work]
        heapq.heapify(heap)
        out: dict[Monomial, object] = {}
        while heap:
            _, m = heapq.heappop(heap)
            c = work.pop(m, 0)
            if c == 0:
                continue
            hit = None
            for lm, lc, tail in self.entries:
                if mono_divides(lm, m):
                    hit = (lm, lc, tail)
                    break
            if hit is None:
                out[m] = c
                continue
            lm, lc, tail = hit
            cof = mono_div(m, lm)
            f = c if lc == 1 else Fraction(c) / lc
            for m2, c2 in tail:
                mm = mono_mul(m2, cof)
                prev = work.get(mm, 0)
                s = prev - f * c2
                if s:
                    if prev == 0:
                        heapq.heappush(heap, (order.heap_key(mm), mm))
                    work[mm] = s
                elif mm in work:
                    del work[mm]
        return out

    def reduce(self, p: Poly) -> Poly:
        return Poly._raw(p.nvars, self.reduce_terms(p.terms))


def normal_form(p: Poly, gb: GroebnerBasis) -> Poly:
    """Remainder of multivariate division of p by the basis."""
    if p.nvars != gb.nvars:
        raise ValueError("variable count mismatch")
    if not gb.basis:
        return p
    return _Reducer(gb.basis, gb.order).reduce(p)


def s_polynomial(f: Poly, g: Poly, order: MonomialOrder) -> Poly:
    lf = f.leading_monomial(order)
    lg = g.leading_monomial(order)
    l = mono_lcm(lf, lg)
    cf = Fraction(1) / Fraction(f.terms[lf])
    cg = Fraction(1) / Fraction(g.terms[lg])
    tf = Poly._raw(f.nvars, {mono_div(l, lf): cf})
    tg = Poly._raw(g.nvars, {mono_div(l, lg): cg})
    return tf * f - tg * g


def _update_pairs(lead, pairs, new_index):
    """Gebauer-Moeller pair update for the element just appended."""
    t = new_index
    lt = lead[t]
    kept = set()
    for (i, j) in pairs:
        lij = mono_lcm(lead[i], lead[j])
        if (
            not mono_divides(lt, lij)
            or lij == mono_lcm(lead[i], lt)
            or lij == mono_lcm(lead[j], lt)
        ):
            kept.add((i, j))
    bylcm: dict[Monomial, list[int]] = {}
    for i in range(t):
        bylcm.setdefault(mono_lcm(lead[i], lt), []).append(i)
    minimal: list[Monomial] = []
    for l in sorted(bylcm, key=lambda m: (sum(m), m)):
        if all(not mono_divides(l2, l) for l2 in minimal):
            minimal.append(l)
    for l in minimal:
        if any(mono_lcm(lead[i], lt) == mono_mul(lead[i], lt) for i in bylcm[l]):
            continue  # coprime-lead criterion
        kept.add((min(bylcm[l]), t))
    return kept


def groebner_basis(spec: IdealSpec, budget: Budget = DEFAULT_BUDGET) -> GroebnerBasis:
    """The reduced Groebner basis, canonical for the ideal and order."""
    order = spec.order
    nvars = spec.nvars
    basis: list[Poly] = []
    lead: list[Monomial] = []
    pairs: set[tuple[int, int]] = set()

    def admit(p: Poly):
        nonlocal pairs
        basis.append(p.monic(order))
        lead.append(p.leading_monomial(order))
        pairs = _update_pairs(lead, pairs, len(basis) - 1)

    for g in spec.generators:
        admit(g)

    processed = 0
    while pairs:
        i, j = min(pairs, key=lambda p: (order.key(mono_lcm(lead[p[0]], lead[p[1]])), p))
        pairs.discard((i, j))
        processed += 1
        if processed > budget.max_pairs:
            raise ResourceBudgetExceeded(
                f"pair budget exhausted ({budget.max_pairs} reductions)"
            )
        l = mono_lcm(lead[i], lead[j])
        if sum(l) > budget.max_degree:
            raise ResourceBudgetExceeded(
                f"degree cap exceeded ({sum(l)} > {budget.max_degree})"
            )
        s = s_polynomial(basis[i], basis[j], order)
        r = _Reducer(basis, order).reduce(s)
        if r:
            admit(r)

    return _reduce_basis(basis, nvars, order, spec)


def _reduce_basis(polys, nvars, order, source) -> GroebnerBasis:
    live = [p for p in polys if p]
    if not live:
        return GroebnerBasis(nvars, order, (), source)
    live.sort(key=lambda p: order.key(p.leading_monomial(order)))
    minimal: list[Poly] = []
    for p in live:
        lm = p.leading_monomial(order)
        if all(not mono_divides(q.leading_monomial(order), lm) for q in minimal):
            minimal.append(p)
    reduced: list[Poly] = []
    for k, p in enumerate(minimal):
        others = reduced + minimal[k + 1 :]
        rem = _Reducer(others, order).reduce(p) if others else p
        reduced.append(rem.monic(order))
    reduced.sort(key=lambda p: order.key(p.leading_monomial(order)))
    return GroebnerBasis(nvars, order, tuple(reduced), source)


def ideal_equal(a: IdealSpec, b: IdealSpec, budget: Budget = DEFAULT_BUDGET) -> bool:
    """True iff the two ideals have the same reduced basis."""
    if a.nvars != b.nvars or a.order is not b.order:
        raise ValueError("ideal specs must share variable count and order")
    return groebner_basis(a, budget).basis == groebner_basis(b, budget).basis


def _pure_power_bounds(lead, nvars) -> list[int] | None:
    """Per-variable exponent bound from pure-power leads; None if some variable has none."""
    bounds = [None] * nvars
    for lm in lead:
        support = [i for i, e in enumerate(lm) if e]
        if not support:
            return [0] * nvars  # the unit ideal
        if len(support) == 1:
            j = support[0]
            if bounds[j] is None or lm[j] < bounds[j]:
                bounds[j] = lm[j]
    if any(b is None for b in bounds):
        return None
    return bounds  # type: ignore[return-value]


def standard_monomials(gb: GroebnerBasis) -> tuple[Monomial, ...] | None:
    """Monomials outside the leading-term ideal, or None when infinite."""
    lead = gb.leading_monomials()
    bounds = _pure_power_bounds(lead, gb.nvars)
    if bounds is None:
        return None
    out = [
        m
        for m in product(*(range(b) for b in bounds))
        if not any(mono_divides(lm, m) for lm in lead)
    ]
    out.sort(key=gb.order.key)
    return tuple(out)


def quotient_dimension(gb: GroebnerBasis) -> int | None:
    """Vector-space dimension of the quotient; None when infinite."""
    std = standard_monomials(gb)
    return None if std is None else len(std)


def _monomials_of_degree(nvars: int, k: int):
    if nvars == 1:
        yield (k,)
        return
    for e in range(k + 1):
        for rest in _monomials_of_degree(nvars - 1, k - e):
            yield (e,) + rest


def hilbert_function(gb: GroebnerBasis, max_degree: int | None = None) -> tuple[int, ...]:
    """Counts of standard monomials by total degree.

    Requires a homogeneous ideal (checked on the source generators) and a
    degree-compatible order.  For finite quotients the full sequence is
    returned; infinite quotients need an explicit max_degree.
    """
    gens = gb.source.generators if gb.source is not None else gb.basis
    for g in gens:
        if not g.is_homogeneous():
            raise NotHomogeneousError(f"inhomogeneous generator: {g.render(gb.order)}")
    if not gb.order.is_graded:
        raise ValueError("hilbert_function needs a degree-compatible order")
    std = standard_monomials(gb)
    if std is None:
        if max_degree is None:
            raise ValueError("infinite quotient: pass max_degree")
        lead = gb.leading_monomials()
        return tuple(
            sum(
                1
                for m in _monomials_of_degree(gb.nvars, k)
                if not any(mono_divides(lm, m) for lm in lead)
            )
            for k in range(max_degree + 1)
        )
    top = max((sum(m) for m in std), default=0)
    if max_degree is not None:
        top = max_degree
    counts = [0] * (top + 1)
    for m in std:
        if sum(m) <= top:
            counts[sum(m)] += 1
    return tuple(counts)


class QuotientBasis:
    """Standard-monomial basis of a finite quotient with multiplication table.

    Coordinates are exact rational vectors over the standard monomials,
    kept in ascending order of the active monomial order.
    """

    def __init__(self, gb: GroebnerBasis):
        std = standard_monomials(gb)
        if std is None:
            raise ValueError("quotient is not finite-dimensional")
        self.order = gb.order
        self.standard_monomials = std
        self.dim = len(std)
        self._index = {m: i for i, m in enumerate(std)}
        self._reducer = _Reducer(gb.basis, gb.order) if gb.basis else None
        self.table: dict[tuple[int, int], tuple] = {}
        for i in range(self.dim):
            for j in range(i, self.dim):
                prod_m = mono_mul(std[i], std[j])
                self.table[(i, j)] = self._coords_of_terms({prod_m: 1})

    def _coords_of_terms(self, terms) -> tuple:
        red = self._reducer.reduce_terms(terms) if self._reducer else dict(terms)
        vec = [0] * self.dim
        for m, c in red.items():
            vec[self._index[m]] = c
        return tuple(vec)

    def coords(self, p: Poly) -> tuple:
        """Coordinate vector of the class of p."""
        return self._coords_of_terms(p.terms)

    def one(self) -> tuple:
        if self.dim == 0:
            return ()
        return self._coords_of_terms({(0,) * len(self.standard_monomials[0]): 1})

    def multiply(self, a, b) -> tuple:
        out = [0] * self.dim
        for i, ca in enumerate(a):
            if ca == 0:
                continue
            for j, cb in enumerate(b):
                if cb == 0:
                    continue
                key = (i, j) if i <= j else (j, i)
                f = ca * cb
                for k, ck in enumerate(self.table[key]):
                    if ck:
                        out[k] += f * ck
        return tuple(out)

    def power(self, a, k: int) -> tuple:
        result = self.one()
        base = a
        while k:
            if k & 1:
                result = self.multiply(result, base)
            k >>= 1
            if k:
                base = self.multiply(base, base)
        return result

    def operator_matrix(self, a) -> list[list[Fraction]]:
        """Matrix of multiplication by a; column j is a * (j-th basis monomial)."""
        cols = []
        for j in range(self.dim):
            unit = tuple(1 if t == j else 0 for t in range(self.dim))
            cols.append(self.multiply(a, unit))
        return [[Fraction(cols[j][i]) for j in range(self.dim)] for i in range(self.dim)]


def structure_constants(gb: GroebnerBasis) -> QuotientBasis:
    return QuotientBasis(gb)


def rat_det(rows: list[list[Fraction]]) -> Fraction:
    """Exact determinant by rational Gaussian elimination."""
    n = len(rows)
    a = [list(map(Fraction, r)) for r in rows]
    det = Fraction(1)
    for k in range(n):
        piv = next((i for i in range(k, n) if a[i][k] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            det = -det
        det *= a[k][k]
        inv = a[k][k]
        for i in range(k + 1, n):
            if a[i][k] != 0:
                f = a[i][k] / inv
                a[i] = [x - f * y for x, y in zip(a[i], a[k])]
    return det


# ---------------------------------------------------------------------------
# Integer-coefficient strong bases (Z mode)
# ---------------------------------------------------------------------------


def _int_normalize(p: Poly, order: MonomialOrder) -> Poly:
    for c in p.terms.values():
        if Fraction(c).denominator != 1:
            raise ValueError("Z mode needs integer-coefficient generators")
    terms = {m: int(c) for m, c in p.terms.items()}
    if terms[max(terms, key=order.key)] < 0:
        terms = {m: -c for m, c in terms.items()}
    return Poly._raw(p.nvars, terms)


class _StrongReducer:
    """Strong division over Z: a term is rewritten by the applicable basis
    element of smallest positive leading coefficient, leaving the least
    nonnegative coefficient remainder."""

    __slots__ = ("order", "entries")

    def __init__(self, polys, order):
        entries = []
        for g in polys:
            lm = g.leading_monomial(order)
            lc = g.terms[lm]
            tail = [(m, c) for m, c in g.terms.items() if m != lm]
            entries.append((lm, lc, tail))
        entries.sort(key=lambda e: (e[1], order.key(e[0])))
        self.order = order
        self.entries = entries

    def reduce_terms(self, terms) -> dict:
        order = self.order
        work = dict(terms)
        heap = [(order.heap_key(m), m) for m in work]
        heapq.heapify(heap)
        out: dict[Monomial, int] = {}
        while heap:
            _, m = heapq.heappop(heap)
            c = work.pop(m, 0)
            if c == 0:
                continue
            hit = None
            for lm, lc, tail in self.entries:
                if mono_divides(lm, m):
                    hit = (lm, lc, tail)
                    break
            if hit is None:
                out[m] = c
                continue
            lm, lc, tail = hit
            q, r = divmod(c, lc)
            if r:
                out[m] = r
            if q:
                cof = mono_div(m, lm)
                for m2, c2 in tail:
                    mm = mono_mul(m2, cof)
                    prev = work.get(mm, 0)
                    s = prev - q * c2
                    if s:
                        if prev == 0:
                            heapq.heappush(heap, (order.heap_key(mm), mm))
                        work[mm] = s
                    elif mm in work:
                        del work[mm]
        return out

    def reduce(self, p: Poly) -> Poly:
        return Poly._raw(p.nvars, self.reduce_terms(p.terms))


def strong_groebner_zz(spec: IdealSpec, budget: Budget = DEFAULT_BUDGET) -> tuple[Poly, ...]:
    """Strong Groebner basis over Z via S-polynomial and gcd-polynomial pairs.

    Every element of the ideal strong-reduces to zero against the result;
    leading terms capture the leading-coefficient ideals monomial by
    monomial, which is what the freeness report reads off.
    """
    order = spec.order
    basis = [_int_normalize(g, order) for g in spec.generators]
    lead = [g.leading_monomial(order) for g in basis]
    pairs = {(i, j) for j in range(len(basis)) for i in range(j)}
    processed = 0

    def admit(p: Poly):
        basis.append(p)
        lead.append(p.leading_monomial(order))
        t = len(basis) - 1
        for i in range(t):
            pairs.add((i, t))

    while pairs:
        i, j = min(pairs, key=lambda p: (order.key(mono_lcm(lead[p[0]], lead[p[1]])), p))
        pairs.discard((i, j))
        processed += 1
        if processed > budget.max_pairs:
            raise ResourceBudgetExceeded(f"pair budget exhausted ({budget.max_pairs})")
        l = mono_lcm(lead[i], lead[j])
        if sum(l) > budget.max_degree:
            raise ResourceBudgetExceeded(f"degree cap exceeded ({sum(l)})")
        f, g = basis[i], basis[j]
        lf, lg = lead[i], lead[j]
        cf, cg = f.terms[lf], g.terms[lg]
        a = cf * cg // gcd(cf, cg)
        mf = Poly._raw(f.nvars, {mono_div(l, lf): a // cf})
        mg = Poly._raw(g.nvars, {mono_div(l, lg): a // cg})
        candidates = [mf * f - mg * g]
        if cf % cg != 0 and cg % cf != 0:
            g0, s, t = _xgcd(cf, cg)
            pf = Poly._raw(f.nvars, {mono_div(l, lf): s})
            pg = Poly._raw(g.nvars, {mono_div(l, lg): t})
            candidates.append(pf * f + pg * g)
        red = _StrongReducer(basis, order)
        for cand in candidates:
            r = red.reduce(cand)
            if r:
                admit(_int_normalize(r, order))
                red = _StrongReducer(basis, order)

    # minimalize: drop elements whose leading term is strongly divisible
    basis.sort(key=lambda p: (order.key(p.leading_monomial(order)), p.terms[p.leading_monomial(order)]))
    minimal: list[Poly] = []
    for p in basis:
        lm = p.leading_monomial(order)
        lc = p.terms[lm]
        if any(
            mono_divides(q.leading_monomial(order), lm) and lc % q.terms[q.leading_monomial(order)] == 0
            for q in minimal
        ):
            continue
        minimal.append(p)
    reduced = []
    for k, p in enumerate(minimal):
        others = reduced + minimal[k + 1 :]
        if others:
            lm = p.leading_monomial(order)
            head = Poly._raw(p.nvars, {lm: p.terms[lm]})
            tail = _StrongReducer(others, order).reduce(p - head)
            p = head + tail
        reduced.append(p)
    reduced.sort(key=lambda p: order.key(p.leading_monomial(order)))
    return tuple(reduced)


def strong_normal_form(p: Poly, basis: tuple[Poly, ...], order: MonomialOrder) -> Poly:
    """Strong remainder over Z against an integer-coefficient basis."""
    if not basis:
        return p
    return _StrongReducer(basis, order).reduce(p)


@dataclass(frozen=True)
class ZZModuleReport:
    """Z-module structure of the quotient, read off a strong basis."""

    finite: bool
    free_rank: int | None
    torsion: tuple[tuple[Monomial, int], ...]
    free: bool
    free_monomials: tuple[Monomial, ...] = ()

    def summary(self) -> str:
        if not self.finite:
            return "not finitely generated by unit pure powers"
        if self.free:
            return f"free of rank {self.free_rank}"
        tor = ", ".join(f"Z/{c} at {m}" for m, c in self.torsion)
        return f"rank {self.free_rank} with torsion {tor}"


def zz_module_report(strong_basis: tuple[Poly, ...], nvars: int, order: MonomialOrder) -> ZZModuleReport:
    """Decompose the quotient as a direct sum of cyclic groups, one per
    monomial: free where no leading term applies, Z/c where the applicable
    leading coefficients have gcd c > 1.

    The scan region is the box below the minimal unit-coefficient pure
    powers; outside it every monomial is rewritten with coefficient 1.
    """
    leads = [(g.leading_monomial(order), g.terms[g.leading_monomial(order)]) for g in strong_basis]
    unit_bound = [None] * nvars
    for lm, lc in leads:
        if lc not in (1, -1):
            continue
        support = [i for i, e in enumerate(lm) if e]
        if not support:
            return ZZModuleReport(True, 0, (), True)  # unit ideal
        if len(support) == 1:
            j = support[0]
            if unit_bound[j] is None or lm[j] < unit_bound[j]:
                unit_bound[j] = lm[j]
    if any(b is None for b in unit_bound):
        return ZZModuleReport(False, None, (), False)
    free = []
    torsion = []
    for m in product(*(range(b) for b in unit_bound)):
        divisors = [lc for lm, lc in leads if mono_divides(lm, m)]
        if not divisors:
            free.append(m)
            continue
        c = 0
        for lc in divisors:
            c = gcd(c, lc)
        if c > 1:
            torsion.append((m, c))
    torsion.sort(key=lambda t: order.key(t[0]))
    free.sort(key=order.key)
    return ZZModuleReport(True, len(free), tuple(torsion), not torsion, tuple(free))
