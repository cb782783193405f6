"""Affine hyperplane arrangements attached to lattice data.

A datum is an integer matrix whose columns are oriented hyperplane normals
together with a rational lift vector; hyperplane i is <p, v_i> = -lift_i.
This module builds the arrangement, enumerates empty intersections and
vertices, and certifies the two smoothness conditions: every nonempty
intersection has codimension equal to its index-set size, and its normals
extend to a lattice basis.
"""

from __future__ import annotations

from dataclasses import InitVar, dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .linalg import (
    AffineSolution,
    IntMatrix,
    Vec,
    is_basis_extendable,
    is_split_surjection,
    primitive_gcd,
    ratvec,
    solve_affine,
)

CODIMENSION_DROP = "CodimensionDrop"
NOT_UNIMODULAR = "NotUnimodular"
NON_PRIMITIVE_NORMAL = "NonPrimitiveNormal"


class NotSplitError(ValueError):
    """The normal matrix is not a surjection onto the target lattice."""


class NonPrimitiveNormalError(ValueError):
    """A hyperplane normal has entry gcd != 1."""


class NotSimpleError(ValueError):
    """Vertex enumeration was invoked on a non-simple arrangement."""


class GiveUpError(RuntimeError):
    """Rejection sampling exhausted its attempt budget."""


@dataclass(frozen=True)
class Datum:
    """Lattice input: n x m normal matrix plus a rational lift of length m.

    Constructing a Datum validates shape and, by default, that the matrix
    is a split surjection; use :meth:`diagnostic` to build data that fail
    splitness so they can still be run through the validators.
    """

    b: IntMatrix
    lift: tuple[Fraction, ...]
    check_split: InitVar[bool] = True

    def __post_init__(self, check_split: bool):
        object.__setattr__(self, "lift", ratvec(self.lift))
        if not (self.b.cols >= self.b.rows >= 1):
            raise ValueError("need hyperplane count >= ambient rank >= 1")
        if len(self.lift) != self.b.cols:
            raise ValueError("lift length must equal hyperplane count")
        if check_split and not is_split_surjection(self.b):
            raise NotSplitError("normal matrix is not a split surjection")

    @classmethod
    def diagnostic(cls, b: IntMatrix, lift: Sequence) -> "Datum":
        return cls(b, ratvec(lift), check_split=False)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], lift: Sequence, check_split: bool = True) -> "Datum":
        return cls(IntMatrix.from_rows(rows), ratvec(lift), check_split=check_split)

    @property
    def n(self) -> int:
        return self.b.rows

    @property
    def m(self) -> int:
        return self.b.cols

    def normal(self, i: int) -> tuple[int, ...]:
        return self.b.col(i)

    def is_split(self) -> bool:
        return is_split_surjection(self.b)

    def pairings(self, u: Sequence[int]) -> tuple[int, ...]:
        """<u, v_j> for every column v_j."""
        if len(u) != self.n:
            raise ValueError("vector length must equal ambient rank")
        return tuple(
            sum(int(u[k]) * self.b.entry(k, j) for k in range(self.n)) for j in range(self.m)
        )


@dataclass(frozen=True)
class Hyperplane:
    """Affine hyperplane <p, normal> = constant with primitive oriented normal."""

    normal: tuple[int, ...]
    constant: Fraction

    def __post_init__(self):
        if all(e == 0 for e in self.normal):
            raise NonPrimitiveNormalError("zero normal")
        if primitive_gcd(self.normal) != 1:
            raise NonPrimitiveNormalError("normal is not primitive")

    def contains(self, p: Sequence[Fraction]) -> bool:
        return sum(Fraction(x) * v for x, v in zip(p, self.normal)) == self.constant


@dataclass(frozen=True)
class Arrangement:
    dim: int
    hyperplanes: tuple[Hyperplane, ...]

    @property
    def m(self) -> int:
        return len(self.hyperplanes)


@dataclass(frozen=True)
class Violation:
    subset: tuple[int, ...]  # 0-based hyperplane indices
    kind: str


@dataclass(frozen=True)
class SmoothnessReport:
    violations: tuple[Violation, ...]

    @property
    def smooth(self) -> bool:
        return not self.violations

    @property
    def verdict(self) -> str:
        return "Smooth" if self.smooth else "Violation"


def arrangement_from_datum(d: Datum) -> Arrangement:
    """Hyperplane i gets normal = column i and constant = -lift_i.

    Raises NonPrimitiveNormalError when some column is zero or has entry
    gcd != 1 (such a column already violates the lattice-basis condition
    for the singleton subset).
    """
    planes = tuple(
        Hyperplane(d.normal(i), -d.lift[i]) for i in range(d.m)
    )
    return Arrangement(d.n, planes)


def _subsystem(a: Arrangement, subset: Sequence[int]) -> AffineSolution | None:
    rows = [a.hyperplanes[i].normal for i in subset]
    rhs = [a.hyperplanes[i].constant for i in subset]
    return solve_affine(IntMatrix.from_rows(rows), rhs)


def flat_of(a: Arrangement, subset: Sequence[int]) -> int | None:
    """Dimension of the intersection over ``subset``, or None when empty.

    ``subset`` holds 0-based hyperplane indices and must be nonempty.
    """
    idx = sorted(set(subset))
    if not idx:
        raise ValueError("empty index subset")
    if idx[0] < 0 or idx[-1] >= a.m:
        raise ValueError("index out of range")
    sol = _subsystem(a, idx)
    if sol is None:
        return None
    return len(sol.kernel_basis)


def minimal_empty_subsets(a: Arrangement) -> tuple[tuple[int, ...], ...]:
    """Inclusion-minimal index sets with empty intersection, sorted.

    Ascends by cardinality, skipping supersets of sets already known to be
    empty, so everything recorded is minimal and everything empty contains
    something recorded.
    """
    found: list[tuple[int, ...]] = []
    for size in range(2, a.m + 1):
        for subset in combinations(range(a.m), size):
            ss = set(subset)
            if any(ss.issuperset(e) for e in found):
                continue
            if flat_of(a, subset) is None:
                found.append(subset)
    return tuple(sorted(found))


def _condition_violations(a: Arrangement, max_size: int | None = None) -> list[Violation]:
    """Minimal violations of the two smoothness conditions.

    Only subsets with nonempty intersection are constrained.  Scanning
    sizes up to ambient dimension + 1 is exhaustive: any larger nonempty
    intersection already forces a codimension violation at that size.
    """
    n = a.dim
    if max_size is None:
        max_size = min(a.m, n + 1)
    bad: list[Violation] = []
    empties: list[set[int]] = []
    for size in range(1, max_size + 1):
        for subset in combinations(range(a.m), size):
            ss = set(subset)
            if any(ss.issuperset(v.subset) for v in bad):
                continue
            if any(ss.issuperset(e) for e in empties):
                continue
            dim = flat_of(a, subset)
            if dim is None:
                empties.append(ss)
                continue
            rank = n - dim
            if rank < size:
                bad.append(Violation(subset, CODIMENSION_DROP))
            elif not is_basis_extendable([a.hyperplanes[i].normal for i in subset]):
                bad.append(Violation(subset, NOT_UNIMODULAR))
    return bad


def certify_smooth(d: Datum) -> SmoothnessReport:
    """Check both smoothness conditions on the arrangement of ``d``.

    Columns that are zero or non-primitive are reported as NotUnimodular
    singletons (their one-element intersection is nonempty but the normal
    cannot extend to a lattice basis).
    """
    violations: list[Violation] = []
    keep: list[int] = []
    for i in range(d.m):
        col = d.normal(i)
        if all(e == 0 for e in col) or primitive_gcd(col) != 1:
            violations.append(Violation((i,), NOT_UNIMODULAR))
        else:
            keep.append(i)
    # scan the well-formed columns; supersets of the singleton violations
    # above carry no extra information
    arr = Arrangement(d.n, tuple(Hyperplane(d.normal(i), -d.lift[i]) for i in keep))
    for v in _condition_violations(arr):
        violations.append(Violation(tuple(keep[i] for i in v.subset), v.kind))
    uniq = sorted(set(violations), key=lambda v: (len(v.subset), v.subset, v.kind))
    return SmoothnessReport(tuple(uniq))


@dataclass(frozen=True)
class VertexInfo:
    point: Vec
    on: tuple[int, ...]  # all hyperplanes through the point, 0-based


def vertices_detailed(a: Arrangement) -> tuple[VertexInfo, ...]:
    """All 0-dimensional flats, deduplicated, with full incidence data.

    Requires a simple arrangement (codimension condition certified);
    raises NotSimpleError otherwise so vertex counts cannot silently
    double-count.
    """
    if any(v.kind == CODIMENSION_DROP for v in _condition_violations(a)):
        raise NotSimpleError("arrangement has a codimension violation")
    seen: dict[Vec, None] = {}
    for subset in combinations(range(a.m), a.dim):
        sol = _subsystem(a, subset)
        if sol is not None and not sol.kernel_basis:
            seen.setdefault(sol.particular, None)
    out = []
    for p in sorted(seen):
        on = tuple(i for i, h in enumerate(a.hyperplanes) if h.contains(p))
        out.append(VertexInfo(p, on))
    return tuple(out)


def vertices(a: Arrangement) -> tuple[Vec, ...]:
    return tuple(v.point for v in vertices_detailed(a))


def sample_datum(m: int, n: int, seed: int, max_attempts: int = 1000) -> tuple[Datum, int]:
    """Rejection-sample a split + smooth datum, deterministically per seed.

    Normal entries are drawn from [-2, 2]; lift entries are rationals with
    denominator at most 3.  Returns the datum and the number of attempts;
    raises GiveUpError when the attempt budget runs out.
    """
    import random

    if not m >= n >= 1:
        raise ValueError("need hyperplane count >= ambient rank >= 1")
    rng = random.Random(seed)
    for attempt in range(1, max_attempts + 1):
        rows = [[rng.randint(-2, 2) for _ in range(m)] for _ in range(n)]
        lift = [Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(m)]
        b = IntMatrix.from_rows(rows)
        if not is_split_surjection(b):
            continue
        d = Datum(b, tuple(lift))
        if certify_smooth(d).smooth:
            return d, attempt
    raise GiveUpError(f"no admissible datum in {max_attempts} attempts (seed={seed})")
