"""Exact integer and rational linear algebra.

Everything here is arbitrary-precision: integer matrices use Python ints,
rational data uses ``fractions.Fraction``.  No floating point anywhere.
All operations are pure and deterministic; identical inputs give
bit-identical outputs.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Sequence

Vec = tuple[Fraction, ...]


def ratvec(entries: Sequence) -> Vec:
    """Normalize a sequence of ints/Fractions/strings into an exact vector."""
    return tuple(Fraction(e) for e in entries)


@dataclass(frozen=True)
class IntMatrix:
    """Dense integer matrix, row-major entries."""

    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError("negative dimensions")
        if len(self.entries) != self.rows * self.cols:
            raise ValueError("entry count does not match shape")
        if not all(isinstance(e, int) for e in self.entries):
            raise ValueError("entries must be ints")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "IntMatrix":
        nrows = len(rows)
        ncols = len(rows[0]) if nrows else 0
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged rows")
        return cls(nrows, ncols, tuple(int(e) for r in rows for e in r))

    @classmethod
    def from_cols(cls, cols: Sequence[Sequence[int]]) -> "IntMatrix":
        ncols = len(cols)
        nrows = len(cols[0]) if ncols else 0
        if any(len(c) != nrows for c in cols):
            raise ValueError("ragged columns")
        return cls(nrows, ncols, tuple(int(cols[j][i]) for i in range(nrows) for j in range(ncols)))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, tuple(1 if i == j else 0 for i in range(n) for j in range(n)))

    def entry(self, i: int, j: int) -> int:
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def col(self, j: int) -> tuple[int, ...]:
        return tuple(self.entries[i * self.cols + j] for i in range(self.rows))

    def row_lists(self) -> list[list[int]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def transpose(self) -> "IntMatrix":
        return IntMatrix.from_rows([self.col(j) for j in range(self.cols)])

    def mul(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        out = []
        for i in range(self.rows):
            ri = self.row(i)
            out.append(
                [sum(ri[k] * other.entry(k, j) for k in range(self.cols)) for j in range(other.cols)]
            )
        return IntMatrix.from_rows(out)

    def det(self) -> int:
        """Determinant by fraction-free (Bareiss) elimination."""
        if self.rows != self.cols:
            raise ValueError("determinant of non-square matrix")
        n = self.rows
        if n == 0:
            return 1
        a = self.row_lists()
        sign = 1
        prev = 1
        for k in range(n - 1):
            if a[k][k] == 0:
                for i in range(k + 1, n):
                    if a[i][k] != 0:
                        a[k], a[i] = a[i], a[k]
                        sign = -sign
                        break
                else:
                    return 0
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
                a[i][k] = 0
            prev = a[k][k]
        return sign * a[n - 1][n - 1]


@dataclass(frozen=True)
class SNFResult:
    """Smith decomposition U*M*V = D with unimodular U, V."""

    u: IntMatrix
    d: IntMatrix
    v: IntMatrix

    def invariant_factors(self) -> tuple[int, ...]:
        k = min(self.d.rows, self.d.cols)
        facs = [self.d.entry(i, i) for i in range(k)]
        while facs and facs[-1] == 0:
            facs.pop()
        return tuple(facs)


def _gcd_rowop(a: list[list[int]], u: list[list[int]], i: int, k: int, col: int) -> None:
    # Unimodular row op on rows (k, i) zeroing a[i][col] against pivot a[k][col].
    p, q = a[k][col], a[i][col]
    if q == 0:
        return
    if p != 0 and q % p == 0:
        f = q // p
        for j in range(len(a[0])):
            a[i][j] -= f * a[k][j]
        for j in range(len(u[0])):
            u[i][j] -= f * u[k][j]
        return
    g, s, t = _xgcd(p, q)
    pg, qg = p // g, q // g
    for j in range(len(a[0])):
        x, y = a[k][j], a[i][j]
        a[k][j] = s * x + t * y
        a[i][j] = -qg * x + pg * y
    for j in range(len(u[0])):
        x, y = u[k][j], u[i][j]
        u[k][j] = s * x + t * y
        u[i][j] = -qg * x + pg * y


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, s, t) with s*a + t*b = g = gcd(a, b), g > 0."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r != 0:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def smith_normal_form(m: IntMatrix) -> SNFResult:
    """Smith normal form by gcd-pivot elimination.

    Pivot selection is by minimal nonzero magnitude (ties broken by
    position), which keeps coefficient growth modest at the scales this
    package targets.  Returns U, D, V with U*M*V = D, |det U| = |det V| = 1,
    D diagonal with nonnegative entries and d_k | d_{k+1}.
    """
    nr, nc = m.rows, m.cols
    a = m.row_lists()
    u = IntMatrix.identity(nr).row_lists()
    v = IntMatrix.identity(nc).row_lists()
    # v is maintained as the transpose-free right factor: column ops on `a`
    # are mirrored as column ops on `v`.

    def col_op(i: int, k: int, col_a: int) -> None:
        # zero a[col_a][i] against pivot a[col_a][k] via unimodular column op
        p, q = a[col_a][k], a[col_a][i]
        if q == 0:
            return
        if p != 0 and q % p == 0:
            f = q // p
            for r in range(nr):
                a[r][i] -= f * a[r][k]
            for r in range(nc):
                v[r][i] -= f * v[r][k]
            return
        g, s, t = _xgcd(p, q)
        pg, qg = p // g, q // g
        for r in range(nr):
            x, y = a[r][k], a[r][i]
            a[r][k] = s * x + t * y
            a[r][i] = -qg * x + pg * y
        for r in range(nc):
            x, y = v[r][k], v[r][i]
            v[r][k] = s * x + t * y
            v[r][i] = -qg * x + pg * y

    def swap_rows(i: int, k: int) -> None:
        a[i], a[k] = a[k], a[i]
        u[i], u[k] = u[k], u[i]

    def swap_cols(i: int, k: int) -> None:
        for r in range(nr):
            a[r][i], a[r][k] = a[r][k], a[r][i]
        for r in range(nc):
            v[r][i], v[r][k] = v[r][k], v[r][i]

    rank = min(nr, nc)
    for t in range(rank):
        # pick smallest-magnitude nonzero pivot in the trailing submatrix
        best = None
        for i in range(t, nr):
            for j in range(t, nc):
                e = a[i][j]
                if e != 0 and (best is None or abs(e) < abs(a[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        while True:
            for i in range(t + 1, nr):
                _gcd_rowop(a, u, i, t, t)
            if all(a[t][j] == 0 for j in range(t + 1, nc)):
                break
            for j in range(t + 1, nc):
                col_op(j, t, t)
            if all(a[i][t] == 0 for i in range(t + 1, nr)):
                break

    # positive diagonal
    for t in range(rank):
        if a[t][t] < 0:
            for j in range(nc):
                a[t][j] = -a[t][j]
            for j in range(nr):
                u[t][j] = -u[t][j]

    # enforce divisibility chain d_k | d_{k+1}
    changed = True
    while changed:
        changed = False
        for t in range(rank - 1):
            di, dj = a[t][t], a[t + 1][t + 1]
            if di != 0 and dj % di != 0:
                changed = True
                # fold column t+1 into the 2x2 block and re-eliminate
                for r in range(nr):
                    a[r][t] += a[r][t + 1]
                for r in range(nc):
                    v[r][t] += v[r][t + 1]
                _gcd_rowop(a, u, t + 1, t, t)
                col_op(t + 1, t, t)
                _gcd_rowop(a, u, t + 1, t, t)
                if a[t][t] < 0:
                    for j in range(nc):
                        a[t][j] = -a[t][j]
                    for j in range(nr):
                        u[t][j] = -u[t][j]
                if a[t + 1][t + 1] < 0:
                    for j in range(nc):
                        a[t + 1][j] = -a[t + 1][j]
                    for j in range(nr):
                        u[t + 1][j] = -u[t + 1][j]

    um = IntMatrix.from_rows(u)
    dm = IntMatrix.from_rows(a)
    vm = IntMatrix.from_rows(v)
    assert um.mul(m).mul(vm).entries == dm.entries
    return SNFResult(um, dm, vm)


def is_split_surjection(b: IntMatrix) -> bool:
    """True iff b: Z^cols -> Z^rows is surjective (cokernel zero).

    Equivalent to the Smith form having exactly ``rows`` invariant factors,
    all equal to 1; in that case the kernel is a direct summand.
    """
    facs = smith_normal_form(b).invariant_factors()
    return len(facs) == b.rows and all(f == 1 for f in facs)


def is_basis_extendable(cols: Sequence[Sequence[int]]) -> bool:
    """True iff the given integer vectors extend to a basis of the lattice.

    The vectors are columns of an n x k matrix; extendability is equivalent
    to all k invariant factors being 1.
    """
    if not cols:
        raise ValueError("empty vector list")
    n = len(cols[0])
    if any(len(c) != n for c in cols):
        raise ValueError("mixed vector lengths")
    if len(cols) > n:
        raise ValueError("more vectors than ambient rank")
    facs = smith_normal_form(IntMatrix.from_cols(cols)).invariant_factors()
    return len(facs) == len(cols) and all(f == 1 for f in facs)


def primitive_gcd(vec: Sequence[int]) -> int:
    g = 0
    for e in vec:
        g = gcd(g, abs(e))
    return g


@dataclass(frozen=True)
class AffineSolution:
    """A particular solution plus a basis of the rational nullspace."""

    particular: Vec
    kernel_basis: tuple[Vec, ...]


def solve_affine(a: IntMatrix, b: Sequence[Fraction]) -> AffineSolution | None:
    """Solve a*x = b exactly over the rationals.

    Returns None when the system is infeasible (rank of the augmented
    matrix exceeds the rank of ``a``).  Otherwise the particular solution
    sets all free variables to zero and the kernel basis has one vector
    per free column, in column order.
    """
    if a.rows != len(b):
        raise ValueError("rhs length does not match row count")
    nr, nc = a.rows, a.cols
    rows = [[Fraction(a.entry(i, j)) for j in range(nc)] + [Fraction(b[i])] for i in range(nr)]

    pivots: list[int] = []
    r = 0
    for c in range(nc):
        piv = next((i for i in range(r, nr) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        pr = rows[r]
        inv = pr[c]
        rows[r] = pr = [x / inv for x in pr]
        for i in range(nr):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], pr)]
        pivots.append(c)
        r += 1
        if r == nr:
            break
    for i in range(r, nr):
        if rows[i][nc] != 0:
            return None

    particular = [Fraction(0)] * nc
    for k, c in enumerate(pivots):
        particular[c] = rows[k][nc]
    free = [c for c in range(nc) if c not in pivots]
    kernel = []
    for fc in free:
        vec = [Fraction(0)] * nc
        vec[fc] = Fraction(1)
        for k, c in enumerate(pivots):
            vec[c] = -rows[k][fc]
        kernel.append(tuple(vec))
    return AffineSolution(tuple(particular), tuple(kernel))
