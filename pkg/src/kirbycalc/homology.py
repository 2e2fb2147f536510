"""Exact integer linear algebra over handle decompositions.

Everything here runs on arbitrary-precision Python integers: Smith normal
form with its unimodular transforms, canonical (Hermite) kernel bases,
Bareiss determinants, exact inertia of symmetric forms, and the homology of
a handlebody presented by its run-through and linking data.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .handles import HandleDecomposition


@dataclass(frozen=True)
class IntMatrix:
    """Immutable integer matrix; shape is explicit so 0xN matrices work."""

    rows: int
    cols: int
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        entries = tuple(tuple(int(x) for x in row) for row in self.entries)
        object.__setattr__(self, "entries", entries)
        if len(entries) != self.rows or any(len(r) != self.cols for r in entries):
            raise ValueError(f"entry grid does not match shape {self.rows}x{self.cols}")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> "IntMatrix":
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        return cls(len(rows), cols, tuple(tuple(r) for r in rows))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, tuple(tuple(1 if i == j else 0 for j in range(n))
                               for i in range(n)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols, tuple(tuple(0 for _ in range(cols)) for _ in range(rows)))

    @classmethod
    def diagonal(cls, diag: Sequence[int]) -> "IntMatrix":
        n = len(diag)
        return cls(n, n, tuple(tuple(diag[i] if i == j else 0 for j in range(n))
                               for i in range(n)))

    def __getitem__(self, key: tuple[int, int]) -> int:
        i, j = key
        return self.entries[i][j]

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch in matrix product")
        ot = list(zip(*other.entries)) if other.entries else [()] * other.cols
        rows = tuple(tuple(sum(a * b for a, b in zip(row, col)) for col in ot)
                     for row in self.entries)
        if self.rows == 0 or other.cols == 0:
            return IntMatrix.zeros(self.rows, other.cols)
        return IntMatrix(self.rows, other.cols, rows)

    def transpose(self) -> "IntMatrix":
        return IntMatrix(self.cols, self.rows, tuple(zip(*self.entries))
                         if self.entries else tuple(() for _ in range(self.cols)))

    def is_symmetric(self) -> bool:
        return self.rows == self.cols and all(
            self.entries[i][j] == self.entries[j][i]
            for i in range(self.rows) for j in range(i))

    def to_lists(self) -> list[list[int]]:
        return [list(r) for r in self.entries]

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i]


def det(m: IntMatrix) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    if m.rows != m.cols:
        raise ValueError("determinant of a non-square matrix")
    n = m.rows
    if n == 0:
        return 1
    a = m.to_lists()
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k]:
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
class SmithNormalForm:
    """U @ M @ V = S with U, V unimodular and S diagonal, d1 | d2 | ..."""

    s: IntMatrix
    u: IntMatrix
    v: IntMatrix

    @property
    def diagonal(self) -> tuple[int, ...]:
        n = min(self.s.rows, self.s.cols)
        return tuple(self.s[i, i] for i in range(n))

    @property
    def invariant_factors(self) -> tuple[int, ...]:
        return tuple(d for d in self.diagonal if d != 0)


def smith_normal_form(m: IntMatrix) -> SmithNormalForm:
    """Diagonalize over Z by unimodular row and column operations.

    The divisibility chain is enforced before each pivot is frozen, so the
    diagonal always satisfies d1 | d2 | ... and is non-negative.
    """
    nr, nc = m.rows, m.cols
    s = m.to_lists()
    u = IntMatrix.identity(nr).to_lists()
    v = IntMatrix.identity(nc).to_lists()

    def row_sub(i: int, k: int, q: int) -> None:
        s[i] = [x - q * y for x, y in zip(s[i], s[k])]
        u[i] = [x - q * y for x, y in zip(u[i], u[k])]

    def col_sub(j: int, k: int, q: int) -> None:
        for row in s:
            row[j] -= q * row[k]
        for row in v:
            row[j] -= q * row[k]

    def row_swap(i: int, k: int) -> None:
        s[i], s[k] = s[k], s[i]
        u[i], u[k] = u[k], u[i]

    def col_swap(j: int, k: int) -> None:
        for row in s:
            row[j], row[k] = row[k], row[j]
        for row in v:
            row[j], row[k] = row[k], row[j]

    t = 0
    while t < min(nr, nc):
        best = None
        for i in range(t, nr):
            for j in range(t, nc):
                if s[i][j] and (best is None or abs(s[i][j]) < abs(s[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        if best[0] != t:
            row_swap(t, best[0])
        if best[1] != t:
            col_swap(t, best[1])

        while True:
            for i in range(t + 1, nr):
                while s[i][t]:
                    row_sub(i, t, s[i][t] // s[t][t])
                    if s[i][t]:
                        row_swap(i, t)
            for j in range(t + 1, nc):
                while s[t][j]:
                    col_sub(j, t, s[t][j] // s[t][t])
                    if s[t][j]:
                        col_swap(j, t)
            if any(s[i][t] for i in range(t + 1, nr)):
                continue
            pivot = s[t][t]
            offender = next((i for i in range(t + 1, nr)
                             if any(x % pivot for x in s[i])), None)
            if offender is None:
                break
            row_sub(t, offender, -1)  # pull the offending row into row t
        t += 1

    for i in range(min(nr, nc)):
        if s[i][i] < 0:
            s[i] = [-x for x in s[i]]
            u[i] = [-x for x in u[i]]
    return SmithNormalForm(IntMatrix.from_rows(s, nc),
                           IntMatrix.from_rows(u, nr),
                           IntMatrix.from_rows(v, nc))


def cokernel_invariants(m: IntMatrix) -> tuple[tuple[int, ...], int]:
    """(torsion invariant factors >= 2, free rank) of Z^rows / im(M)."""
    snf = smith_normal_form(m)
    torsion = tuple(d for d in snf.invariant_factors if d >= 2)
    free = m.rows - len(snf.invariant_factors)
    return torsion, free


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def hermite_row_basis(vectors: Iterable[Sequence[int]], width: int) -> tuple[tuple[int, ...], ...]:
    """Canonical row basis (row HNF) of the lattice spanned by `vectors`.

    Pivots are positive, entries above each pivot are reduced into
    [0, pivot), and rows are sorted by pivot column, so the result is a
    deterministic function of the spanned lattice.
    """
    rows: list[list[int]] = []
    pivots: list[int] = []
    for vec in vectors:
        v = list(vec)
        if len(v) != width:
            raise ValueError("vector width mismatch")
        while True:
            lead = next((j for j, x in enumerate(v) if x), None)
            if lead is None:
                break
            k = 0
            while k < len(pivots) and pivots[k] < lead:
                k += 1
            if k < len(pivots) and pivots[k] == lead:
                r = rows[k]
                a, b = r[lead], v[lead]
                if b % a == 0:
                    q = b // a
                    v = [x - q * y for x, y in zip(v, r)]
                else:
                    g, x, y = _xgcd(a, b)
                    rows[k] = [x * pq + y * qv for pq, qv in zip(r, v)]
                    v = [-(b // g) * pq + (a // g) * qv for pq, qv in zip(r, v)]
            else:
                rows.insert(k, v)
                pivots.insert(k, lead)
                break
    for k in range(len(rows)):
        if rows[k][pivots[k]] < 0:
            rows[k] = [-x for x in rows[k]]
    for k in range(len(rows)):
        for j in range(k):
            piv = rows[k][pivots[k]]
            q = rows[j][pivots[k]] // piv
            if q:
                rows[j] = [x - q * y for x, y in zip(rows[j], rows[k])]
    return tuple(tuple(r) for r in rows)


def kernel_basis(m: IntMatrix) -> tuple[tuple[int, ...], ...]:
    """Canonical basis (as rows) of the integer kernel {x : M x = 0}."""
    if m.rows == 0:
        return hermite_row_basis(IntMatrix.identity(m.cols).entries, m.cols)
    snf = smith_normal_form(m)
    vt = snf.v.transpose()
    vecs = [vt.row(j) for j in range(m.cols)
            if j >= m.rows or snf.s[j, j] == 0]
    return hermite_row_basis(vecs, m.cols)


def inertia(m: IntMatrix) -> tuple[int, int, int]:
    """(positive, negative, zero) inertia indices of a symmetric form."""
    if not m.is_symmetric():
        raise ValueError("inertia needs a symmetric matrix")
    n = m.rows
    a = [[Fraction(x) for x in row] for row in m.entries]
    pos = neg = zero = 0
    for i in range(n):
        if a[i][i] == 0:
            swap = next((j for j in range(i + 1, n) if a[j][j] != 0), None)
            if swap is not None:
                a[i], a[swap] = a[swap], a[i]
                for row in a:
                    row[i], row[swap] = row[swap], row[i]
            else:
                j = next((j for j in range(i + 1, n) if a[i][j] != 0), None)
                if j is None:
                    zero += 1
                    continue
                a[i] = [x + y for x, y in zip(a[i], a[j])]
                for row in a:
                    row[i] = row[i] + row[j]
        d = a[i][i]
        if d > 0:
            pos += 1
        else:
            neg += 1
        for j in range(i + 1, n):
            f = a[j][i] / d
            if f:
                a[j] = [x - f * y for x, y in zip(a[j], a[i])]
                for row in a:
                    row[j] = row[j] - f * row[i]
    return pos, neg, zero


def signature(m: IntMatrix) -> int:
    p, q, _ = inertia(m)
    return p - q


def invert_rational(m: IntMatrix) -> tuple[tuple[Fraction, ...], ...]:
    """Exact inverse over Q; raises ZeroDivisionError if singular."""
    if m.rows != m.cols:
        raise ValueError("inverse of a non-square matrix")
    n = m.rows
    a = [[Fraction(x) for x in row] + [Fraction(i == j) for j in range(n)]
         for i, row in enumerate(m.entries)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            raise ZeroDivisionError("matrix is singular")
        a[col], a[piv] = a[piv], a[col]
        d = a[col][col]
        a[col] = [x / d for x in a[col]]
        for r in range(n):
            if r != col and a[r][col]:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return tuple(tuple(row[n:]) for row in a)


@lru_cache(maxsize=None)
def _cached_inverse(m: IntMatrix) -> tuple[tuple[Fraction, ...], ...]:
    return invert_rational(m)


# -- homology of handle decompositions ---------------------------------------


def run_through_matrix(d: HandleDecomposition) -> IntMatrix:
    """Differential C_2 -> C_1: rows are 1-handles, columns are 2-handles."""
    rows = [[d.run_through_count(k, h) for k in d.two_handle_ids]
            for h in d.one_handles]
    return IntMatrix.from_rows(rows, cols=len(d.two_handle_ids))


def linking_matrix(d: HandleDecomposition) -> IntMatrix:
    """Framings on the diagonal, linking numbers off it, on the 2-handles."""
    ids = d.two_handle_ids
    rows = [[d.framing(a) if a == b else d.link(a, b) for b in ids] for a in ids]
    return IntMatrix.from_rows(rows, cols=len(ids))


def surgery_presentation(d: HandleDecomposition) -> IntMatrix:
    """Linking presentation of the boundary with every dot traded for a zero.

    Basis: the 2-handles followed by the 1-handles-turned-0-framed-2-handles;
    dotted circles are pairwise unlinked, so their block is zero.
    """
    q = linking_matrix(d)
    r = run_through_matrix(d)
    n2, n1 = q.rows, r.rows
    rows = []
    for i in range(n2):
        rows.append(list(q.row(i)) + [r[h, i] for h in range(n1)])
    for h in range(n1):
        rows.append(list(r.row(h)) + [0] * n1)
    return IntMatrix.from_rows(rows, cols=n2 + n1)


@dataclass(frozen=True)
class HomologyProfile:
    """H_1 and H_2 of the handlebody, with the intersection pairing on H_2."""

    h1_invariant_factors: tuple[int, ...]
    h1_free_rank: int
    h2_rank: int
    intersection_form: IntMatrix
    h2_basis: tuple[tuple[int, ...], ...]

    @property
    def h1_trivial(self) -> bool:
        return not self.h1_invariant_factors and self.h1_free_rank == 0


def homology(d: HandleDecomposition) -> HomologyProfile:
    """Homology of the 2-handlebody (3-handles are bookkeeping only).

    H_1 is the cokernel and H_2 the kernel of the run-through differential;
    the intersection form is the linking matrix restricted to the canonical
    kernel basis, so repeated runs produce identical matrices.
    """
    r = run_through_matrix(d)
    torsion, free = cokernel_invariants(r)
    basis = kernel_basis(r)
    q = linking_matrix(d)
    form_rows = []
    for vi in basis:
        qv = [sum(q[a, b] * vi[a] for a in range(q.rows)) for b in range(q.cols)]
        form_rows.append([sum(x * y for x, y in zip(qv, vj)) for vj in basis])
    form = IntMatrix.from_rows(form_rows, cols=len(basis))
    return HomologyProfile(torsion, free, len(basis), form, basis)


def boundary_first_homology(d: HandleDecomposition) -> tuple[int, ...]:
    """Invariant factors of H_1 of the boundary 3-manifold; 0 marks a Z."""
    torsion, free = cokernel_invariants(surgery_presentation(d))
    return torsion + (0,) * free


def boundary_group_order(d: HandleDecomposition) -> int | None:
    """|H_1(boundary)| when finite, None when there is a free part."""
    factors = boundary_first_homology(d)
    if 0 in factors:
        return None
    order = 1
    for f in factors:
        order *= f
    return order


def is_homology_trivial(d: HandleDecomposition) -> bool:
    """True iff H_1 = H_2 = 0 (the homology-level contractibility check)."""
    prof = homology(d)
    return prof.h1_trivial and prof.h2_rank == 0
