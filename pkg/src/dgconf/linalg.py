"""Dense exact linear algebra over the rationals.

Deliberately small and auditable: dense row reduction with deterministic
pivoting (first nonzero entry, scanning columns left to right), so every
basis, dual basis and diagonal class computed downstream is reproducible
bit for bit.  All inputs are tiny (the worked examples never exceed a few
dozen dimensions per degree), so no sparsity, no modular tricks.

Vectors are tuples of scalars, matrices are lists of row lists.
"""

from __future__ import annotations

from .errors import AxiomError
from .scalars import ZERO, ONE


class Matrix:
    """A dense rows x cols matrix of exact rationals."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries):
        assert len(entries) == rows and all(len(r) == cols for r in entries)
        self.rows = rows
        self.cols = cols
        self.entries = [list(r) for r in entries]

    @classmethod
    def zero(cls, rows: int, cols: int) -> "Matrix":
        return cls(rows, cols, [[ZERO] * cols for _ in range(rows)])

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        m = cls.zero(n, n)
        for i in range(n):
            m.entries[i][i] = ONE
        return m

    @classmethod
    def from_columns(cls, columns, dim: int) -> "Matrix":
        """Assemble a dim x len(columns) matrix from column vectors."""
        columns = list(columns)
        for c in columns:
            assert len(c) == dim
        return cls(dim, len(columns), [[c[i] for c in columns] for i in range(dim)])

    def column(self, j: int):
        return tuple(self.entries[i][j] for i in range(self.rows))

    def columns(self):
        return [self.column(j) for j in range(self.cols)]

    def copy(self) -> "Matrix":
        return Matrix(self.rows, self.cols, self.entries)

    def __eq__(self, other):
        return (
            isinstance(other, Matrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and all(
                self.entries[i][j] == other.entries[i][j]
                for i in range(self.rows)
                for j in range(self.cols)
            )
        )

    def __repr__(self):
        body = "; ".join(" ".join(str(x) for x in row) for row in self.entries)
        return f"Matrix({self.rows}x{self.cols}: {body})"

    def apply(self, vector):
        """Matrix-vector product."""
        assert len(vector) == self.cols
        return tuple(
            sum((self.entries[i][j] * vector[j] for j in range(self.cols)), ZERO)
            for i in range(self.rows)
        )


def matmul(a: Matrix, b: Matrix) -> Matrix:
    assert a.cols == b.rows
    out = Matrix.zero(a.rows, b.cols)
    for i in range(a.rows):
        arow = a.entries[i]
        orow = out.entries[i]
        for k in range(a.cols):
            aik = arow[k]
            if aik == 0:
                continue
            brow = b.entries[k]
            for j in range(b.cols):
                if brow[j] != 0:
                    orow[j] = orow[j] + aik * brow[j]
    return out


def hstack(a: Matrix, b: Matrix) -> Matrix:
    assert a.rows == b.rows
    return Matrix(a.rows, a.cols + b.cols, [a.entries[i] + b.entries[i] for i in range(a.rows)])


def reduce(m: Matrix):
    """Reduced row echelon form.

    Returns (rref, rank, pivot_columns); pivot columns are strictly
    increasing and pivots are normalized to 1 with zeros above and below.
    """
    r = m.copy()
    pivots = []
    piv_row = 0
    for col in range(r.cols):
        sel = None
        for i in range(piv_row, r.rows):
            if r.entries[i][col] != 0:
                sel = i
                break
        if sel is None:
            continue
        r.entries[piv_row], r.entries[sel] = r.entries[sel], r.entries[piv_row]
        pivot = r.entries[piv_row][col]
        if pivot != 1:
            inv = ONE / pivot
            row = r.entries[piv_row]
            for j in range(col, r.cols):
                if row[j] != 0:
                    row[j] = row[j] * inv
        for i in range(r.rows):
            if i == piv_row:
                continue
            factor = r.entries[i][col]
            if factor == 0:
                continue
            src = r.entries[piv_row]
            dst = r.entries[i]
            for j in range(col, r.cols):
                if src[j] != 0:
                    dst[j] = dst[j] - factor * src[j]
        pivots.append(col)
        piv_row += 1
        if piv_row == r.rows:
            break
    return r, len(pivots), pivots


def rank(m: Matrix) -> int:
    return reduce(m)[1]


def kernel_and_image(m: Matrix):
    """Bases for ker(m) and im(m).

    Kernel vectors live in the column space (length cols) and follow the
    standard free-variable parametrization of the rref; the image basis is
    the original pivot columns.  Rank-nullity holds by construction.
    """
    rref, rk, pivots = reduce(m)
    pivset = set(pivots)
    free = [j for j in range(m.cols) if j not in pivset]
    kernel = []
    for f in free:
        vec = [ZERO] * m.cols
        vec[f] = ONE
        for i, p in enumerate(pivots):
            vec[p] = -rref.entries[i][f]
        kernel.append(tuple(vec))
    image = [m.column(p) for p in pivots]
    return kernel, image


def complement_in(subspace_basis, ambient_dim: int):
    """Extend independent columns to a basis using the smallest standard
    basis vectors first.

    Row-reduce [S | I] once: every column of S must pivot (else the input
    was dependent), and the identity columns that pivot afterwards are the
    deterministic completion.
    """
    cols = list(subspace_basis)
    k = len(cols)
    if k > ambient_dim:
        raise AxiomError("dependent subspace basis")
    stacked = hstack(Matrix.from_columns(cols, ambient_dim), Matrix.identity(ambient_dim)) \
        if k else Matrix.identity(ambient_dim)
    _, _, pivots = reduce(stacked)
    if any(p >= k for p in pivots[:k]) or len([p for p in pivots if p < k]) != k:
        raise AxiomError("dependent subspace basis")
    extension = []
    for p in pivots:
        if p >= k:
            e = [ZERO] * ambient_dim
            e[p - k] = ONE
            extension.append(tuple(e))
    return extension


def solve(m: Matrix, rhs):
    """One solution of m x = rhs, or None when inconsistent."""
    assert len(rhs) == m.rows
    aug = hstack(m, Matrix.from_columns([rhs], m.rows))
    rref, _, pivots = reduce(aug)
    if m.cols in pivots:
        return None
    x = [ZERO] * m.cols
    for i, p in enumerate(pivots):
        x[p] = rref.entries[i][m.cols]
    return tuple(x)


def solve_matrix(m: Matrix, rhs: Matrix):
    """Solve m X = rhs column by column with a single reduction.

    Returns None when any column is inconsistent.
    """
    assert rhs.rows == m.rows
    aug = hstack(m, rhs)
    rref, _, pivots = reduce(aug)
    if any(p >= m.cols for p in pivots):
        return None
    out = Matrix.zero(m.cols, rhs.cols)
    for i, p in enumerate(pivots):
        for j in range(rhs.cols):
            out.entries[p][j] = rref.entries[i][m.cols + j]
    return out


def invert(m: Matrix):
    """Inverse of a square matrix, or None if singular."""
    assert m.rows == m.cols
    return solve_matrix(m, Matrix.identity(m.rows))


def in_span(columns, vector) -> bool:
    """Is vector in the span of the given columns?"""
    if not columns:
        return all(x == 0 for x in vector)
    return solve(Matrix.from_columns(columns, len(vector)), vector) is not None


def spans_equal(cols_a, cols_b, dim: int) -> bool:
    """Do two column lists span the same subspace?"""
    ra = rank(Matrix.from_columns(cols_a, dim)) if cols_a else 0
    rb = rank(Matrix.from_columns(cols_b, dim)) if cols_b else 0
    if ra != rb:
        return False
    both = rank(Matrix.from_columns(list(cols_a) + list(cols_b), dim)) if (cols_a or cols_b) else 0
    return both == ra
