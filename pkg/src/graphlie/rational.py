"""Small exact linear algebra over Fraction: rref, rank, determinants, inverse.

Matrices are lists of lists of Fraction. Everything here is pure and copies
its input.
"""

from __future__ import annotations

from fractions import Fraction

Matrix = list[list[Fraction]]


def _copy(mat) -> Matrix:
    return [[Fraction(x) for x in row] for row in mat]


def rref(mat) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and pivot columns."""
    m = _copy(mat)
    rows = len(m)
    cols = len(m[0]) if rows else 0
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        pr = next((i for i in range(r, rows) if m[i][c] != 0), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        inv = Fraction(1) / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(rows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return m, pivots


def rank(mat) -> int:
    return len(rref(mat)[1])


def nullity(mat) -> int:
    cols = len(mat[0]) if mat else 0
    return cols - rank(mat) if mat else cols


def det(mat) -> Fraction:
    """Determinant by Gaussian elimination with row swaps."""
    m = _copy(mat)
    size = len(m)
    sign = 1
    out = Fraction(1)
    for c in range(size):
        pr = next((i for i in range(c, size) if m[i][c] != 0), None)
        if pr is None:
            return Fraction(0)
        if pr != c:
            m[c], m[pr] = m[pr], m[c]
            sign = -sign
        out *= m[c][c]
        inv = Fraction(1) / m[c][c]
        for i in range(c + 1, size):
            if m[i][c] != 0:
                f = m[i][c] * inv
                m[i] = [a - f * b for a, b in zip(m[i], m[c])]
    return sign * out


def leading_minors(mat) -> list[Fraction]:
    """Determinants of all leading principal submatrices, sizes 1..n."""
    size = len(mat)
    return [det([row[: k + 1] for row in mat[: k + 1]]) for k in range(size)]


def inverse(mat) -> Matrix:
    size = len(mat)
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(size)]
           for i, row in enumerate(mat)]
    red, pivots = rref(aug)
    if pivots[:size] != list(range(size)):
        raise ValueError("matrix is singular")
    return [row[size:] for row in red]


class Subspace:
    """Row-span of exact vectors, kept in rref for membership and residue tests."""

    def __init__(self, dim: int, vectors=None):
        self.dim = dim
        self.rows: Matrix = []
        self.pivots: list[int] = []
        for v in vectors or []:
            self.add(v)

    @property
    def rank(self) -> int:
        return len(self.rows)

    def residue(self, vec) -> list[Fraction]:
        """vec reduced modulo the subspace; zero vector iff vec is a member."""
        v = [Fraction(x) for x in vec]
        for row, p in zip(self.rows, self.pivots):
            if v[p] != 0:
                f = v[p]
                v = [a - f * b for a, b in zip(v, row)]
        return v

    def contains(self, vec) -> bool:
        return all(x == 0 for x in self.residue(vec))

    def add(self, vec) -> bool:
        """Insert a vector; returns True when it enlarges the span."""
        v = self.residue(vec)
        p = next((i for i, x in enumerate(v) if x != 0), None)
        if p is None:
            return False
        inv = Fraction(1) / v[p]
        v = [x * inv for x in v]
        for k, (row, rp) in enumerate(zip(self.rows, self.pivots)):
            if row[p] != 0:
                f = row[p]
                self.rows[k] = [a - f * b for a, b in zip(row, v)]
        pos = next((k for k, rp in enumerate(self.pivots) if rp > p), len(self.pivots))
        self.rows.insert(pos, v)
        self.pivots.insert(pos, p)
        return True
