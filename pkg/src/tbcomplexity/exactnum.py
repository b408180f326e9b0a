"""Exact integer arithmetic: Fibonacci numbers, the monodromy matrix
A = [[2, 1], [1, 1]] and its powers, torsion orders of the torus bundles
with monodromy A^n, and Smith normal form over the integers.

Python integers are arbitrary precision, so every value here is exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import DomainError


def fibonacci(k: int) -> int:
    """Return phi_k with phi_1 = phi_2 = 1.

    Index 0 is rejected on purpose; the indexing is fixed by
    A^n = [[phi_{2n+1}, phi_{2n}], [phi_{2n}, phi_{2n-1}]].
    """
    if k < 1:
        raise DomainError(f"Fibonacci index must be >= 1, got {k}")
    # fast doubling on (F(m), F(m+1))
    a, b = 0, 1
    for bit in bin(k)[2:]:
        c = a * (2 * b - a)
        d = a * a + b * b
        a, b = (d, c + d) if bit == "1" else (c, d)
    return a


@dataclass(frozen=True)
class Matrix2Z:
    a: int
    b: int
    c: int
    d: int

    def __matmul__(self, other: Matrix2Z) -> Matrix2Z:
        return Matrix2Z(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def __sub__(self, other: Matrix2Z) -> Matrix2Z:
        return Matrix2Z(self.a - other.a, self.b - other.b,
                        self.c - other.c, self.d - other.d)

    @property
    def det(self) -> int:
        return self.a * self.d - self.b * self.c

    @property
    def trace(self) -> int:
        return self.a + self.d

    def rows(self) -> list[list[int]]:
        return [[self.a, self.b], [self.c, self.d]]

    @classmethod
    def identity(cls) -> Matrix2Z:
        return cls(1, 0, 0, 1)


MONODROMY = Matrix2Z(2, 1, 1, 1)


def monodromy_power(n: int) -> Matrix2Z:
    """A^n by binary exponentiation."""
    if n < 0:
        raise DomainError(f"exponent must be >= 0, got {n}")
    result = Matrix2Z.identity()
    base = MONODROMY
    while n:
        if n & 1:
            result = result @ base
        base = base @ base
        n >>= 1
    return result


def torsion_order(n: int) -> int:
    """|Tor H_1(M_n)| = |det(A^n - I)| for the torus bundle M_n."""
    if n < 1:
        raise DomainError(f"bundle index must be >= 1, got {n}")
    return abs((monodromy_power(n) - Matrix2Z.identity()).det)


@dataclass(frozen=True)
class IntMatrix:
    rows: int
    cols: int
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise DomainError("matrix entries do not match the stated dimensions")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> IntMatrix:
        entries = tuple(tuple(int(x) for x in r) for r in rows)
        if cols is None:
            cols = len(entries[0]) if entries else 0
        return cls(len(entries), cols, entries)

    @classmethod
    def identity(cls, size: int) -> IntMatrix:
        return cls.from_rows([[int(i == j) for j in range(size)] for i in range(size)], size)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> IntMatrix:
        return cls.from_rows([[0] * cols for _ in range(rows)], cols)

    def __matmul__(self, other: IntMatrix) -> IntMatrix:
        if self.cols != other.rows:
            raise DomainError(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        out = [[sum(self.entries[i][k] * other.entries[k][j] for k in range(self.cols))
                for j in range(other.cols)] for i in range(self.rows)]
        return IntMatrix.from_rows(out, other.cols)

    def column(self, j: int) -> list[int]:
        return [r[j] for r in self.entries]

    def det(self) -> int:
        """Exact determinant by fraction-free (Bareiss) elimination."""
        if self.rows != self.cols:
            raise DomainError("determinant of a non-square matrix")
        m = [list(r) for r in self.entries]
        n, sign, prev = self.rows, 1, 1
        for k in range(n - 1):
            if m[k][k] == 0:
                swap = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
                if swap is None:
                    return 0
                m[k], m[swap] = m[swap], m[k]
                sign = -sign
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            prev = m[k][k]
        return sign * m[n - 1][n - 1] if n else 1


@dataclass(frozen=True)
class SmithForm:
    """left @ input @ right == diag(diagonal) padded to the input shape."""

    diagonal: tuple[int, ...]
    left: IntMatrix
    right: IntMatrix
    rows: int
    cols: int

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d != 0)

    @property
    def free_rank(self) -> int:
        """Free rank of the cokernel Z^rows / image."""
        return self.rows - self.rank

    @property
    def torsion(self) -> tuple[int, ...]:
        return tuple(d for d in self.diagonal if d > 1)

    @property
    def torsion_order(self) -> int:
        out = 1
        for d in self.diagonal:
            if d:
                out *= d
        return out

    def diagonal_matrix(self) -> IntMatrix:
        return IntMatrix.from_rows(
            [[self.diagonal[i] if i == j and i < len(self.diagonal) else 0
              for j in range(self.cols)] for i in range(self.rows)], self.cols)

    def kernel_basis(self) -> list[list[int]]:
        """Z-basis of the integer kernel of the input matrix."""
        return [self.right.column(j) for j in range(self.rank, self.cols)]


def smith_normal_form(matrix: IntMatrix | Sequence[Sequence[int]], cols: int | None = None) -> SmithForm:
    """Smith normal form with unimodular transforms.

    Pivoting picks the entry of least absolute value in the remaining block.
    Only intended for small matrices; intermediate entries are not controlled.
    """
    if not isinstance(matrix, IntMatrix):
        matrix = IntMatrix.from_rows(matrix, cols)
    m, n = matrix.rows, matrix.cols
    a = [list(r) for r in matrix.entries]
    left = [[int(i == j) for j in range(m)] for i in range(m)]
    right = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        left[i], left[j] = left[j], left[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in right:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, q):  # row dst += q * row src
        a[dst] = [x + q * y for x, y in zip(a[dst], a[src])]
        left[dst] = [x + q * y for x, y in zip(left[dst], left[src])]

    def add_col(src, dst, q):  # col dst += q * col src
        for row in a:
            row[dst] += q * row[src]
        for row in right:
            row[dst] += q * row[src]

    for s in range(min(m, n)):
        while True:
            pivot = None
            for i in range(s, m):
                for j in range(s, n):
                    if a[i][j] and (pivot is None or abs(a[i][j]) < abs(a[pivot[0]][pivot[1]])):
                        pivot = (i, j)
            if pivot is None:
                break
            swap_rows(s, pivot[0])
            swap_cols(s, pivot[1])
            p = a[s][s]
            clean = True
            for i in range(s + 1, m):
                if a[i][s]:
                    add_row(s, i, -(a[i][s] // p))
                    clean = clean and a[i][s] == 0
            for j in range(s + 1, n):
                if a[s][j]:
                    add_col(s, j, -(a[s][j] // p))
                    clean = clean and a[s][j] == 0
            if not clean:
                continue
            bad = next(((i, j) for i in range(s + 1, m) for j in range(s + 1, n)
                        if a[i][j] % p), None)
            if bad is None:
                break
            add_row(bad[0], s, 1)
        if a[s][s] < 0:
            a[s] = [-x for x in a[s]]
            left[s] = [-x for x in left[s]]

    diagonal = tuple(a[i][i] for i in range(min(m, n)))
    return SmithForm(diagonal, IntMatrix.from_rows(left, m), IntMatrix.from_rows(right, n), m, n)
