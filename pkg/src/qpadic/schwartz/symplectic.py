"""Exact symplectic matrices g in Sp_2d(Q_p), block form (a b; c d)."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


def _mat_mul(x, y):
    n, k, m = len(x), len(y), len(y[0])
    return tuple(
        tuple(sum(x[i][t] * y[t][j] for t in range(k)) for j in range(m)) for i in range(n)
    )


def _transpose(x):
    return tuple(tuple(row[j] for row in x) for j in range(len(x[0])))


@dataclass(frozen=True)
class SymplecticMatrix:
    rows: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        n = len(self.rows)
        if n % 2 or any(len(r) != n for r in self.rows):
            raise ValueError("symplectic matrix must be square of even size")
        d = n // 2
        j = _j_rows(d)
        if _mat_mul(_mat_mul(self.rows, j), _transpose(self.rows)) != j:
            raise ValueError("matrix does not satisfy g J g^t = J")

    @staticmethod
    def of(rows) -> "SymplecticMatrix":
        return SymplecticMatrix(tuple(tuple(Fraction(x) for x in row) for row in rows))

    @staticmethod
    def from_string(text: str) -> "SymplecticMatrix":
        """Parse "a,b;c,d" rows; entries are integers or fractions like "1/2"."""
        rows = [
            [Fraction(cell.strip()) for cell in row.split(",")]
            for row in text.strip().split(";")
        ]
        return SymplecticMatrix.of(rows)

    @staticmethod
    def standard_j(d: int = 1) -> "SymplecticMatrix":
        rows = [[Fraction(0)] * (2 * d) for _ in range(2 * d)]
        for i in range(d):
            rows[i][d + i] = Fraction(1)
            rows[d + i][i] = Fraction(-1)
        return SymplecticMatrix.of(rows)

    @staticmethod
    def identity(d: int = 1) -> "SymplecticMatrix":
        rows = [[Fraction(int(i == j)) for j in range(2 * d)] for i in range(2 * d)]
        return SymplecticMatrix.of(rows)

    @property
    def dim(self) -> int:
        return len(self.rows) // 2

    def _block(self, bi: int, bj: int):
        d = self.dim
        return tuple(
            tuple(self.rows[bi * d + i][bj * d + j] for j in range(d)) for i in range(d)
        )

    @property
    def block_a(self):
        return self._block(0, 0)

    @property
    def block_b(self):
        return self._block(0, 1)

    @property
    def block_c(self):
        return self._block(1, 0)

    @property
    def block_d(self):
        return self._block(1, 1)

    def __mul__(self, other: "SymplecticMatrix") -> "SymplecticMatrix":
        return SymplecticMatrix(_mat_mul(self.rows, other.rows))

    def is_c_zero(self) -> bool:
        return all(x == 0 for row in self.block_c for x in row)

    def is_standard_j(self) -> bool:
        return self == SymplecticMatrix.standard_j(self.dim)


def _j_rows(d: int):
    rows = [[Fraction(0)] * (2 * d) for _ in range(2 * d)]
    for i in range(d):
        rows[i][d + i] = Fraction(1)
        rows[d + i][i] = Fraction(-1)
    return tuple(tuple(r) for r in rows)


def invert_matrix(rows):
    """Exact inverse of a square Fraction matrix (Gauss-Jordan)."""
    n = len(rows)
    aug = [list(r) + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(rows)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if piv is None:
            raise ZeroDivisionError("matrix is singular")
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return tuple(tuple(row[n:]) for row in aug)
