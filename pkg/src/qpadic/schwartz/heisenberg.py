"""Heisenberg group elements [w, t] = [(a, b), t] over Q_p with exact entries."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


def symplectic_form(w1: tuple, w2: tuple) -> Fraction:
    """omega((a1,b1),(a2,b2)) = a1.b2 - b1.a2."""
    (a1, b1), (a2, b2) = w1, w2
    return sum(x * y for x, y in zip(a1, b2)) - sum(x * y for x, y in zip(b1, a2))


@dataclass(frozen=True)
class HeisenbergElement:
    a: tuple[Fraction, ...]
    b: tuple[Fraction, ...]
    t: Fraction

    @staticmethod
    def of(a, b, t) -> "HeisenbergElement":
        to_t = lambda v: tuple(Fraction(x) for x in (v if isinstance(v, (tuple, list)) else (v,)))
        return HeisenbergElement(to_t(a), to_t(b), Fraction(t))

    @property
    def dim(self) -> int:
        return len(self.a)

    @property
    def w(self) -> tuple:
        return (self.a, self.b)

    def __mul__(self, other: "HeisenbergElement") -> "HeisenbergElement":
        a = tuple(x + y for x, y in zip(self.a, other.a))
        b = tuple(x + y for x, y in zip(self.b, other.b))
        t = self.t + other.t + Fraction(1, 2) * symplectic_form(self.w, other.w)
        return HeisenbergElement(a, b, t)

    def inverse(self) -> "HeisenbergElement":
        return HeisenbergElement(tuple(-x for x in self.a), tuple(-x for x in self.b), -self.t)

    def times_symplectic(self, g) -> "HeisenbergElement":
        """[w, t] . g = [w g, t] for g in Sp_2d, with w a row vector (a | b)."""
        row = self.a + self.b
        cols = 2 * self.dim
        wg = tuple(sum(row[i] * g.rows[i][j] for i in range(cols)) for j in range(cols))
        return HeisenbergElement(wg[: self.dim], wg[self.dim :], self.t)
