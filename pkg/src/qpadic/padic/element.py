"""Elements of K_N = Q_p(zeta_{p^N}) in the uniformizer basis.

An element is sum c_i * pi^i, i < e, with PadicScalar coefficients.  Because
the candidate valuations v(c_i) + i/e have pairwise distinct fractional parts,
the element valuation is the exact minimum of the candidates whenever the
minimum is achieved by a coefficient whose own valuation is known.

Products run through an integerized fast path: both operands are written as
p^m * (integer vector mod p^K), the convolution is done by Kronecker
substitution (one big-integer multiply), and the result is reduced modulo the
Eisenstein polynomial.
"""

from __future__ import annotations

import math
from fractions import Fraction

from ..errors import FieldMismatch, InsufficientPrecision, ZeroAtPrecisionError
from .field import CyclotomicField
from .scalar import INF, PadicScalar, Valuation, vp_fraction


def _kronecker_convolve(av: list[int], bv: list[int], slot_bits: int) -> list[int]:
    """Exact convolution of nonnegative integer vectors via one bigint multiply."""
    slot_bytes = (slot_bits + 7) // 8
    a_int = int.from_bytes(b"".join(x.to_bytes(slot_bytes, "little") for x in av), "little")
    b_int = int.from_bytes(b"".join(x.to_bytes(slot_bytes, "little") for x in bv), "little")
    c_int = a_int * b_int
    total = len(av) + len(bv) - 1
    raw = c_int.to_bytes(slot_bytes * (total + 1), "little")
    return [
        int.from_bytes(raw[i * slot_bytes : (i + 1) * slot_bytes], "little") for i in range(total)
    ]


class CycloElement:
    """Immutable element of a CyclotomicField in the pi-basis."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: CyclotomicField, coeffs):
        coeffs = tuple(coeffs)
        if len(coeffs) != field.e:
            raise ValueError(f"need exactly e={field.e} coefficients, got {len(coeffs)}")
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "coeffs", coeffs)

    def __setattr__(self, *a):  # pragma: no cover
        raise AttributeError("CycloElement is immutable")

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero(field: CyclotomicField) -> "CycloElement":
        z = PadicScalar.exact_zero(field.p)
        return CycloElement(field, [z] * field.e)

    @staticmethod
    def from_scalar(field: CyclotomicField, s: PadicScalar) -> "CycloElement":
        z = PadicScalar.exact_zero(field.p)
        return CycloElement(field, [s] + [z] * (field.e - 1))

    @staticmethod
    def from_int(field: CyclotomicField, n: int) -> "CycloElement":
        return CycloElement.from_scalar(field, field.scalar_from_int(n))

    @staticmethod
    def from_fraction(field: CyclotomicField, x: Fraction) -> "CycloElement":
        return CycloElement.from_scalar(field, field.scalar_from_fraction(x))

    @staticmethod
    def from_int_vector(field: CyclotomicField, ints) -> "CycloElement":
        return CycloElement(field, [field.scalar_from_int(n) for n in ints])

    @staticmethod
    def pi(field: CyclotomicField) -> "CycloElement":
        if field.e == 1:
            # pi = zeta - 1 reduces to the constant -E_0 = -p
            return CycloElement.from_int(field, -field.eisenstein[0])
        ints = [0] * field.e
        ints[1] = 1
        return CycloElement.from_int_vector(field, ints)

    @staticmethod
    def zeta(field: CyclotomicField) -> "CycloElement":
        return CycloElement.from_int(field, 1) + CycloElement.pi(field)

    # -- bookkeeping ---------------------------------------------------------

    def _check(self, other: "CycloElement"):
        if self.field is not other.field and not self.field.same_as(other.field):
            raise FieldMismatch(f"{self.field} vs {other.field}")

    @property
    def is_zero(self) -> bool:
        """Zero as far as stored digits can tell (exact zero or zero at precision)."""
        return all(c.is_zero for c in self.coeffs)

    @property
    def is_exact_zero(self) -> bool:
        return all(c.exact for c in self.coeffs)

    # -- linear operations ---------------------------------------------------

    def __add__(self, other: "CycloElement") -> "CycloElement":
        self._check(other)
        return CycloElement(self.field, [a.add(b) for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other: "CycloElement") -> "CycloElement":
        self._check(other)
        return CycloElement(self.field, [a.sub(b) for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self) -> "CycloElement":
        return CycloElement(self.field, [c.neg() for c in self.coeffs])

    def scale(self, s: PadicScalar) -> "CycloElement":
        return CycloElement(self.field, [c.mul(s) for c in self.coeffs])

    def scale_int(self, n: int) -> "CycloElement":
        return CycloElement(self.field, [c.mul_int(n) for c in self.coeffs])

    def scale_ppow(self, k: int) -> "CycloElement":
        """Multiply by the exact power p^k."""
        return CycloElement(self.field, [c.shift_by(k) for c in self.coeffs])

    # -- multiplication --------------------------------------------------------

    @staticmethod
    def _integerize(coeffs):
        """(base_shift, rel_digits, int_vector) for p^m * vector mod p^K form.

        Returns None when no coefficient carries a known unit (element is zero
        or zero-at-precision).
        """
        shifts = [c.shift for c in coeffs if c.residue != 0]
        if not shifts:
            return None
        m = min(shifts)
        k_cap = min(
            (c.abs_prec - m for c in coeffs if not c.exact),
            default=INF,
        )
        if k_cap == INF or k_cap <= 0:
            return None if k_cap == INF else 0
        return m, int(k_cap), coeffs

    def _zero_floor(self) -> Fraction | float:
        """Lower bound f with |self| <= p^-f, for zero / zero-at-precision elements."""
        e = self.field.e
        floor = INF
        for i, c in enumerate(self.coeffs):
            if not c.exact:
                cand = Fraction(c.shift) + Fraction(i, e)
                floor = cand if floor == INF else min(floor, cand)
        return floor

    def _zero_element_at(self, floor) -> "CycloElement":
        p = self.field.p
        if floor == INF:
            return CycloElement.zero(self.field)
        bound = math.floor(floor)
        return CycloElement(self.field, [PadicScalar.zero_at(p, bound)] * self.field.e)

    def __mul__(self, other: "CycloElement") -> "CycloElement":
        self._check(other)
        fld = self.field
        p, e = fld.p, fld.e
        ia = CycloElement._integerize(self.coeffs)
        ib = CycloElement._integerize(other.coeffs)
        if ia is None or ib is None:
            # one side is zero(-at-precision): propagate a sound floor
            if self.is_exact_zero or other.is_exact_zero:
                return CycloElement.zero(fld)
            fa = self._zero_floor() if ia is None else self.valuation().value
            fb = other._zero_floor() if ib is None else other.valuation().value
            return self._zero_element_at(fa + fb)
        if ia == 0 or ib == 0:
            raise InsufficientPrecision("operand coefficients retain no usable digits")
        ma, ka, ca = ia
        mb, kb, cb = ib
        k = min(ka, kb)
        mod = p**k
        av = [(c.residue * p ** (c.shift - ma)) % mod if c.residue else 0 for c in ca]
        bv = [(c.residue * p ** (c.shift - mb)) % mod if c.residue else 0 for c in cb]
        slot_bits = 2 * (mod - 1).bit_length() + e.bit_length() + 1
        conv = _kronecker_convolve(av, bv, slot_bits)
        vals = [x % mod for x in conv]
        if len(vals) > e:
            emod = fld.eisenstein_mod(k)
            for i in range(len(vals) - 1, e - 1, -1):
                c = vals[i]
                if c:
                    base = i - e
                    for j in range(e):
                        if emod[j]:
                            vals[base + j] = (vals[base + j] - c * emod[j]) % mod
        vals = vals[:e] + [0] * (e - len(vals))
        m = ma + mb
        return CycloElement(fld, [PadicScalar._make(p, m, r, k) for r in vals])

    def __pow__(self, n: int) -> "CycloElement":
        if n < 0:
            return self.invert() ** (-n)
        result = CycloElement.from_int(self.field, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    # -- inversion ---------------------------------------------------------------

    def invert(self) -> "CycloElement":
        """Multiplicative inverse; pi-power is factored out, then Newton iteration."""
        fld = self.field
        val = self.valuation()
        if val.value == INF:
            if val.is_exact_zero:
                raise ZeroDivisionError("inverse of exact zero")
            raise ZeroAtPrecisionError(val.zero_at)
        w = val.value * fld.e
        assert w.denominator == 1
        w = int(w)
        piinv = _pi_inverse(fld)
        if w > 0:
            unit = self * (piinv**w)
        elif w < 0:
            unit = self * (CycloElement.pi(fld) ** (-w))
        else:
            unit = self
        c0 = unit.coeffs[0]
        x = CycloElement.from_scalar(fld, c0.inv())
        two = CycloElement.from_int(fld, 2)
        steps = max(1, math.ceil(math.log2((fld.precision + 1) * fld.e)) + 1)
        for _ in range(steps):
            x = x * (two - unit * x)
        return x * (piinv**w) if w > 0 else (x * CycloElement.pi(fld) ** (-w) if w < 0 else x)

    def div(self, other: "CycloElement") -> "CycloElement":
        return self * other.invert()

    # -- valuation -----------------------------------------------------------------

    def valuation(self) -> Valuation:
        """min_i (v(c_i) + i/e); exact because fractional parts of i/e differ."""
        e = self.field.e
        best = None
        floor = INF
        all_exact_zero = True
        for i, c in enumerate(self.coeffs):
            if c.exact:
                continue
            all_exact_zero = False
            cand = Fraction(c.shift) + Fraction(i, e)
            if c.residue == 0:
                floor = min(floor, cand) if floor != INF else cand
            elif best is None or cand < best:
                best = cand
        if all_exact_zero:
            return Valuation(INF)
        if best is None:
            return Valuation(INF, zero_at=floor)
        if best < floor:
            return Valuation(best)
        raise InsufficientPrecision(
            f"valuation candidate {best} is not below the zero-at-precision floor {floor}"
        )

    # -- comparison / serialization ----------------------------------------------------

    def equals(self, other: "CycloElement") -> bool:
        """Equality at the stored precision."""
        return (self - other).is_zero

    def to_json(self) -> dict:
        fld = self.field
        coeffs = []
        for c in self.coeffs:
            if c.exact:
                coeffs.append(None)
            elif c.residue == 0:
                coeffs.append({"zero_at": c.shift})
            else:
                coeffs.append([c.shift, c.digits()])
        return {"p": fld.p, "N": fld.N, "P": fld.precision, "coeffs": coeffs}

    @staticmethod
    def from_json(data: dict, field: CyclotomicField | None = None) -> "CycloElement":
        fld = field or CyclotomicField(data["p"], data["N"], data["P"])
        if (fld.p, fld.N) != (data["p"], data["N"]):
            raise FieldMismatch("serialized element belongs to a different field")
        p = fld.p
        coeffs = []
        for item in data["coeffs"]:
            if item is None:
                coeffs.append(PadicScalar.exact_zero(p))
            elif isinstance(item, dict):
                coeffs.append(PadicScalar.zero_at(p, item["zero_at"]))
            else:
                shift, digits = item
                residue = 0
                for d in reversed(digits):
                    residue = residue * p + d
                coeffs.append(PadicScalar._make(p, shift, residue, len(digits)))
        return CycloElement(fld, coeffs)

    def __repr__(self) -> str:
        parts = []
        for i, c in enumerate(self.coeffs):
            if not c.is_zero:
                parts.append(f"({c})*pi^{i}" if i else f"({c})")
        return " + ".join(parts) if parts else "0"


def _pi_inverse(field: CyclotomicField) -> CycloElement:
    """pi^-1 = -(pi^(e-1) + sum_{i>=1} E_i pi^(i-1)) / E_0, from E(pi) = 0."""
    if field._pi_inv is None:
        e0 = field.eisenstein[0]
        coeffs = [
            field.scalar_from_fraction(Fraction(-field.eisenstein[i], e0))
            for i in range(1, field.e + 1)
        ]
        field._pi_inv = CycloElement(field, coeffs)
    return field._pi_inv


def zeta_pow(field: CyclotomicField, j: int) -> CycloElement:
    """zeta^j with caching; j is taken modulo p^N."""
    j %= field.p**field.N
    cached = field._zeta_pows.get(j)
    if cached is not None:
        return cached
    if j == 0:
        res = CycloElement.from_int(field, 1)
    elif j == 1:
        res = CycloElement.zeta(field)
    else:
        half = zeta_pow(field, j // 2)
        res = half * half
        if j & 1:
            res = res * zeta_pow(field, 1)
    field._zeta_pows[j] = res
    return res


def embed_up(a: CycloElement, target: CyclotomicField) -> CycloElement:
    """Image of a under K_N -> K_N', zeta_{p^N} |-> zeta_{p^N'}^(p^(N'-N))."""
    src = a.field
    if target.p != src.p:
        raise FieldMismatch("embed_up requires the same prime")
    if target.N < src.N:
        raise FieldMismatch(f"cannot embed K_{src.N} down into K_{target.N}")
    if target.N == src.N:
        return CycloElement(target, a.coeffs)
    image_pi = zeta_pow(target, src.p ** (target.N - src.N)) - CycloElement.from_int(target, 1)
    acc = CycloElement.zero(target)
    for c in reversed(a.coeffs):
        acc = acc * image_pi + CycloElement.from_scalar(target, c)
    return acc


# -- tiny expression language for CLI inputs ("zeta + pi^2", "3*zeta^5 - p") ----

def parse_element(field: CyclotomicField, text: str) -> CycloElement:
    tokens = _tokenize(text)
    value, pos = _parse_sum(field, tokens, 0)
    if pos != len(tokens):
        raise ValueError(f"unexpected token {tokens[pos]!r} in element expression")
    return value


def _tokenize(text: str) -> list[str]:
    out, i = [], 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch in "+-*^()":
            out.append(ch)
            i += 1
        elif ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            out.append(text[i:j])
            i = j
        elif ch.isalpha():
            j = i
            while j < len(text) and text[j].isalpha():
                j += 1
            out.append(text[i:j])
            i = j
        else:
            raise ValueError(f"bad character {ch!r} in element expression")
    return out


def _parse_sum(field, tokens, pos):
    sign = 1
    if pos < len(tokens) and tokens[pos] in "+-":
        sign = -1 if tokens[pos] == "-" else 1
        pos += 1
    acc, pos = _parse_product(field, tokens, pos)
    if sign < 0:
        acc = -acc
    while pos < len(tokens) and tokens[pos] in "+-":
        sign = -1 if tokens[pos] == "-" else 1
        term, pos = _parse_product(field, tokens, pos + 1)
        acc = acc + (-term if sign < 0 else term)
    return acc, pos


def _parse_product(field, tokens, pos):
    acc, pos = _parse_power(field, tokens, pos)
    while pos < len(tokens) and tokens[pos] == "*":
        rhs, pos = _parse_power(field, tokens, pos + 1)
        acc = acc * rhs
    return acc, pos


def _parse_power(field, tokens, pos):
    base, pos = _parse_atom(field, tokens, pos)
    if pos < len(tokens) and tokens[pos] == "^":
        pos += 1
        neg = False
        if pos < len(tokens) and tokens[pos] == "-":
            neg = True
            pos += 1
        if pos >= len(tokens) or not tokens[pos].isdigit():
            raise ValueError("exponent must be an integer")
        n = int(tokens[pos])
        pos += 1
        base = base ** (-n if neg else n)
    return base, pos


def _parse_atom(field, tokens, pos):
    if pos >= len(tokens):
        raise ValueError("unexpected end of element expression")
    tok = tokens[pos]
    if tok == "(":
        value, pos = _parse_sum(field, tokens, pos + 1)
        if pos >= len(tokens) or tokens[pos] != ")":
            raise ValueError("missing closing parenthesis")
        return value, pos + 1
    if tok == "zeta":
        return CycloElement.zeta(field), pos + 1
    if tok == "pi":
        return CycloElement.pi(field), pos + 1
    if tok == "p":
        return CycloElement.from_int(field, field.p), pos + 1
    if tok.isdigit():
        return CycloElement.from_int(field, int(tok)), pos + 1
    raise ValueError(f"unknown symbol {tok!r} in element expression")
