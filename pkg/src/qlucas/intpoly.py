"""Exact arithmetic on univariate integer polynomials.

Polynomials are dense ascending coefficient tuples in canonical form: no
trailing zeros, the zero polynomial is the empty tuple. Every operation is
exact over the integers; division raises instead of truncating or drifting
into floats. Multiplication switches to Kronecker substitution (coefficient
packing into one big integer per operand) above a size cutoff; the packing
uses a byte-aligned digit wide enough that balanced-digit unpacking is
injective, so results are identical to schoolbook multiplication.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterable, Iterator, Union

Scalar = Union[int, Fraction]

#: Degree of the zero polynomial. A sentinel, never an ordinary integer.
NEG_INF = float("-inf")

# Coefficient-pair count above which multiplication packs into big integers.
_KRONECKER_CUTOFF = 4096


class NotDivisible(ArithmeticError):
    """Exact polynomial division failed. Carries the offending remainder."""

    def __init__(self, remainder: "IntPolynomial", message: str = "not divisible"):
        super().__init__(message)
        self.remainder = remainder


class NotMonic(ValueError):
    """rem_monic requires a monic modulus of degree >= 1."""


class IntPolynomial:
    """Immutable dense polynomial over the integers, ascending coefficients."""

    __slots__ = ("coeffs",)

    coeffs: tuple[int, ...]

    def __init__(self, coeffs: Iterable[int] = ()):
        c = tuple(coeffs)
        n = len(c)
        while n and c[n - 1] == 0:
            n -= 1
        self.coeffs = c[:n]

    @classmethod
    def _raw(cls, coeffs: tuple[int, ...]) -> "IntPolynomial":
        # Caller guarantees canonical form (used on hot paths).
        p = object.__new__(cls)
        p.coeffs = coeffs
        return p

    def __reduce__(self):
        return (IntPolynomial, (self.coeffs,))

    # -- structure ---------------------------------------------------------

    @property
    def degree(self) -> Union[int, float]:
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    @property
    def leading_coefficient(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def __eq__(self, other: object) -> bool:
        if isinstance(other, IntPolynomial):
            return self.coeffs == other.coeffs
        if isinstance(other, int):
            return self.coeffs == ((other,) if other else ())
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    # -- ring operations ---------------------------------------------------

    def __add__(self, other: Union["IntPolynomial", int]) -> "IntPolynomial":
        if isinstance(other, int):
            other = IntPolynomial((other,))
        if not isinstance(other, IntPolynomial):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return IntPolynomial(out)

    __radd__ = __add__

    def __neg__(self) -> "IntPolynomial":
        return IntPolynomial._raw(tuple(-c for c in self.coeffs))

    def __sub__(self, other: Union["IntPolynomial", int]) -> "IntPolynomial":
        if isinstance(other, int):
            other = IntPolynomial((other,))
        if not isinstance(other, IntPolynomial):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: int) -> "IntPolynomial":
        return IntPolynomial((other,)) - self

    def __mul__(self, other: Union["IntPolynomial", int]) -> "IntPolynomial":
        if isinstance(other, int):
            if other == 0 or not self.coeffs:
                return ZERO
            return IntPolynomial._raw(tuple(c * other for c in self.coeffs))
        if not isinstance(other, IntPolynomial):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return ZERO
        if len(a) * len(b) <= _KRONECKER_CUTOFF:
            out = _mul_schoolbook(a, b)
        else:
            out = _mul_kronecker(a, b)
        # Product of nonzero integer polynomials keeps a nonzero lead.
        return IntPolynomial._raw(tuple(out))

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "IntPolynomial":
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result, base = ONE, self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def shift(self, k: int) -> "IntPolynomial":
        """Multiply by q**k."""
        if k < 0:
            raise ValueError("shift must be nonnegative")
        if not self.coeffs or k == 0:
            return self
        return IntPolynomial._raw((0,) * k + self.coeffs)

    # -- evaluation ---------------------------------------------------------

    def evaluate(self, x: Scalar) -> Scalar:
        acc: Scalar = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def eval_at_one(self) -> int:
        return sum(self.coeffs)

    # -- serialization and display ------------------------------------------

    def to_strings(self) -> list[str]:
        """Coefficients as decimal strings, ascending; exact at any size."""
        return [str(c) for c in self.coeffs]

    @classmethod
    def from_strings(cls, items: Iterable[str]) -> "IntPolynomial":
        return cls(int(s) for s in items)

    def terms(self) -> Iterator[tuple[int, int]]:
        """Nonzero (exponent, coefficient) pairs, descending exponent."""
        for k in range(len(self.coeffs) - 1, -1, -1):
            if self.coeffs[k]:
                yield k, self.coeffs[k]

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts: list[str] = []
        for k, c in self.terms():
            mag = abs(c)
            if k == 0:
                body = str(mag)
            elif k == 1:
                body = "q" if mag == 1 else f"{mag}*q"
            else:
                body = f"q^{k}" if mag == 1 else f"{mag}*q^{k}"
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"IntPolynomial({self.coeffs!r})"


ZERO = IntPolynomial(())
ONE = IntPolynomial((1,))
Q = IntPolynomial((0, 1))


def monomial(k: int, c: int = 1) -> IntPolynomial:
    """c * q**k."""
    if k < 0:
        raise ValueError("exponent must be nonnegative")
    if c == 0:
        return ZERO
    return IntPolynomial._raw((0,) * k + (c,))


# -- multiplication kernels --------------------------------------------------


def _mul_schoolbook(a: tuple[int, ...], b: tuple[int, ...]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return out


def _mul_kronecker(a: tuple[int, ...], b: tuple[int, ...]) -> list[int]:
    # Digit width covers |sum of min(la,lb) products| strictly below 2^(w-2),
    # so balanced digits of the packed product are exactly the coefficients.
    la, lb = len(a), len(b)
    ma = max(map(abs, a))
    mb = max(map(abs, b))
    bits = ma.bit_length() + mb.bit_length() + min(la, lb).bit_length() + 2
    wb = (bits + 7) // 8
    prod = _pack(a, wb) * _pack(b, wb)
    return _unpack(prod, wb, la + lb - 1)


def _pack(coeffs: tuple[int, ...], wb: int) -> int:
    pos = bytearray(len(coeffs) * wb)
    neg = bytearray(len(coeffs) * wb)
    for i, c in enumerate(coeffs):
        if c > 0:
            pos[i * wb : i * wb + wb] = c.to_bytes(wb, "little")
        elif c < 0:
            neg[i * wb : i * wb + wb] = (-c).to_bytes(wb, "little")
    return int.from_bytes(pos, "little") - int.from_bytes(neg, "little")


def _unpack(v: int, wb: int, n: int) -> list[int]:
    negate = v < 0
    if negate:
        v = -v
    raw = v.to_bytes(n * wb, "little")
    half = 1 << (8 * wb - 1)
    full = half << 1
    out = [0] * n
    carry = 0
    for k in range(n):
        d = int.from_bytes(raw[k * wb : (k + 1) * wb], "little") + carry
        if d >= half:
            d -= full
            carry = 1
        else:
            carry = 0
        out[k] = -d if negate else d
    assert carry == 0
    return out


# -- division -----------------------------------------------------------------


def _divmod_monic(a: tuple[int, ...], m: tuple[int, ...]) -> tuple[tuple[int, ...], tuple[int, ...]]:
    # m monic with len(m) >= 2. Returns (quotient, remainder below deg m).
    dm = len(m) - 1
    if len(a) <= dm:
        return (), a
    rem = list(a)
    quo = [0] * (len(a) - dm)
    for i in range(len(a) - 1, dm - 1, -1):
        c = rem[i]
        if c:
            quo[i - dm] = c
            base = i - dm
            for j in range(dm):
                rem[base + j] -= c * m[j]
    return tuple(quo), tuple(rem[:dm])


def rem_monic(a: IntPolynomial, modulus: IntPolynomial) -> IntPolynomial:
    """Canonical remainder of a modulo a monic polynomial of degree >= 1."""
    m = modulus.coeffs
    if len(m) < 2 or m[-1] != 1:
        raise NotMonic(f"modulus must be monic of degree >= 1, got {modulus}")
    _, rem = _divmod_monic(a.coeffs, m)
    return IntPolynomial(rem)


def divide_exact(a: IntPolynomial, b: IntPolynomial) -> IntPolynomial:
    """Quotient a / b when exact in Z[q]; raises NotDivisible otherwise."""
    if not b.coeffs:
        raise ZeroDivisionError("division by the zero polynomial")
    if not a.coeffs:
        return ZERO
    lead = b.coeffs[-1]
    if lead == 1:
        quo, rem = _divmod_monic(a.coeffs, b.coeffs)
        if any(rem):
            raise NotDivisible(IntPolynomial(rem))
        return IntPolynomial(quo)
    if lead == -1:
        quo, rem = _divmod_monic(a.coeffs, tuple(-c for c in b.coeffs))
        if any(rem):
            raise NotDivisible(IntPolynomial(rem))
        return IntPolynomial(tuple(-c for c in quo))
    return _divide_exact_general(a, b)


def _divide_exact_general(a: IntPolynomial, b: IntPolynomial) -> IntPolynomial:
    # Rational long division; exact only if remainder is zero and the
    # quotient is integral. The error witness is the remainder cleared of
    # denominators (zero remainder with fractional quotient reports zero).
    rem = [Fraction(c) for c in a.coeffs]
    bc = b.coeffs
    dm = len(bc) - 1
    lead = Fraction(bc[-1])
    quo = [Fraction(0)] * max(len(rem) - dm, 0)
    for i in range(len(rem) - 1, dm - 1, -1):
        c = rem[i] / lead
        if c:
            quo[i - dm] = c
            rem[i] = Fraction(0)
            for j in range(dm):
                rem[i - dm + j] -= c * bc[j]
    tail = rem[:dm]
    if any(tail):
        denom = 1
        for fr in tail:
            denom = denom * fr.denominator // gcd(denom, fr.denominator)
        witness = IntPolynomial(int(fr * denom) for fr in tail)
        raise NotDivisible(witness)
    if any(fr.denominator != 1 for fr in quo):
        raise NotDivisible(ZERO, "remainder is zero but the quotient is not integral")
    return IntPolynomial(int(fr) for fr in quo)


# -- binomial factors (1 - q^k) ----------------------------------------------


def mul_one_minus_qk(a: IntPolynomial, k: int) -> IntPolynomial:
    """a * (1 - q**k) for k >= 1, in one pass."""
    c = a.coeffs
    if not c:
        return ZERO
    out = [0] * (len(c) + k)
    out[: len(c)] = c
    for j, cj in enumerate(c):
        out[j + k] -= cj
    return IntPolynomial._raw(tuple(out))


def div_one_minus_qk_exact(a: IntPolynomial, k: int) -> IntPolynomial:
    """a / (1 - q**k) when exact; raises NotDivisible with the remainder."""
    c = a.coeffs
    if not c:
        return ZERO
    n = len(c)
    if n <= k:
        raise NotDivisible(a)
    m = n - k
    quo = [0] * m
    for j in range(m):
        quo[j] = c[j] + (quo[j - k] if j >= k else 0)
    for j in range(m, n):
        expected = -quo[j - k] if j >= k else 0
        if c[j] != expected:
            rem = list(c)
            for i, qc in enumerate(quo):
                rem[i] -= qc
                rem[i + k] += qc
            raise NotDivisible(IntPolynomial(rem))
    return IntPolynomial._raw(tuple(quo))


# -- cyclotomic polynomials ----------------------------------------------------


@lru_cache(maxsize=None)
def cyclotomic(b: int) -> IntPolynomial:
    """The b-th cyclotomic polynomial.

    Built by exact division: (q**b - 1) divided by the cyclotomic polynomials
    of all proper divisors of b. Memoized; safe under the GIL since entries
    are immutable and insertion is idempotent.
    """
    if b < 1:
        raise ValueError("cyclotomic index must be >= 1")
    if b == 1:
        return IntPolynomial((-1, 1))
    poly = monomial(b) - 1
    for d in range(1, b):
        if b % d == 0:
            poly = divide_exact(poly, cyclotomic(d))
    return poly


def reduce_mod_cyclotomic(a: IntPolynomial, b: int) -> IntPolynomial:
    """Canonical remainder of a modulo cyclotomic(b).

    High-degree inputs are first folded by exponent mod b, valid because
    q**b == 1 modulo q**b - 1 and cyclotomic(b) divides q**b - 1; the
    canonical remainder is unchanged.
    """
    phi = cyclotomic(b)
    dphi = len(phi.coeffs) - 1
    c = a.coeffs
    if len(c) <= dphi:
        return a
    if len(c) > b:
        buckets = [0] * b
        for j, cj in enumerate(c):
            buckets[j % b] += cj
        a = IntPolynomial(buckets)
        if len(a.coeffs) <= dphi:
            return a
    return rem_monic(a, phi)
