"""q-integers, q-factorials, q-binomials, and multidimensional factorial ratios.

A RatioSpec holds two tuples of nonnegative integer vectors (e for numerator
factorials, f for denominator factorials) over d counting variables. For a
nonnegative integer vector n the ratio is

    prod_i [e_i . n]_q!  /  prod_j [f_j . n]_q!

evaluated exactly in Z[q]. Three independent routes are provided: direct
factor arithmetic (q_ratio), the cyclotomic product form (q_ratio_cyclotomic),
and plain integers at q = 1 (q_ratio_at_one); they must agree wherever defined
and the test suite holds them to that. q_ratio_mod returns only the canonical
residue modulo cyclotomic(b), switching to a residue-product path above a
degree threshold so congruence sweeps stay cheap.

Internally every q-factorial is a multiset of binomial factors (1 - q^k)
together with a power of (1 - q): [m]_q! = prod_{k<=m} (1 - q^k) * (1-q)^(-m).
Multiplying numerator factors first and then dividing denominator factors one
by one (largest k first) gives the same polynomial and the same fail-fast
divisibility semantics as whole-factorial division: if the final ratio is a
polynomial then so is every partial quotient, since it equals the final
polynomial times the remaining denominator factors.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Sequence

from .intpoly import (
    ONE,
    IntPolynomial,
    NotDivisible,
    cyclotomic,
    div_one_minus_qk_exact,
    mul_one_minus_qk,
    reduce_mod_cyclotomic,
)

# Estimated ratio degree above which q_ratio_mod uses the residue-product
# path instead of building the full polynomial. Exact either way.
RESIDUE_DEGREE_THRESHOLD = 64


class NegativeExponent(ArithmeticError):
    """The cyclotomic product form hit a negative exponent; not a polynomial."""

    def __init__(self, modulus: int, exponent: int):
        super().__init__(
            f"cyclotomic exponent {exponent} at modulus b={modulus}; "
            "the ratio is not a polynomial"
        )
        self.modulus = modulus
        self.exponent = exponent


Vector = tuple[int, ...]


@dataclass(frozen=True)
class RatioSpec:
    """Numerator/denominator factorial vectors over dim counting variables."""

    dim: int
    e: tuple[Vector, ...]
    f: tuple[Vector, ...]

    def __post_init__(self):
        if not isinstance(self.dim, int) or self.dim < 1:
            raise ValueError("dim must be a positive integer")
        for name in ("e", "f"):
            vecs = getattr(self, name)
            norm = tuple(tuple(v) for v in vecs)
            for v in norm:
                if len(v) != self.dim:
                    raise ValueError(f"{name} vector {v} has length != dim={self.dim}")
                if any((not isinstance(c, int)) or c < 0 for c in v):
                    raise ValueError(f"{name} vector {v} must have nonnegative integer entries")
            object.__setattr__(self, name, norm)

    @property
    def total_e(self) -> Vector:
        return tuple(sum(v[i] for v in self.e) for i in range(self.dim))

    @property
    def total_f(self) -> Vector:
        return tuple(sum(v[i] for v in self.f) for i in range(self.dim))

    @property
    def balanced(self) -> bool:
        """Column sums of e and f agree (the ratio degree is then periodic)."""
        return self.total_e == self.total_f

    def all_vectors(self) -> tuple[Vector, ...]:
        return self.e + self.f

    def distinct_nonzero_vectors(self) -> tuple[Vector, ...]:
        return tuple(sorted({v for v in self.all_vectors() if any(v)}))

    def to_json_dict(self) -> dict:
        return {
            "dim": self.dim,
            "e": [list(v) for v in self.e],
            "f": [list(v) for v in self.f],
        }

    @classmethod
    def from_json_dict(cls, data: Mapping) -> "RatioSpec":
        if not isinstance(data, Mapping):
            raise ValueError("ratio spec must be a JSON object")
        extra = set(data) - {"dim", "e", "f"}
        if extra:
            raise ValueError(f"unknown ratio spec keys: {sorted(extra)}")
        try:
            dim = data["dim"]
            e = data["e"]
            f = data["f"]
        except KeyError as exc:
            raise ValueError(f"ratio spec missing key {exc.args[0]!r}") from exc
        return cls(dim, tuple(tuple(v) for v in e), tuple(tuple(v) for v in f))


def dot(vec: Sequence[int], n: Sequence[int]) -> int:
    return sum(a * b for a, b in zip(vec, n))


def _check_point(spec: RatioSpec, n: Sequence[int]) -> Vector:
    n = tuple(n)
    if len(n) != spec.dim:
        raise ValueError(f"point {n} has length != dim={spec.dim}")
    if any((not isinstance(c, int)) or c < 0 for c in n):
        raise ValueError(f"point {n} must have nonnegative integer entries")
    return n


# -- one-dimensional building blocks ------------------------------------------


def q_integer(n: int) -> IntPolynomial:
    """[n]_q = 1 + q + ... + q^(n-1); zero for n = 0."""
    if n < 0:
        raise ValueError("q_integer needs n >= 0")
    return IntPolynomial((1,) * n)


def q_factorial(n: int) -> IntPolynomial:
    """[n]_q! = [1]_q [2]_q ... [n]_q, with [0]_q! = 1."""
    if n < 0:
        raise ValueError("q_factorial needs n >= 0")
    out = ONE
    for k in range(2, n + 1):
        out = out * q_integer(k)
    return out


def q_binomial(n: int, k: int) -> IntPolynomial:
    """Gaussian binomial; zero when k < 0 or k > n."""
    if k < 0 or k > n:
        return IntPolynomial(())
    k = min(k, n - k)
    out = ONE
    for i in range(1, k + 1):
        out = mul_one_minus_qk(out, n - k + i)
    for i in range(k, 0, -1):
        out = div_one_minus_qk_exact(out, i)
    return out


# -- ratio evaluation ----------------------------------------------------------


def _factor_counts(spec: RatioSpec, n: Vector) -> dict[int, int]:
    # Net multiplicity of (1 - q^k) across both factorial products.
    dots_e = [dot(t, n) for t in spec.e]
    dots_f = [dot(t, n) for t in spec.f]
    top = max(dots_e + dots_f, default=0)
    diff = [0] * (top + 2)
    for d in dots_e:
        if d:
            diff[1] += 1
            diff[d + 1] -= 1
    for d in dots_f:
        if d:
            diff[1] -= 1
            diff[d + 1] += 1
    counts: dict[int, int] = {}
    run = 0
    for k in range(1, top + 1):
        run += diff[k]
        if run:
            counts[k] = run
    # Each [m]_q! carries (1 - q)^(-m); fold the net power into k = 1.
    ones = sum(dots_f) - sum(dots_e)
    if ones:
        counts[1] = counts.get(1, 0) + ones
        if counts[1] == 0:
            del counts[1]
    return counts


def q_ratio(spec: RatioSpec, n: Sequence[int]) -> IntPolynomial:
    """The factorial ratio at n as an exact polynomial.

    Raises NotDivisible (with the offending remainder) if the ratio is not a
    polynomial at n. Numerator factors are multiplied first; denominator
    factors divide exactly afterwards in decreasing degree order, so failures
    surface at the first non-integral quotient.
    """
    n = _check_point(spec, n)
    counts = _factor_counts(spec, n)
    out = ONE
    for k in sorted(k for k, c in counts.items() if c > 0):
        for _ in range(counts[k]):
            out = mul_one_minus_qk(out, k)
    for k in sorted((k for k, c in counts.items() if c < 0), reverse=True):
        for _ in range(-counts[k]):
            out = div_one_minus_qk_exact(out, k)
    return out


def q_ratio_at_one(spec: RatioSpec, n: Sequence[int]) -> int:
    """The ratio specialized at q = 1: a quotient of ordinary factorials."""
    n = _check_point(spec, n)
    num = math.prod(math.factorial(dot(t, n)) for t in spec.e)
    den = math.prod(math.factorial(dot(t, n)) for t in spec.f)
    quo, rem = divmod(num, den)
    if rem:
        raise NotDivisible(IntPolynomial((rem,)), "ratio is not an integer at q = 1")
    return quo


def _delta_floor(spec: RatioSpec, n: Vector, b: int) -> int:
    # Step function value at n/b using integer floors only.
    return sum(dot(t, n) // b for t in spec.e) - sum(dot(t, n) // b for t in spec.f)


def _cyclotomic_exponents(spec: RatioSpec, n: Vector) -> list[tuple[int, int]]:
    top = max((dot(t, n) for t in spec.all_vectors()), default=0)
    out = []
    for b in range(2, top + 1):
        ex = _delta_floor(spec, n, b)
        if ex < 0:
            raise NegativeExponent(b, ex)
        if ex:
            out.append((b, ex))
    return out


def q_ratio_cyclotomic(spec: RatioSpec, n: Sequence[int]) -> IntPolynomial:
    """The ratio at n as a product of cyclotomic polynomial powers.

    The exponent of cyclotomic(b) is the step function at n/b. A negative
    exponent proves the ratio is not a polynomial and raises NegativeExponent
    with the witness modulus.
    """
    n = _check_point(spec, n)
    out = ONE
    for b, ex in _cyclotomic_exponents(spec, n):
        out = out * cyclotomic(b) ** ex
    return out


def ratio_degree(spec: RatioSpec, n: Sequence[int]) -> int:
    """Degree of the ratio at n (deg [m]_q! = m(m-1)/2); may be negative."""
    n = _check_point(spec, n)
    tri = lambda m: m * (m - 1) // 2
    return sum(tri(dot(t, n)) for t in spec.e) - sum(tri(dot(t, n)) for t in spec.f)


def q_ratio_mod(
    spec: RatioSpec,
    n: Sequence[int],
    b: int,
    degree_threshold: int = RESIDUE_DEGREE_THRESHOLD,
) -> IntPolynomial:
    """Canonical residue of the ratio at n modulo cyclotomic(b).

    Below degree_threshold the full polynomial is built and reduced. Above it
    the residue comes from the cyclotomic product form: the product over c of
    (cyclotomic(c) mod cyclotomic(b)) raised to the step-function exponent,
    reduced as it goes; any exponent at c = b makes the residue zero. Both
    paths are exact and tested equal around the threshold.
    """
    n = _check_point(spec, n)
    if b < 1:
        raise ValueError("modulus index must be >= 1")
    if b == 1:
        return IntPolynomial((q_ratio_at_one(spec, n),))
    if ratio_degree(spec, n) <= degree_threshold:
        return reduce_mod_cyclotomic(q_ratio(spec, n), b)
    exponents = _cyclotomic_exponents(spec, n)
    for c, ex in exponents:
        if c == b and ex >= 1:
            return IntPolynomial(())
    acc = ONE
    for c, ex in exponents:
        acc = reduce_mod_cyclotomic(acc * _residue_power(c, ex, b), b)
    return acc


def _cyclotomic_residue(c: int, b: int) -> IntPolynomial:
    return reduce_mod_cyclotomic(cyclotomic(c), b)


_residue_power_cache: dict[tuple[int, int, int], IntPolynomial] = {}


def _residue_power(c: int, ex: int, b: int) -> IntPolynomial:
    key = (c, ex, b)
    hit = _residue_power_cache.get(key)
    if hit is not None:
        return hit
    base = _cyclotomic_residue(c, b)
    acc = ONE
    e = ex
    while e:
        if e & 1:
            acc = reduce_mod_cyclotomic(acc * base, b)
        e >>= 1
        if e:
            base = reduce_mod_cyclotomic(base * base, b)
    _residue_power_cache[key] = acc
    return acc


# -- box evaluation -------------------------------------------------------------


def iter_box(cap: Sequence[int]) -> Iterator[Vector]:
    """Lexicographic walk of the integer box 0..cap inclusive, last axis fastest."""
    return itertools.product(*(range(c + 1) for c in cap))


def q_ratio_box(spec: RatioSpec, cap: Sequence[int]) -> dict[Vector, IntPolynomial]:
    """Exact ratio values on the whole box 0..cap.

    Walks the box incrementally: each value is obtained from its predecessor
    along the last nonzero axis by multiplying and dividing only the binomial
    factors that change, which keeps the total cost near the output size.
    Raises NotDivisible at the first point where the ratio fails to be a
    polynomial.
    """
    cap = tuple(cap)
    if len(cap) != spec.dim or any((not isinstance(c, int)) or c < 0 for c in cap):
        raise ValueError(f"cap {cap} must be nonnegative integers of length dim={spec.dim}")
    out: dict[Vector, IntPolynomial] = {}
    for n in iter_box(cap):
        if not any(n):
            out[n] = ONE
            continue
        j = max(i for i, c in enumerate(n) if c)
        pred = n[:j] + (n[j] - 1,) + n[j + 1 :]
        value = out[pred]
        counts: dict[int, int] = {}
        ones = 0
        for t in spec.e:
            step = t[j]
            if step:
                base = dot(t, pred)
                for k in range(base + 1, base + step + 1):
                    counts[k] = counts.get(k, 0) + 1
                ones -= step
        for t in spec.f:
            step = t[j]
            if step:
                base = dot(t, pred)
                for k in range(base + 1, base + step + 1):
                    counts[k] = counts.get(k, 0) - 1
                ones += step
        if ones:
            counts[1] = counts.get(1, 0) + ones
        for k in sorted(k for k, c in counts.items() if c > 0):
            for _ in range(counts[k]):
                value = mul_one_minus_qk(value, k)
        for k in sorted((k for k, c in counts.items() if c < 0), reverse=True):
            for _ in range(-counts[k]):
                value = div_one_minus_qk_exact(value, k)
        out[n] = value
    return out
