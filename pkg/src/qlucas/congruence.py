"""Sweep verifiers for cyclotomic and prime congruences of factorial ratios.

All verifiers share one report shape and one discipline: triples are
enumerated lazily in a fixed order, every mismatch is recorded with both
canonical residues, and a failure never aborts the sweep. The verifiers for
the ratio congruence and its q = 1 shadow refuse specs that do not satisfy
their hypotheses (balanced column sums plus both step-function conditions);
they are checkers of stated facts, not explorers.

Residues at q = 1 are integers. They are obtained by evaluating the exact
ratio polynomial when its degree is small and by pure integer factorial
arithmetic above AT_ONE_DEGREE_THRESHOLD; the two routes agree and are tested
against each other.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional, Sequence

from . import catalog
from .intpoly import IntPolynomial, reduce_mod_cyclotomic
from .landau import check_landau
from .qcombinatorics import (
    RatioSpec,
    iter_box,
    q_binomial,
    q_ratio,
    q_ratio_at_one,
    q_ratio_mod,
    ratio_degree,
)

# Ratio degree above which q = 1 values skip the polynomial entirely.
AT_ONE_DEGREE_THRESHOLD = 50_000


class HypothesisViolated(ValueError):
    """The spec fails a precondition the congruence would rely on."""


@dataclass(frozen=True)
class CongruenceFailure:
    """One mismatched congruence instance, with canonical residues."""

    b: int
    a: Optional[tuple[int, ...]]
    n: tuple[int, ...]
    lhs_residue: IntPolynomial
    rhs_residue: IntPolynomial

    def to_json_dict(self) -> dict:
        return {
            "b": self.b,
            "a": list(self.a) if self.a is not None else None,
            "n": list(self.n),
            "lhs_residue": self.lhs_residue.to_strings(),
            "rhs_residue": self.rhs_residue.to_strings(),
        }


@dataclass
class CongruenceReport:
    subject: str
    ranges: dict
    checked: int = 0
    failures: list[CongruenceFailure] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_json_dict(self) -> dict:
        return {
            "subject": self.subject,
            "ranges": self.ranges,
            "checked": self.checked,
            "ok": self.ok,
            "failures": [f.to_json_dict() for f in self.failures],
        }


def congruent_mod_cyclotomic(a: IntPolynomial, b: IntPolynomial, m: int) -> bool:
    """Whether a == b modulo the m-th cyclotomic polynomial."""
    return reduce_mod_cyclotomic(a - b, m).is_zero()


# -- shared helpers ----------------------------------------------------------------


def _require_balanced_landau(spec: RatioSpec, subject: str) -> None:
    if not spec.balanced:
        raise HypothesisViolated(
            f"{subject}: spec column sums differ (e={spec.total_e}, f={spec.total_f})"
        )
    report = check_landau(spec)
    if not report.integrality:
        raise HypothesisViolated(f"{subject}: step function is negative somewhere")
    if not report.criterion_D:
        raise HypothesisViolated(
            f"{subject}: step function is below 1 on the distinguished subdomain"
        )


def _require_integrality(spec: RatioSpec, subject: str) -> None:
    if not spec.balanced:
        raise HypothesisViolated(
            f"{subject}: spec column sums differ (e={spec.total_e}, f={spec.total_f})"
        )
    if not check_landau(spec).integrality:
        raise HypothesisViolated(f"{subject}: step function is negative somewhere")


def _ratio_at_one(spec: RatioSpec, n: tuple[int, ...], cache: dict) -> int:
    hit = cache.get(n)
    if hit is None:
        if ratio_degree(spec, n) > AT_ONE_DEGREE_THRESHOLD:
            hit = q_ratio_at_one(spec, n)
        else:
            hit = q_ratio(spec, n).eval_at_one()
        cache[n] = hit
    return hit


def _primes_up_to(limit: int) -> list[int]:
    if limit < 2:
        return []
    sieve = bytearray([1]) * (limit + 1)
    out = []
    for p in range(2, limit + 1):
        if sieve[p]:
            out.append(p)
            for m in range(p * p, limit + 1, p):
                sieve[m] = 0
    return out


# -- ratio congruence ----------------------------------------------------------------


def _sweep_ratio_modulus(
    spec: RatioSpec, b: int, n_box: tuple[int, ...]
) -> tuple[int, list[CongruenceFailure]]:
    checked = 0
    failures: list[CongruenceFailure] = []
    at_one: dict = {}
    d = spec.dim
    for a in iter_box((b - 1,) * d):
        base_res = reduce_mod_cyclotomic(q_ratio(spec, a), b)
        for n in iter_box(n_box):
            checked += 1
            point = tuple(a[i] + n[i] * b for i in range(d))
            lhs = q_ratio_mod(spec, point, b)
            rhs = reduce_mod_cyclotomic(base_res * _ratio_at_one(spec, n, at_one), b)
            if lhs != rhs:
                failures.append(CongruenceFailure(b, a, n, lhs, rhs))
    return checked, failures


def verify_ratio_congruence(
    spec: RatioSpec, b_max: int, n_box: Sequence[int], jobs: int = 1
) -> CongruenceReport:
    """Sweep Q(q; a + n b) == Q(q; a) Q(1; n) modulo cyclotomic(b).

    Runs over every modulus b = 1..b_max, offset a in the box below b, and
    step n in the given box, inclusive. Requires a balanced spec that passes
    both step-function hypotheses. jobs > 1 distributes moduli over worker
    processes; the merged report is identical to the serial one.
    """
    n_box = tuple(n_box)
    if len(n_box) != spec.dim or any(c < 0 for c in n_box):
        raise ValueError(f"n_box {n_box} must be nonnegative of length {spec.dim}")
    if b_max < 1:
        raise ValueError("b_max must be >= 1")
    _require_balanced_landau(spec, "ratio congruence")
    report = CongruenceReport(
        subject="ratio-congruence",
        ranges={"spec": spec.to_json_dict(), "b_max": b_max, "n_box": list(n_box)},
    )
    moduli = range(1, b_max + 1)
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            chunks = pool.map(_sweep_ratio_modulus, [spec] * b_max, moduli, [n_box] * b_max)
            for checked, failures in chunks:
                report.checked += checked
                report.failures.extend(failures)
    else:
        for b in moduli:
            checked, failures = _sweep_ratio_modulus(spec, b, n_box)
            report.checked += checked
            report.failures.extend(failures)
    return report


# -- q = 1 shadow ---------------------------------------------------------------------


def _sweep_plucas_prime(
    spec: RatioSpec, p: int, n_box: tuple[int, ...]
) -> tuple[int, list[CongruenceFailure]]:
    checked = 0
    failures: list[CongruenceFailure] = []
    at_one: dict = {}
    d = spec.dim
    for a in iter_box((p - 1,) * d):
        base = _ratio_at_one(spec, a, at_one) % p
        for n in iter_box(n_box):
            checked += 1
            point = tuple(a[i] + n[i] * p for i in range(d))
            lhs = _ratio_at_one(spec, point, at_one) % p
            rhs = base * (_ratio_at_one(spec, n, at_one) % p) % p
            if lhs != rhs:
                failures.append(
                    CongruenceFailure(p, a, n, IntPolynomial((lhs,)), IntPolynomial((rhs,)))
                )
    return checked, failures


def verify_plucas_at_one(
    spec: RatioSpec, p_max: int, n_box: Sequence[int], jobs: int = 1
) -> CongruenceReport:
    """Sweep the integer congruence Q(1; a + n p) == Q(1; a) Q(1; n) mod p.

    Runs over every prime p <= p_max. Same hypotheses and report shape as
    verify_ratio_congruence; residues are reported as constant polynomials.
    """
    n_box = tuple(n_box)
    if len(n_box) != spec.dim or any(c < 0 for c in n_box):
        raise ValueError(f"n_box {n_box} must be nonnegative of length {spec.dim}")
    _require_balanced_landau(spec, "prime congruence")
    primes = _primes_up_to(p_max)
    report = CongruenceReport(
        subject="plucas-at-one",
        ranges={"spec": spec.to_json_dict(), "p_max": p_max, "n_box": list(n_box)},
    )
    if jobs > 1 and primes:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            chunks = pool.map(
                _sweep_plucas_prime, [spec] * len(primes), primes, [n_box] * len(primes)
            )
            for checked, failures in chunks:
                report.checked += checked
                report.failures.extend(failures)
    else:
        for p in primes:
            checked, failures = _sweep_plucas_prime(spec, p, n_box)
            report.checked += checked
            report.failures.extend(failures)
    return report


# -- scaled-point identity --------------------------------------------------------------


def verify_inter2_identity(spec: RatioSpec, b: int, n_box: Sequence[int]) -> CongruenceReport:
    """Sweep Q(q; n b) == Q(1; n) modulo cyclotomic(b) over the box.

    Needs only balance and integrality (the subdomain condition plays no
    role here).
    """
    n_box = tuple(n_box)
    if len(n_box) != spec.dim or any(c < 0 for c in n_box):
        raise ValueError(f"n_box {n_box} must be nonnegative of length {spec.dim}")
    if b < 1:
        raise ValueError("b must be >= 1")
    _require_integrality(spec, "scaled-point identity")
    report = CongruenceReport(
        subject="inter2",
        ranges={"spec": spec.to_json_dict(), "b": b, "n_box": list(n_box)},
    )
    at_one: dict = {}
    for n in iter_box(n_box):
        report.checked += 1
        point = tuple(c * b for c in n)
        lhs = q_ratio_mod(spec, point, b)
        rhs = IntPolynomial((_ratio_at_one(spec, n, at_one),))
        rhs = reduce_mod_cyclotomic(rhs, b)
        if lhs != rhs:
            report.failures.append(CongruenceFailure(b, None, n, lhs, rhs))
    return report


# -- Apery-type q-analogues ----------------------------------------------------------------


@lru_cache(maxsize=None)
def apery_polynomial(family: str, t: int, n: int) -> IntPolynomial:
    """The degree-weighted Gaussian binomial sum of kind 'a' or 'b' at n.

    Kind 'a' sums q^(t k) qbinom(n, k)^2 qbinom(n+k, k); kind 'b' squares the
    last factor as well. At q = 1 these collapse to the classical integer
    sequences (catalog.apery_number_sequence is the independent route).
    """
    if family not in ("a", "b"):
        raise ValueError("family must be 'a' or 'b'")
    if t < 0 or n < 0:
        raise ValueError("t and n must be nonnegative")
    total = IntPolynomial(())
    for k in range(n + 1):
        term = q_binomial(n, k) ** 2
        mixed = q_binomial(n + k, k)
        term = term * (mixed if family == "a" else mixed * mixed)
        total = total + term.shift(t * k)
    return total


def verify_apery(family: str, t: int, b_max: int, total_max: int) -> CongruenceReport:
    """Sweep a_{m+nb} == a_m * a_n(1) modulo cyclotomic(b) for one family.

    Covers every b = 1..b_max, m = 0..b-1, and n >= 0 with m + n b <=
    total_max. The right side uses the integer-only sequence values, so the
    check crosses two independent routes to the same numbers.
    """
    if b_max < 1 or total_max < 0:
        raise ValueError("b_max must be >= 1 and total_max >= 0")
    at_one = catalog.apery_number_sequence(family, total_max)
    report = CongruenceReport(
        subject=f"apery-{family}",
        ranges={"t": t, "b_max": b_max, "total_max": total_max},
    )
    for b in range(1, b_max + 1):
        for m in range(b):
            n = 0
            while m + n * b <= total_max:
                report.checked += 1
                lhs = reduce_mod_cyclotomic(apery_polynomial(family, t, m + n * b), b)
                rhs = reduce_mod_cyclotomic(apery_polynomial(family, t, m) * at_one[n], b)
                if lhs != rhs:
                    report.failures.append(CongruenceFailure(b, (m,), (n,), lhs, rhs))
                n += 1
    return report
