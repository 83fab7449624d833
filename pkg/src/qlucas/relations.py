"""Exact search for algebraic relations among truncated coefficient sequences.

Given sequences y_1..y_s (power series in x known to some order, with exact
integer or Fraction coefficients), find_relations looks for polynomials
P(x, y_1..y_s), of degree at most dx in x and total degree at most dy in the
y's, with P(x, f_1(x)..f_s(x)) = 0 through the requested order. The linear
system over the monomial columns is cleared to integers row by row and solved
by fraction-free Bareiss elimination; nullspace vectors are normalized to
content 1 with positive leading coefficient in a graded monomial order with
x below y_1 below ... below y_s.

A returned candidate annihilates the data up to verified_order; only that
much is claimed. An empty result is a proof of full column rank, i.e. no
relation exists within the given degree box at this truncation. Callers are
refused (OrderTooSmall) when the system has fewer rows than columns plus a
safety margin, so "no relation" can never be an artifact of too little data.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

from .series import InsufficientTruncation

Number = Union[int, Fraction]
Monomial = tuple[int, ...]  # (i, a_1..a_s): x^i * y_1^a_1 ... y_s^a_s

#: Extra rows demanded beyond the column count before a search may run.
DEFAULT_MARGIN = 5


class OrderTooSmall(ValueError):
    """Too little data to determine the linear system."""


@dataclass(frozen=True)
class RelationCandidate:
    """A normalized integer polynomial annihilating the data to some order."""

    terms: tuple[tuple[Monomial, int], ...]  # ascending monomial order
    verified_order: int

    @property
    def num_series(self) -> int:
        return len(self.terms[0][0]) - 1 if self.terms else 0

    def coefficient_map(self) -> dict[Monomial, int]:
        return dict(self.terms)

    def to_json_dict(self) -> dict:
        return {
            "terms": [[list(mono), coeff] for mono, coeff in self.terms],
            "verified_order": self.verified_order,
        }

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for mono, coeff in reversed(self.terms):
            factors = []
            i = mono[0]
            if i == 1:
                factors.append("x")
            elif i > 1:
                factors.append(f"x^{i}")
            for j, a in enumerate(mono[1:], start=1):
                if a == 1:
                    factors.append(f"y{j}")
                elif a > 1:
                    factors.append(f"y{j}^{a}")
            mag = abs(coeff)
            body = "*".join(factors) if factors else ""
            if not body:
                body = str(mag)
            elif mag != 1:
                body = f"{mag}*{body}"
            if not parts:
                parts.append(body if coeff > 0 else f"-{body}")
            else:
                parts.append(f"+ {body}" if coeff > 0 else f"- {body}")
        return " ".join(parts)


def _monomial_key(mono: Monomial) -> tuple:
    # graded, ties by exponents of the highest variable first (x is lowest)
    i, alpha = mono[0], mono[1:]
    return (i + sum(alpha), tuple(reversed(alpha)) + (i,))


def _monomials(num_series: int, dx: int, dy: int) -> list[Monomial]:
    alphas = [
        alpha
        for alpha in itertools.product(range(dy + 1), repeat=num_series)
        if sum(alpha) <= dy
    ]
    monos = [(i,) + alpha for i in range(dx + 1) for alpha in alphas]
    monos.sort(key=_monomial_key)
    return monos


def _truncated_product(u: Sequence[Number], v: Sequence[Number], order: int) -> list[Number]:
    out = [0] * (order + 1)
    for i, ui in enumerate(u):
        if i > order:
            break
        if ui:
            for j in range(min(len(v), order - i + 1)):
                if v[j]:
                    out[i + j] += ui * v[j]
    return out


def _power_products(
    series: Sequence[Sequence[Number]], dy: int, order: int
) -> dict[tuple[int, ...], list[Number]]:
    s = len(series)
    out: dict[tuple[int, ...], list[Number]] = {}
    unit = [1] + [0] * order
    out[(0,) * s] = unit
    by_degree = sorted(
        (
            alpha
            for alpha in itertools.product(range(dy + 1), repeat=s)
            if 0 < sum(alpha) <= dy
        ),
        key=lambda a: (sum(a), a),
    )
    for alpha in by_degree:
        j = next(idx for idx, a in enumerate(alpha) if a)
        prev = alpha[:j] + (alpha[j] - 1,) + alpha[j + 1 :]
        out[alpha] = _truncated_product(out[prev], series[j], order)
    return out


def _clear_row(row: Sequence[Number]) -> list[int]:
    denom = 1
    for v in row:
        if isinstance(v, Fraction):
            denom = denom * v.denominator // math.gcd(denom, v.denominator)
    if denom == 1:
        return [int(v) for v in row]
    return [int(v * denom) for v in row]


def _bareiss_echelon(matrix: list[list[int]]) -> tuple[list[list[int]], list[tuple[int, int]]]:
    rows = [list(r) for r in matrix]
    m = len(rows)
    n = len(rows[0]) if rows else 0
    pivots: list[tuple[int, int]] = []
    prev = 1
    level = 0
    for col in range(n):
        if level >= m:
            break
        best = None
        for i in range(level, m):
            v = rows[i][col]
            if v:
                size = abs(v).bit_length()
                if best is None or size < best[0]:
                    best = (size, i)
        if best is None:
            continue
        _, pi = best
        rows[level], rows[pi] = rows[pi], rows[level]
        piv = rows[level][col]
        for i in range(level + 1, m):
            vi = rows[i][col]
            ri = rows[i]
            rl = rows[level]
            for j in range(col + 1, n):
                ri[j] = (piv * ri[j] - vi * rl[j]) // prev
            ri[col] = 0
        pivots.append((level, col))
        prev = piv
        level += 1
    return rows, pivots


def _nullspace_vector(
    rows: list[list[int]], pivots: list[tuple[int, int]], free_col: int, n: int
) -> list[Fraction]:
    x = [Fraction(0)] * n
    x[free_col] = Fraction(1)
    for r, c in reversed(pivots):
        if c > free_col:
            x[c] = Fraction(0)
            continue
        acc = Fraction(0)
        row = rows[r]
        for j in range(c + 1, n):
            if x[j]:
                acc += row[j] * x[j]
        x[c] = -acc / row[c]
    return x


def _normalize(vec: Sequence[Fraction], monomials: list[Monomial]) -> tuple[tuple[Monomial, int], ...]:
    denom = 1
    for v in vec:
        denom = denom * v.denominator // math.gcd(denom, v.denominator)
    ints = [int(v * denom) for v in vec]
    content = 0
    for v in ints:
        content = math.gcd(content, v)
    if content > 1:
        ints = [v // content for v in ints]
    lead = max(i for i, v in enumerate(ints) if v)
    if ints[lead] < 0:
        ints = [-v for v in ints]
    return tuple((monomials[i], v) for i, v in enumerate(ints) if v)


def _validate_series(series: Sequence[Sequence[Number]], order: int, err: type) -> None:
    if not series:
        raise ValueError("at least one series is required")
    for idx, f in enumerate(series):
        if len(f) < order + 1:
            raise err(
                f"series {idx} has {len(f)} coefficients, needs {order + 1}"
            )


def find_relations(
    series: Sequence[Sequence[Number]],
    dx: int,
    dy: int,
    order: int,
    margin: int = DEFAULT_MARGIN,
) -> list[RelationCandidate]:
    """All independent relations in the degree box, exact through `order`.

    Returns one normalized candidate per nullspace dimension (each free
    column of the eliminated system), in a deterministic order. An empty list
    certifies full column rank. Raises OrderTooSmall if the data or the
    requested order leaves fewer than ncols + margin equations.
    """
    if dx < 0 or dy < 0:
        raise ValueError("dx and dy must be nonnegative")
    _validate_series(series, order, OrderTooSmall)
    monomials = _monomials(len(series), dx, dy)
    ncols = len(monomials)
    if order < ncols + margin:
        raise OrderTooSmall(
            f"order {order} is too small for {ncols} columns "
            f"plus margin {margin}"
        )
    powers = _power_products(series, dy, order)
    columns = []
    for mono in monomials:
        i, alpha = mono[0], mono[1:]
        base = powers[alpha]
        columns.append([0] * i + list(base[: order + 1 - i]))
    matrix = [
        _clear_row([columns[c][r] for c in range(ncols)]) for r in range(order + 1)
    ]
    rows, pivots = _bareiss_echelon(matrix)
    pivot_cols = {c for _, c in pivots}
    out = []
    for free_col in range(ncols):
        if free_col in pivot_cols:
            continue
        vec = _nullspace_vector(rows, pivots, free_col, ncols)
        out.append(RelationCandidate(_normalize(vec, monomials), order))
    return out


def verify_relation(
    cand: RelationCandidate,
    series: Sequence[Sequence[Number]],
    order: int,
) -> bool:
    """Whether the candidate annihilates the sequences through `order`."""
    if not cand.terms:
        raise ValueError("empty candidate")
    if cand.num_series != len(series):
        raise ValueError(
            f"candidate is over {cand.num_series} series, got {len(series)}"
        )
    _validate_series(series, order, InsufficientTruncation)
    dy = max(sum(mono[1:]) for mono, _ in cand.terms)
    powers = _power_products(series, dy, order)
    residual = [0] * (order + 1)
    for mono, coeff in cand.terms:
        i, alpha = mono[0], mono[1:]
        base = powers[alpha]
        for r in range(i, order + 1):
            v = base[r - i]
            if v:
                residual[r] += coeff * v
    return all(v == 0 for v in residual)
