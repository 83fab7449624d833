import random
from fractions import Fraction

import pytest

from qlucas.catalog import central_power_sequence, geometric_sequence
from qlucas.relations import (
    OrderTooSmall,
    RelationCandidate,
    _bareiss_echelon,
    _monomials,
    _nullspace_vector,
    find_relations,
    verify_relation,
)
from qlucas.series import InsufficientTruncation


def fraction_kernel(matrix):
    # reduced row echelon over Fraction, then one special solution per free column
    m, n = len(matrix), len(matrix[0])
    rows = [[Fraction(v) for v in r] for r in matrix]
    pivots = []
    level = 0
    for col in range(n):
        pr = next((i for i in range(level, m) if rows[i][col]), None)
        if pr is None:
            continue
        rows[level], rows[pr] = rows[pr], rows[level]
        pv = rows[level][col]
        rows[level] = [v / pv for v in rows[level]]
        for i in range(m):
            if i != level and rows[i][col]:
                f = rows[i][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[level])]
        pivots.append((level, col))
        level += 1
        if level == m:
            break
    pivot_cols = {c for _, c in pivots}
    basis = {}
    for fc in range(n):
        if fc in pivot_cols:
            continue
        v = [Fraction(0)] * n
        v[fc] = Fraction(1)
        for r, c in pivots:
            if c < fc:
                v[c] = -rows[r][fc]
        basis[fc] = v
    return pivot_cols, basis


class TestKernel:
    @pytest.mark.parametrize("seed,m,n", [(1, 8, 6), (2, 6, 9), (3, 10, 10)])
    def test_matches_fraction_oracle(self, seed, m, n):
        rng = random.Random(seed)
        matrix = [[rng.randint(-9, 9) for _ in range(n)] for _ in range(m)]
        rows, pivots = _bareiss_echelon(matrix)
        pivot_cols = {c for _, c in pivots}
        oracle_pivots, oracle_basis = fraction_kernel(matrix)
        assert pivot_cols == oracle_pivots
        for fc in range(n):
            if fc in pivot_cols:
                continue
            vec = _nullspace_vector(rows, pivots, fc, n)
            assert vec == oracle_basis[fc]

    def test_forced_rank_deficiency(self):
        rng = random.Random(7)
        base = [[rng.randint(-9, 9) for _ in range(4)] for _ in range(7)]
        matrix = [
            r + [r[0] + r[1], 2 * r[2] - r[3], r[0]] for r in base
        ]
        rows, pivots = _bareiss_echelon(matrix)
        pivot_cols = {c for _, c in pivots}
        oracle_pivots, oracle_basis = fraction_kernel(matrix)
        assert pivot_cols == oracle_pivots
        assert len(pivot_cols) <= 4
        for fc in oracle_basis:
            assert _nullspace_vector(rows, pivots, fc, 7) == oracle_basis[fc]


class TestMonomialOrder:
    def test_two_series_order(self):
        monos = _monomials(2, 1, 1)
        # graded, x below y1 below y2
        assert monos == [
            (0, 0, 0),
            (1, 0, 0),
            (0, 1, 0),
            (0, 0, 1),
            (1, 1, 0),
            (1, 0, 1),
        ]

    def test_counts(self):
        assert len(_monomials(2, 4, 4)) == 5 * 15
        assert len(_monomials(1, 1, 2)) == 6


class TestFindRelations:
    def test_geometric_recovery(self):
        data = [geometric_sequence(40)]
        found = find_relations(data, dx=1, dy=1, order=20)
        assert len(found) == 1
        cand = found[0]
        assert cand.coefficient_map() == {(0, 0): 1, (0, 1): -1, (1, 1): 1}
        assert cand.verified_order == 20
        assert verify_relation(cand, data, 20)
        assert verify_relation(cand, data, 40)
        assert str(cand) == "x*y1 - y1 + 1"

    def test_central_binomial_recovery(self):
        data = [central_power_sequence(1, 64)]
        found = find_relations(data, dx=1, dy=2, order=30)
        assert len(found) == 1
        cand = found[0]
        assert cand.coefficient_map() == {(0, 0): 1, (0, 2): -1, (1, 2): 4}
        assert verify_relation(cand, data, 30)
        assert verify_relation(cand, data, 60)

    def test_mutated_candidate_fails(self):
        data = [central_power_sequence(1, 40)]
        bad = RelationCandidate(
            terms=(((0, 0), 1), ((0, 2), -1), ((1, 2), 5)), verified_order=30
        )
        assert not verify_relation(bad, data, 30)

    def test_independent_pair_has_no_relation(self):
        data = [central_power_sequence(2, 41), central_power_sequence(3, 41)]
        assert find_relations(data, dx=2, dy=2, order=40) == []

    def test_fraction_data_cleared(self):
        half = [Fraction(1, 2) ** n for n in range(30)]
        found = find_relations([half], dx=1, dy=1, order=15)
        assert len(found) == 1
        assert found[0].coefficient_map() == {(0, 0): 2, (0, 1): -2, (1, 1): 1}

    def test_normalization_is_primitive_and_positive(self):
        doubled = [2 * v for v in geometric_sequence(30)]
        found = find_relations([doubled], dx=1, dy=1, order=15)
        assert len(found) == 1
        coeffs = [c for _, c in found[0].terms]
        lead = found[0].terms[-1][1]
        assert lead > 0
        g = 0
        for c in coeffs:
            g = __import__("math").gcd(g, c)
        assert g == 1

    def test_determinism(self):
        data = [central_power_sequence(1, 40)]
        a = find_relations(data, dx=1, dy=2, order=30)
        b = find_relations(data, dx=1, dy=2, order=30)
        assert a == b


class TestValidation:
    def test_order_too_small_for_columns(self):
        data = [geometric_sequence(40)]
        # 6 columns plus margin 5 demands order at least 11
        with pytest.raises(OrderTooSmall):
            find_relations(data, dx=1, dy=2, order=10)
        find_relations(data, dx=1, dy=2, order=11)

    def test_short_data_raises(self):
        with pytest.raises(OrderTooSmall):
            find_relations([geometric_sequence(10)], dx=1, dy=1, order=20)

    def test_margin_override(self):
        data = [geometric_sequence(40)]
        with pytest.raises(OrderTooSmall):
            find_relations(data, dx=1, dy=2, order=10, margin=5)
        assert find_relations(data, dx=1, dy=2, order=10, margin=4)

    def test_verify_short_data_raises(self):
        cand = RelationCandidate(
            terms=(((0, 0), 1), ((0, 1), -1), ((1, 1), 1)), verified_order=20
        )
        with pytest.raises(InsufficientTruncation):
            verify_relation(cand, [geometric_sequence(10)], 20)

    def test_verify_series_count_mismatch(self):
        cand = RelationCandidate(
            terms=(((0, 0), 1), ((0, 1), -1), ((1, 1), 1)), verified_order=20
        )
        with pytest.raises(ValueError):
            verify_relation(cand, [geometric_sequence(30)] * 2, 20)

    def test_negative_degrees_rejected(self):
        with pytest.raises(ValueError):
            find_relations([geometric_sequence(40)], dx=-1, dy=1, order=20)


class TestJson:
    def test_round_trip_shape(self):
        data = [geometric_sequence(40)]
        cand = find_relations(data, dx=1, dy=1, order=20)[0]
        blob = cand.to_json_dict()
        assert blob == {
            "terms": [[[0, 0], 1], [[0, 1], -1], [[1, 1], 1]],
            "verified_order": 20,
        }
