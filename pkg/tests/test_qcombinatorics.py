"""qcombinatorics tests: frozen small values, dual-route agreement, properties."""

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from qlucas import catalog
from qlucas.intpoly import IntPolynomial, NotDivisible, cyclotomic, divide_exact, reduce_mod_cyclotomic
from qlucas.qcombinatorics import (
    NegativeExponent,
    RatioSpec,
    _cyclotomic_exponents,
    _delta_floor,
    q_binomial,
    q_factorial,
    q_integer,
    q_ratio,
    q_ratio_at_one,
    q_ratio_box,
    q_ratio_cyclotomic,
    q_ratio_mod,
    ratio_degree,
)

P = IntPolynomial

CENTRAL = catalog.central_binomial_spec()
APERY = catalog.apery_spec()
INVERSE = catalog.inverse_central_spec()


class TestBasics:
    def test_q_integer(self):
        assert q_integer(0) == P(())
        assert q_integer(1) == P((1,))
        assert q_integer(3) == P((1, 1, 1))
        with pytest.raises(ValueError):
            q_integer(-1)

    def test_q_factorial_frozen(self):
        assert q_factorial(0) == P((1,))
        assert q_factorial(1) == P((1,))
        # [3]! = (1+q)(1+q+q^2)
        assert q_factorial(3) == P((1, 2, 2, 1))
        assert q_factorial(5).eval_at_one() == 120

    def test_q_binomial_frozen(self):
        assert q_binomial(2, 1) == P((1, 1))
        assert q_binomial(4, 2) == P((1, 1, 2, 1, 1))
        assert q_binomial(5, 0) == P((1,))
        assert q_binomial(3, 4) == P(())
        assert q_binomial(3, -1) == P(())
        # alternating sum vanishes for the central column at even height
        assert q_binomial(6, 3).evaluate(-1) == 0

    def test_q_binomial_against_factorials(self):
        for n in range(13):
            for k in range(n + 1):
                direct = divide_exact(q_factorial(n), q_factorial(k) * q_factorial(n - k))
                assert q_binomial(n, k) == direct, (n, k)

    def test_q_binomial_symmetry_and_positivity(self):
        for n in range(21):
            for k in range(n + 1):
                p = q_binomial(n, k)
                assert p == q_binomial(n, n - k)
                assert p.degree == k * (n - k)
                assert all(c > 0 for c in p.coeffs)
                assert p.coeffs == p.coeffs[::-1]  # palindromic

    def test_q_binomial_eval_at_one(self):
        import math

        for n in range(61):
            for k in range(n + 1):
                assert q_binomial(n, k).eval_at_one() == math.comb(n, k)

    @given(st.integers(1, 14), st.integers(0, 14))
    def test_q_binomial_pascal(self, n, k):
        # Gaussian Pascal rule, an independent route to the same values.
        lhs = q_binomial(n, k)
        rhs = q_binomial(n - 1, k - 1) + q_binomial(n - 1, k).shift(k) if k >= 1 else q_binomial(n - 1, 0)
        assert lhs == rhs


class TestRatioSpec:
    def test_validation(self):
        with pytest.raises(ValueError):
            RatioSpec(0, (), ())
        with pytest.raises(ValueError):
            RatioSpec(2, ((1,),), ())
        with pytest.raises(ValueError):
            RatioSpec(1, ((-1,),), ())

    def test_json_round_trip(self):
        data = APERY.to_json_dict()
        assert data == {"dim": 2, "e": [[2, 1], [1, 1]], "f": [[1, 0], [1, 0], [1, 0], [0, 1], [0, 1]]}
        assert RatioSpec.from_json_dict(data) == APERY

    def test_json_rejects_bad_shapes(self):
        with pytest.raises(ValueError):
            RatioSpec.from_json_dict({"dim": 1, "e": []})
        with pytest.raises(ValueError):
            RatioSpec.from_json_dict({"dim": 1, "e": [], "f": [], "extra": 1})
        with pytest.raises(ValueError):
            RatioSpec.from_json_dict([1, 2])

    def test_balance(self):
        assert CENTRAL.balanced
        assert APERY.balanced
        assert APERY.total_e == (3, 2)
        assert not RatioSpec(1, ((1,),), ()).balanced

    def test_distinct_nonzero_vectors(self):
        assert APERY.distinct_nonzero_vectors() == ((0, 1), (1, 0), (1, 1), (2, 1))
        assert RatioSpec(1, ((0,),), ((0,),)).distinct_nonzero_vectors() == ()


class TestQRatio:
    def test_central_is_binomial(self):
        for n in range(9):
            assert q_ratio(CENTRAL, (n,)) == q_binomial(2 * n, n), n

    def test_frozen_values(self):
        assert q_ratio(APERY, (0, 0)) == P((1,))
        # (2+1)! (1+1)! / (1 1 1 1 1) at n=(1,1): [3]! [2]! = (1+2q+2q^2+q^3)(1+q)
        assert q_ratio(APERY, (1, 1)) == P((1, 3, 4, 3, 1))

    def test_not_divisible(self):
        with pytest.raises(NotDivisible):
            q_ratio(INVERSE, (1,))

    def test_empty_denominator_is_factorial(self):
        spec = RatioSpec(1, ((1,),), ())
        for n in range(7):
            assert q_ratio(spec, (n,)) == q_factorial(n)

    def test_point_validation(self):
        with pytest.raises(ValueError):
            q_ratio(CENTRAL, (1, 2))
        with pytest.raises(ValueError):
            q_ratio(CENTRAL, (-1,))


class TestQRatioAtOne:
    def test_values(self):
        assert q_ratio_at_one(CENTRAL, (3,)) == 20
        assert q_ratio_at_one(APERY, (1, 1)) == 12
        assert q_ratio_at_one(APERY, (0, 0)) == 1

    def test_matches_eval_at_one(self):
        for n1 in range(4):
            for n2 in range(4):
                assert q_ratio_at_one(APERY, (n1, n2)) == q_ratio(APERY, (n1, n2)).eval_at_one()

    def test_non_integer(self):
        with pytest.raises(NotDivisible):
            q_ratio_at_one(INVERSE, (1,))


class TestCyclotomicRoute:
    def test_central_n2_exponents(self):
        # floor(2/2) - 2*floor(1/2) = 1 - 0... careful: vectors are (2) and (1,1):
        # b=2: floor(4/2) - 2*floor(2/2) = 2 - 2 = 0; b=3 and b=4 give 1.
        assert _delta_floor(CENTRAL, (2,), 2) == 0
        assert _delta_floor(CENTRAL, (2,), 3) == 1
        assert _delta_floor(CENTRAL, (2,), 4) == 1
        assert _cyclotomic_exponents(CENTRAL, (2,)) == [(3, 1), (4, 1)]
        prod = cyclotomic(3) * cyclotomic(4)
        assert prod == q_binomial(4, 2)
        assert q_ratio_cyclotomic(CENTRAL, (2,)) == q_binomial(4, 2)

    def test_matches_direct_route(self):
        for n in range(13):
            assert q_ratio_cyclotomic(CENTRAL, (n,)) == q_ratio(CENTRAL, (n,))
        for n1 in range(5):
            for n2 in range(5):
                assert q_ratio_cyclotomic(APERY, (n1, n2)) == q_ratio(APERY, (n1, n2))

    def test_negative_exponent_witness(self):
        with pytest.raises(NegativeExponent) as exc:
            q_ratio_cyclotomic(INVERSE, (1,))
        assert exc.value.modulus == 2
        assert exc.value.exponent == -1

    def test_unbalanced_factorial(self):
        spec = RatioSpec(1, ((1,),), ())
        for n in range(2, 9):
            assert q_ratio_cyclotomic(spec, (n,)) == q_factorial(n)


class TestRatioDegree:
    def test_matches_actual_degree(self):
        for n in range(1, 8):
            assert ratio_degree(CENTRAL, (n,)) == q_ratio(CENTRAL, (n,)).degree == n * n
        for pt in [(1, 0), (2, 3), (4, 4)]:
            assert ratio_degree(APERY, pt) == q_ratio(APERY, pt).degree

    def test_negative_for_inverse(self):
        assert ratio_degree(INVERSE, (1,)) < 0


class TestQRatioMod:
    def test_matches_reduction_below_threshold(self):
        for b in range(1, 9):
            for n in (1, 5, 12):
                assert q_ratio_mod(CENTRAL, (n,), b) == reduce_mod_cyclotomic(q_ratio(CENTRAL, (n,)), b)

    def test_residue_path_agrees(self):
        # Force the residue-product path with threshold 0 and compare.
        for b in (2, 3, 5, 7, 12):
            for n in (4, 9, 16):
                fast = q_ratio_mod(CENTRAL, (n,), b, degree_threshold=0)
                slow = reduce_mod_cyclotomic(q_ratio(CENTRAL, (n,)), b)
                assert fast == slow, (b, n)
            for pt in [(2, 1), (3, 3), (5, 2)]:
                fast = q_ratio_mod(APERY, pt, b, degree_threshold=0)
                slow = reduce_mod_cyclotomic(q_ratio(APERY, pt), b)
                assert fast == slow, (b, pt)

    def test_default_dispatch_straddles_threshold(self):
        # deg = n^2: 25 stays on the direct path, 100 takes the residue path.
        for n in (5, 10, 40):
            for b in (2, 7, 12):
                assert q_ratio_mod(CENTRAL, (n,), b) == reduce_mod_cyclotomic(
                    q_ratio(CENTRAL, (n,)), b
                ), (n, b)

    def test_b_one_is_integer_value(self):
        assert q_ratio_mod(CENTRAL, (6,), 1) == P((924,))

    def test_bad_modulus(self):
        with pytest.raises(ValueError):
            q_ratio_mod(CENTRAL, (2,), 0)


class TestQRatioBox:
    def test_matches_pointwise(self):
        box = q_ratio_box(APERY, (3, 3))
        assert len(box) == 16
        for pt, val in box.items():
            assert val == q_ratio(APERY, pt), pt
        line = q_ratio_box(CENTRAL, (6,))
        for n in range(7):
            assert line[(n,)] == q_binomial(2 * n, n)

    def test_failure_propagates(self):
        with pytest.raises(NotDivisible):
            q_ratio_box(INVERSE, (2,))

    def test_cap_validation(self):
        with pytest.raises(ValueError):
            q_ratio_box(APERY, (3,))


class TestCatalog:
    def test_builtin_specs(self):
        assert catalog.builtin_spec("central") == CENTRAL
        assert catalog.builtin_spec("central:3") == RatioSpec(1, ((2,),) * 3, ((1,),) * 6)
        assert catalog.builtin_spec("apery") == APERY
        assert catalog.builtin_spec("inverse-central") == INVERSE
        assert catalog.builtin_spec("binom:2") == RatioSpec(
            2, ((1, 1), (1, 1)), ((1, 0), (1, 0), (0, 1), (0, 1))
        )
        with pytest.raises(ValueError):
            catalog.builtin_spec("nope")
        with pytest.raises(ValueError):
            catalog.builtin_spec("apery:2")
        with pytest.raises(ValueError):
            catalog.builtin_spec("central:x")

    def test_sequences(self):
        assert catalog.central_power_sequence(1, 3) == [1, 2, 6, 20]
        assert catalog.apery_number_sequence("a", 4) == [1, 3, 19, 147, 1251]
        assert catalog.apery_number_sequence("b", 3) == [1, 5, 73, 1445]
        assert catalog.factorial_sequence(4) == [1, 1, 2, 6, 24]
        assert catalog.geometric_sequence(2) == [1, 1, 1]
        half = Fraction(1, 2)
        f1 = catalog.gaussian_central_sequence(1, 2, half)
        assert f1[0] == 1 and f1[1] == Fraction(3, 2)
        assert catalog.gaussian_central_sequence(2, 5, 1) == catalog.central_power_sequence(2, 5)

    def test_builtin_sequence_names(self):
        assert catalog.builtin_sequence("g2", 2) == [1, 4, 36]
        assert catalog.builtin_sequence("apery-a", 2) == [1, 3, 19]
        assert catalog.builtin_sequence("f1", 1, Fraction(1, 2)) == [1, Fraction(3, 2)]
        with pytest.raises(ValueError):
            catalog.builtin_sequence("g0", 3)
        with pytest.raises(ValueError):
            catalog.builtin_sequence("h1", 3)
