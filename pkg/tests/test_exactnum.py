"""Exact scalar/polynomial arithmetic, Sturm counting, and algebraic signs."""

from fractions import Fraction

import pytest

from gibonacci.exactnum import (
    AlgebraicNumber,
    EndpointRootError,
    ExactError,
    Interval,
    Poly,
    QuadraticElement,
    algebraic_equal,
    compare_algebraic,
    decimal_str,
    format_rational,
    isolate_real_roots,
    poly_from_strings,
    poly_gcd,
    poly_to_strings,
    poly_to_text,
    rational,
    sign_at_algebraic,
    square_free_part,
    sturm_count,
)


def P(*coeffs):
    """Poly from ascending coefficients."""
    return Poly(coeffs)


class TestRationalParsing:
    def test_integer_and_fraction_literals(self):
        assert rational("5") == 5
        assert rational("-11/4") == Fraction(-11, 4)
        assert rational(7) == 7

    def test_decimals_rejected(self):
        with pytest.raises(ExactError):
            rational("2.5")
        with pytest.raises(ExactError):
            rational(0.5)

    def test_round_trip(self):
        for x in [Fraction(0), Fraction(-3, 7), Fraction(22, 4)]:
            assert rational(format_rational(x)) == x

    def test_canonical_form(self):
        x = rational("22/4")
        assert (x.numerator, x.denominator) == (11, 2)
        assert format_rational(Fraction(0)) == "0/1"


class TestDecimalStr:
    def test_exact_values(self):
        assert decimal_str(Fraction(1, 4), 10) == "0.25"
        assert decimal_str(Fraction(-3, 2), 10) == "-1.5"
        assert decimal_str(Fraction(0)) == "0"

    def test_rounding(self):
        assert decimal_str(Fraction(2, 3), 6).startswith("0.66666")
        assert decimal_str(Fraction(1, 3), 3) == "0.333"

    def test_large_and_small(self):
        assert decimal_str(Fraction(10**40), 5) == "1e40"
        assert decimal_str(Fraction(1, 10**10), 4) == "1e-10"


class TestPolyArithmetic:
    def test_additive_identity(self):
        # (x - 4) + 0 = x - 4
        assert P(-4, 1) + Poly() == P(-4, 1)

    def test_square_expansion(self):
        # (x - 2)^2 = x^2 - 4x + 4
        assert P(-2, 1) * P(-2, 1) == P(4, -4, 1)

    def test_mod_reduce_hand_division(self):
        # long division by hand: x^3 = (2x^2-11x+12)(x/2 + 11/4) + (97/4 x - 33)
        q, r = divmod(P(0, 0, 0, 1), P(12, -11, 2))
        assert q == P(Fraction(11, 4), Fraction(1, 2))
        assert r == P(-33, Fraction(97, 4))
        assert r.degree <= 1

    def test_mod_by_zero_rejected(self):
        with pytest.raises(ExactError):
            divmod(P(1, 1), Poly())

    def test_division_reassembles(self):
        a = P(3, -5, 0, 7, 2)
        b = P(-1, 4, 1)
        q, r = divmod(a, b)
        assert q * b + r == a
        assert r.degree < b.degree

    def test_eval_horner(self):
        # 1 - 7 + 14 - 7 = 1
        assert P(-7, 14, -7, 1)(1) == 1
        # p(0) is the constant term
        assert P(-7, 14, -7, 1)(0) == -7
        # 32 - 44 + 12 = 0: x = 4 kills 2x^2 - 11x + 12
        assert P(12, -11, 2)(4) == 0

    def test_trailing_zeros_stripped(self):
        assert Poly([1, 2, 0, 0]).degree == 1
        assert Poly([0, 0]).is_zero

    def test_text_rendering(self):
        assert poly_to_text(P(-7, 14, -7, 1)) == "x^3 - 7x^2 + 14x - 7"
        assert poly_to_text(Poly()) == "0"
        assert poly_to_text(P(Fraction(1, 2))) == "1/2"
        assert poly_to_text(P(1, Fraction(-1, 2))) == "-1/2x + 1"
        assert poly_to_text(P(0, -1, 0, 1), "q") == "q^3 - q"

    def test_json_round_trip(self):
        p = P(Fraction(-3, 2), 0, 7)
        assert poly_from_strings(poly_to_strings(p)) == p


class TestGcd:
    def test_common_factor(self):
        # (x-1)(x-3) and (x-3)(x+2) share x-3
        a = P(3, -4, 1)
        b = P(-6, -1, 1)
        assert poly_gcd(a, b) == P(-3, 1)

    def test_coprime(self):
        assert poly_gcd(P(-1, 1), P(-2, 1)).degree == 0

    def test_square_free_part(self):
        # (x-1)^2 (x-3) -> (x-1)(x-3) up to a constant
        p = P(-1, 1) * P(-1, 1) * P(-3, 1)
        sf = square_free_part(p)
        assert sf.degree == 2
        assert sf(1) == 0 and sf(3) == 0


class TestSturm:
    def test_two_roots_of_quadratic(self):
        # roots of x^2 - 5x + 5 are (5 +- sqrt5)/2, both inside (0, 4)
        assert sturm_count(P(5, -5, 1), Interval(Fraction(0), Fraction(4))) == 2

    def test_no_roots(self):
        assert sturm_count(P(-4, 1), Interval(Fraction(0), Fraction(3))) == 0

    def test_roots_one_and_three(self):
        assert sturm_count(P(3, -4, 1), Interval(Fraction(0), Fraction(4))) == 2

    def test_half_open_semantics(self):
        # (0, 3] includes the root at 3, (0, 2] does not reach it
        p = P(3, -4, 1)
        assert sturm_count(p, Interval(Fraction(0), Fraction(2))) == 1
        assert sturm_count(p, Interval(Fraction(2), Fraction(4))) == 1

    def test_endpoint_root_raises(self):
        with pytest.raises(EndpointRootError):
            sturm_count(P(3, -4, 1), Interval(Fraction(1), Fraction(4)))

    def test_multiple_roots_counted_once(self):
        # (x-1)^2 (x-3) has two distinct roots in (0, 4]
        p = P(-1, 1) * P(-1, 1) * P(-3, 1)
        assert sturm_count(p, Interval(Fraction(0), Fraction(4))) == 2

    def test_linear_factor_grid(self):
        roots = [Fraction(-2), Fraction(1, 3), Fraction(2), Fraction(7, 2)]
        p = Poly([1])
        for r in roots:
            p = p * P(-r, 1)
        for lo, hi, expect in [(-3, 4, 4), (0, 4, 3), (1, 3, 1), (-3, 0, 1)]:
            assert sturm_count(p, Interval(Fraction(lo), Fraction(hi))) == expect

    def test_random_products_with_known_roots(self):
        # chains hit negative leading coefficients and mid-division
        # cancellations here; counts must still match the known factorization
        import random

        rng = random.Random(1203)
        for _ in range(120):
            roots = sorted(
                {Fraction(rng.randint(-12, 12), rng.randint(1, 4)) for _ in range(rng.randint(1, 5))}
            )
            p = Poly([rng.choice([-3, -2, -1, 1, 2, 3])])
            for r in roots:
                p = p * P(-r, 1)
            if rng.random() < 0.3:
                # square one factor: the count must stay per distinct root
                p = p * P(-rng.choice(roots), 1)
            if rng.random() < 0.5:
                # attach a rootless factor to derail naive sign bookkeeping
                c = rng.randint(1, 5)
                p = p * P(c, rng.randint(-3, 3), c + 3)
            lo = Fraction(rng.randint(-15, 0), rng.randint(1, 3))
            hi = lo + Fraction(rng.randint(1, 30), rng.randint(1, 3))
            if p(lo) == 0 or p(hi) == 0:
                continue
            expect = sum(1 for r in roots if lo < r <= hi)
            assert sturm_count(p, Interval(lo, hi)) == expect


class TestIsolation:
    def test_two_isolated_roots(self):
        ivs = isolate_real_roots(P(3, -4, 1), Interval(Fraction(0), Fraction(5)))
        assert len(ivs) == 2
        assert ivs[0].lo < 1 <= ivs[0].hi
        assert ivs[1].lo < 3 <= ivs[1].hi
        assert ivs[0].hi <= ivs[1].lo

    def test_constant_has_no_roots(self):
        assert isolate_real_roots(P(5), Interval(Fraction(-9), Fraction(9))) == []

    def test_each_interval_isolates(self):
        # degree-5 with roots at 1/2, 1, 3/2, 2, 5/2: clustered on purpose
        p = Poly([1])
        for r in [Fraction(1, 2), 1, Fraction(3, 2), 2, Fraction(5, 2)]:
            p = p * P(-r, 1)
        ivs = isolate_real_roots(p, Interval(Fraction(0), Fraction(3)))
        assert len(ivs) == 5
        for iv in ivs:
            assert sturm_count(p, iv) == 1
        assert sum(sturm_count(p, iv) for iv in ivs) == sturm_count(
            p, Interval(Fraction(0), Fraction(3))
        )

    def test_multiple_root_isolated_once(self):
        # (x-1)^2 (x-3): the double root gets one isolating interval
        p = P(-1, 1) * P(-1, 1) * P(-3, 1)
        ivs = isolate_real_roots(p, Interval(Fraction(0), Fraction(4)))
        assert len(ivs) == 2
        assert ivs[0].lo < 1 <= ivs[0].hi
        assert ivs[1].lo < 3 <= ivs[1].hi

    def test_root_on_boundary_excluded_by_nudge(self):
        # endpoint roots fall outside the open reading of `within`
        p = P(0, 1) * P(-3, 1)  # roots 0 and 3 exactly on the rim
        assert isolate_real_roots(p, Interval(Fraction(0), Fraction(3))) == []
        # interior roots survive the endpoint nudging
        q = P(0, 1) * P(-1, 1) * P(-3, 1)
        ivs = isolate_real_roots(q, Interval(Fraction(0), Fraction(3)))
        assert len(ivs) == 1
        assert ivs[0].lo < 1 <= ivs[0].hi


class TestAlgebraicNumber:
    def theta_four(self):
        # largest root of 2x^2 - 11x + 12 is exactly 4 (factors (x-4)(2x-3))
        ivs = isolate_real_roots(P(12, -11, 2), Interval(Fraction(0), Fraction(10)))
        return AlgebraicNumber(P(12, -11, 2), ivs[-1])

    def test_definitional_zero(self):
        theta = self.theta_four()
        assert sign_at_algebraic(theta.defining, theta) == 0

    def test_sign_positive_case(self):
        # 2*16 - 36 + 5 = 1 > 0
        theta = self.theta_four()
        assert sign_at_algebraic(P(5, -9, 2), theta) == 1

    def test_closed_form_root_of_fib_poly(self):
        # largest root of x^2 - 4x + 3 is 3; then 9 - 9 + 1 = 1 > 0
        ivs = isolate_real_roots(P(3, -4, 1), Interval(Fraction(0), Fraction(4)))
        theta = AlgebraicNumber(P(3, -4, 1), ivs[-1])
        assert sign_at_algebraic(P(1, -3, 1), theta) == 1

    def test_rational_point_consistency(self):
        theta = AlgebraicNumber.from_rational(Fraction(7, 2))
        p = P(-3, 1)
        assert sign_at_algebraic(p, theta) == (1 if p(Fraction(7, 2)) > 0 else -1)

    def test_sign_matches_refined_evaluation(self):
        # sqrt(2): positive root of x^2 - 2
        iv = isolate_real_roots(P(-2, 0, 1), Interval(Fraction(0), Fraction(2)))[0]
        sqrt2 = AlgebraicNumber(P(-2, 0, 1), iv)
        assert sign_at_algebraic(P(-1, 1), sqrt2) == 1  # sqrt2 > 1
        assert sign_at_algebraic(P(-2, 1), sqrt2) == -1  # sqrt2 < 2
        assert sign_at_algebraic(P(-2, 0, 1), sqrt2) == 0

    def test_refinement_keeps_isolation(self):
        theta = self.theta_four()
        fine = theta.refined_below(Fraction(1, 1 << 40))
        assert fine.enclosure.width <= Fraction(1, 1 << 40)
        assert fine.enclosure.contains(Fraction(4))

    def test_compare_and_equal(self):
        p = P(3, -4, 1)  # roots 1, 3
        one, three = [AlgebraicNumber(p, iv) for iv in isolate_real_roots(p, Interval(Fraction(0), Fraction(4)))]
        assert compare_algebraic(one, three) == -1
        assert compare_algebraic(three, one) == 1
        assert not algebraic_equal(one, three)
        # same root through a different defining polynomial
        q = P(-3, 1)
        also_three = AlgebraicNumber.from_rational(Fraction(3))
        assert algebraic_equal(three, also_three)
        assert compare_algebraic(three, also_three) == 0
        assert sign_at_algebraic(q, three) == 0

    def test_decimal_rendering(self):
        iv = isolate_real_roots(P(-2, 0, 1), Interval(Fraction(0), Fraction(2)))[0]
        sqrt2 = AlgebraicNumber(P(-2, 0, 1), iv)
        assert sqrt2.decimal(12).startswith("1.41421356237")

    def test_zero_sign_never_contradicted_by_refinement(self):
        # whenever the gcd test says zero, the value must keep straddling 0:
        # refining the enclosure never yields a constant nonzero sign
        iv = isolate_real_roots(P(-2, 0, 1), Interval(Fraction(0), Fraction(2)))[0]
        sqrt2 = AlgebraicNumber(P(-2, 0, 1), iv)
        p = P(-2, 0, 1) * P(5, 3, 1)  # sqrt2 is a root of this multiple
        assert sign_at_algebraic(p, sqrt2) == 0
        cur = sqrt2
        for _ in range(60):
            cur = cur.refined()
            lo_sign = p(cur.enclosure.lo) > 0
            hi_sign = p(cur.enclosure.hi) > 0
            assert lo_sign != hi_sign or p(cur.enclosure.lo) == 0 or p(cur.enclosure.hi) == 0


class TestQuadraticElement:
    def test_ring_ops(self):
        d = Fraction(5)
        x = QuadraticElement.of(1, 2, d)   # 1 + 2 sqrt5
        y = QuadraticElement.of(-3, 1, d)  # -3 + sqrt5
        assert x + y == QuadraticElement.of(-2, 3, d)
        assert x * y == QuadraticElement.of(-3 + 2 * 5, 1 - 6, d)

    def test_inverse_and_power(self):
        d = Fraction(2)
        x = QuadraticElement.of(1, 1, d)  # 1 + sqrt2, norm -1
        assert x * x.inverse() == QuadraticElement.of(1, 0, d)
        assert x.power(2) == QuadraticElement.of(3, 2, d)
        assert x.power(0) == QuadraticElement.of(1, 0, d)

    def test_rational_part_guard(self):
        d = Fraction(2)
        x = QuadraticElement.of(3, 1, d)
        with pytest.raises(ExactError):
            x.rational_part()
        assert (x * x.conjugate()).rational_part() == 7
