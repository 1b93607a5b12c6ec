"""Root sets, interlacing, bounds, and closed trigonometric root forms."""

from fractions import Fraction

import pytest

from gibonacci.exactnum import ExactError, Interval, Poly, sign_at_algebraic
from gibonacci.polys import GibParams
from gibonacci.roots import (
    bound_B,
    check_interlacing,
    companion_duality_holds,
    cos_pi_enclosure,
    fibonacci_closed_roots,
    interval_sqrt,
    largest_root,
    lucas_closed_roots,
    lucas_closed_roots_sine,
    match_closed_forms,
    pi_enclosure,
    refine_root_into,
    roots_of,
    sin_pi_enclosure,
    sqrt_enclosure,
)

UNIT = GibParams.of(1, 1)
LUCAS = GibParams.of(2, 1)
WIDE = GibParams.of(5, 2)


def contains_value(root, value) -> bool:
    """Exact membership test: is the algebraic root equal to this rational?"""
    return sign_at_algebraic(Poly([-Fraction(value), 1]), root) == 0


class TestBound:
    def test_unit_seed(self):
        b = bound_B(UNIT)
        assert b.value == 4 and b.regime == "ratio<=2"

    def test_wide_seed(self):
        b = bound_B(WIDE)
        assert b.value == Fraction(25, 6) and b.regime == "ratio>2"

    def test_boundary_ratio_two(self):
        b = bound_B(LUCAS)
        assert b.value == 4 and b.regime == "ratio<=2"


class TestRootSets:
    def test_unit_row_five(self):
        rs = roots_of(UNIT, 5)
        assert rs.count == 2
        assert contains_value(rs.roots[0], 1)
        assert contains_value(rs.roots[1], 3)

    def test_wide_row_five(self):
        rs = roots_of(WIDE, 5)
        assert rs.count == 2
        assert contains_value(rs.roots[0], Fraction(3, 2))
        assert contains_value(rs.roots[1], 4)

    def test_lucas_row_two(self):
        rs = roots_of(LUCAS, 2)
        assert rs.count == 1
        assert contains_value(rs.roots[0], 2)

    def test_counts_and_bound_small_grid(self):
        for params in [UNIT, LUCAS, WIDE, GibParams.of(3, 1)]:
            bound = bound_B(params).value
            for k in range(2, 16):
                rs = roots_of(params, k)
                assert rs.count == k // 2
                for r in rs.roots:
                    assert 0 <= r.enclosure.lo and r.enclosure.hi <= bound

    def test_k_below_two_rejected(self):
        with pytest.raises(ExactError):
            roots_of(UNIT, 1)


class TestLargestRoot:
    def test_rational_cases(self):
        assert contains_value(largest_root(WIDE, 5), 4)
        assert contains_value(largest_root(UNIT, 3), 2)

    def test_lucas_row_four_is_two_plus_sqrt2(self):
        r = largest_root(LUCAS, 4)
        assert r.defining == Poly([2, -4, 1])
        assert sign_at_algebraic(Poly([-2, 1]), r) == 1  # bigger than 2
        s2 = sqrt_enclosure(2, 100)
        target = Interval(2 + s2.lo - Fraction(1, 2**90), 2 + s2.hi + Fraction(1, 2**90))
        assert refine_root_into(r, target)

    def test_strictly_increasing_in_k(self):
        for params in [UNIT, WIDE]:
            prev = None
            for k in range(2, 14):
                cur = largest_root(params, k)
                if prev is not None:
                    a, b = prev, cur
                    while not a.enclosure.hi <= b.enclosure.lo:
                        a, b = a.refined(), b.refined()
                prev = cur


class TestInterlacing:
    def test_strong_offset_two(self):
        assert check_interlacing(roots_of(UNIT, 7), roots_of(UNIT, 5)) == "both-sides"

    def test_right_offset_one_singletons(self):
        assert check_interlacing(roots_of(UNIT, 3), roots_of(UNIT, 2)) == "right"

    def test_right_offset_one_quadratics(self):
        # {1, 3} against {(3-sqrt5)/2, (3+sqrt5)/2}
        assert check_interlacing(roots_of(UNIT, 5), roots_of(UNIT, 4)) == "right"

    def test_grid(self):
        for params in [UNIT, LUCAS, WIDE]:
            for k in range(2, 13):
                assert check_interlacing(roots_of(params, k + 1), roots_of(params, k)) in (
                    "both-sides",
                    "right",
                )
                assert (
                    check_interlacing(roots_of(params, k + 2), roots_of(params, k))
                    == "both-sides"
                )

    def test_mismatched_sets_rejected(self):
        with pytest.raises(ExactError):
            check_interlacing(roots_of(UNIT, 7), roots_of(UNIT, 4))
        with pytest.raises(ExactError):
            check_interlacing(roots_of(UNIT, 3), roots_of(LUCAS, 2))

    def test_shared_root_diagnostic(self):
        # a fabricated pair of sets holding the same algebraic number can
        # never separate; the refinement loop must raise, not spin
        from gibonacci.exactnum import AlgebraicNumber, isolate_real_roots
        from gibonacci.roots import RootSet

        iv = isolate_real_roots(Poly([-2, 0, 1]), Interval(Fraction(0), Fraction(2)))[0]
        sqrt2 = AlgebraicNumber(Poly([-2, 0, 1]), iv)
        fake_a = RootSet(3, UNIT, (sqrt2,))
        fake_b = RootSet(2, UNIT, (sqrt2,))
        with pytest.raises(ExactError, match="share a root"):
            check_interlacing(fake_a, fake_b)


class TestEnclosures:
    def test_pi_brackets(self):
        iv = pi_enclosure(64)
        assert iv.lo < Fraction(314159265358979323846, 10**20) < iv.hi
        assert iv.width <= Fraction(1, 2**64)

    def test_cos_known_point(self):
        # cos(pi/3) = 1/2 exactly
        iv = cos_pi_enclosure(Fraction(1, 3), 80)
        assert iv.lo <= Fraction(1, 2) <= iv.hi
        assert iv.width <= Fraction(1, 2**80)

    def test_sin_known_point(self):
        iv = sin_pi_enclosure(Fraction(1, 6), 80)
        assert iv.lo <= Fraction(1, 2) <= iv.hi

    def test_sqrt_enclosure_certified(self):
        iv = sqrt_enclosure(2, 128)
        assert iv.width <= Fraction(1, 2**128)
        assert iv.lo * iv.lo <= 2 <= iv.hi * iv.hi
        assert sqrt_enclosure(Fraction(9, 4), 50) == Interval(Fraction(3, 2), Fraction(3, 2))


class TestClosedForms:
    def test_fibonacci_row_five_values(self):
        lo_root, hi_root = fibonacci_closed_roots(5, 100)
        assert lo_root.lo <= 1 <= lo_root.hi  # 4cos^2(2pi/6) = 1
        assert hi_root.lo <= 3 <= hi_root.hi  # 4cos^2(pi/6) = 3

    def test_fibonacci_row_two(self):
        (only,) = fibonacci_closed_roots(2, 100)
        assert only.lo <= 1 <= only.hi

    def test_lucas_row_two_and_three(self):
        (two,) = lucas_closed_roots(2, 100)
        assert two.lo <= 2 <= two.hi
        (three,) = lucas_closed_roots(3, 100)
        assert three.lo <= 3 <= three.hi

    def test_lucas_odd_sine_equivalent(self):
        for k in (3, 5, 7, 9, 11):
            cos_form = lucas_closed_roots(k, 96)
            sin_form = lucas_closed_roots_sine(k, 96)
            assert len(cos_form) == len(sin_form)
            for a, b in zip(cos_form, sin_form):
                assert a.lo < b.hi and b.lo < a.hi  # same value inside both

    def test_match_small_grid(self):
        for k in range(2, 13):
            assert match_closed_forms(roots_of(UNIT, k), fibonacci_closed_roots(k))
            assert match_closed_forms(roots_of(LUCAS, k), lucas_closed_roots(k))

    def test_row_fifteen_nested_radicals(self):
        bits = 130
        s2 = sqrt_enclosure(2, bits)
        up = interval_sqrt(Interval(2 + s2.lo, 2 + s2.hi), bits)  # sqrt(2+sqrt2)
        dn = interval_sqrt(Interval(2 - s2.hi, 2 - s2.lo), bits)  # sqrt(2-sqrt2)
        values = [
            Interval(2 - up.hi, 2 - up.lo),
            Interval(2 - s2.hi, 2 - s2.lo),
            Interval(2 - dn.hi, 2 - dn.lo),
            Interval(Fraction(2), Fraction(2)),
            Interval(2 + dn.lo, 2 + dn.hi),
            Interval(2 + s2.lo, 2 + s2.hi),
            Interval(2 + up.lo, 2 + up.hi),
        ]
        rs = roots_of(UNIT, 15)
        assert rs.count == 7
        for root, val in zip(rs.roots, values):
            pad = Fraction(1, 2**120)
            target = Interval(val.lo - pad, val.hi + pad)
            assert refine_root_into(root, target)
        # and the same seven numbers match the trigonometric closed forms
        assert match_closed_forms(rs, fibonacci_closed_roots(15))


class TestCompanionDuality:
    def test_small_grid(self):
        for params in [UNIT, LUCAS, WIDE]:
            for k in range(2, 11):
                assert companion_duality_holds(params, k)
