"""Certified real roots of sign-alternating Gibonacci polynomials.

Root sets are isolated with Sturm bisection inside (0, B) where B is the
exact rational bound 4 (seed ratio <= 2) or ratio^2/(ratio-1) (ratio > 2).
Interlacing between consecutive root sets is decided by refining isolating
intervals until the two sets separate; no floating point is involved.

The closed trigonometric root forms of the unit-seed and (2,1)-seed families
are handled as high-precision rational enclosures: pi comes from a Machin
arctangent combination with an alternating-series error bound, cosine from a
Taylor sum with a Lagrange remainder, and square roots from integer isqrt
with directed rounding.  Enclosures are matched to isolating intervals by
containment after refinement, never by equality of approximations.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .exactnum import (
    AlgebraicNumber,
    EndpointRootError,
    ExactError,
    Interval,
    isolate_real_roots,
    square_free_part,
    sturm_count,
)
from .polys import GibParams, companion_poly, sign_alternating_poly

DEFAULT_ENCLOSURE_BITS = 128


@dataclass(frozen=True)
class RootBound:
    """Exact supremum of the positive roots, with the regime that set it."""

    value: Fraction
    regime: str  # "ratio<=2" or "ratio>2"


def bound_B(params: GibParams) -> RootBound:
    """4 when alpha/beta <= 2, else (alpha/beta)^2/(alpha/beta - 1)."""
    r = params.ratio
    if r <= 2:
        return RootBound(Fraction(4), "ratio<=2")
    return RootBound(r * r / (r - 1), "ratio>2")


@dataclass(frozen=True)
class RootSet:
    """All positive real roots of row k, ascending, each certified isolated."""

    k: int
    params: GibParams
    roots: tuple

    @property
    def count(self) -> int:
        return len(self.roots)


@lru_cache(maxsize=1024)
def roots_of(params: GibParams, k: int) -> RootSet:
    """Isolate the floor(k/2) distinct positive roots of the row-k polynomial."""
    if k < 2:
        raise ExactError("root sets are defined for k >= 2")
    p = sign_alternating_poly(params, k).poly
    defining = square_free_part(p)
    bound = bound_B(params).value
    window = Interval(Fraction(0), bound)
    intervals = isolate_real_roots(defining, window)
    expected = k // 2
    if len(intervals) != expected:
        raise ExactError(
            f"isolated {len(intervals)} roots in (0, {bound}) but expected {expected}"
        )
    if sturm_count(defining, window) != expected:
        raise ExactError("window count disagrees with isolation")
    roots = [AlgebraicNumber(defining, iv, _checked=True) for iv in intervals]
    # enclosures strictly inside (0, bound): only the rim intervals can touch
    while not roots[0].is_rational and roots[0].enclosure.lo <= 0:
        roots[0] = roots[0].refined()
    while not roots[-1].is_rational and roots[-1].enclosure.hi >= bound:
        roots[-1] = roots[-1].refined()
    return RootSet(k, params, tuple(roots))


def largest_root(params: GibParams, k: int) -> AlgebraicNumber:
    """The maximal element of the row-k root set."""
    return roots_of(params, k).roots[-1]


def _overlaps(x: Interval, y: Interval) -> bool:
    # enclosure roots are strictly interior, so touching endpoints separate
    return x.lo < y.hi and y.lo < x.hi


def _separate(a_roots, b_roots, max_rounds: int = 512):
    """Refine two enclosure lists until no interval crosses between the lists."""
    a = list(a_roots)
    b = list(b_roots)
    changed = True
    while changed:
        changed = False
        for i in range(len(a)):
            for j in range(len(b)):
                rounds = 0
                while _overlaps(a[i].enclosure, b[j].enclosure):
                    a[i] = a[i].refined()
                    b[j] = b[j].refined()
                    changed = True
                    rounds += 1
                    if rounds > max_rounds:
                        raise ExactError(
                            "enclosures refuse to separate; the two sets share a root"
                        )
    return a, b


def check_interlacing(a: RootSet, b: RootSet) -> str:
    """Classify how root set `a` interlaces root set `b`.

    Returns "both-sides" (a has one more root and they strictly alternate
    starting and ending with a), "right" (equal sizes, alternating with a's
    roots on the right), or "none".
    """
    if a.params != b.params:
        raise ExactError("root sets come from different seed pairs")
    if a.k not in (b.k + 1, b.k + 2):
        raise ExactError("interlacing is checked for row offsets 1 and 2")
    ra, rb = _separate(a.roots, b.roots)
    # separated enclosures order lexicographically by (lo, hi): a point [p, p]
    # precedes a proper interval (p, q] whose root is strictly interior
    merged = [((r.enclosure.lo, r.enclosure.hi), "a") for r in ra] + [
        ((r.enclosure.lo, r.enclosure.hi), "b") for r in rb
    ]
    merged.sort()
    pattern = "".join(tag for _, tag in merged)
    if len(rb) == len(ra) - 1 and pattern == "ab" * len(rb) + "a":
        return "both-sides"
    if len(rb) == len(ra) and pattern == "ba" * len(ra):
        return "right"
    return "none"


# ---------------------------------------------------------------------------
# directed-rounding enclosures: sqrt, pi, cos
# ---------------------------------------------------------------------------


def sqrt_enclosure(x, bits: int = DEFAULT_ENCLOSURE_BITS) -> Interval:
    """Rational interval of width <= 2^-bits containing sqrt(x), x >= 0."""
    x = Fraction(x)
    if x < 0:
        raise ExactError("square root of a negative rational")
    if x == 0:
        return Interval(Fraction(0), Fraction(0))
    n, d = x.numerator, x.denominator
    scaled = n * d << (2 * bits)
    r = math.isqrt(scaled)
    lo = Fraction(r, d << bits)
    if r * r == scaled:
        return Interval(lo, lo)
    return Interval(lo, Fraction(r + 1, d << bits))


def interval_sqrt(iv: Interval, bits: int = DEFAULT_ENCLOSURE_BITS) -> Interval:
    """Outer enclosure of sqrt over a nonnegative interval."""
    return Interval(sqrt_enclosure(iv.lo, bits).lo, sqrt_enclosure(iv.hi, bits).hi)


def _arctan_inv_enclosure(x: int, bits: int) -> Interval:
    """Enclosure of arctan(1/x) for integer x >= 2 (alternating series)."""
    target = Fraction(1, 1 << bits)
    total = Fraction(0)
    n = 0
    while True:
        term = Fraction(1, (2 * n + 1) * x ** (2 * n + 1))
        if term < target:
            # partial sums bracket the limit within the first omitted term
            return Interval(total - term, total + term)
        total += term if n % 2 == 0 else -term
        n += 1


@lru_cache(maxsize=64)
def pi_enclosure(bits: int = DEFAULT_ENCLOSURE_BITS) -> Interval:
    """Machin: pi = 16 arctan(1/5) - 4 arctan(1/239), outward rounded."""
    a = _arctan_inv_enclosure(5, bits + 8)
    b = _arctan_inv_enclosure(239, bits + 8)
    return Interval(16 * a.lo - 4 * b.hi, 16 * a.hi - 4 * b.lo)


def _cos_point_enclosure(x: Fraction, bits: int) -> Interval:
    """Taylor enclosure of cos at a rational point, |x| <= 2."""
    target = Fraction(1, 1 << bits)
    x2 = x * x
    total = Fraction(1)
    term = Fraction(1)
    n = 0
    while True:
        n += 1
        term = term * x2 / ((2 * n - 1) * (2 * n))
        # Lagrange remainder after n terms is at most the next term's magnitude
        if term < target:
            return Interval(total - term, total + term)
        total += term if n % 2 == 0 else -term


@lru_cache(maxsize=100_000)
def cos_pi_enclosure(t: Fraction, bits: int = DEFAULT_ENCLOSURE_BITS) -> Interval:
    """Enclosure of cos(t*pi) for rational t in [0, 1/2], width <= 2^-bits."""
    t = Fraction(t)
    if not 0 <= t <= Fraction(1, 2):
        raise ExactError("argument must lie in [0, 1/2] turns of pi")
    if t == 0:
        return Interval(Fraction(1), Fraction(1))
    work = bits + 16
    while True:
        pi_iv = pi_enclosure(work)
        theta_lo, theta_hi = t * pi_iv.lo, t * pi_iv.hi
        # cos is decreasing on [0, pi], and theta_hi < pi here
        lo = _cos_point_enclosure(theta_hi, work).lo
        hi = _cos_point_enclosure(theta_lo, work).hi
        if hi - lo <= Fraction(1, 1 << bits):
            return Interval(lo, hi)
        work *= 2


def sin_pi_enclosure(t: Fraction, bits: int = DEFAULT_ENCLOSURE_BITS) -> Interval:
    """Enclosure of sin(t*pi) for rational t in [0, 1/2]."""
    return cos_pi_enclosure(Fraction(1, 2) - Fraction(t), bits)


def _four_cos_sq(t: Fraction, bits: int) -> Interval:
    """Enclosure of 4 cos^2(t*pi) of width <= 2^-bits, t in [0, 1/2]."""
    work = bits + 8
    while True:
        c = cos_pi_enclosure(t, work)
        lo = max(c.lo, Fraction(0))
        iv = Interval(4 * lo * lo, 4 * c.hi * c.hi)
        if iv.width <= Fraction(1, 1 << bits):
            return iv
        work *= 2


def fibonacci_closed_roots(k: int, bits: int = DEFAULT_ENCLOSURE_BITS) -> list:
    """Enclosures of 4cos^2(j*pi/(k+1)), j = 1..floor(k/2), ascending."""
    if k < 2:
        raise ExactError("closed root forms start at k = 2")
    return [_four_cos_sq(Fraction(j, k + 1), bits) for j in range(k // 2, 0, -1)]


def lucas_closed_roots(k: int, bits: int = DEFAULT_ENCLOSURE_BITS) -> list:
    """Enclosures of the (2,1)-seed roots 4cos^2(j*pi/k - pi/2^(r+1)), ascending.

    Here k = 2^r * d with d odd and j ranges over (d + 2l - 1)/2 for
    l = 1..floor(k/2); all the angles land in (0, pi/2).
    """
    if k < 2:
        raise ExactError("closed root forms start at k = 2")
    r = 0
    d = k
    while d % 2 == 0:
        d //= 2
        r += 1
    out = []
    for l in range(k // 2, 0, -1):
        j = Fraction(d + 2 * l - 1, 2)
        t = j / k - Fraction(1, 2 ** (r + 1))
        out.append(_four_cos_sq(t, bits))
    return out


def lucas_closed_roots_sine(k: int, bits: int = DEFAULT_ENCLOSURE_BITS) -> list:
    """Odd-k re-expression 4sin^2(j*pi/k), j = 1..floor(k/2), ascending."""
    if k < 2 or k % 2 == 0:
        raise ExactError("the sine form applies to odd k >= 3")
    out = []
    for j in range(1, k // 2 + 1):
        s = sin_pi_enclosure(Fraction(j, k), bits + 8)
        lo = max(s.lo, Fraction(0))
        out.append(Interval(4 * lo * lo, 4 * s.hi * s.hi))
    return out


def refine_root_into(root: AlgebraicNumber, target: Interval) -> bool:
    """Refine an isolating interval until it sits inside `target` (or proves
    it never will).  Returns True when the root's value lies in target."""
    cur = root
    while True:
        e = cur.enclosure
        if target.lo <= e.lo and e.hi <= target.hi:
            return True
        if e.hi <= target.lo or e.lo >= target.hi:
            return False
        cur = cur.refined()


def match_closed_forms(rootset: RootSet, enclosures: list) -> bool:
    """Each closed-form enclosure must capture exactly its isolated root."""
    if len(enclosures) != rootset.count:
        return False
    return all(refine_root_into(r, iv) for r, iv in zip(rootset.roots, enclosures))


def companion_duality_holds(params: GibParams, k: int) -> bool:
    """Roots of the companion polynomial of index k-1 are exactly -1/zeta
    over the row-k root set, verified by Sturm counts on mapped intervals."""
    rootset = roots_of(params, k)
    w = companion_poly(params.ratio, k - 1)
    if w.degree != k // 2:
        return False
    for root in rootset.roots:
        cur = root
        hit = None
        while hit is None:
            if cur.is_rational:
                hit = w(Fraction(-1) / cur.rational_value) == 0
                break
            if cur.enclosure.lo <= 0:
                cur = cur.refined()
                continue
            lo, hi = cur.enclosure.lo, cur.enclosure.hi
            image = Interval(Fraction(-1) / lo, Fraction(-1) / hi)
            try:
                n = sturm_count(w, image)
            except EndpointRootError:
                cur = cur.refined()
                continue
            if n <= 1:
                hit = n == 1
                break
            cur = cur.refined()
        if not hit:
            return False
    return True
