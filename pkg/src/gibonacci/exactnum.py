"""Exact scalar and polynomial arithmetic over the rationals.

Everything in the verified path is exact: scalars are `fractions.Fraction`
(arbitrary-precision, always in lowest terms with positive denominator),
polynomials are dense coefficient tuples of Fractions, and real algebraic
numbers are (square-free defining polynomial, isolating interval) pairs whose
isolating property is certified by a Sturm count of exactly one.

Root counting and isolation use Sturm chains with bisection.  The chains are
normalized to primitive integer coefficient vectors (positive content divided
out after each signed pseudo-remainder step) so that sign evaluation at a
rational point n/d reduces to integer arithmetic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence, Union

Rational = Fraction
RationalLike = Union[Fraction, int]


class ExactError(ValueError):
    """Base class for domain errors raised by this package."""


class EndpointRootError(ExactError):
    """An interval endpoint is a root; the caller must perturb it."""


def rational(value) -> Fraction:
    """Coerce an int, Fraction, or 'num/den' string to a Fraction.

    Decimal literals are rejected: exactness is a package-wide guarantee and
    silently converting floats would break it.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        raise ExactError("floating-point input rejected; use num/den")
    if isinstance(value, str):
        text = value.strip()
        if "." in text or "e" in text or "E" in text:
            raise ExactError(f"decimal literal rejected: {value!r}; use num/den")
        try:
            return Fraction(text)
        except (ValueError, ZeroDivisionError) as exc:
            raise ExactError(f"bad rational literal: {value!r}") from exc
    raise ExactError(f"cannot interpret {value!r} as a rational")


def format_rational(x: Fraction) -> str:
    """Serialize as 'num/den' (canonical zero is '0/1')."""
    return f"{x.numerator}/{x.denominator}"


def decimal_str(x: Fraction, digits: int = 30) -> str:
    """Round x to `digits` significant decimal digits, half-away-from-zero."""
    if x == 0:
        return "0"
    sign = "-" if x < 0 else ""
    n, d = abs(x.numerator), x.denominator
    # exponent e with 10^e <= n/d < 10^(e+1)
    e = len(str(n)) - len(str(d))
    while 10**e * d > n:
        e -= 1
    while 10 ** (e + 1) * d <= n:
        e += 1
    shift = digits - 1 - e
    if shift >= 0:
        q, r = divmod(n * 10**shift, d)
    else:
        q, r = divmod(n, d * 10**-shift)
    if 2 * r >= d * (1 if shift >= 0 else 10**-shift):
        q += 1
    mant = str(q)
    if len(mant) > digits:  # rounding overflowed, e.g. 999.. -> 1000..
        mant = mant[:digits]
        e += 1
    if 0 <= e < digits:
        int_part = mant[: e + 1]
        frac_part = mant[e + 1 :].rstrip("0")
        return sign + int_part + ("." + frac_part if frac_part else "")
    if -6 < e < 0:
        frac = ("0" * (-e - 1) + mant).rstrip("0")
        return sign + "0." + frac
    tail = mant[1:].rstrip("0")
    return sign + mant[0] + ("." + tail if tail else "") + f"e{e}"


def _sign(x) -> int:
    return (x > 0) - (x < 0)


class Poly:
    """Dense univariate polynomial with Fraction coefficients.

    coeffs[i] is the coefficient of x^i; the tuple carries no trailing zeros,
    and the zero polynomial is the empty tuple (degree -1).
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[RationalLike] = ()):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    @classmethod
    def constant(cls, c) -> "Poly":
        return cls([Fraction(c)])

    @classmethod
    def x_power(cls, n: int, c=1) -> "Poly":
        return cls([0] * n + [c])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> Fraction:
        if not self.coeffs:
            raise ExactError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __eq__(self, other):
        return isinstance(other, Poly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __neg__(self) -> "Poly":
        return Poly([-c for c in self.coeffs])

    def __add__(self, other: "Poly") -> "Poly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Poly(out)

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other: "Poly") -> "Poly":
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly()
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca:
                for j, cb in enumerate(b):
                    out[i + j] += ca * cb
        return Poly(out)

    def scale(self, c) -> "Poly":
        c = Fraction(c)
        return Poly([c * a for a in self.coeffs])

    def __divmod__(self, other: "Poly"):
        """Exact euclidean division over Q; divisor must be nonzero."""
        if other.is_zero:
            raise ExactError("division by the zero polynomial")
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return Poly(), self
        quot = [Fraction(0)] * (dq + 1)
        lead = other.leading
        for i in range(dq, -1, -1):
            c = rem[i + other.degree] / lead
            quot[i] = c
            if c:
                for j, b in enumerate(other.coeffs):
                    rem[i + j] -= c * b
        return Poly(quot), Poly(rem)

    def __mod__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[1]

    def __call__(self, x) -> Fraction:
        """Horner evaluation at a rational point."""
        x = Fraction(x)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> "Poly":
        return Poly([i * c for i, c in enumerate(self.coeffs)][1:])

    def primitive_int_coeffs(self) -> tuple:
        """Integer coefficient vector with content 1, same sign pattern."""
        if not self.coeffs:
            return ()
        den = 1
        for c in self.coeffs:
            den = den * c.denominator // math.gcd(den, c.denominator)
        ints = [int(c * den) for c in self.coeffs]
        g = 0
        for v in ints:
            g = math.gcd(g, v)
        return tuple(v // g for v in ints)

    def __repr__(self):
        return f"Poly({list(self.coeffs)!r})"

    def __str__(self):
        return poly_to_text(self)


def poly_to_text(p: Poly, var: str = "x") -> str:
    """Render like 'x^3 - 7x^2 + 14x - 7'."""
    if p.is_zero:
        return "0"
    parts = []
    for i in range(p.degree, -1, -1):
        c = p.coeffs[i]
        if c == 0:
            continue
        mag = abs(c)
        mag_s = str(mag.numerator) if mag.denominator == 1 else f"{mag.numerator}/{mag.denominator}"
        if i == 0:
            term = mag_s
        else:
            xpart = var if i == 1 else f"{var}^{i}"
            term = xpart if mag == 1 else f"{mag_s}{xpart}"
        if not parts:
            parts.append(term if c > 0 else f"-{term}")
        else:
            parts.append(f"+ {term}" if c > 0 else f"- {term}")
    return " ".join(parts)


def poly_from_strings(items: Sequence[str]) -> Poly:
    """Parse the JSON wire form: rational strings, constant term first."""
    return Poly([rational(s) for s in items])


def poly_to_strings(p: Poly) -> list:
    return [format_rational(c) for c in p.coeffs]


# ---------------------------------------------------------------------------
# polynomial gcd over Q via a primitive integer remainder sequence
# ---------------------------------------------------------------------------


def _int_content(cs: Sequence[int]) -> int:
    g = 0
    for c in cs:
        g = math.gcd(g, c)
    return g or 1


def _int_primitive(cs: Sequence[int]) -> tuple:
    g = _int_content(cs)
    return tuple(c // g for c in cs)


def _int_pseudo_rem(f: Sequence[int], g: Sequence[int]):
    """Integer pseudo-remainder: returns (lc(g)^t * f mod g, t).

    The multiplier count t is reported because intermediate cancellations can
    make it smaller than deg f - deg g + 1, and the Sturm construction needs
    the exact sign of the factor that was applied.
    """
    rem = list(f)
    lg = g[-1]
    dg = len(g) - 1
    times = 0
    while True:
        while rem and rem[-1] == 0:
            rem.pop()
        if len(rem) - 1 < dg:
            break
        shift = len(rem) - 1 - dg
        lead = rem[-1]
        rem = [c * lg for c in rem]
        times += 1
        for j, b in enumerate(g):
            rem[shift + j] -= lead * b
        rem.pop()
    return tuple(rem), times


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd over Q, computed on primitive integer parts.

    Content is divided out after every pseudo-remainder step, which keeps the
    coefficient growth of the remainder sequence polynomial rather than
    exponential.
    """
    if a.is_zero:
        return b if b.is_zero else b.scale(1 / b.leading)
    if b.is_zero:
        return a.scale(1 / a.leading)
    f = a.primitive_int_coeffs()
    g = b.primitive_int_coeffs()
    if len(f) < len(g):
        f, g = g, f
    while g:
        r, _ = _int_pseudo_rem(f, g)
        f, g = g, (_int_primitive(r) if r else ())
    p = Poly(f)
    return p.scale(1 / p.leading)


def square_free_part(p: Poly) -> Poly:
    """p divided by gcd(p, p'): same roots, all simple."""
    if p.degree < 1:
        return p
    g = poly_gcd(p, p.derivative())
    if g.degree < 1:
        return p
    q, r = divmod(p, g)
    assert r.is_zero
    return q


# ---------------------------------------------------------------------------
# Sturm chains
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Interval:
    """Closed rational interval [lo, hi] with lo <= hi."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        if self.lo > self.hi:
            raise ExactError(f"interval endpoints out of order: {self.lo} > {self.hi}")

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def contains(self, x) -> bool:
        return self.lo <= x <= self.hi

    def to_json(self) -> list:
        return [format_rational(self.lo), format_rational(self.hi)]

    @classmethod
    def from_json(cls, data) -> "Interval":
        lo, hi = data
        return cls(rational(lo), rational(hi))


def _sign_at_point(int_coeffs: Sequence[int], x: Fraction) -> int:
    """Sign of an integer-coefficient polynomial at a rational point.

    Only the integer numerator sum(c_i * n^i * d^(deg-i)) is evaluated; the
    denominator d^deg is positive and cannot change the sign.
    """
    n, d = x.numerator, x.denominator
    acc = 0
    dpow = 1
    for c in reversed(int_coeffs):
        acc = acc * n + c * dpow
        dpow *= d
    return _sign(acc)


@lru_cache(maxsize=512)
def sturm_chain(p: Poly) -> tuple:
    """Sturm chain of p as primitive integer coefficient tuples.

    Each step takes the negated signed pseudo-remainder and divides out the
    positive integer content; both operations preserve the sign-variation
    property the chain is used for.
    """
    f = p.primitive_int_coeffs()
    if len(f) <= 1:
        return (f,) if f else ()
    fp = tuple(i * c for i, c in enumerate(f))[1:]
    chain = [f, _int_primitive(fp)]
    while len(chain[-1]) > 1:
        prev, cur = chain[-2], chain[-1]
        r, times = _int_pseudo_rem(prev, cur)
        if not r:
            break
        # r = lc(cur)^times * prev mod cur; divide the sign of that factor
        # back out so the chain entry is a positive multiple of -rem(prev, cur)
        factor_sign = 1 if (cur[-1] > 0 or times % 2 == 0) else -1
        nxt = tuple(-c * factor_sign for c in r)
        chain.append(_int_primitive(nxt))
    if len(chain[-1]) == 1 and chain[-1][0] == 0:
        chain.pop()
    return tuple(chain)


def _variations(chain, x: Fraction) -> int:
    signs = [s for s in (_sign_at_point(c, x) for c in chain) if s != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def sturm_count(p: Poly, iv: Interval) -> int:
    """Number of distinct real roots of p in the half-open interval (lo, hi].

    Raises EndpointRootError if either endpoint is itself a root, in which
    case the caller should perturb the endpoint by a small rational.
    """
    if p.is_zero:
        raise ExactError("root counting needs a nonzero polynomial")
    if p.degree < 1:
        return 0
    if p(iv.lo) == 0 or p(iv.hi) == 0:
        raise EndpointRootError(f"endpoint of {iv} is a root; perturb and retry")
    chain = sturm_chain(p)
    return _variations(chain, iv.lo) - _variations(chain, iv.hi)


def _non_root_point(p: Poly, a: Fraction, b: Fraction) -> Fraction:
    """A point near the midpoint of (a, b) that is not a root of p.

    Midpoint collisions are resolved by stepping left by (b-a)/2^m for
    increasing m; p has finitely many roots so this terminates.
    """
    m = (a + b) / 2
    shrink = 2
    while p(m) == 0:
        m = (a + b) / 2 - (b - a) / 2**shrink
        shrink += 1
    return m


def isolate_real_roots(p: Poly, within: Interval) -> list:
    """Isolating intervals, one per distinct real root of p inside `within`.

    Returned intervals are half-open (lo, hi], pairwise disjoint, sorted
    ascending, and each has Sturm count exactly 1.  Endpoints of `within`
    that happen to be roots are nudged inward first, so roots exactly at the
    boundary are excluded (the callers in this package always pass open
    bounds that are provably not roots).
    """
    if p.is_zero:
        raise ExactError("cannot isolate roots of the zero polynomial")
    if p.degree < 1:
        return []
    lo, hi = within.lo, within.hi
    shrink = 2
    while p(lo) == 0:
        lo = lo + (hi - lo) / 2**shrink
        shrink += 1
    shrink = 2
    while p(hi) == 0:
        hi = hi - (hi - lo) / 2**shrink
        shrink += 1
    if lo >= hi:
        return []
    chain = sturm_chain(p)
    out = []
    stack = [(lo, hi, _variations(chain, lo), _variations(chain, hi))]
    while stack:
        a, b, va, vb = stack.pop()
        n = va - vb
        if n == 0:
            continue
        if n == 1:
            out.append(Interval(a, b))
            continue
        m = _non_root_point(p, a, b)
        vm = _variations(chain, m)
        stack.append((a, m, va, vm))
        stack.append((m, b, vm, vb))
    out.sort(key=lambda iv: iv.lo)
    return out


# ---------------------------------------------------------------------------
# real algebraic numbers
# ---------------------------------------------------------------------------


class AlgebraicNumber:
    """A real algebraic number: square-free defining polynomial + enclosure.

    The enclosure either contains exactly one (simple) root of `defining`
    with endpoints that are not roots, or is a degenerate point [r, r] when
    the number is rational.  All operations return new values.
    """

    __slots__ = ("defining", "enclosure")

    def __init__(self, defining: Poly, enclosure: Interval, _checked=False):
        if not _checked:
            if enclosure.lo == enclosure.hi:
                if defining(enclosure.lo) != 0:
                    raise ExactError("point enclosure is not a root of the defining polynomial")
            else:
                if sturm_count(defining, enclosure) != 1:
                    raise ExactError("enclosure does not isolate exactly one root")
        object.__setattr__(self, "defining", defining)
        object.__setattr__(self, "enclosure", enclosure)

    def __setattr__(self, name, value):
        raise AttributeError("AlgebraicNumber is immutable")

    @classmethod
    def from_rational(cls, r) -> "AlgebraicNumber":
        r = Fraction(r)
        return cls(Poly([-r, 1]), Interval(r, r), _checked=True)

    @property
    def is_rational(self) -> bool:
        return self.enclosure.lo == self.enclosure.hi

    @property
    def rational_value(self) -> Fraction:
        if not self.is_rational:
            raise ExactError("not a rational point")
        return self.enclosure.lo

    def refined(self) -> "AlgebraicNumber":
        """Halve the enclosure by sign bisection (may collapse to a point)."""
        if self.is_rational:
            return self
        a, b = self.enclosure.lo, self.enclosure.hi
        m = (a + b) / 2
        fm = self.defining(m)
        if fm == 0:
            return AlgebraicNumber(self.defining, Interval(m, m), _checked=True)
        if _sign(self.defining(a)) != _sign(fm):
            return AlgebraicNumber(self.defining, Interval(a, m), _checked=True)
        return AlgebraicNumber(self.defining, Interval(m, b), _checked=True)

    def refined_below(self, width) -> "AlgebraicNumber":
        width = Fraction(width)
        cur = self
        while cur.enclosure.width > width:
            cur = cur.refined()
        return cur

    def decimal(self, digits: int = 30) -> str:
        cur = self.refined_below(Fraction(1, 10 ** (digits + 2)))
        return decimal_str(cur.enclosure.mid, digits)

    def to_json(self) -> dict:
        return {
            "defining": poly_to_strings(self.defining),
            "enclosure": self.enclosure.to_json(),
        }

    def __repr__(self):
        return f"AlgebraicNumber({self.defining!r}, [{self.enclosure.lo}, {self.enclosure.hi}])"


def sign_at_algebraic(p: Poly, theta: AlgebraicNumber) -> int:
    """Exact sign of p at the algebraic point theta: -1, 0, or +1.

    Zero is decided exactly: theta is a root of p iff gcd(p, theta.defining)
    still has theta as a root, which a Sturm count over the enclosure settles.
    Otherwise the enclosure is refined until p has constant sign across it.
    """
    if p.is_zero:
        return 0
    if theta.is_rational:
        return _sign(p(theta.rational_value))
    g = poly_gcd(p, theta.defining)
    if g.degree >= 1 and sturm_count(g, theta.enclosure) == 1:
        return 0
    cur = theta
    while True:
        iv = cur.enclosure
        if cur.is_rational:
            return _sign(p(cur.rational_value))
        try:
            inside = sturm_count(p, iv)
            lo_sign = _sign(p(iv.lo))
        except EndpointRootError:
            cur = cur.refined()
            continue
        if inside == 0 and lo_sign != 0:
            return lo_sign
        cur = cur.refined()


def algebraic_equal(x: AlgebraicNumber, y: AlgebraicNumber) -> bool:
    """Exact equality of two algebraic numbers."""
    if x.is_rational and y.is_rational:
        return x.rational_value == y.rational_value
    if x.is_rational:
        return sign_at_algebraic(Poly([-x.rational_value, 1]), y) == 0
    if y.is_rational:
        return sign_at_algebraic(Poly([-y.rational_value, 1]), x) == 0
    g = poly_gcd(x.defining, y.defining)
    if g.degree < 1:
        return False
    try:
        if sturm_count(g, x.enclosure) != 1 or sturm_count(g, y.enclosure) != 1:
            return False
    except EndpointRootError:
        return algebraic_equal(x.refined(), y.refined())
    # Both numbers are roots of g; they are equal iff their enclosures can
    # never be separated, i.e. the union keeps holding a single root of g.
    cx, cy = x, y
    while True:
        if cx.enclosure.hi < cy.enclosure.lo or cy.enclosure.hi < cx.enclosure.lo:
            return False
        hull = Interval(min(cx.enclosure.lo, cy.enclosure.lo), max(cx.enclosure.hi, cy.enclosure.hi))
        try:
            n = sturm_count(g, hull)
        except EndpointRootError:
            cx, cy = cx.refined(), cy.refined()
            continue
        if n == 1:
            return True
        if n >= 2:
            return False
        cx, cy = cx.refined(), cy.refined()


def compare_algebraic(x: AlgebraicNumber, y: AlgebraicNumber) -> int:
    """-1, 0, +1 ordering; refines enclosures until they separate.

    A non-point enclosure holds its root strictly inside (the endpoints are
    never roots), so touching endpoints still decide the order.
    """
    if algebraic_equal(x, y):
        return 0
    cx, cy = x, y
    while True:
        if cx.is_rational and cy.is_rational:
            return -1 if cx.rational_value < cy.rational_value else 1
        # At least one enclosure is a proper interval, whose root is strictly
        # interior, so touching endpoints already separate the two numbers.
        if cx.enclosure.hi <= cy.enclosure.lo:
            return -1
        if cy.enclosure.hi <= cx.enclosure.lo:
            return 1
        cx, cy = cx.refined(), cy.refined()


# ---------------------------------------------------------------------------
# quadratic field elements a + b*sqrt(disc)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class QuadraticElement:
    """Element a + b*sqrt(disc) of Q(sqrt(disc)), disc a fixed rational.

    Supports the ring operations needed for Binet-type evaluation; division
    is by rationals or by invertible elements via the conjugate.
    """

    a: Fraction
    b: Fraction
    disc: Fraction

    @classmethod
    def of(cls, a, b, disc) -> "QuadraticElement":
        return cls(Fraction(a), Fraction(b), Fraction(disc))

    def _check(self, other: "QuadraticElement"):
        if self.disc != other.disc:
            raise ExactError("mixed quadratic fields")

    def __add__(self, other):
        other = self._coerce(other)
        return QuadraticElement(self.a + other.a, self.b + other.b, self.disc)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        return QuadraticElement(self.a - other.a, self.b - other.b, self.disc)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __neg__(self):
        return QuadraticElement(-self.a, -self.b, self.disc)

    def __mul__(self, other):
        other = self._coerce(other)
        return QuadraticElement(
            self.a * other.a + self.b * other.b * self.disc,
            self.a * other.b + self.b * other.a,
            self.disc,
        )

    __rmul__ = __mul__

    def _coerce(self, other) -> "QuadraticElement":
        if isinstance(other, QuadraticElement):
            self._check(other)
            return other
        return QuadraticElement(Fraction(other), Fraction(0), self.disc)

    def conjugate(self) -> "QuadraticElement":
        return QuadraticElement(self.a, -self.b, self.disc)

    def norm(self) -> Fraction:
        return self.a * self.a - self.b * self.b * self.disc

    def inverse(self) -> "QuadraticElement":
        n = self.norm()
        if n == 0:
            raise ExactError("element is not invertible")
        return QuadraticElement(self.a / n, -self.b / n, self.disc)

    def __truediv__(self, other):
        other = self._coerce(other)
        return self * other.inverse()

    def power(self, n: int) -> "QuadraticElement":
        if n < 0:
            return self.inverse().power(-n)
        result = QuadraticElement(Fraction(1), Fraction(0), self.disc)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    @property
    def is_rational(self) -> bool:
        return self.b == 0 or self.disc == 0

    def rational_part(self) -> Fraction:
        if self.disc == 0:
            return self.a
        if self.b != 0:
            raise ExactError("element has an irrational component")
        return self.a
