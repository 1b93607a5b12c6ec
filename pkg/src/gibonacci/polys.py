"""Gibonacci arrays and their sign-alternating row polynomials.

The two-seed right-triangular array starts with seeds alpha (row 0) and beta
(row 1); every later entry is the sum of the entry directly above and the
entry one row further up and one column left.  Attaching alternating signs to
row k and reading the entries as coefficients (highest power first) gives a
degree floor(k/2) polynomial; those polynomials satisfy the three-term
recurrence

    P_k = x^((k-1) mod 2) * P_{k-1} - P_{k-2},   P_0 = alpha, P_1 = beta,

which is how they are built here.  The closed binomial form for array entries
is kept separate so tests can confront the two routes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .exactnum import ExactError, Poly, QuadraticElement, rational


@dataclass(frozen=True)
class GibParams:
    """Strictly positive rational seeds for a Gibonacci array."""

    alpha: Fraction
    beta: Fraction

    def __post_init__(self):
        object.__setattr__(self, "alpha", Fraction(self.alpha))
        object.__setattr__(self, "beta", Fraction(self.beta))
        if self.alpha <= 0 or self.beta <= 0:
            raise ExactError("seeds must be strictly positive")

    @property
    def ratio(self) -> Fraction:
        """alpha/beta, the single parameter the root geometry depends on."""
        return self.alpha / self.beta

    @classmethod
    def of(cls, alpha, beta) -> "GibParams":
        return cls(rational(alpha), rational(beta))


def binomial_entry(params: GibParams, k: int, j: int) -> Fraction:
    """Array entry by the closed binomial form C(k-j-1,j-1)a + C(k-j-1,j)b.

    The closed form starts holding at k = 1; row 0 is the seed alpha by
    definition.  Out-of-range positions are 0.
    """
    if k < 0 or j < 0 or j > k // 2:
        return Fraction(0)
    if k == 0:
        return params.alpha
    top = k - j - 1

    def choose(n_, k_):
        if k_ < 0 or k_ > n_ or n_ < 0:
            return 0
        return math.comb(n_, k_)

    return choose(top, j - 1) * params.alpha + choose(top, j) * params.beta


class GibonacciArray:
    """Rows of the two-seed triangular array, grown on demand and cached."""

    def __init__(self, params: GibParams):
        self.params = params
        self._rows = [[params.alpha], [params.beta]]

    def row(self, k: int) -> list:
        if k < 0:
            raise ExactError("row index must be nonnegative")
        while len(self._rows) <= k:
            i = len(self._rows)
            prev, prev2 = self._rows[i - 1], self._rows[i - 2]
            width = i // 2 + 1
            row = []
            for j in range(width):
                above = prev[j] if j < len(prev) else Fraction(0)
                diag = prev2[j - 1] if 0 <= j - 1 < len(prev2) else Fraction(0)
                row.append(above + diag)
            self._rows.append(row)
        return list(self._rows[k])

    def entry(self, k: int, j: int) -> Fraction:
        if k < 0 or j < 0 or j > k // 2:
            return Fraction(0)
        return self.row(k)[j]

    def row_sum(self, k: int) -> Fraction:
        return sum(self.row(k), Fraction(0))


@dataclass(frozen=True)
class SAPolynomial:
    """A sign-alternating row polynomial together with its row index."""

    k: int
    params: GibParams
    poly: Poly


@lru_cache(maxsize=4096)
def _sa_poly_cached(params: GibParams, k: int) -> Poly:
    if k == -1:
        return Poly()
    if k == 0:
        return Poly.constant(params.alpha)
    if k == 1:
        return Poly.constant(params.beta)
    prev = _sa_poly_cached(params, k - 1)
    prev2 = _sa_poly_cached(params, k - 2)
    if (k - 1) % 2 == 1:
        prev = Poly([0] + list(prev.coeffs))  # multiply by x
    return prev - prev2


def sign_alternating_poly(params: GibParams, k: int) -> SAPolynomial:
    """Row polynomial built by the fundamental three-term recurrence."""
    if k < -1:
        raise ExactError("row index must be at least -1")
    return SAPolynomial(k, params, _sa_poly_cached(params, k))


def fibonacci_decomposition_holds(params: GibParams, k: int) -> bool:
    """Check  P_k = x^((k-1) mod 2) * beta * F_{k-1} - alpha * F_{k-2},

    where F_m is the unit-seed ((1,1)) polynomial of the same family.
    """
    if k < 2:
        raise ExactError("decomposition identity needs k >= 2")
    unit = GibParams.of(1, 1)
    lhs = sign_alternating_poly(params, k).poly
    f1 = sign_alternating_poly(unit, k - 1).poly.scale(params.beta)
    if (k - 1) % 2 == 1:
        f1 = Poly([0] + list(f1.coeffs))
    f2 = sign_alternating_poly(unit, k - 2).poly.scale(params.alpha)
    return lhs == f1 - f2


@lru_cache(maxsize=4096)
def companion_poly(ratio: Fraction, k: int) -> Poly:
    """The companion sequence V_k = V_{k-1} + x V_{k-2}, V_0 = 1, V_1 = 1 + rx.

    Reversing coefficients with alternating signs maps member k-1 of this
    sequence onto the sign-alternating polynomial of row k (seed ratio r).
    """
    ratio = Fraction(ratio)
    if ratio <= 0:
        raise ExactError("seed ratio must be positive")
    if k < 0:
        raise ExactError("index must be nonnegative")
    if k == 0:
        return Poly([1])
    if k == 1:
        return Poly([1, ratio])
    return companion_poly(ratio, k - 1) + Poly([0, 1]) * companion_poly(ratio, k - 2)


def reciprocal_transform_holds(ratio: Fraction, k: int) -> bool:
    """Check that x^floor(k/2) * V_{k-1}(-1/x) equals the row-k polynomial."""
    if k < 2:
        raise ExactError("transform identity needs k >= 2")
    ratio = Fraction(ratio)
    w = companion_poly(ratio, k - 1)
    d = k // 2
    if w.degree != d:
        return False
    transformed = [Fraction(0)] * (d + 1)
    for i, c in enumerate(w.coeffs):
        transformed[d - i] = c if i % 2 == 0 else -c
    target = sign_alternating_poly(GibParams(ratio, Fraction(1)), k).poly
    return Poly(transformed) == target


@dataclass(frozen=True)
class EigenPair:
    """Eigenvalues lam, kap of the step matrix at input x, in Q(sqrt(x^2-4x)).

    They satisfy lam*kap = 1 and lam + kap = x - 2 exactly.
    """

    x: Fraction
    lam: QuadraticElement
    kap: QuadraticElement


def eigen_pair(x) -> EigenPair:
    x = Fraction(x)
    disc = x * x - 4 * x
    half = Fraction(1, 2)
    lam = QuadraticElement.of((x - 2) * half, half, disc)
    kap = QuadraticElement.of((x - 2) * half, -half, disc)
    return EigenPair(x, lam, kap)


def _rational_sqrt(x: Fraction):
    """Exact square root if x is the square of a rational, else None."""
    if x < 0:
        return None
    n, d = x.numerator, x.denominator
    rn, rd = math.isqrt(n), math.isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def binet_eval(params: GibParams, k: int, x, precision: int = 100) -> Fraction:
    """Evaluate the row-k polynomial at x through the eigenvalue closed form.

    When x^2 - 4x is a rational square the two eigenvalues are rational and
    the arithmetic stays in Q.  Otherwise the computation runs in the
    quadratic extension, where the irrational components provably cancel, so
    the returned value is exact either way (well inside any 2^-precision
    request; the argument is kept for interface stability).
    """
    if k < 0:
        raise ExactError("row index must be nonnegative")
    x = Fraction(x)
    if x == 0 or x == 4:
        raise ExactError("repeated eigenvalue; use recurrence path")
    if precision <= 0:
        raise ExactError("precision must be positive")
    disc = x * x - 4 * x
    alpha, beta = params.alpha, params.beta
    m = k // 2
    s = _rational_sqrt(disc)
    if s is not None:
        lam = (x - 2 + s) / 2
        kap = (x - 2 - s) / 2
        if k % 2 == 0:
            num = lam**m * ((kap + 1) * alpha - x * beta) - kap**m * ((lam + 1) * alpha - x * beta)
        else:
            num = lam**m * (alpha - (lam + 1) * beta) - kap**m * (alpha - (kap + 1) * beta)
        return num / (kap - lam)
    pair = eigen_pair(x)
    lam, kap = pair.lam, pair.kap
    if k % 2 == 0:
        num = lam.power(m) * ((kap + 1) * alpha - x * beta) - kap.power(m) * (
            (lam + 1) * alpha - x * beta
        )
    else:
        num = lam.power(m) * ((alpha - (lam + 1) * beta)) - kap.power(m) * (
            (alpha - (kap + 1) * beta)
        )
    value = num / (kap - lam)
    return value.rational_part()


def value_at_four(params: GibParams, k: int) -> Fraction:
    """Row polynomial evaluated at 4 via the closed linear-in-ratio form."""
    if k < 0:
        raise ExactError("row index must be nonnegative")
    ratio = params.ratio
    m = k // 2
    if k % 2 == 0:
        unit_value = -(2 * m - 1) * ratio + 4 * m
    else:
        unit_value = -m * ratio + (2 * m + 1)
    return params.beta * unit_value
