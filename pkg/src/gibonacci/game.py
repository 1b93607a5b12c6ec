"""Two-node seeded numbers game with exact arithmetic.

Node values live in one of three worlds, all exact:

  * plain rationals, when the product of the two multipliers is rational;
  * the quotient ring Q[x]/(defining) attached to a chosen largest root,
    when the multiplier product equals that (typically irrational) root;
  * linear forms c_a*a + c_b*b over formal nonnegative start values, used to
    verify whole families of games at once.

Sign decisions are never numeric guesses: rationals compare directly, ring
elements go through the Sturm-backed sign of a polynomial at an algebraic
point, and linear forms are signed when both coefficients agree (a mixed
form means the outcome genuinely depends on the start pair, which callers
treat as an error).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence, Union

from .exactnum import (
    AlgebraicNumber,
    ExactError,
    Poly,
    format_rational,
    sign_at_algebraic,
)
from .polys import GibParams
from .roots import bound_B, largest_root

NODE1 = "g1"
NODE2 = "g2"
NODES = (NODE1, NODE2)


class IndeterminateSign(ExactError):
    """A symbolic value's sign depends on the specific start pair."""


class NumberRing:
    """Arithmetic in Q[x]/(defining) with a designated real root of defining.

    The defining polynomial is square-free but need not be irreducible; sign
    queries are therefore answered at the designated root rather than by ring
    representation.
    """

    def __init__(self, theta: AlgebraicNumber):
        self.theta = theta
        self.defining = theta.defining

    def element(self, poly: Poly) -> "RingElement":
        return RingElement(self, poly % self.defining)

    def from_rational(self, r) -> "RingElement":
        return RingElement(self, Poly.constant(Fraction(r)))

    def generator(self) -> "RingElement":
        """The residue class of x, i.e. the designated root itself."""
        return self.element(Poly([0, 1]))

    def __repr__(self):
        return f"NumberRing({self.defining!r})"


@dataclass(frozen=True)
class RingElement:
    ring: NumberRing
    poly: Poly

    def _coerce(self, other) -> "RingElement":
        if isinstance(other, RingElement):
            if other.ring is not self.ring and other.ring.defining != self.ring.defining:
                raise ExactError("elements of different rings")
            return other
        return RingElement(self.ring, Poly.constant(Fraction(other)))

    def __add__(self, other):
        other = self._coerce(other)
        return RingElement(self.ring, self.poly + other.poly)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        return RingElement(self.ring, self.poly - other.poly)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __neg__(self):
        return RingElement(self.ring, -self.poly)

    def __mul__(self, other):
        other = self._coerce(other)
        return self.ring.element(self.poly * other.poly)

    __rmul__ = __mul__

    def scale(self, c) -> "RingElement":
        return RingElement(self.ring, self.poly.scale(Fraction(c)))

    def sign(self) -> int:
        return sign_at_algebraic(self.poly, self.ring.theta)

    @property
    def is_zero(self) -> bool:
        return self.poly.is_zero

    def decimal(self, digits: int = 30) -> str:
        # rendering only: the defining root is boxed far tighter than the
        # requested digits, so evaluating at the box midpoint is enough
        theta = self.ring.theta.refined_below(Fraction(1, 10 ** (digits + 6)))
        from .exactnum import decimal_str

        return decimal_str(self.poly(theta.enclosure.mid), digits)

    def to_json(self):
        return {"coeffs": [format_rational(c) for c in self.poly.coeffs]}


Scalar = Union[Fraction, RingElement]


@dataclass(frozen=True)
class LinearForm:
    """c_a * a + c_b * b over formal start values a, b."""

    ca: Scalar
    cb: Scalar

    def __add__(self, other: "LinearForm") -> "LinearForm":
        return LinearForm(_scalar_add(self.ca, other.ca), _scalar_add(self.cb, other.cb))

    def __neg__(self) -> "LinearForm":
        return LinearForm(_scalar_neg(self.ca), _scalar_neg(self.cb))

    def scaled(self, c: Scalar) -> "LinearForm":
        return LinearForm(_scalar_mul(c, self.ca), _scalar_mul(c, self.cb))


Value = Union[Fraction, RingElement, LinearForm]


def _scalar_add(x: Scalar, y: Scalar) -> Scalar:
    return x + y


def _scalar_neg(x: Scalar) -> Scalar:
    return -x


def _scalar_mul(x: Scalar, y: Scalar) -> Scalar:
    return x * y


def scalar_sign(x: Scalar) -> int:
    if isinstance(x, RingElement):
        return x.sign()
    return (x > 0) - (x < 0)


def value_sign(v: Value) -> int:
    """Sign of a node value; for linear forms, the sign valid for every
    strongly dominant start pair (raises when the coefficients disagree)."""
    if isinstance(v, LinearForm):
        sa, sb = scalar_sign(v.ca), scalar_sign(v.cb)
        if sa == 0 and sb == 0:
            return 0
        if sa >= 0 and sb >= 0:
            return 1
        if sa <= 0 and sb <= 0:
            return -1
        raise IndeterminateSign("sign depends on the start pair (mixed coefficients)")
    return scalar_sign(v)


def _neg(v: Value) -> Value:
    return -v


def _add(u: Value, v: Value) -> Value:
    if isinstance(u, LinearForm) != isinstance(v, LinearForm):
        raise ExactError("cannot mix symbolic and concrete node values")
    return u + v


def _scale(c: Scalar, v: Value) -> Value:
    if isinstance(v, LinearForm):
        return v.scaled(c)
    return _scalar_mul(c, v)


def eval_poly_at_scalar(p: Poly, s: Scalar) -> Scalar:
    """Horner evaluation of a rational polynomial at a rational or ring point."""
    acc: Scalar = Fraction(0)
    for c in reversed(p.coeffs):
        acc = _scalar_add(_scalar_mul(acc, s), c)
    return acc


# ---------------------------------------------------------------------------
# configuration and state
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GameConfig:
    """Seeds (alpha, beta) plus the two positive firing multipliers p and q."""

    params: GibParams
    p: Fraction
    q: Scalar

    def __post_init__(self):
        object.__setattr__(self, "p", Fraction(self.p))
        if self.p <= 0:
            raise ExactError("multiplier p must be positive")
        if scalar_sign(self.q) <= 0:
            raise ExactError("multiplier q must be positive")

    @classmethod
    def rational(cls, params: GibParams, p, q) -> "GameConfig":
        return cls(params, Fraction(p), Fraction(q))

    @classmethod
    def at_largest_root(cls, params: GibParams, k: int, p=1) -> "GameConfig":
        """Config with p*q pinned exactly to the largest root of row k."""
        p = Fraction(p)
        theta = largest_root(params, k)
        if theta.is_rational:
            return cls(params, p, theta.rational_value / p)
        ring = NumberRing(theta)
        return cls(params, p, ring.generator().scale(1 / p))

    @property
    def pq(self) -> Scalar:
        return _scalar_mul(Fraction(self.p), self.q)

    def g_hat(self, upto: int) -> list:
        """[g_hat_{-1}, g_hat_0, ..., g_hat_upto]: row values at x = p*q.

        Index l lives at position l + 1.  g_hat_{-1} is alpha - beta.
        """
        alpha, beta = self.params.alpha, self.params.beta
        x = self.pq
        out: list = [alpha - beta, alpha, beta]
        for l in range(2, upto + 1):
            prev, prev2 = out[-1], out[-2]
            term = _scalar_mul(x, prev) if l % 2 == 0 else prev
            out.append(_scalar_add(term, _scalar_neg(prev2)))
        return out[: upto + 2]


@dataclass(frozen=True)
class GameState:
    u: Value
    v: Value
    moves_made: int
    initial_done: bool


@dataclass(frozen=True)
class Firing:
    node: str
    u: Value
    v: Value


@dataclass
class GameTrace:
    config: GameConfig
    initial: tuple
    firings: list = field(default_factory=list)
    outcome: str = "exceeded-budget"  # "terminated" | "diverges-certified" | "exceeded-budget"

    @property
    def moves(self) -> int:
        return len(self.firings)

    @property
    def final(self) -> tuple:
        if not self.firings:
            return self.initial
        last = self.firings[-1]
        return (last.u, last.v)


# ---------------------------------------------------------------------------
# firing rules
# ---------------------------------------------------------------------------


def _check_node(node: str):
    if node not in NODES:
        raise ExactError(f"unknown node {node!r}; use {NODE1} or {NODE2}")


def fire(state: GameState, node: str, config: GameConfig) -> GameState:
    """Ordinary firing: g1 sends (u,v) to (-u, pu+v) and needs u > 0;
    g2 sends (u,v) to (u+qv, -v) and needs v > 0."""
    _check_node(node)
    if not state.initial_done:
        raise ExactError("the opening move must use the seeded initial firing")
    if node == NODE1:
        s = value_sign(state.u)
        if s <= 0:
            raise ExactError(f"illegal firing: node {NODE1} value has sign {s}")
        new_u = _neg(state.u)
        new_v = _add(_scale(config.p, state.u), state.v)
    else:
        s = value_sign(state.v)
        if s <= 0:
            raise ExactError(f"illegal firing: node {NODE2} value has sign {s}")
        new_u = _add(state.u, _scale(config.q, state.v))
        new_v = _neg(state.v)
    return GameState(new_u, new_v, state.moves_made + 1, True)


def _seeded_transition(a: Value, b: Value, node: str, config: GameConfig):
    alpha, beta = config.params.alpha, config.params.beta
    p, q = Fraction(config.p), config.q
    if node == NODE1:
        new_u = _neg(_add(_scale(alpha, a), _scale(_scalar_mul(q, alpha - beta), b)))
        new_v = _add(_scale(p * beta, a), _scale(alpha, b))
    else:
        new_u = _add(_scale(alpha, a), _scale(_scalar_mul(q, beta), b))
        new_v = _neg(_add(_scale(p * (alpha - beta), a), _scale(alpha, b)))
    return new_u, new_v


def seeded_fire(a, b, node: str, config: GameConfig) -> GameState:
    """The modified opening move that injects the seeds into play.

    Firing g1 first requires a > 0 and firing g2 first requires b > 0,
    mirroring the ordinary legality rule on the fired coordinate.
    """
    _check_node(node)
    a, b = Fraction(a), Fraction(b)
    if a < 0 or b < 0:
        raise ExactError("start pair must be dominant (both coordinates >= 0)")
    if a == 0 and b == 0:
        raise ExactError("start pair must be nonzero")
    if node == NODE1 and a == 0:
        raise ExactError("seeded firing of g1 needs a > 0; open with g2 instead")
    if node == NODE2 and b == 0:
        raise ExactError("seeded firing of g2 needs b > 0; open with g1 instead")
    new_u, new_v = _seeded_transition(a, b, node, config)
    return GameState(new_u, new_v, 1, True)


def seeded_fire_symbolic(node: str, config: GameConfig) -> GameState:
    """Opening move over formal coordinates (a, b), both treated as positive."""
    _check_node(node)
    one, zero = Fraction(1), Fraction(0)
    a = LinearForm(one, zero)
    b = LinearForm(zero, one)
    new_u, new_v = _seeded_transition(a, b, node, config)
    return GameState(new_u, new_v, 1, True)


# ---------------------------------------------------------------------------
# play
# ---------------------------------------------------------------------------


def _legal_nodes(state: GameState) -> list:
    out = []
    if value_sign(state.u) > 0:
        out.append(NODE1)
    if value_sign(state.v) > 0:
        out.append(NODE2)
    return out


def _pick(legal: Sequence[str], strategy, last: str, move_index: int) -> str:
    if isinstance(strategy, (list, tuple)):
        if move_index >= len(strategy) + 1:
            raise ExactError("script ran out of moves")
        choice = strategy[move_index - 1]
        if choice not in legal:
            raise ExactError(f"scripted move {choice!r} is illegal here")
        return choice
    if strategy == "greedy-g1":
        return NODE1 if NODE1 in legal else legal[0]
    if strategy == "greedy-g2":
        return NODE2 if NODE2 in legal else legal[0]
    if strategy == "alternate":
        other = NODE2 if last == NODE1 else NODE1
        return other if other in legal else legal[0]
    raise ExactError(f"unknown strategy {strategy!r}")


def _certify_divergence(config: GameConfig, budget: int) -> bool:
    """True when pq >= B and every row value at pq up to the budget is positive."""
    bound = bound_B(config.params).value
    gap = _scalar_add(config.pq, -bound)
    if scalar_sign(gap) < 0:
        return False
    return all(scalar_sign(g) > 0 for g in config.g_hat(budget)[1:])


def _run(trace: GameTrace, state: GameState, config: GameConfig, strategy, budget: int, last: str) -> GameTrace:
    while True:
        legal = _legal_nodes(state)
        if not legal:
            trace.outcome = "terminated"
            return trace
        if state.moves_made >= budget:
            trace.outcome = (
                "diverges-certified" if _certify_divergence(config, budget) else "exceeded-budget"
            )
            return trace
        node = _pick(legal, strategy, last, state.moves_made)
        state = fire(state, node, config)
        trace.firings.append(Firing(node, state.u, state.v))
        last = node


def play(a, b, first_node: str, config: GameConfig, strategy="alternate", budget: int = 64) -> GameTrace:
    """Seeded opening move, then legal firings under a strategy.

    Outcome is "terminated" when no legal move remains, "diverges-certified"
    when the budget runs out but pq >= B certifies divergence analytically,
    and "exceeded-budget" otherwise.
    """
    if budget <= 0:
        raise ExactError("budget must be positive")
    state = seeded_fire(a, b, first_node, config)
    trace = GameTrace(config, (Fraction(a), Fraction(b)))
    trace.firings.append(Firing(first_node, state.u, state.v))
    return _run(trace, state, config, strategy, budget, first_node)


def play_symbolic(first_node: str, config: GameConfig, strategy="alternate", budget: int = 64) -> GameTrace:
    """Play with (a, b) as formal coordinates of a strongly dominant pair."""
    if budget <= 0:
        raise ExactError("budget must be positive")
    state = seeded_fire_symbolic(first_node, config)
    one, zero = Fraction(1), Fraction(0)
    trace = GameTrace(config, (LinearForm(one, zero), LinearForm(zero, one)))
    trace.firings.append(Firing(first_node, state.u, state.v))
    return _run(trace, state, config, strategy, budget, first_node)


# ---------------------------------------------------------------------------
# classification and predictions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Classification:
    regime: str  # "all-diverge" | "all-terminate"
    strongly_convergent: bool
    k_if_root: Optional[int]


def _locate(config: GameConfig):
    """(first k >= 2 with row value at pq not positive, its sign)."""
    alpha, beta = config.params.alpha, config.params.beta
    x = config.pq
    prev2: Scalar = alpha
    prev: Scalar = beta
    k = 1
    while True:
        k += 1
        term = _scalar_mul(x, prev) if k % 2 == 0 else prev
        cur = _scalar_add(term, _scalar_neg(prev2))
        s = scalar_sign(cur)
        if s <= 0:
            return k, s
        prev2, prev = prev, cur


def classify(config: GameConfig) -> Classification:
    """Divergence/termination regime plus strong-convergence status.

    pq at or above the bound B diverges (strongly convergent by convention);
    below B everything terminates, strong convergence holding exactly when
    pq is the largest root of some row, located by scanning row values at pq
    until the first non-positive sign.
    """
    bound = bound_B(config.params).value
    gap = _scalar_add(config.pq, -bound)
    if scalar_sign(gap) >= 0:
        return Classification("all-diverge", True, None)
    k, s = _locate(config)
    if s == 0:
        return Classification("all-terminate", True, k)
    return Classification("all-terminate", False, None)


def predicted_moves(config: GameConfig, a, b, first_node: str) -> int:
    """Exact move count from the threshold analysis, without playing.

    At pq equal to a largest root: k+1 moves for strongly dominant pairs and
    k otherwise.  Strictly between consecutive largest roots (bracket index
    j), the count is j or j+1 depending on which side of the proof threshold
    the start ratio falls.
    """
    _check_node(first_node)
    a, b = Fraction(a), Fraction(b)
    if a < 0 or b < 0 or (a == 0 and b == 0):
        raise ExactError("start pair must be nonzero dominant")
    cls = classify(config)
    if cls.regime == "all-diverge":
        raise ExactError("no games terminate for this configuration")
    if cls.k_if_root is not None:
        k = cls.k_if_root
        return k + 1 if (a > 0 and b > 0) else k
    j, _ = _locate(config)
    gh = config.g_hat(j)
    gj, gj1 = gh[j + 1], gh[j]  # row j and row j-1 values at pq
    p, q = Fraction(config.p), config.q
    if first_node == NODE1:
        if a == 0:
            raise ExactError("seeded firing of g1 needs a > 0")
        if j % 2 == 0:
            margin = _scalar_add(_scalar_mul(_scalar_neg(gj), a), _scalar_neg(_scalar_mul(q, _scalar_mul(gj1, b))))
        else:
            margin = _scalar_add(_scalar_mul(_scalar_neg(gj), p * a), _scalar_neg(_scalar_mul(gj1, b)))
    else:
        if b == 0:
            raise ExactError("seeded firing of g2 needs b > 0")
        if j % 2 == 0:
            margin = _scalar_add(_scalar_mul(_scalar_neg(gj), b), _scalar_neg(_scalar_mul(p, _scalar_mul(gj1, a))))
        else:
            margin = _scalar_add(_scalar_mul(_scalar_neg(gj), _scalar_mul(q, b)), _scalar_neg(_scalar_mul(gj1, a)))
    return j if scalar_sign(margin) >= 0 else j + 1


def terminal_numbers(config: GameConfig, a, b):
    """The guaranteed final pair when pq equals the largest root of row k.

    Row parity selects the displayed form; its twin (via the identity that
    row k+1 and row k-1 values at the root are negatives) is equal in the
    quotient ring and is checked by the test suite.
    """
    cls = classify(config)
    if cls.k_if_root is None:
        raise ExactError("terminal formulas need pq equal to a largest root")
    k = cls.k_if_root
    a, b = Fraction(a), Fraction(b)
    gh = config.g_hat(k + 1)
    g_km1, g_kp1 = gh[k], gh[k + 2]
    p, q = Fraction(config.p), config.q
    if k % 2 == 0:
        final_u = _scalar_mul(q, _scalar_mul(g_kp1, b))
        final_v = _scalar_neg(_scalar_mul(p, _scalar_mul(g_km1, a)))
    else:
        final_u = _scalar_neg(_scalar_mul(g_km1, a))
        final_v = _scalar_mul(g_kp1, b)
    return final_u, final_v


# ---------------------------------------------------------------------------
# serialization helpers for traces
# ---------------------------------------------------------------------------


def value_to_json(v: Value):
    if isinstance(v, LinearForm):
        return {"a_coeff": value_to_json(v.ca), "b_coeff": value_to_json(v.cb)}
    if isinstance(v, RingElement):
        return v.to_json()
    return format_rational(v)


def value_to_text(v: Value, digits: int = 30) -> str:
    from .exactnum import decimal_str, poly_to_text

    if isinstance(v, LinearForm):
        return f"({value_to_text(v.ca)})*a + ({value_to_text(v.cb)})*b"
    if isinstance(v, RingElement):
        return f"{poly_to_text(v.poly, 't')} ~ {v.decimal(12)}"
    return f"{format_rational(v)} = {decimal_str(v, digits)}"
