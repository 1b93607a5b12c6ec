"""Desk-scale verification suites behind the `verify` CLI command.

Each check covers one acceptance-grade claim and returns a CheckResult; the
named suites bundle them per module.  Everything runs exact arithmetic; the
only tolerances are the enclosure widths that the closed-form root checks
use, and those are certified outward roundings, not float guesses.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .exactnum import Interval, Poly
from .game import (
    NODE1,
    NODE2,
    Classification,
    GameConfig,
    LinearForm,
    RingElement,
    classify,
    play,
    play_symbolic,
    predicted_moves,
    terminal_numbers,
)
from .polys import (
    GibonacciArray,
    GibParams,
    binet_eval,
    binomial_entry,
    eigen_pair,
    fibonacci_decomposition_holds,
    reciprocal_transform_holds,
    sign_alternating_poly,
    value_at_four,
)
from .posets import (
    build_poset,
    check_lattice,
    count_by_formula,
    count_by_inclusion_exclusion,
    is_connected,
    rank_generating_function,
    triangle_row,
    verify_identity_suite,
)
from .roots import (
    bound_B,
    check_interlacing,
    companion_duality_holds,
    fibonacci_closed_roots,
    interval_sqrt,
    lucas_closed_roots,
    match_closed_forms,
    refine_root_into,
    roots_of,
    sqrt_enclosure,
)

UNIT = GibParams.of(1, 1)
LUCAS = GibParams.of(2, 1)

ROOT_GEOMETRY_SEEDS = [(1, 1), (2, 1), (5, 2), (3, 1), (7, 2)]

FIB_ROWS = [
    [1], [1], [1, 1], [1, 2], [1, 3, 1], [1, 4, 3],
    [1, 5, 6, 1], [1, 6, 10, 4], [1, 7, 15, 10, 1], [1, 8, 21, 20, 5],
]
LUCAS_ROWS = [
    [2], [1], [1, 2], [1, 3], [1, 4, 2], [1, 5, 5],
    [1, 6, 9, 2], [1, 7, 14, 7], [1, 8, 20, 16, 2], [1, 9, 27, 30, 9],
]
LUCAS_ROW_SEVEN_POLY = Poly([-7, 14, -7, 1])
UNIT_ROW_FIFTEEN_POLY = Poly([-8, 84, -252, 330, -220, 78, -14, 1])
FIGURE_RGF = Poly([1, 3, 6, 6, 8, 8, 6, 6, 3, 1])
TRIANGLE_34_ROWS = {
    0: [3],
    1: [1, 1, 1, 1],
    2: [1, 2, 3, 1, 3, 2, 1],
    3: [1, 3, 6, 6, 8, 8, 6, 6, 3, 1],
}


@dataclass
class CheckResult:
    name: str
    ok: bool = True
    details: list = field(default_factory=list)

    def fail(self, message: str):
        self.ok = False
        if len(self.details) < 12:
            self.details.append(message)

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        return f"{status}  {self.name}"


def check_array_fixtures() -> CheckResult:
    """Rows 0-9 of the two integer triangles, and the symbolic triangle via
    the closed binomial form for five rational seed pairs."""
    res = CheckResult("array-fixtures")
    for params, rows in ((UNIT, FIB_ROWS), (LUCAS, LUCAS_ROWS)):
        arr = GibonacciArray(params)
        for k, expected in enumerate(rows):
            if arr.row(k) != expected:
                res.fail(f"row {k} of seeds {params} is {arr.row(k)}, wanted {expected}")
    pairs = [(1, 1), (2, 1), (5, 2), (Fraction(7, 3), Fraction(1, 2)), (3, 4)]
    for a, b in pairs:
        params = GibParams.of(a, b)
        arr = GibonacciArray(params)
        for k in range(10):
            row = arr.row(k)
            closed = (
                [params.alpha]
                if k == 0
                else [binomial_entry(params, k, j) for j in range(k // 2 + 1)]
            )
            if row != closed:
                res.fail(f"closed form mismatch at seeds ({a},{b}), row {k}")
    return res


def check_polynomial_fixtures() -> CheckResult:
    """The two printed row polynomials, exact coefficient equality."""
    res = CheckResult("polynomial-fixtures")
    if sign_alternating_poly(LUCAS, 7).poly != LUCAS_ROW_SEVEN_POLY:
        res.fail("row 7 of seeds (2,1) mismatch")
    if sign_alternating_poly(UNIT, 15).poly != UNIT_ROW_FIFTEEN_POLY:
        res.fail("row 15 of seeds (1,1) mismatch")
    return res


def check_root_geometry(k_max: int = 40) -> CheckResult:
    """Root count, bound membership, interlacing both offsets, and strictly
    increasing largest roots for the five seed pairs."""
    res = CheckResult("root-geometry")
    for a, b in ROOT_GEOMETRY_SEEDS:
        params = GibParams.of(a, b)
        bound = bound_B(params).value
        sets = {k: roots_of(params, k) for k in range(2, k_max + 3)}
        for k in range(2, k_max + 1):
            rs = sets[k]
            if rs.count != k // 2:
                res.fail(f"seeds ({a},{b}) k={k}: {rs.count} roots, wanted {k // 2}")
            for r in rs.roots:
                if not (0 <= r.enclosure.lo and r.enclosure.hi <= bound):
                    res.fail(f"seeds ({a},{b}) k={k}: enclosure escapes (0, {bound})")
            if check_interlacing(sets[k + 1], rs) not in ("both-sides", "right"):
                res.fail(f"seeds ({a},{b}) k={k}: offset-1 interlacing fails")
            if check_interlacing(sets[k + 2], rs) != "both-sides":
                res.fail(f"seeds ({a},{b}) k={k}: offset-2 interlacing fails")
        prev = None
        for k in range(2, k_max + 1):
            cur = sets[k].roots[-1]
            if prev is not None:
                x, y = prev, cur
                guard = 0
                while not x.enclosure.hi <= y.enclosure.lo:
                    x, y = x.refined(), y.refined()
                    guard += 1
                    if guard > 512:
                        res.fail(f"seeds ({a},{b}) k={k}: largest roots not increasing")
                        break
            prev = cur
    return res


def check_closed_form_roots(k_max: int = 24, bits: int = 128) -> CheckResult:
    """Certified trig enclosures land in exactly one isolating interval each,
    and the row-15 roots are the seven nested radicals."""
    res = CheckResult("closed-form-roots")
    for k in range(2, k_max + 1):
        if not match_closed_forms(roots_of(UNIT, k), fibonacci_closed_roots(k, bits)):
            res.fail(f"unit seeds k={k}: cosine forms do not match isolation")
        if not match_closed_forms(roots_of(LUCAS, k), lucas_closed_roots(k, bits)):
            res.fail(f"(2,1) seeds k={k}: cosine forms do not match isolation")
    s2 = sqrt_enclosure(2, bits + 2)
    up = interval_sqrt(Interval(2 + s2.lo, 2 + s2.hi), bits + 2)
    dn = interval_sqrt(Interval(2 - s2.hi, 2 - s2.lo), bits + 2)
    pad = Fraction(1, 2 ** (bits - 8))
    nested = [
        Interval(2 - up.hi - pad, 2 - up.lo + pad),
        Interval(2 - s2.hi - pad, 2 - s2.lo + pad),
        Interval(2 - dn.hi - pad, 2 - dn.lo + pad),
        Interval(2 - pad, 2 + pad),
        Interval(2 + dn.lo - pad, 2 + dn.hi + pad),
        Interval(2 + s2.lo - pad, 2 + s2.hi + pad),
        Interval(2 + up.lo - pad, 2 + up.hi + pad),
    ]
    rs = roots_of(UNIT, 15)
    if rs.count != 7:
        res.fail("row 15 does not have seven roots")
    else:
        for i, (root, iv) in enumerate(zip(rs.roots, nested)):
            if not refine_root_into(root, iv):
                res.fail(f"row-15 root {i} is not the expected nested radical")
    return res


def check_binet_agreement(samples: int = 200, seed: int = 20201229) -> CheckResult:
    """Eigenvalue closed form vs the recurrence: exact agreement on random
    inputs (well within 2^-100), plus the exact quadratic-square path and the
    two eigenvalue identities."""
    res = CheckResult("binet-agreement")
    tolerance = Fraction(1, 2**100)
    rng = random.Random(seed)
    done = 0
    while done < samples:
        a = Fraction(rng.randint(1, 12), rng.randint(1, 5))
        b = Fraction(rng.randint(1, 12), rng.randint(1, 5))
        k = rng.randint(0, 30)
        x = Fraction(rng.randint(-60, 60), rng.randint(1, 9))
        if x == 0 or x == 4:
            continue
        params = GibParams.of(a, b)
        got = binet_eval(params, k, x, precision=100)
        want = sign_alternating_poly(params, k).poly(x)
        if abs(got - want) > tolerance:
            res.fail(f"binet disagrees at seeds ({a},{b}), k={k}, x={x}")
        done += 1
    # rational eigenvalue path: x = 4t^2/(t^2-1) makes x^2-4x a square
    for t in (Fraction(2), Fraction(3), Fraction(5, 2), Fraction(7, 3)):
        x = 4 * t * t / (t * t - 1)
        for k in (4, 7, 12):
            if binet_eval(LUCAS, k, x) != sign_alternating_poly(LUCAS, k).poly(x):
                res.fail(f"square-discriminant path disagrees at x={x}, k={k}")
    for x in (Fraction(5), Fraction(-2), Fraction(9, 4), Fraction(1, 3)):
        pair = eigen_pair(x)
        if (pair.lam * pair.kap).rational_part() != 1:
            res.fail(f"eigenvalue product at x={x} is not 1")
        if (pair.lam + pair.kap).rational_part() != x - 2:
            res.fail(f"eigenvalue sum at x={x} is not x-2")
    return res


EXPECTED_SIX_MOVE_G1 = [
    ((-5, Fraction(-24, 7)), (7, 5)),
    ((3, Fraction(16, 7)), (-7, -5)),
    ((-3, Fraction(-16, 7)), (Fraction(7, 2), 3)),
    ((1, Fraction(8, 7)), (Fraction(-7, 2), -3)),
    ((-1, Fraction(-8, 7)), (0, 1)),
    ((-1, 0), (0, -1)),
]
EXPECTED_SIX_MOVE_G2 = [
    ((5, Fraction(16, 7)), (Fraction(-21, 2), -5)),
    ((-5, Fraction(-16, 7)), (7, 3)),
    ((3, Fraction(8, 7)), (-7, -3)),
    ((-3, Fraction(-8, 7)), (Fraction(7, 2), 1)),
    ((1, 0), (Fraction(-7, 2), -1)),
    ((-1, 0), (0, -1)),
]


def _form_matches(value, expected_pair) -> bool:
    ca, cb = expected_pair
    return isinstance(value, LinearForm) and value.ca == Fraction(ca) and value.cb == Fraction(cb)


def check_six_move_reproduction() -> CheckResult:
    """The worked (5,2,7/2,8/7) game: both openings, every displayed pair,
    six moves symbolically, five moves from the boundary pairs."""
    res = CheckResult("six-move-game")
    cfg = GameConfig.rational(GibParams.of(5, 2), Fraction(7, 2), Fraction(8, 7))
    for first, expected in ((NODE1, EXPECTED_SIX_MOVE_G1), (NODE2, EXPECTED_SIX_MOVE_G2)):
        trace = play_symbolic(first, cfg)
        if trace.outcome != "terminated" or trace.moves != 6:
            res.fail(f"{first}-first symbolic game did not end in six moves")
            continue
        for m, (firing, (eu, ev)) in enumerate(zip(trace.firings, expected), start=1):
            if not (_form_matches(firing.u, eu) and _form_matches(firing.v, ev)):
                res.fail(f"{first}-first symbolic step {m} mismatches the worked game")
    for a, b, first, want in [(1, 0, NODE1, 5), (0, 1, NODE2, 5), (1, 1, NODE1, 6), (1, 1, NODE2, 6)]:
        trace = play(a, b, first, cfg)
        if trace.outcome != "terminated" or trace.moves != want:
            res.fail(f"start ({a},{b}) {first}-first took {trace.moves} moves, wanted {want}")
    if play(3, 7, NODE1, cfg).final != (Fraction(-3), Fraction(-7)):
        res.fail("terminal pair is not (-a, -b)")
    return res


def _gap_rational(params: GibParams, j: int) -> Fraction:
    """A rational strictly between the largest roots of rows j-1 and j."""
    if j == 2:
        return params.ratio / 2
    low = roots_of(params, j - 1).roots[-1]
    high = roots_of(params, j).roots[-1]
    while not low.enclosure.hi < high.enclosure.lo:
        low, high = low.refined(), high.refined()
    return (low.enclosure.hi + high.enclosure.lo) / 2


def _threshold(config: GameConfig, j: int, first: str) -> Fraction:
    """Move-count threshold on b/a (g1 first) or a/b (g2 first)."""
    gh = config.g_hat(j)
    gj, gj1 = gh[j + 1], gh[j]
    p, q = Fraction(config.p), config.q
    if first == NODE1:
        return (-gj) / (q * gj1) if j % 2 == 0 else (-gj * p) / gj1
    return (-gj) / (p * gj1) if j % 2 == 0 else (-gj * q) / gj1


def check_classification_suite(j_max: int = 8, k_max: int = 10) -> CheckResult:
    """Divergence certificates, both-move-count realization in every gap, and
    exact strong convergence at the largest roots."""
    res = CheckResult("classification-and-termination")
    # (i) certified divergence
    diverging = [
        GameConfig.rational(UNIT, 2, 2),
        GameConfig.rational(UNIT, 1, 5),
        GameConfig.rational(GibParams.of(5, 2), Fraction(25, 6), 1),
        GameConfig.rational(GibParams.of(3, 1), 3, Fraction(3, 2)),
    ]
    for cfg in diverging:
        cls = classify(cfg)
        if cls.regime != "all-diverge" or not cls.strongly_convergent:
            res.fail(f"config pq={cfg.pq} should diverge")
        trace = play(1, 1, NODE1, cfg, budget=24)
        if trace.outcome != "diverges-certified":
            res.fail(f"config pq={cfg.pq}: no divergence certificate")
    # (ii) both counts realized strictly inside each gap
    for a, b in [(1, 1), (2, 1), (5, 2)]:
        params = GibParams.of(a, b)
        for j in range(2, j_max + 1):
            pq = _gap_rational(params, j)
            cfg = GameConfig.rational(params, 1, pq)
            cls = classify(cfg)
            if cls.regime != "all-terminate" or cls.strongly_convergent:
                res.fail(f"seeds ({a},{b}) gap {j}: classification wrong")
            realized = set()
            for first in (NODE1, NODE2):
                thr = _threshold(cfg, j, first)
                num, den = thr.numerator, thr.denominator
                pairs = [(den, num), (den, num + 1)] if first == NODE1 else [(num, den), (num + 1, den)]
                pairs += [(1, 0)] if first == NODE1 else [(0, 1)]
                for pa, pb in pairs:
                    if (first == NODE1 and pa == 0) or (first == NODE2 and pb == 0):
                        continue
                    want = predicted_moves(cfg, pa, pb, first)
                    trace = play(pa, pb, first, cfg, budget=j + 4)
                    if trace.outcome != "terminated" or trace.moves != want:
                        res.fail(
                            f"seeds ({a},{b}) gap {j} start ({pa},{pb}) {first}: "
                            f"played {trace.moves}, predicted {want}"
                        )
                    realized.add(want)
            if realized != {j, j + 1}:
                res.fail(f"seeds ({a},{b}) gap {j}: realized counts {sorted(realized)}")
    # (iii) exact play at the largest roots
    for a, b in [(1, 1), (2, 1), (5, 2)]:
        params = GibParams.of(a, b)
        for k in range(2, k_max + 1):
            cfg = GameConfig.at_largest_root(params, k)
            cls = classify(cfg)
            if cls != Classification("all-terminate", True, k):
                res.fail(f"seeds ({a},{b}) root {k}: classification {cls}")
            expect = terminal_numbers(cfg, 2, 3)
            for first in (NODE1, NODE2):
                for strategy in ("alternate", "greedy-g1", "greedy-g2"):
                    trace = play(2, 3, first, cfg, strategy=strategy, budget=k + 4)
                    if trace.outcome != "terminated" or trace.moves != k + 1:
                        res.fail(f"seeds ({a},{b}) root {k} {first}/{strategy}: move count")
                        continue
                    if not _pair_equal(trace.final, expect):
                        res.fail(f"seeds ({a},{b}) root {k} {first}/{strategy}: terminal pair")
            if play(1, 0, NODE1, cfg, budget=k + 4).moves != k:
                res.fail(f"seeds ({a},{b}) root {k}: boundary pair (1,0) move count")
            if play(0, 1, NODE2, cfg, budget=k + 4).moves != k:
                res.fail(f"seeds ({a},{b}) root {k}: boundary pair (0,1) move count")
            gh = cfg.g_hat(k + 1)
            twin = gh[k + 2] + gh[k]
            twin_zero = twin.is_zero if isinstance(twin, RingElement) else twin == 0
            if not twin_zero:
                res.fail(f"seeds ({a},{b}) root {k}: twin identity fails")
    return res


def _pair_equal(got, want) -> bool:
    def scalar_eq(x, y):
        if isinstance(x, RingElement) and isinstance(y, RingElement):
            return x.poly == y.poly
        if isinstance(x, RingElement):
            return x.poly == Poly.constant(y)
        if isinstance(y, RingElement):
            return y.poly == Poly.constant(x)
        return x == y

    return scalar_eq(got[0], want[0]) and scalar_eq(got[1], want[1])


def check_poset_counts(n_max: int = 5, k_grid: int = 6) -> CheckResult:
    """The 48-element figure poset with its printed rank polynomial, the two
    named n=3 cardinality sequences, and three-way count agreement."""
    res = CheckResult("poset-counts")
    poset = build_poset(4, 3, 3)
    if poset.size != 48:
        res.fail(f"figure poset has {poset.size} elements")
    if rank_generating_function(poset) != FIGURE_RGF:
        res.fail("figure rank generating function mismatch")
    fib_sizes = [count_by_formula(3, k, 1) for k in range(6)]
    lucas_sizes = [count_by_formula(3, k, 2) for k in range(6)]
    if fib_sizes != [1, 3, 8, 21, 55, 144]:
        res.fail(f"unit-seed n=3 sizes {fib_sizes}")
    if lucas_sizes != [2, 3, 7, 18, 47, 123]:
        res.fail(f"(2,1)-seed n=3 sizes {lucas_sizes}")
    for n in range(2, n_max + 1):
        for alpha in range(1, n):
            for k in range(0, k_grid + 1):
                built = build_poset(n, k, alpha)
                size = built.size
                if size != count_by_formula(n, k, alpha):
                    res.fail(f"formula disagrees at (n={n}, k={k}, alpha={alpha})")
                if size != count_by_inclusion_exclusion(n, k, alpha):
                    res.fail(f"inclusion-exclusion disagrees at (n={n}, k={k}, alpha={alpha})")
                if k >= 1 and not is_connected(built):
                    res.fail(f"poset (n={n}, k={k}, alpha={alpha}) is disconnected")
    return res


def check_identity_suite(n_max: int = 5, k_max: int = 6) -> CheckResult:
    """Rank-polynomial identities, triangle fixtures, palindromic rows,
    positivity boundary, and the lattice dichotomy."""
    res = CheckResult("identity-suite")
    for n in range(2, n_max + 1):
        for alpha in range(1, n):
            report = verify_identity_suite(alpha, n, k_max)
            for name, k in report.failures:
                res.fail(f"identity {name} fails at (alpha={alpha}, n={n}, k={k})")
    for k, expected in TRIANGLE_34_ROWS.items():
        if triangle_row(3, 4, k) != expected:
            res.fail(f"triangle (3;4) row {k} mismatch")
    for alpha, n in [(1, 3), (2, 3), (3, 4), (4, 5)]:
        for k in range(8):
            row = triangle_row(alpha, n, k)
            if row != row[::-1]:
                res.fail(f"triangle ({alpha};{n}) row {k} not palindromic")
            if any(v <= 0 for v in row):
                res.fail(f"triangle ({alpha};{n}) row {k} not positive")
    for alpha, n in [(3, 3), (5, 3), (4, 4)]:
        if triangle_row(alpha, n, 2)[(len(triangle_row(alpha, n, 2)) - 1) // 2] > 0:
            res.fail(f"triangle ({alpha};{n}) row 2 center should be nonpositive")
    for n, alpha, k in [(4, 3, 2), (5, 3, 2), (5, 4, 2), (4, 3, 3)]:
        report = check_lattice(build_poset(n, k, alpha))
        if report.distributive or report.maximal_count < 2:
            res.fail(f"(n={n}, k={k}, alpha={alpha}) should not be closed under meets/joins")
    for n, alpha, k in [(4, 1, 3), (4, 2, 3), (3, 1, 5), (3, 2, 5), (5, 2, 3)]:
        report = check_lattice(build_poset(n, k, alpha))
        if not report.distributive or report.maximal_count != 1 or report.minimal_count != 1:
            res.fail(f"(n={n}, k={k}, alpha={alpha}) should be a distributive lattice")
    return res


def check_value_at_four(m_max: int = 50) -> CheckResult:
    """The two x=4 evaluation identities for five rational seed ratios."""
    res = CheckResult("value-at-four")
    ratios = [Fraction(1), Fraction(2), Fraction(5, 2), Fraction(7, 3), Fraction(1, 4)]
    for ratio in ratios:
        params = GibParams(ratio, Fraction(1))
        for k in range(0, 2 * m_max + 2):
            direct = sign_alternating_poly(params, k).poly(4)
            if value_at_four(params, k) != direct:
                res.fail(f"x=4 identity fails at ratio {ratio}, k={k}")
    return res


def check_recurrence_identities(k_max: int = 30) -> CheckResult:
    """Unit-family decomposition and the reciprocal companion transform."""
    res = CheckResult("recurrence-identities")
    for a, b in [(2, 1), (5, 2), (Fraction(7, 3), Fraction(1, 2))]:
        params = GibParams.of(a, b)
        for k in range(2, k_max + 1):
            if not fibonacci_decomposition_holds(params, k):
                res.fail(f"unit decomposition fails at seeds ({a},{b}), k={k}")
    for ratio in (Fraction(1), Fraction(2), Fraction(5, 2), Fraction(7, 2)):
        for k in range(2, k_max + 1):
            if not reciprocal_transform_holds(ratio, k):
                res.fail(f"companion transform fails at ratio {ratio}, k={k}")
    for params in (UNIT, LUCAS, GibParams.of(5, 2)):
        for k in range(2, 12):
            if not companion_duality_holds(params, k):
                res.fail(f"companion root duality fails at seeds {params}, k={k}")
    return res


SUITES = {
    "arrays": (check_array_fixtures,),
    "polys": (
        check_polynomial_fixtures,
        check_binet_agreement,
        check_value_at_four,
        check_recurrence_identities,
    ),
    "roots": (check_root_geometry, check_closed_form_roots),
    "game": (check_six_move_reproduction, check_classification_suite),
    "posets": (check_poset_counts, check_identity_suite),
}


def run_suite(name: str, fast: bool = False, roots_k_max: int = 40, grid_n: int = 5, grid_k: int = 6):
    """Run one named suite (or 'all'); returns (all_ok, [CheckResult]).

    Grid bounds: roots_k_max caps the root-geometry rows, grid_n/grid_k the
    poset grids; fast shrinks the heavy checks for a quick smoke run.
    """
    if name == "all":
        names = list(SUITES)
    elif name in SUITES:
        names = [name]
    else:
        raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITES)} or all")
    if fast:
        roots_k_max = min(roots_k_max, 16)
    results = []
    for suite in names:
        for fn in SUITES[suite]:
            if fn is check_root_geometry:
                results.append(fn(k_max=roots_k_max))
            elif fn is check_closed_form_roots:
                results.append(fn(k_max=12, bits=96) if fast else fn())
            elif fn is check_poset_counts:
                results.append(fn(n_max=grid_n, k_grid=grid_k))
            elif fn is check_identity_suite:
                results.append(fn(n_max=grid_n, k_max=grid_k))
            else:
                results.append(fn())
    return all(r.ok for r in results), results
