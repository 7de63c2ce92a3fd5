"""
Named verification suites.

Every suite is a function SuiteOptions -> list of partial reports,
registered under its CLI name with the @suite decorator. run_suite merges
the parts into one VerificationReport.

Degree semantics:
- Series suites: --degree is the degree cap D of the free spaces built
- Exhaustive suites: --degree is the largest ground-set size n checked

Instances are drawn from instance_rng(seed, index), so a report is fixed
by (suite, degree, instances, seed).
"""

import logging
from dataclasses import dataclass, replace
from fractions import Fraction
from functools import lru_cache, partial
from itertools import product
from typing import Callable, Dict, List, Mapping, Optional, Sequence, Tuple

from ncfree.config import HARD_GROUND_SET_CAP, ground_set_cap
from ncfree.core.epscomp import (
    EpsString,
    balanced_eps_strings,
    check_interleaving_space,
    cq,
    cr,
    enumerate_eps_alternating,
    eps_strings,
    eq72_rhs,
    eq73_rhs,
    eq86_rhs,
    eq87_rhs,
    interleave_noncrossing,
    is_eps_alternating,
    red_matching,
    verify_prop_811,
    x_word,
    x_word_sides,
    y_word,
    y_word_sides,
)
from ncfree.core.freespace import (
    FreeSpace,
    MomentFunctional,
    check_freeness,
    check_trace,
    criterion_46_failures,
    free_cumulant,
    haar_word_moment,
    joint_r_of,
    m_from_r,
    mixed_moment,
    moment_series,
    r_from_m,
    r_from_m_recursive,
    random_tracial_series,
)
from ncfree.core.ncpart import (
    count_intervals,
    enumerate_intervals,
    enumerate_nc,
    enumerate_parity_class,
    has_odd_block,
    has_odd_gap_block,
    interlace_noncrossing,
    interval_count_formula,
    interval_to_palt,
    interval_to_pprsv,
    is_parity_alternating,
    is_parity_preserving,
    kreweras,
    kreweras_geometric,
    perm_of,
    pprsv_to_interval,
    refinement_leq,
    relative_complement_via_2n,
    relative_kreweras,
    rotate,
)
from ncfree.core.ncseries import (
    NCSeries,
    boxstar,
    coef_partition,
    linear_substitute,
    moeb_series,
    single_variable,
    sum_series,
    truncate,
    words,
    zeta_series,
)
from ncfree.core.rdiagonal import (
    RE_IM_CHECK_CAP,
    absorb,
    alternating_coefficients,
    alternating_word,
    circular_pair_r,
    determining_from_product,
    eq113_series,
    free_re_im_condition,
    haar_pair_r,
    is_diagonally_balanced_cumulants,
    is_diagonally_balanced_moments,
    is_r_diagonal,
    polar_determining,
    random_balanced_pair,
    random_r_diagonal_pair,
    re_im_free,
    vanishing_powers,
)
from ncfree.errors import CapacityError, DomainError
from ncfree.utils.gaussian import I, ONE, ZERO
from ncfree.utils.literals import format_partition, parse_partition
from ncfree.verify.instances import (
    a_elements,
    b_names,
    balanced_space,
    circular_space,
    control_space,
    free_copy_space,
    haar_pairs_space,
    haar_space,
    instance_rng,
    p_names,
    pair_determining_series,
    polar_space,
    product_space,
    r_diagonal_space,
    random_series,
    single_p_space,
    statement_elements,
)
from ncfree.verify.report import CaseResult, VerificationReport, agreement, combine, predicate
from ncfree.verify.runner import Case, run_cases

logger = logging.getLogger(__name__)

DEFAULT_SEED = 0
ALL = "all"

# R(mu_{c c*}) is compared with Zeta up to this degree whatever the suite degree
CIRCULAR_PRODUCT_DEGREE = 8


@dataclass(frozen=True)
class SuiteOptions:
    """Parameters of one suite run."""

    degree: int
    instances: int
    seed: int
    workers: int = 1

    @property
    def parameters(self) -> Dict[str, int]:
        return {"degree": self.degree, "instances": self.instances, "seed": self.seed}


Builder = Callable[[SuiteOptions], List[VerificationReport]]


@dataclass(frozen=True)
class Suite:
    """A registered suite.

    Attributes:
        name: CLI name
        summary: One line for listings
        build: Produces the partial reports
        degree: Default --degree
        instances: Default --instances (1 for exhaustive suites)
        min_degree: Smallest accepted --degree
        max_degree: Largest accepted --degree
        ground_scale: For exhaustive suites, the ground set enumerated is
            ground_scale * degree, so the degree is also bounded by the
            ground-set cap divided by it (0: not exhaustive)
    """

    name: str
    summary: str
    build: Builder
    degree: int
    instances: int = 1
    min_degree: int = 1
    max_degree: int = HARD_GROUND_SET_CAP
    ground_scale: int = 0

    def degree_range(self) -> range:
        top = self.max_degree
        if self.ground_scale:
            top = min(top, ground_set_cap() // self.ground_scale)
        return range(self.min_degree, top + 1)


SUITES: Dict[str, Suite] = {}


def suite(
    name: str,
    summary: str,
    degree: int,
    instances: int = 1,
    min_degree: int = 1,
    max_degree: int = HARD_GROUND_SET_CAP,
    ground_scale: int = 0,
) -> Callable[[Builder], Builder]:
    """Register a suite builder under `name`."""

    def register(build: Builder) -> Builder:
        SUITES[name] = Suite(
            name, summary, build, degree, instances, min_degree, max_degree, ground_scale
        )
        return build

    return register


# ============================================================================
# Case helpers
# ============================================================================

def series_agreement(
    key, inputs: Mapping[str, object], left: NCSeries, right: NCSeries
) -> CaseResult:
    """CaseResult comparing two series; a failure shows the first differing word."""
    text = {name: str(value) for name, value in inputs.items()}
    if left == right:
        summary = f"{len(left.coeffs)} terms up to degree {left.degree_cap}"
        return CaseResult(key, text, summary, summary, True)
    if (left.nvars, left.degree_cap) != (right.nvars, right.degree_cap):
        return CaseResult(
            key,
            text,
            f"nvars={left.nvars} D={left.degree_cap}",
            f"nvars={right.nvars} D={right.degree_cap}",
            False,
            "series shapes differ",
        )
    differing = [
        w
        for w in set(left.coeffs) | set(right.coeffs)
        if left.coeffs.get(w, ZERO) != right.coeffs.get(w, ZERO)
    ]
    word = min(differing, key=lambda w: (len(w), w))
    return CaseResult(
        key,
        text,
        str(left.coef(word)),
        str(right.coef(word)),
        False,
        f"first difference at word {list(word)}",
    )


def _seeded(options: SuiteOptions, index: int) -> Dict[str, int]:
    return {"seed": options.seed, "index": index}


def _run(name: str, options: SuiteOptions, cases: List[Case], seeded: bool = True):
    return run_cases(
        name,
        options.parameters,
        cases,
        workers=options.workers,
        seed=options.seed if seeded else None,
    )


def _first_mismatch(pairs) -> Optional[str]:
    """Label of the first (label, left, right) with left != right."""
    for label, left, right in pairs:
        if left != right:
            return f"{label}: {left} vs {right}"
    return None


def _mismatch_case(key, inputs, checked: int, mismatch: Optional[str]) -> CaseResult:
    return CaseResult(
        key,
        {name: str(value) for name, value in inputs.items()},
        "mismatch" if mismatch else f"{checked} equal",
        f"{checked} equal",
        mismatch is None,
        mismatch or "",
    )


# ============================================================================
# zetamoeb: boxed-star algebra
# ============================================================================

def _inverse_case(nvars: int, cap: int, order: str) -> CaseResult:
    zeta, moeb = zeta_series(nvars, cap), moeb_series(nvars, cap)
    left = boxstar(zeta, moeb) if order == "zeta*moeb" else boxstar(moeb, zeta)
    return series_agreement((order, nvars), {"nvars": nvars, "degree": cap}, left,
                            sum_series(nvars, cap))


def _associative_case(options: SuiteOptions, index: int, cap: int) -> CaseResult:
    rng = instance_rng(options.seed, index)
    f, g, h = (random_series(2, cap, rng) for _ in range(3))
    return series_agreement(
        ("associative", index), _seeded(options, index),
        boxstar(boxstar(f, g), h), boxstar(f, boxstar(g, h)),
    )


def _commutative_case(options: SuiteOptions, index: int) -> CaseResult:
    rng = instance_rng(options.seed, index)
    f, g = random_series(1, options.degree, rng), random_series(1, options.degree, rng)
    return series_agreement(
        ("commutative", index), _seeded(options, index), boxstar(f, g), boxstar(g, f)
    )


def _central_case(options: SuiteOptions, index: int, cap: int) -> CaseResult:
    rng = instance_rng(options.seed, index)
    f = random_series(2, cap, rng)
    zeta, moeb, unit = zeta_series(2, cap), moeb_series(2, cap), sum_series(2, cap)
    mismatch = _first_mismatch([
        ("zeta", boxstar(zeta, f), boxstar(f, zeta)),
        ("moeb", boxstar(moeb, f), boxstar(f, moeb)),
        ("unit", boxstar(unit, f), f),
    ])
    return _mismatch_case(("central", index), _seeded(options, index), 3, mismatch)


def _noncommutative_case() -> CaseResult:
    f = NCSeries(2, 4, {(1, 2): 1})
    g = NCSeries(2, 4, {(1, 1): 1, (2,): 1})
    word = (1, 2, 1, 2)
    left, right = boxstar(f, g).coef(word), boxstar(g, f).coef(word)
    return predicate(
        ("noncommutative",),
        {"f": "z1 z2", "g": "z1 z1 + z2", "word": list(word)},
        left != right,
        f"f*g = {left}, g*f = {right}",
    )


def _inversion_case(options: SuiteOptions, index: int, cap: int) -> CaseResult:
    rng = instance_rng(options.seed, index)
    r = random_series(2, cap, rng)
    moments = m_from_r(r, cross_check=True)
    mismatch = _first_mismatch([
        ("r_from_m", r_from_m(moments), r),
        ("r_from_m_recursive", r_from_m_recursive(moments), r),
    ])
    return _mismatch_case(("inversion", index), _seeded(options, index), 2, mismatch)


@suite("zetamoeb", "Zeta * Moeb = Sum and the boxed-star algebra", degree=8, instances=10,
       min_degree=4)
def _zetamoeb(options: SuiteOptions) -> List[VerificationReport]:
    d = options.degree
    small = min(d, 6)
    cases = []
    for nvars, cap in ((1, d), (2, d), (3, small)):
        for order in ("zeta*moeb", "moeb*zeta"):
            cases.append(Case((order, nvars), partial(_inverse_case, nvars, cap, order)))
    cases.append(Case(("noncommutative",), _noncommutative_case))
    for i in range(options.instances):
        cases.append(Case(("associative", i), partial(_associative_case, options, i, small)))
        cases.append(Case(("commutative", i), partial(_commutative_case, options, i)))
        cases.append(Case(("central", i), partial(_central_case, options, i, small)))
        cases.append(Case(("inversion", i), partial(_inversion_case, options, i, small)))
    return [_run("zetamoeb", options, cases)]


# ============================================================================
# haar: cumulants of (u, u^-1) from the reduction oracle
# ============================================================================

@lru_cache(maxsize=4)
def _haar_oracle_moments(cap: int) -> MomentFunctional:
    signs = {1: 1, 2: -1}
    store = {w: haar_word_moment([signs[x] for x in w]) for w in words(2, cap)}
    return MomentFunctional(NCSeries(2, cap, store))


@suite("haar", "Haar unitary cumulants and determining series Moeb", degree=12, min_degree=2)
def _haar(options: SuiteOptions) -> List[VerificationReport]:
    d = options.degree
    small = min(d, 6)

    def cumulants():
        r = r_from_m_recursive(_haar_oracle_moments(d))
        return series_agreement(("cumulants",), {"degree": d}, r, haar_pair_r(d))

    def moments():
        m = m_from_r(haar_pair_r(small)).series
        return series_agreement(("moments",), {"degree": small}, m,
                                _haar_oracle_moments(small).series)

    def determining():
        r = r_from_m_recursive(_haar_oracle_moments(d))
        return series_agreement(("determining",), {"degree": d},
                                alternating_coefficients(r), moeb_series(1, d // 2))

    def trace():
        return predicate(("trace",), {"degree": small}, check_trace(haar_space(small)))

    cases = [
        Case(("cumulants",), cumulants),
        Case(("moments",), moments),
        Case(("determining",), determining),
        Case(("trace",), trace),
    ]
    return [_run("haar", options, cases, seeded=False)]


# ============================================================================
# R-diagonal pairs with a free pair
# ============================================================================

def _product_pair_r(space: FreeSpace) -> NCSeries:
    return joint_r_of(space, ["a1*p1", "p2*a2"])


def _absorb_case(options: SuiteOptions, index: int, key_head: str) -> CaseResult:
    space, f = r_diagonal_space(options.degree, instance_rng(options.seed, index))
    g = alternating_coefficients(_product_pair_r(space))
    c = g.degree_cap
    expected = absorb(truncate(f, c), joint_r_of(space, ["p1*p2"], c))
    return series_agreement((key_head, index), _seeded(options, index), g, expected)


def _r_diagonal_case(options: SuiteOptions, index: int) -> CaseResult:
    space, _ = r_diagonal_space(options.degree, instance_rng(options.seed, index))
    pair = _product_pair_r(space)
    return predicate(("r-diagonal", index), _seeded(options, index), is_r_diagonal(pair))


def _control_case(options: SuiteOptions) -> CaseResult:
    """Some (a1 p1, a2 p2) must fail to be R-diagonal."""
    d = options.degree
    spaces = [("control", control_space(d))]
    spaces.extend(
        (f"instance {i}", r_diagonal_space(d, instance_rng(options.seed, i))[0])
        for i in range(options.instances)
    )
    for label, space in spaces:
        if not is_r_diagonal(joint_r_of(space, ["a1*p1", "a2*p2"])):
            return predicate(("control",), {"degree": d}, True, f"not R-diagonal on {label}")
    return predicate(("control",), {"degree": d}, False, "every (a1 p1, a2 p2) was R-diagonal")


@suite("thm1.5", "(a1 p1, p2 a2) is R-diagonal with g = f * R(mu_{p1 p2})", degree=12,
       instances=20, min_degree=8)
def _thm15(options: SuiteOptions) -> List[VerificationReport]:
    cases = [Case(("control",), partial(_control_case, options))]
    for i in range(options.instances):
        cases.append(Case(("r-diagonal", i), partial(_r_diagonal_case, options, i)))
        cases.append(Case(("absorb", i), partial(_absorb_case, options, i, "absorb")))
    return [_run("thm1.5", options, cases)]


@suite("cor1.8", "Determining series of (a1 p1, p2 a2) is f * R(mu_{p1 p2})", degree=12,
       instances=20, min_degree=8)
def _cor18(options: SuiteOptions) -> List[VerificationReport]:
    cases = [
        Case(("absorb", i), partial(_absorb_case, options, i, "absorb"))
        for i in range(options.instances)
    ]
    return [_run("cor1.8", options, cases)]


def circular_product_case(degree: int = CIRCULAR_PRODUCT_DEGREE) -> CaseResult:
    """R-series of c c* for a circular c against Zeta(1, degree)."""
    r = joint_r_of(circular_space(2 * degree), ["c*cs"], degree)
    return series_agreement(("circular",), {"degree": degree}, r, zeta_series(1, degree))


def _determining_case(options: SuiteOptions, index: int) -> CaseResult:
    space, f = r_diagonal_space(options.degree, instance_rng(options.seed, index))
    return series_agreement(
        ("determining", index), _seeded(options, index),
        determining_from_product(space, "a1", "a2"), f,
    )


@suite("prop1.7", "R(mu_{a1 a2}) * Moeb is the determining series", degree=12, instances=20,
       min_degree=4)
def _prop17(options: SuiteOptions) -> List[VerificationReport]:
    d = options.degree

    def haar():
        f = determining_from_product(haar_space(d), "u", "ui")
        return series_agreement(("haar",), {"degree": d}, f, moeb_series(1, d // 2))

    cases = [Case(("circular",), circular_product_case), Case(("haar",), haar)]
    cases.extend(
        Case(("determining", i), partial(_determining_case, options, i))
        for i in range(options.instances)
    )
    return [_run("prop1.7", options, cases)]


def _balanced_case(options: SuiteOptions, index: int) -> CaseResult:
    space = balanced_space(options.degree, instance_rng(options.seed, index))
    pair_r = space.family_r[0]
    return series_agreement(
        ("alternating", index), _seeded(options, index),
        alternating_coefficients(pair_r), determining_from_product(space, "a1", "a2"),
    )


@suite("prop5.3", "Diagonally balanced pairs: alternating cumulants = R(mu_{a1 a2}) * Moeb",
       degree=8, instances=20, min_degree=4)
def _prop53(options: SuiteOptions) -> List[VerificationReport]:
    cases = [
        Case(("alternating", i), partial(_balanced_case, options, i))
        for i in range(options.instances)
    ]
    return [_run("prop5.3", options, cases)]


def _balance_routes_case(options: SuiteOptions, index: int) -> CaseResult:
    rng = instance_rng(options.seed, index)
    d = options.degree
    pair = random_balanced_pair(d, rng) if index % 2 == 0 else random_tracial_series(2, d, rng)
    space = FreeSpace([("a1", "a2")], [pair], tracial=True)
    by_moments = is_diagonally_balanced_moments(space, "a1", "a2")
    by_cumulants = is_diagonally_balanced_cumulants(pair)
    note = ""
    if by_cumulants:
        # rotations of odd alternating words vanish as well
        for length in range(1, d + 1, 2):
            for first in (1, 2):
                word = alternating_word(length, first)
                for shift in range(length):
                    rotated = word[shift:] + word[:shift]
                    names = tuple(("a1", "a2")[x - 1] for x in rotated)
                    if space.moment_of_word(names) or pair.coef(rotated):
                        note = f"rotation {list(rotated)} does not vanish"
    inputs = dict(_seeded(options, index), balanced_draw=index % 2 == 0)
    if note:
        return CaseResult(("routes", index), {k: str(v) for k, v in inputs.items()},
                          str(by_moments), str(by_cumulants), False, note)
    return agreement(("routes", index), inputs, by_moments, by_cumulants)


def _r_diagonal_balanced_case(options: SuiteOptions, index: int) -> CaseResult:
    pair, _ = random_r_diagonal_pair(options.degree, instance_rng(options.seed, index))
    space = FreeSpace([("a1", "a2")], [pair], tracial=True)
    holds = (
        is_diagonally_balanced_cumulants(pair)
        and is_diagonally_balanced_moments(space, "a1", "a2")
        and vanishing_powers(space, "a1", "a2")
    )
    return predicate(("r-diagonal", index), _seeded(options, index), holds)


@suite("prop5.1", "Diagonal balance by moments and by cumulants agree", degree=8,
       instances=20, min_degree=2)
def _prop51(options: SuiteOptions) -> List[VerificationReport]:
    cases = []
    for i in range(options.instances):
        cases.append(Case(("routes", i), partial(_balance_routes_case, options, i)))
        cases.append(Case(("r-diagonal", i), partial(_r_diagonal_balanced_case, options, i)))
    return [_run("prop5.1", options, cases)]


def _polar_case(options: SuiteOptions, index: int) -> CaseResult:
    d = options.degree
    space = polar_space(d, instance_rng(options.seed, index))
    pair = joint_r_of(space, ["u*p", "p*ui"])
    if not is_r_diagonal(pair):
        return predicate(("polar", index), _seeded(options, index), False,
                         "(u p, p u^-1) is not R-diagonal")
    g = alternating_coefficients(pair)
    expected = polar_determining(joint_r_of(space, ["p*p"], g.degree_cap))
    return series_agreement(("polar", index), _seeded(options, index), g, expected)


@suite("app1.9", "(u p, p u^-1) has determining series Moeb * R(mu_{p p})", degree=12,
       instances=10, min_degree=4)
def _app19(options: SuiteOptions) -> List[VerificationReport]:
    cases = [
        Case(("polar", i), partial(_polar_case, options, i)) for i in range(options.instances)
    ]
    return [_run("app1.9", options, cases)]


_P_PLACEMENTS = (
    ("a1*p", "a2"),
    ("a1", "p*a2"),
    ("p*a1", "a2"),
    ("a1", "a2*p"),
)


def _single_p_case(options: SuiteOptions, index: int, placement) -> CaseResult:
    space, _ = single_p_space(options.degree, instance_rng(options.seed, index))
    pair = joint_r_of(space, list(placement))
    inputs = dict(_seeded(options, index), pair=", ".join(placement))
    return predicate(("placement", index, "|".join(placement)), inputs, is_r_diagonal(pair))


@suite("prop6.1", "(a1 p, a2) and its variants are R-diagonal", degree=12, instances=10,
       min_degree=4)
def _prop61(options: SuiteOptions) -> List[VerificationReport]:
    cases = [
        Case(("placement", i, "|".join(pl)), partial(_single_p_case, options, i, pl))
        for i in range(options.instances)
        for pl in _P_PLACEMENTS
    ]
    return [_run("prop6.1", options, cases)]


def _same_law_case(options: SuiteOptions, index: int) -> CaseResult:
    space, _ = r_diagonal_space(options.degree, instance_rng(options.seed, index))
    e = options.degree // 3
    left = moment_series(space, ["a1*p1", "p2*a2"], e).series
    right = moment_series(space, ["a1*p1*p2", "a2"], e).series
    return series_agreement(("law", index), _seeded(options, index), left, right)


@suite("prop6.3", "(a1 p1, p2 a2) and (a1 p1 p2, a2) have the same distribution", degree=12,
       instances=10, min_degree=3)
def _prop63(options: SuiteOptions) -> List[VerificationReport]:
    cases = [
        Case(("law", i), partial(_same_law_case, options, i)) for i in range(options.instances)
    ]
    return [_run("prop6.3", options, cases)]


# ============================================================================
# Real and imaginary parts
# ============================================================================

@suite("app1.10", "Free real and imaginary parts of u p", degree=10, min_degree=2)
def _app110(options: SuiteOptions) -> List[VerificationReport]:
    d = options.degree
    zeta = zeta_series(1, d)
    candidates = [("zeta", zeta, True), ("z", single_variable([1], d), False),
                  ("zero", NCSeries(1, d), False)]
    for k in range(1, min(d, 7) + 1):
        bumped = dict(zeta.coeffs)
        bumped[(1,) * k] = bumped[(1,) * k] + ONE
        candidates.append((f"zeta+z^{k}", NCSeries(1, d, bumped), False))

    def condition(label, r_p, expected):
        return agreement(("condition", label), {"r_p": label, "degree": d},
                         free_re_im_condition(r_p), expected)

    cap = RE_IM_CHECK_CAP
    betas = [
        ("z", [1]), ("2z", [2]), ("z+z^2", [1, 1]), ("z-z^3", [1, 0, -1]),
        ("moeb", [moeb_series(1, cap).coef((1,) * k) for k in range(1, cap + 1)]),
    ]

    def re_im(label, coefficients):
        beta = single_variable(coefficients, cap)
        expected = all(not beta.coef((1,) * k) for k in range(2, cap + 1))
        return agreement(("re-im", label), {"beta": label}, re_im_free(beta), expected)

    def absorbs():
        left = absorb(moeb_series(1, d), zeta)
        return series_agreement(("absorb",), {"degree": d}, left, single_variable([1], d))

    def change_of_variables():
        half = NCSeries(2, 2, {(1, 1): Fraction(1, 2), (2, 2): Fraction(1, 2)})
        back = linear_substitute(half, ((ONE, ONE), (-I, I)))
        mismatch = _first_mismatch([
            ("forward", eq113_series(single_variable([1], 1)), half),
            ("inverse", back, circular_pair_r(2)),
        ])
        return _mismatch_case(("change-of-variables",), {"degree": 2}, 2, mismatch)

    cases = [Case(("absorb",), absorbs), Case(("change-of-variables",), change_of_variables)]
    cases.extend(
        Case(("condition", label), partial(condition, label, r_p, expected))
        for label, r_p, expected in candidates
    )
    cases.extend(Case(("re-im", label), partial(re_im, label, c)) for label, c in betas)
    return [_run("app1.10", options, cases, seeded=False)]


# ============================================================================
# Freeness of the Haar-rotated pairs and of b1 a b2
# ============================================================================

@dataclass(frozen=True)
class _HaarPairsInstance:
    space: FreeSpace
    fs: tuple
    copies: FreeSpace


def _haar_pairs_instance(options: SuiteOptions, index: int, k: int = 2) -> _HaarPairsInstance:
    space = haar_pairs_space(options.degree, instance_rng(options.seed, index), k)
    fs = tuple(pair_determining_series(space, k))
    return _HaarPairsInstance(space, fs, free_copy_space(fs, options.degree // 2))


def _a_word(eps: EpsString, heights: Sequence[int]) -> List[str]:
    pairs = a_elements(max(heights))
    return [pairs[h - 1][letter - 1] for h, letter in zip(heights, eps.letters)]


def _b_word(eps: EpsString, heights: Sequence[int]) -> tuple:
    pairs = b_names(max(heights))
    return tuple(pairs[h - 1][letter - 1] for h, letter in zip(heights, eps.letters))


def _flat_names(pairs) -> List[str]:
    return [name for pair in pairs for name in pair]


def _all_heights(m: int, k: int):
    return product(range(1, k + 1), repeat=m)


def _vanishing_case(options, index, inst: _HaarPairsInstance, eps: EpsString) -> CaseResult:
    """Both words of an unbalanced eps have moment zero, as have both NC(m) sums."""
    m = eps.m
    k = len(inst.fs)
    r_p = joint_r_of(inst.space, _flat_names(p_names(k)), m)
    r_b = joint_r_of(inst.copies, _flat_names(b_names(k)), m)
    checked, mismatch = 0, None
    for heights in _all_heights(m, k):
        values = (
            ("a-moment", mixed_moment(inst.space, _a_word(eps, heights))),
            ("b-moment", inst.copies.moment_of_word(_b_word(eps, heights))),
            ("a-sum", eq86_rhs(eps, heights, r_p)),
            ("b-sum", eq87_rhs(eps, heights, r_b)),
        )
        checked += 1
        for label, value in values:
            if value and mismatch is None:
                mismatch = f"{label} at heights {list(heights)} is {value}"
    inputs = dict(_seeded(options, index), eps=eps)
    return _mismatch_case(("vanishing", index, str(eps)), inputs, checked, mismatch)


def _thm113_cases(options: SuiteOptions, index: int) -> List[Case]:
    d = options.degree
    e = d // 2
    inst = _haar_pairs_instance(options, index)
    k = len(inst.fs)
    seeded = _seeded(options, index)

    def freeness(form, pairs):
        holds = check_freeness(inst.space, [list(pair) for pair in pairs])
        return predicate(("free", index, form), seeded, holds)

    def same_moments():
        a_names = _flat_names(a_elements(k))
        b_flat = _flat_names(b_names(k))
        pairs = []
        for word in words(len(a_names), e):
            left = mixed_moment(inst.space, [a_names[x - 1] for x in word])
            right = inst.copies.moment_of_word(tuple(b_flat[x - 1] for x in word))
            pairs.append((list(word), left, right))
        return _mismatch_case(("moments", index), seeded, len(pairs), _first_mismatch(pairs))

    def routes():
        free = check_freeness(inst.space, [list(pair) for pair in a_elements(k)])
        copies_free = check_freeness(inst.copies, [list(pair) for pair in b_names(k)])
        return agreement(("routes", index), seeded, free, copies_free)

    def pair_cumulants(j):
        f = inst.fs[j]
        p1, p2 = p_names(k)[j]
        a1, a2 = a_elements(k)[j]
        pairs = []
        for n in range(1, d // 2 + 1):
            target = f.coef((1,) * n)
            pairs.append((f"p (12)^{n}", free_cumulant(inst.space, [p1, p2] * n), target))
            pairs.append((f"p (21)^{n}", free_cumulant(inst.space, [p2, p1] * n), target))
        a_pair = joint_r_of(inst.space, [a1, a2], e)
        mismatch = _first_mismatch(pairs)
        if mismatch is None and not is_r_diagonal(a_pair):
            mismatch = f"(a_{j + 1},1, a_{j + 1},2) is not R-diagonal"
        if mismatch is None:
            g = alternating_coefficients(a_pair)
            if g != truncate(f, g.degree_cap):
                mismatch = f"determining series of (a_{j + 1},1, a_{j + 1},2) differs from f"
        return _mismatch_case(("pair", index, j + 1), seeded, len(pairs) + 1, mismatch)

    def second_letters_vanish():
        checked, mismatch = 0, None
        for m in range(1, e + 1):
            eps_twos = [2] * m
            for heights in _all_heights(m, k):
                a_word = [a_elements(k)[h - 1][1] for h in heights]
                b_word = tuple(b_names(k)[h - 1][1] for h in heights)
                checked += 1
                left = mixed_moment(inst.space, a_word)
                right = inst.copies.moment_of_word(b_word)
                if (left or right) and mismatch is None:
                    mismatch = f"word {eps_twos} at heights {list(heights)}: {left}, {right}"
        return _mismatch_case(("second-letters", index), seeded, checked, mismatch)

    cases = [
        Case(("free", index, "rotated"), partial(freeness, "rotated", a_elements(k))),
        Case(("free", index, "statement"), partial(freeness, "statement",
                                                   statement_elements(k))),
        Case(("moments", index), same_moments),
        Case(("routes", index), routes),
        Case(("second-letters", index), second_letters_vanish),
    ]
    cases.extend(Case(("pair", index, j + 1), partial(pair_cumulants, j)) for j in range(k))
    for m in range(1, min(4, e) + 1):
        for eps in eps_strings(m):
            if not eps.balanced:
                cases.append(Case(("vanishing", index, str(eps)),
                                  partial(_vanishing_case, options, index, inst, eps)))
    return cases


@suite("thm1.13", "Haar-rotated diagonally balanced pairs are free", degree=8, instances=3,
       min_degree=4, max_degree=10)
def _thm113(options: SuiteOptions) -> List[VerificationReport]:
    cases: List[Case] = []
    for i in range(options.instances):
        cases.extend(_thm113_cases(options, i))
    return [_run("thm1.13", options, cases)]


def _eq86_87_cases(options: SuiteOptions, index: int) -> List[Case]:
    inst = _haar_pairs_instance(options, index)
    k = len(inst.fs)
    mmax = min(4, options.degree // 2)
    r_p = joint_r_of(inst.space, _flat_names(p_names(k)), mmax)
    r_b = joint_r_of(inst.copies, _flat_names(b_names(k)), mmax)

    def check(eps: EpsString, side: str):
        pairs = []
        for heights in _all_heights(eps.m, k):
            if side == "a":
                left = mixed_moment(inst.space, _a_word(eps, heights))
                right = eq86_rhs(eps, heights, r_p)
            else:
                left = inst.copies.moment_of_word(_b_word(eps, heights))
                right = eq87_rhs(eps, heights, r_b)
            pairs.append((f"heights {list(heights)}", left, right))
        inputs = dict(_seeded(options, index), eps=eps)
        return _mismatch_case((side, index, str(eps)), inputs, len(pairs), _first_mismatch(pairs))

    return [
        Case((side, index, str(eps)), partial(check, eps, side))
        for m in range(1, mmax + 1)
        for eps in eps_strings(m)
        for side in ("a", "b")
    ]


@suite("prop8.8", "Moments of the rotated and of the free pairs as NC(m) sums", degree=8,
       instances=3, min_degree=2, max_degree=10)
def _prop88(options: SuiteOptions) -> List[VerificationReport]:
    cases: List[Case] = []
    for i in range(options.instances):
        cases.extend(_eq86_87_cases(options, i))
    return [_run("prop8.8", options, cases)]


@suite("cor8.9", "Unbalanced words in the rotated and free pairs vanish", degree=8, instances=3,
       min_degree=2, max_degree=10)
def _cor89(options: SuiteOptions) -> List[VerificationReport]:
    cases: List[Case] = []
    mmax = min(4, options.degree // 2)
    for i in range(options.instances):
        inst = _haar_pairs_instance(options, i)
        for m in range(1, mmax + 1):
            for eps in eps_strings(m):
                if not eps.balanced:
                    cases.append(Case(("vanishing", i, str(eps)),
                                      partial(_vanishing_case, options, i, inst, eps)))
    return [_run("cor8.9", options, cases)]


_X_ELEMENTS = ("b1*a1*b2", "b1*a2*b2")
_C_ELEMENTS = ("a1", "a2")


def _conjugated_cases(options: SuiteOptions, index: int) -> List[Case]:
    space = product_space(options.degree, instance_rng(options.seed, index))
    seeded = _seeded(options, index)

    def free():
        holds = check_freeness(space, [list(_X_ELEMENTS), list(_C_ELEMENTS)])
        return predicate(("free", index), seeded, holds)

    def criterion(m):
        failures = criterion_46_failures(space, _C_ELEMENTS, _X_ELEMENTS, m)
        note = ""
        if failures:
            c, x, left, right = failures[0]
            note = f"c={c}, x={x}: {left} vs {right}"
        return predicate(("criterion", index, m), dict(seeded, m=m), not failures, note)

    cases = [Case(("free", index), free)]
    cases.extend(
        Case(("criterion", index, m), partial(criterion, m))
        for m in range(1, min(3, options.degree // 4) + 1)
    )
    return cases


@suite("thm1.14", "{b1 a1 b2, b1 a2 b2} is free from {a1, a2}", degree=12, instances=10,
       min_degree=4, max_degree=12)
def _thm114(options: SuiteOptions) -> List[VerificationReport]:
    cases: List[Case] = []
    for i in range(options.instances):
        cases.extend(_conjugated_cases(options, i))
    return [_run("thm1.14", options, cases)]


# ============================================================================
# Exhaustive partition suites
# ============================================================================

def _for_all(key, inputs, items, test) -> CaseResult:
    """Predicate case holding when test(item) is true for every item."""
    checked = 0
    for item in items:
        checked += 1
        if not test(item):
            return predicate(key, inputs, False, f"fails at {item}")
    return predicate(key, inputs, True, f"{checked} checked")


def _nc_pairs(n: int):
    parts = enumerate_nc(n)
    return ((pi, rho) for pi in parts for rho in parts)


def _show_pair(pair) -> str:
    return " ".join(format_partition(x) for x in pair)


@suite("prop2.4", "Kreweras complement: interlacing, anti-isomorphism, permutations",
       degree=6, ground_scale=1)
def _prop24(options: SuiteOptions) -> List[VerificationReport]:
    cases = []
    for n in range(1, options.degree + 1):
        inputs = {"n": n}
        cases.extend([
            Case(("interlace", n), partial(
                _for_all, ("interlace", n), inputs, _nc_pairs(n),
                lambda pr: interlace_noncrossing(*pr) == refinement_leq(pr[0], kreweras(pr[1])),
            )),
            Case(("anti-isomorphism", n), partial(
                _for_all, ("anti-isomorphism", n), inputs, _nc_pairs(n),
                lambda pr: refinement_leq(*pr)
                == refinement_leq(kreweras(pr[1]), kreweras(pr[0])),
            )),
            Case(("double-complement", n), partial(
                _for_all, ("double-complement", n), inputs, enumerate_nc(n),
                lambda pi: kreweras(kreweras(pi)) == rotate(pi, -1),
            )),
            Case(("geometric", n), partial(
                _for_all, ("geometric", n), inputs, enumerate_nc(n),
                lambda pi: kreweras(pi) == kreweras_geometric(pi),
            )),
            Case(("relative", n), partial(
                _for_all, ("relative", n), inputs,
                ((x.lower, x.upper) for x in enumerate_intervals(n)),
                lambda pr: perm_of(relative_kreweras(*pr))
                == perm_of(pr[0]).inverse() * perm_of(pr[1]),
            )),
        ])

    def golden():
        pi = parse_partition("{1,4,5}{2,3}{6,8}{7}")
        return agreement(("golden",), {"pi": format_partition(pi)},
                         format_partition(kreweras(pi)), "{1,3}{2}{4}{5,8}{6,7}")

    cases.append(Case(("golden",), golden))
    return [_run("prop2.4", options, cases, seeded=False)]


@suite("prop4.4", "Intervals of NC(n) and parity-preserving partitions of NC(2n)", degree=5,
       max_degree=6, ground_scale=2)
def _prop44(options: SuiteOptions) -> List[VerificationReport]:
    cases = []
    for n in range(1, options.degree + 1):
        inputs = {"n": n}

        def complement(n=n, inputs=inputs):
            return _for_all(
                ("complement", n), inputs, enumerate_intervals(n),
                lambda x: relative_complement_via_2n(x) == relative_kreweras(x.lower, x.upper),
            )

        def bijection(n=n, inputs=inputs):
            intervals = enumerate_intervals(n)
            images = [interval_to_pprsv(x) for x in intervals]
            if not all(is_parity_preserving(s) for s in images):
                return predicate(("bijection", n), inputs, False, "image not parity-preserving")
            if [pprsv_to_interval(s) for s in images] != intervals:
                return predicate(("bijection", n), inputs, False, "round trip differs")
            target = set(enumerate_parity_class(2 * n, "p-prsv"))
            return predicate(("bijection", n), inputs, set(images) == target,
                             f"{len(set(images))} images, {len(target)} parity-preserving")

        def swap(n=n, inputs=inputs):
            alt = set(enumerate_parity_class(2 * n, "p-alt"))
            prsv = set(enumerate_parity_class(2 * n, "p-prsv"))
            holds = {kreweras(s) for s in alt} == prsv and {kreweras(s) for s in prsv} == alt
            return predicate(("swap", n), inputs, holds)

        cases.append(Case(("complement", n), complement))
        cases.append(Case(("bijection", n), bijection))
        if n <= 4:
            cases.append(Case(("swap", n), swap))
    return [_run("prop4.4", options, cases, seeded=False)]


@suite("cor4.5", "Counting intervals of NC(n)", degree=5, max_degree=6, ground_scale=2)
def _cor45(options: SuiteOptions) -> List[VerificationReport]:
    cases = []
    for n in range(1, options.degree + 1):
        inputs = {"n": n}

        def counts(n=n, inputs=inputs):
            values = (
                count_intervals(n),
                len(enumerate_parity_class(2 * n, "p-alt")),
                len(enumerate_parity_class(2 * n, "p-prsv")),
            )
            expected = interval_count_formula(n)
            return agreement(("count", n), inputs, values, (expected,) * 3)

        def diagonal(n=n, inputs=inputs):
            seen = set()
            for x in enumerate_intervals(n):
                tau = interval_to_palt(x)
                doubled = sorted(2 * s for s in x.lower.block_sizes())
                if not is_parity_alternating(tau) or sorted(tau.block_sizes()) != doubled:
                    return predicate(("diagonal", n), inputs, False,
                                     f"fails at {_show_pair((x.lower, x.upper))}")
                seen.add(tau)
            return agreement(("diagonal", n), inputs, len(seen), interval_count_formula(n))

        cases.append(Case(("count", n), counts))
        cases.append(Case(("diagonal", n), diagonal))
    return [_run("cor4.5", options, cases, seeded=False)]


@suite("lemma4.7", "Odd blocks and odd-gap blocks occur together", degree=10, ground_scale=1)
def _lemma47(options: SuiteOptions) -> List[VerificationReport]:
    cases = [
        Case(("odd", n), partial(
            _for_all, ("odd", n), {"n": n}, enumerate_nc(n),
            lambda pi: has_odd_block(pi) == has_odd_gap_block(pi),
        ))
        for n in range(1, options.degree + 1)
    ]
    return [_run("lemma4.7", options, cases, seeded=False)]


# ============================================================================
# Circular layouts and the eps-sums
# ============================================================================

def _fits(eps: EpsString, degree: int) -> bool:
    return max(2 * eps.m, eps.m + 2 * eps.n) <= degree


def _layout_spaces(options: SuiteOptions) -> List[FreeSpace]:
    """R-diagonal (a1, a2) free from a tracial (p1, p2) supported up to degree 6."""
    return [
        r_diagonal_space(options.degree, instance_rng(options.seed, i), p_support=6)[0]
        for i in range(options.instances)
    ]


def interleaved_report(eps: EpsString, space: FreeSpace, key: Tuple = ()) -> VerificationReport:
    """Both interleaved-word identities for one eps as a two-case report."""
    check_interleaving_space(eps, space)
    inputs = {"eps": eps}
    x_key, y_key = key + (str(eps), "x"), key + (str(eps), "y")

    def check_x():
        return agreement(x_key, inputs, *x_word_sides(eps, space))

    def check_y():
        return agreement(y_key, inputs, *y_word_sides(eps, space))

    return run_cases(
        "prop7.3",
        {"eps": str(eps), "degree": space.degree_cap},
        [Case(x_key, check_x), Case(y_key, check_y)],
        stage=f"prop7.3:{eps}",
    )


@suite("prop7.3", "Moments of x and y words as NC(m) sums", degree=18, instances=5,
       min_degree=4, max_degree=18)
def _prop73(options: SuiteOptions) -> List[VerificationReport]:
    parts = []
    strings = [e for m in range(1, 7) for e in eps_strings(m) if _fits(e, options.degree)]
    for i, space in enumerate(_layout_spaces(options)):
        for eps in strings:
            parts.append(interleaved_report(eps, space, key=(i,)))
    return parts


def _unbalanced_case(
    options: SuiteOptions, index: int, space: FreeSpace, eps: EpsString
) -> CaseResult:
    r_a = joint_r_of(space, ["a1", "a2"], eps.m)
    m_p = moment_series(space, ["p1", "p2"], eps.m).series
    m_pp = moment_series(space, ["p1*p2"], eps.n).series
    values = (
        ("x-moment", mixed_moment(space, x_word(eps, "a1", "a2", "p1", "p2"))),
        ("y-moment", mixed_moment(space, y_word(eps, "a1", "a2", "p1", "p2"))),
        ("x-sum", eq72_rhs(eps, r_a, m_p)),
        ("y-sum", eq73_rhs(eps, r_a, m_pp)),
    )
    nonzero = [f"{label} = {value}" for label, value in values if value]
    inputs = dict(_seeded(options, index), eps=eps)
    return predicate(("vanishing", index, str(eps)), inputs, not nonzero, "; ".join(nonzero))


@suite("cor7.4", "Unbalanced x and y words have moment zero", degree=15, instances=5,
       min_degree=3, max_degree=18)
def _cor74(options: SuiteOptions) -> List[VerificationReport]:
    strings = [
        e for m in range(1, 6) for e in eps_strings(m)
        if not e.balanced and _fits(e, options.degree)
    ]
    cases = [
        Case(("vanishing", i, str(eps)), partial(_unbalanced_case, options, i, space, eps))
        for i, space in enumerate(_layout_spaces(options))
        for eps in strings
    ]
    return [_run("cor7.4", options, cases)]


def _balanced_strings(top: int) -> List[EpsString]:
    return [e for m in range(2, top + 1, 2) for e in balanced_eps_strings(m)]


@suite("prop7.7", "C_Q on eps-alternating partitions and I,J-compatibility", degree=8,
       ground_scale=1)
def _prop77(options: SuiteOptions) -> List[VerificationReport]:
    d = options.degree
    cases = []
    for eps in _balanced_strings(d):
        inputs = {"eps": eps}
        cases.append(Case(("closure", str(eps)), partial(
            _for_all, ("closure", str(eps)), inputs, enumerate_eps_alternating(eps),
            lambda s, eps=eps: is_eps_alternating(cq(s, eps), eps),
        )))
        # cq and cr raise ConsistencyError when the separation relation is not transitive
        cases.append(Case(("transitive", str(eps)), partial(
            _for_all, ("transitive", str(eps)), inputs, enumerate_nc(eps.m),
            lambda s, eps=eps: cq(s, eps).n == eps.m and cr(s, eps).n == eps.n,
        )))
    for m in range(1, min(d, 5) + 1):
        for eps in eps_strings(m):
            inputs = {"eps": eps}
            cases.append(Case(("compatible", str(eps)), partial(
                _for_all, ("compatible", str(eps)), inputs, _nc_pairs(m),
                lambda pr, eps=eps: interleave_noncrossing(pr[0], pr[1], eps)
                == refinement_leq(pr[1], cq(pr[0], eps)),
            )))
    return [_run("prop7.7", options, cases, seeded=False)]


def _red_matching_holds(sigma, eps: EpsString) -> bool:
    pairs = red_matching(sigma, eps)
    if any(not reds or len(block) != 2 * len(reds) for block, reds in pairs):
        return False
    return {reds for _, reds in pairs} == set(cr(sigma, eps).blocks)


@suite("cor7.8", "C_Q blocks double the matching C_R blocks", degree=8, ground_scale=1)
def _cor78(options: SuiteOptions) -> List[VerificationReport]:
    cases = [
        Case(("matching", str(eps)), partial(
            _for_all, ("matching", str(eps)), {"eps": eps}, enumerate_eps_alternating(eps),
            lambda s, eps=eps: _red_matching_holds(s, eps),
        ))
        for eps in _balanced_strings(options.degree)
    ]
    return [_run("cor7.8", options, cases, seeded=False)]


def _termwise_case(
    options: SuiteOptions, index: int, space: FreeSpace, eps: EpsString
) -> CaseResult:
    r_a = joint_r_of(space, ["a1", "a2"], eps.m)
    m_p = moment_series(space, ["p1", "p2"], eps.m).series
    m_pp = moment_series(space, ["p1*p2"], eps.n).series
    ones = (1,) * eps.n
    pairs = []
    for sigma in enumerate_nc(eps.m):
        weight = coef_partition(r_a, eps.letters, sigma)
        left = weight * coef_partition(m_p, eps.letters, cq(sigma, eps))
        right = weight * coef_partition(m_pp, ones, cr(sigma, eps))
        pairs.append((format_partition(sigma), left, right))
    inputs = dict(_seeded(options, index), eps=eps)
    return _mismatch_case(("termwise", index, str(eps)), inputs, len(pairs),
                          _first_mismatch(pairs))


@suite("prop7.9", "The x-sum and the y-sum agree term by term", degree=12, instances=5,
       min_degree=4, max_degree=12)
def _prop79(options: SuiteOptions) -> List[VerificationReport]:
    strings = _balanced_strings(min(6, options.degree // 2))
    cases = [
        Case(("termwise", i, str(eps)), partial(_termwise_case, options, i, space, eps))
        for i, space in enumerate(_layout_spaces(options))
        for eps in strings
    ]
    return [_run("prop7.9", options, cases)]


@suite("prop8.11", "Eps-alternating partitions by block conditions", degree=8, ground_scale=1)
def _prop811(options: SuiteOptions) -> List[VerificationReport]:
    cases = [
        Case(("conditions", str(eps)), partial(
            _for_all, ("conditions", str(eps)), {"eps": eps}, enumerate_nc(eps.m),
            lambda s, eps=eps: verify_prop_811(s, eps),
        ))
        for eps in _balanced_strings(options.degree)
    ]
    return [_run("prop8.11", options, cases, seeded=False)]


# ============================================================================
# Entry points
# ============================================================================

def suite_names() -> List[str]:
    return list(SUITES) + [ALL]


def run_suite(
    name: str,
    degree: Optional[int] = None,
    instances: Optional[int] = None,
    seed: Optional[int] = None,
    workers: int = 1,
) -> VerificationReport:
    """
    Run one suite (or every suite, for name "all").

    Args:
        name: Suite name
        degree: Overrides the suite's default degree
        instances: Overrides the suite's default instance count
        seed: Seed for instance generation (default 0)
        workers: Threads for case sharding

    Raises:
        DomainError: Unknown suite or invalid parameters
        CapacityError: Degree outside the suite's accepted range
    """
    if workers < 1:
        raise DomainError(f"workers must be positive, got {workers}")
    seed = DEFAULT_SEED if seed is None else seed
    if name == ALL:
        if degree is not None or instances is not None:
            raise DomainError("'all' runs every suite with its own degree and instances")
        return run_all(seed=seed, workers=workers)
    try:
        spec = SUITES[name]
    except KeyError:
        raise DomainError(f"Unknown suite '{name}' (known: {', '.join(suite_names())})")

    degree = spec.degree if degree is None else degree
    instances = spec.instances if instances is None else instances
    accepted = spec.degree_range()
    if degree not in accepted:
        raise CapacityError(
            f"Suite {name} accepts degree {accepted.start}..{accepted.stop - 1}, got {degree}"
        )
    if instances < 1:
        raise DomainError(f"instances must be positive, got {instances}")

    options = SuiteOptions(degree, instances, seed, workers)
    logger.info("suite %s: degree=%d instances=%d seed=%d", name, degree, instances, seed)
    report = combine(name, options.parameters, spec.build(options))
    logger.info(
        "suite %s: %d cases, %d failure(s), %.2fs",
        name, report.cases_run, len(report.failures), report.wall_time,
    )
    return report


def run_all(seed: int = DEFAULT_SEED, workers: int = 1) -> VerificationReport:
    """Every registered suite with its defaults; failure keys are prefixed by the suite."""
    parts = []
    for name in SUITES:
        report = run_suite(name, seed=seed, workers=workers)
        failures = tuple(replace(case, key=(name,) + tuple(case.key)) for case in report.failures)
        parts.append(replace(report, failures=failures))
    return combine(ALL, {"seed": seed, "suites": len(SUITES)}, parts)
