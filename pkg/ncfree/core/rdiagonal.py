"""
R-diagonal and diagonally balanced pairs.

A pair series is a 2-variable NCSeries: the joint R-series of a pair
(a_1, a_2), with z_1 standing for a_1 and z_2 for a_2. The pair is
R-diagonal when that series is

    sum_k alpha_k ((z_1 z_2)^k + (z_2 z_1)^k)

and the 1-variable series f(z) = sum_k alpha_k z^k is its determining
series. A pair of degree cap D has a determining series of cap D // 2.

Convention:
- Alternating words are named by their first letter and their length
- "Odd alternating" means odd length with consecutive letters distinct
"""

import logging
import random
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from ncfree.core.freespace import (
    Element,
    FreeSpace,
    as_product,
    joint_r_of,
    mixed_coefficients,
    mixed_moment,
    random_rational,
    random_tracial_series,
)
from ncfree.core.ncpart import catalan
from ncfree.core.ncseries import (
    NCSeries,
    Word,
    boxstar,
    linear_substitute,
    moeb_coefficient,
    moeb_series,
    single_variable,
    truncate,
)
from ncfree.errors import CapacityError, ConsistencyError, DomainError, UnsupportedValueError
from ncfree.utils.gaussian import ONE, GaussianRational

logger = logging.getLogger(__name__)

PairSeries = NCSeries
DeterminingSeries = NCSeries

# z_1 -> (z_1 + i z_2) / 2, z_2 -> (z_1 - i z_2) / 2: cumulants of (a, a*) to
# cumulants of (Re a, Im a), up to the sign convention of Im.
RE_IM_MATRIX = (
    (GaussianRational(Fraction(1, 2)), GaussianRational(0, Fraction(1, 2))),
    (GaussianRational(Fraction(1, 2)), GaussianRational(0, Fraction(-1, 2))),
)

# The same cap keeps the re/im cross-check at pair degree 6.
RE_IM_CHECK_CAP = 3


def alternating_word(length: int, first: int = 1) -> Word:
    """(first, other, first, ...) of the given length over letters 1 and 2."""
    if first not in (1, 2):
        raise DomainError(f"Alternating words start with 1 or 2, got {first}")
    other = 3 - first
    return tuple(first if i % 2 == 0 else other for i in range(length))


def is_odd_alternating(word: Word) -> bool:
    return len(word) % 2 == 1 and all(a != b for a, b in zip(word, word[1:]))


def _require_pair(series: NCSeries) -> None:
    if series.nvars != 2:
        raise DomainError(f"Pair series need 2 variables, got {series.nvars}")


def _require_single(series: NCSeries, what: str) -> None:
    if series.nvars != 1:
        raise DomainError(f"{what} must be a 1-variable series, got {series.nvars} variables")


# ============================================================================
# Predicates and determining series
# ============================================================================

def is_r_diagonal(pair: PairSeries) -> bool:
    """
    True iff the only non-zero coefficients sit on (1,2,...,1,2) and
    (2,1,...,2,1), with equal values on the two words of each length.
    """
    _require_pair(pair)
    for word in pair.support():
        if len(word) % 2 or any(a == b for a, b in zip(word, word[1:])):
            return False
    for k in range(1, pair.degree_cap // 2 + 1):
        if pair.coef(alternating_word(2 * k, 1)) != pair.coef(alternating_word(2 * k, 2)):
            return False
    return True


def determining_series(pair: PairSeries) -> DeterminingSeries:
    """
    Determining series f with alpha_k = coef of (z_1 z_2)^k.

    Raises:
        DomainError: If the pair is not R-diagonal or D < 2
    """
    _require_pair(pair)
    if pair.degree_cap < 2:
        raise DomainError("Determining series need a pair degree cap of at least 2")
    if not is_r_diagonal(pair):
        raise DomainError("Pair series is not R-diagonal")
    return alternating_coefficients(pair)


def alternating_coefficients(pair: PairSeries) -> DeterminingSeries:
    """1-variable series of the coefficients of (z_1 z_2)^k, without any check."""
    _require_pair(pair)
    cap = pair.degree_cap // 2
    if cap < 1:
        raise DomainError("Pair degree cap must be at least 2")
    return single_variable(
        [pair.coef(alternating_word(2 * k, 1)) for k in range(1, cap + 1)], cap
    )


def pair_from_determining(f: DeterminingSeries, degree_cap: Optional[int] = None) -> PairSeries:
    """
    The R-diagonal pair series f(z_1 z_2) + f(z_2 z_1).

    Args:
        f: Determining series
        degree_cap: Pair cap, default 2 * f.degree_cap; at most 2 * f.degree_cap + 1

    Raises:
        CapacityError: If degree_cap asks for coefficients f does not carry
    """
    _require_single(f, "Determining series")
    cap = 2 * f.degree_cap if degree_cap is None else degree_cap
    if cap > 2 * f.degree_cap + 1:
        raise CapacityError(
            f"Determining series of cap {f.degree_cap} only fixes pair degree "
            f"{2 * f.degree_cap + 1}, asked for {cap}"
        )
    store: Dict[Word, GaussianRational] = {}
    for k in range(1, cap // 2 + 1):
        value = f.coef((1,) * k)
        if value:
            store[alternating_word(2 * k, 1)] = value
            store[alternating_word(2 * k, 2)] = value
    return NCSeries(2, cap, store)


def is_diagonally_balanced_cumulants(pair: PairSeries) -> bool:
    """Coefficients of every odd alternating word vanish up to the cap."""
    _require_pair(pair)
    for length in range(1, pair.degree_cap + 1, 2):
        for first in (1, 2):
            if pair.coef(alternating_word(length, first)):
                return False
    return True


def _alternating_elements(a1: Element, a2: Element, length: int, first: int) -> List[Element]:
    names = (a1, a2) if first == 1 else (a2, a1)
    return [names[i % 2] for i in range(length)]


def _element_degree(space: FreeSpace, a1: Element, a2: Element, degree: Optional[int]) -> int:
    longest = max(len(as_product(a1)), len(as_product(a2)))
    if degree is None:
        degree = space.degree_cap // longest
    if degree < 1:
        raise CapacityError(f"Elements of length {longest} do not fit cap {space.degree_cap}")
    return degree


def is_diagonally_balanced_moments(
    space: FreeSpace, a1: Element, a2: Element, degree: Optional[int] = None
) -> bool:
    """
    phi(a_1 a_2 ... a_1) = phi(a_2 a_1 ... a_2) = 0 for every odd length <= degree.

    Args:
        degree: Longest alternating product, counted in elements (default:
            as many as the space's cap allows)

    Raises:
        CapacityError: If an alternating product does not fit under the cap
    """
    degree = _element_degree(space, a1, a2, degree)
    for length in range(1, degree + 1, 2):
        for first in (1, 2):
            if mixed_moment(space, _alternating_elements(a1, a2, length, first)):
                logger.debug(
                    "odd alternating moment of length %d (first=%d) is non-zero", length, first
                )
                return False
    return True


def vanishing_powers(
    space: FreeSpace, a1: Element, a2: Element, degree: Optional[int] = None
) -> bool:
    """phi(a_1^n) = phi(a_2^n) = 0 for 1 <= n <= degree."""
    degree = _element_degree(space, a1, a2, degree)
    for n in range(1, degree + 1):
        if mixed_moment(space, [a1] * n) or mixed_moment(space, [a2] * n):
            return False
    return True


def determining_from_product(
    space: FreeSpace, a1: Element, a2: Element, degree: Optional[int] = None
) -> DeterminingSeries:
    """
    f = R(mu_{a_1 a_2}) * Moeb for a diagonally balanced pair in a tracial space.

    Args:
        space: Tracial FreeSpace
        a1, a2: Elements of the space
        degree: Cap of the result (default: as large as the space allows)

    Returns:
        1-variable series; for an R-diagonal pair it is the determining series

    Raises:
        DomainError: If the space is not tracial or the pair is not balanced
        CapacityError: If the requested degree does not fit
    """
    if not space.tracial:
        raise DomainError("determining_from_product needs a tracial space")
    if not is_diagonally_balanced_moments(space, a1, a2):
        raise DomainError(f"({a1}, {a2}) is not diagonally balanced")
    product_element = as_product(a1) + as_product(a2)
    r_product = joint_r_of(space, [product_element], degree)
    return boxstar(r_product, moeb_series(1, r_product.degree_cap))


def absorb(f: DeterminingSeries, r_p: NCSeries) -> DeterminingSeries:
    """
    g = f * R(mu_{p_1 p_2}): determining series of (a_1 p_1, p_2 a_2).

    Raises:
        DomainError: If either series is not 1-variable or the caps differ
    """
    _require_single(f, "Determining series")
    _require_single(r_p, "R-series of p_1 p_2")
    return boxstar(f, r_p)


def polar_determining(r_p2: NCSeries) -> DeterminingSeries:
    """Determining series Moeb * R(mu_{p p}) of (u p, p u^-1) with u Haar and free from p."""
    _require_single(r_p2, "R-series of p p")
    return boxstar(moeb_series(1, r_p2.degree_cap), r_p2)


# ============================================================================
# Canonical pairs and distributions
# ============================================================================

def haar_pair_r(degree_cap: int) -> PairSeries:
    """R-series of (u, u^-1) for a Haar unitary: alpha_k = (-1)^(k+1) C_{k-1}."""
    if degree_cap < 2:
        raise DomainError(f"Pair degree cap must be at least 2, got {degree_cap}")
    moeb = [moeb_coefficient(k) for k in range(1, degree_cap // 2 + 1)]
    return pair_from_determining(single_variable(moeb), degree_cap)


def circular_pair_r(degree_cap: int) -> PairSeries:
    """R-series z_1 z_2 + z_2 z_1 of (c, c*) for a circular c."""
    if degree_cap < 2:
        raise DomainError(f"Pair degree cap must be at least 2, got {degree_cap}")
    return NCSeries(2, degree_cap, {(1, 2): 1, (2, 1): 1})


def semicircular_moments(degree: int) -> List[Fraction]:
    """[m_1, ..., m_degree] of the standard semicircular: m_{2k} = C_k, odd moments 0."""
    if degree < 1:
        raise DomainError(f"Degree must be positive, got {degree}")
    return [
        Fraction(catalan(k // 2)) if k % 2 == 0 else Fraction(0)
        for k in range(1, degree + 1)
    ]


def quartercircular_moment(k: int) -> Fraction:
    """
    Even moment of the quarter-circular distribution on [0, 2].

    Even moments agree with the semicircular ones. Odd moments are
    rational multiples of 1/pi and are not exact rationals.

    Raises:
        UnsupportedValueError: If k is odd
    """
    if k < 1:
        raise DomainError(f"Moment order must be positive, got {k}")
    if k % 2:
        raise UnsupportedValueError(f"Quarter-circular moment of odd order {k} is not rational")
    return Fraction(catalan(k // 2))


def quartercircular_moments(degree: int) -> Dict[int, Fraction]:
    """{k: m_k} for the even orders k <= degree."""
    if degree < 1:
        raise DomainError(f"Degree must be positive, got {degree}")
    return {k: quartercircular_moment(k) for k in range(2, degree + 1, 2)}


# ============================================================================
# Real and imaginary parts
# ============================================================================

def eq113_series(beta: DeterminingSeries, degree: Optional[int] = None) -> NCSeries:
    """
    Joint R-series of (Re a, Im a) for an R-diagonal a with determining series beta.

    Args:
        beta: Determining series of (a, a*)
        degree: Pair cap (default 2 * beta.degree_cap)
    """
    pair = pair_from_determining(beta, degree)
    return linear_substitute(pair, RE_IM_MATRIX)


def re_im_free(beta: DeterminingSeries) -> bool:
    """True iff the real and imaginary parts have no mixed cumulant up to the cap."""
    return not mixed_coefficients(eq113_series(beta), [0, 1])


def free_re_im_condition(r_p: NCSeries) -> bool:
    """
    True iff absorb(Moeb, r_p) is exactly z, i.e. u p has free real and
    imaginary parts.

    The answer is cross-checked against the real/imaginary change of
    variables, truncated to pair degree 6.

    Raises:
        ConsistencyError: If the two routes disagree
    """
    _require_single(r_p, "R-series of p p*")
    g = absorb(moeb_series(1, r_p.degree_cap), r_p)
    by_series = g.coef((1,)) == ONE and all(
        not g.coef((1,) * k) for k in range(2, g.degree_cap + 1)
    )

    beta = truncate(g, min(g.degree_cap, RE_IM_CHECK_CAP))
    by_substitution = re_im_free(beta)
    tail_vanishes = all(not beta.coef((1,) * k) for k in range(2, beta.degree_cap + 1))
    if by_substitution != tail_vanishes:
        raise ConsistencyError(
            f"re/im freeness by substitution ({by_substitution}) disagrees with "
            f"vanishing of beta_k, k >= 2 ({tail_vanishes})"
        )
    return by_series


# ============================================================================
# Random instances
# ============================================================================

def random_r_diagonal_pair(
    degree_cap: int, rng: random.Random
) -> Tuple[PairSeries, DeterminingSeries]:
    """
    Random R-diagonal pair series and its determining series.

    alpha_1 is never zero so that the pair is not degenerate.
    """
    if degree_cap < 2:
        raise DomainError(f"Pair degree cap must be at least 2, got {degree_cap}")
    alphas = [random_rational(rng) for _ in range(degree_cap // 2)]
    if not alphas[0]:
        alphas[0] = Fraction(1)
    f = single_variable(alphas)
    return pair_from_determining(f, degree_cap), f


def random_balanced_pair(degree_cap: int, rng: random.Random) -> PairSeries:
    """Random cyclically invariant pair series with every odd alternating necklace zero."""
    return random_tracial_series(2, degree_cap, rng, zero_if=is_odd_alternating)
