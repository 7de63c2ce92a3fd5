"""
Seeded instance builders for the verification suites.

Every builder takes an explicit random.Random, so an instance is fixed by
(seed, index). Spaces built here are tracial.
"""

import logging
import random
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from ncfree.core.freespace import FreeSpace, random_rational, random_tracial_series
from ncfree.core.ncseries import NCSeries, Word, words
from ncfree.core.rdiagonal import (
    DeterminingSeries,
    circular_pair_r,
    determining_from_product,
    haar_pair_r,
    pair_from_determining,
    random_balanced_pair,
    random_r_diagonal_pair,
)

logger = logging.getLogger(__name__)

# Names of the Haar family and of the p's and b's of the k-pair setting
HAAR = ("u", "ui")


def instance_rng(seed: int, index: int) -> random.Random:
    """Independent generator for instance `index` of a run seeded with `seed`."""
    return random.Random(f"ncfree/{seed}/{index}")


def lift(series: NCSeries, degree_cap: int) -> NCSeries:
    """The same coefficients under a larger degree cap."""
    return NCSeries(series.nvars, max(degree_cap, series.degree_cap), dict(series.coeffs))


def random_series(
    nvars: int, degree_cap: int, rng: random.Random, density: float = 0.5
) -> NCSeries:
    """Random series with no symmetry imposed."""
    store: Dict[Word, Fraction] = {}
    for word in words(nvars, degree_cap):
        if rng.random() < density:
            value = random_rational(rng)
            if value:
                store[word] = value
    return NCSeries(nvars, degree_cap, store)


def tracial_p_family(
    degree_cap: int, rng: random.Random, support: Optional[int] = None
) -> NCSeries:
    """
    Random cyclically invariant 2-variable series.

    Args:
        support: Longest word carrying a coefficient (default: the cap)
    """
    support = degree_cap if support is None else min(support, degree_cap)
    return lift(random_tracial_series(2, support, rng), degree_cap)


# ============================================================================
# R-diagonal pair plus a free pair
# ============================================================================

def r_diagonal_space(
    degree_cap: int, rng: random.Random, p_support: Optional[int] = None
) -> Tuple[FreeSpace, DeterminingSeries]:
    """
    Families {a1, a2} (R-diagonal) and {p1, p2} (random tracial).

    Returns:
        (space, determining series of (a1, a2))
    """
    pair, f = random_r_diagonal_pair(degree_cap, rng)
    p_family = tracial_p_family(degree_cap, rng, p_support)
    space = FreeSpace([("a1", "a2"), ("p1", "p2")], [pair, p_family], tracial=True)
    return space, f


def single_p_space(degree_cap: int, rng: random.Random) -> Tuple[FreeSpace, DeterminingSeries]:
    """Families {a1, a2} (R-diagonal) and {p} (random, one variable)."""
    pair, f = random_r_diagonal_pair(degree_cap, rng)
    p_series = NCSeries(
        1,
        degree_cap,
        {(1,) * k: random_rational(rng) for k in range(1, degree_cap + 1)},
    )
    space = FreeSpace([("a1", "a2"), ("p",)], [pair, p_series], tracial=True)
    return space, f


def balanced_space(degree_cap: int, rng: random.Random) -> FreeSpace:
    """Families {a1, a2} (diagonally balanced, not R-diagonal in general) and {p1, p2}."""
    pair = random_balanced_pair(degree_cap, rng)
    p_family = tracial_p_family(degree_cap, rng)
    return FreeSpace([("a1", "a2"), ("p1", "p2")], [pair, p_family], tracial=True)


def control_space(degree_cap: int) -> FreeSpace:
    """
    Circular (a1, a2) and p1 = p2 in distribution with R = z + z^2.

    (a1 p1, a2 p2) is not R-diagonal here: its cumulant on (1, 1, 2, 2) is 1.
    """
    p_family = NCSeries(
        2,
        degree_cap,
        {(1,): 1, (2,): 1, (1, 1): 1, (1, 2): 1, (2, 1): 1, (2, 2): 1},
    )
    return FreeSpace(
        [("a1", "a2"), ("p1", "p2")], [circular_pair_r(degree_cap), p_family], tracial=True
    )


def circular_space(degree_cap: int) -> FreeSpace:
    return FreeSpace([("c", "cs")], [circular_pair_r(degree_cap)], tracial=True)


def haar_space(degree_cap: int) -> FreeSpace:
    return FreeSpace([HAAR], [haar_pair_r(degree_cap)], tracial=True)


def polar_space(degree_cap: int, rng: random.Random) -> FreeSpace:
    """Haar {u, ui} and a free one-variable {p}."""
    p_series = NCSeries(
        1,
        degree_cap,
        {(1,) * k: random_rational(rng) for k in range(1, degree_cap + 1)},
    )
    return FreeSpace([HAAR, ("p",)], [haar_pair_r(degree_cap), p_series], tracial=True)


def product_space(degree_cap: int, rng: random.Random) -> FreeSpace:
    """Families {b1, b2} (diagonally balanced) and {a1, a2} (random tracial)."""
    b_pair = random_balanced_pair(degree_cap, rng)
    a_family = random_tracial_series(2, degree_cap, rng)
    return FreeSpace([("b1", "b2"), ("a1", "a2")], [b_pair, a_family], tracial=True)


# ============================================================================
# Haar unitary with k diagonally balanced pairs
# ============================================================================

def p_names(k: int) -> List[Tuple[str, str]]:
    return [(f"p{j}1", f"p{j}2") for j in range(1, k + 1)]


def b_names(k: int) -> List[Tuple[str, str]]:
    return [(f"b{j}1", f"b{j}2") for j in range(1, k + 1)]


def a_elements(k: int) -> List[Tuple[str, str]]:
    """(a_{j,1}, a_{j,2}) = (p_{j,1} u^-1, u p_{j,2})."""
    return [(f"{p1}*ui", f"u*{p2}") for p1, p2 in p_names(k)]


def statement_elements(k: int) -> List[Tuple[str, str]]:
    """(u p_{j,1}, p_{j,2} u^-1), the pairs as they appear in the freeness statement."""
    return [(f"u*{p1}", f"{p2}*ui") for p1, p2 in p_names(k)]


def haar_pairs_space(degree_cap: int, rng: random.Random, k: int = 2) -> FreeSpace:
    """Haar {u, ui} free from k random diagonally balanced pairs {p_j1, p_j2}."""
    families: List[Sequence[str]] = [HAAR]
    series = [haar_pair_r(degree_cap)]
    for names in p_names(k):
        families.append(names)
        series.append(random_balanced_pair(degree_cap, rng))
    return FreeSpace(families, series, tracial=True)


def pair_determining_series(space: FreeSpace, k: int) -> List[DeterminingSeries]:
    """f_j = R(mu_{p_j1 p_j2}) * Moeb for every pair of a haar_pairs_space."""
    return [determining_from_product(space, p1, p2) for p1, p2 in p_names(k)]


def free_copy_space(fs: Sequence[DeterminingSeries], degree_cap: int) -> FreeSpace:
    """Free R-diagonal pairs {b_j1, b_j2} with determining series f_j."""
    pairs = [pair_from_determining(f, degree_cap) for f in fs]
    return FreeSpace(b_names(len(fs)), pairs, tracial=True)
