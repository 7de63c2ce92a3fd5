"""
Epsilon strings, their circular layout, and the complementation maps C_Q, C_R.

For eps = (l_1, ..., l_m) with l_1 = 1 the circle carries 3m ordinal
slots. P_i sits on slot 3(i-1). Q_i sits one slot after P_i when
l_i = 1 and one slot before it when l_i = 2. The Q's with l_i = 1 are
red and are renamed R_1, ..., R_n in clockwise order from Q_1.

Two chords meet iff their endpoints interleave, so for sigma in NC(m):

    i ~ j in C_Q(sigma)  iff  no block of sigma with >= 2 elements has
                              P-points on both open arcs cut by Q_i, Q_j

and C_R(sigma) is the same rule on the red points only. Singleton
blocks cut nothing.

Example (eps = 1212, m = 4):
    slots  0  1  2  3  4  5  6  7  8  9 10 11
           P1 Q1 Q2 P2 .  .  P3 Q3 Q4 P4 .  .
    C_Q({1,2,3,4}) = {1,2}{3,4}, C_R({1,2,3,4}) = {1}{2}
"""

import logging
from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Dict, List, Optional, Sequence, Tuple

from ncfree.core.freespace import (
    Element,
    FreeSpace,
    as_product,
    haar_word_moment,
    joint_r_of,
    mixed_moment,
    moment_series,
)
from ncfree.core.ncpart import Partition, enumerate_nc, is_noncrossing
from ncfree.core.ncseries import NCSeries, coef_partition
from ncfree.errors import CapacityError, ConsistencyError, DomainError
from ncfree.utils.gaussian import ONE, ZERO, GaussianRational

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class EpsString:
    """A string over {1, 2} starting with 1.

    Attributes:
        letters: (l_1, ..., l_m)
    """

    letters: Tuple[int, ...]

    def __post_init__(self):
        letters = tuple(int(x) for x in self.letters)
        object.__setattr__(self, "letters", letters)
        if not letters:
            raise DomainError("Epsilon strings must be non-empty")
        if any(x not in (1, 2) for x in letters):
            raise DomainError(f"Epsilon letters must be 1 or 2, got {letters}")
        if letters[0] != 1:
            raise DomainError(f"Epsilon strings start with 1, got {letters}")

    @property
    def m(self) -> int:
        return len(self.letters)

    @property
    def n(self) -> int:
        """Number of 1s."""
        return sum(1 for x in self.letters if x == 1)

    @property
    def balanced(self) -> bool:
        return 2 * self.n == self.m

    def __str__(self) -> str:
        return "".join(str(x) for x in self.letters)


def lambdas(eps: EpsString) -> Tuple[int, ...]:
    """lambda_i = -1 where l_i = 1 and +1 where l_i = 2."""
    return tuple(-1 if x == 1 else 1 for x in eps.letters)


def eps_strings(m: int) -> List[EpsString]:
    """Every eps of length m (l_1 = 1), in lexicographic order."""
    if m < 1:
        raise DomainError(f"Epsilon length must be positive, got {m}")
    return [EpsString((1,) + rest) for rest in product((1, 2), repeat=m - 1)]


def balanced_eps_strings(m: int) -> List[EpsString]:
    """Eps strings of length m with as many 1s as 2s (empty for odd m)."""
    return [eps for eps in eps_strings(m) if eps.balanced]


# ============================================================================
# Layout
# ============================================================================

@dataclass(frozen=True)
class CircularLayout:
    """Ordinal positions of the P, Q and R markers.

    Attributes:
        eps: The string the layout was built from
        slots: Number of slots on the circle (3m)
        p_slot: p_slot[i - 1] is the slot of P_i
        q_slot: q_slot[i - 1] is the slot of Q_i
        red: red[j - 1] is the i with R_j = Q_i
    """

    eps: EpsString
    slots: int
    p_slot: Tuple[int, ...]
    q_slot: Tuple[int, ...]
    red: Tuple[int, ...]

    def order(self) -> List[str]:
        """Marker labels in clockwise order starting from P_1."""
        labels: Dict[int, str] = {}
        for i, s in enumerate(self.p_slot, 1):
            labels[s] = f"P{i}"
        for i, s in enumerate(self.q_slot, 1):
            labels[s] = f"Q{i}"
        return [labels[s] for s in sorted(labels)]

    def red_label(self, i: int) -> Optional[int]:
        """j with Q_i = R_j, or None for a blue Q_i."""
        try:
            return self.red.index(i) + 1
        except ValueError:
            return None


@lru_cache(maxsize=None)
def build_layout(eps: EpsString) -> CircularLayout:
    m = eps.m
    slots = 3 * m
    p_slot = tuple(3 * (i - 1) for i in range(1, m + 1))
    q_slot = tuple(
        (3 * (i - 1) + 1) if letter == 1 else (3 * (i - 1) - 1) % slots
        for i, letter in enumerate(eps.letters, 1)
    )
    red = tuple(i for i, letter in enumerate(eps.letters, 1) if letter == 1)
    return CircularLayout(eps, slots, p_slot, q_slot, red)


@lru_cache(maxsize=None)
def _arc_masks(eps: EpsString) -> Tuple[Tuple[int, ...], ...]:
    """mask[i][j]: bitmask of the P's strictly on the clockwise arc Q_i -> Q_j."""
    layout = build_layout(eps)
    m = eps.m
    masks = []
    for i in range(m):
        row = []
        for j in range(m):
            start, stop = layout.q_slot[i], layout.q_slot[j]
            mask = 0
            for h, s in enumerate(layout.p_slot):
                if (s - start) % layout.slots < (stop - start) % layout.slots:
                    mask |= 1 << h
            row.append(mask)
        masks.append(tuple(row))
    return tuple(masks)


def _check_sigma(sigma: Partition, eps: EpsString) -> None:
    if sigma.n != eps.m:
        raise DomainError(f"Partition of {{1..{sigma.n}}} used with an eps of length {eps.m}")


def _complement(sigma: Partition, eps: EpsString, markers: Sequence[int]) -> Partition:
    """Classes of the non-separation relation on the given Q indices."""
    masks = _arc_masks(eps)
    chords = [sum(1 << (h - 1) for h in b) for b in sigma.blocks if len(b) >= 2]
    k = len(markers)

    related = [[True] * k for _ in range(k)]
    for a in range(k):
        for b in range(a + 1, k):
            arc = masks[markers[a] - 1][markers[b] - 1]
            for chord in chords:
                inside = chord & arc
                if inside and inside != chord:
                    related[a][b] = related[b][a] = False
                    break

    parent = list(range(k))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a in range(k):
        for b in range(a + 1, k):
            if related[a][b]:
                parent[find(a)] = find(b)

    groups: Dict[int, List[int]] = {}
    for a in range(k):
        groups.setdefault(find(a), []).append(a)
    for members in groups.values():
        for a in members:
            for b in members:
                if not related[a][b]:
                    raise ConsistencyError(
                        f"Separation relation is not transitive for sigma={sigma}, eps={eps}"
                    )
    return Partition(k, [[a + 1 for a in members] for members in groups.values()])


def cq(sigma: Partition, eps: EpsString) -> Partition:
    """
    C_Q(sigma) on {1..m}.

    Raises:
        DomainError: If sigma and eps have different sizes
        ConsistencyError: If the pairwise relation fails to be transitive
    """
    _check_sigma(sigma, eps)
    return _complement(sigma, eps, list(range(1, eps.m + 1)))


def cr(sigma: Partition, eps: EpsString) -> Partition:
    """C_R(sigma) on {1..n}, the red points indexed by their R-labels."""
    _check_sigma(sigma, eps)
    return _complement(sigma, eps, list(build_layout(eps).red))


def red_matching(
    sigma: Partition, eps: EpsString
) -> List[Tuple[Tuple[int, ...], Tuple[int, ...]]]:
    """
    Pairs (B, A) matching each block B of C_Q(sigma) with the block A of
    C_R(sigma) formed by the R-labels of its red points (A is () when B
    holds no red point).

    Raises:
        ConsistencyError: If the red points of a C_Q block do not form a C_R block
    """
    layout = build_layout(eps)
    q_blocks = cq(sigma, eps)
    r_blocks = set(cr(sigma, eps).blocks)
    pairs = []
    for block in q_blocks.blocks:
        reds = tuple(sorted(j for j in (layout.red_label(i) for i in block) if j is not None))
        if reds and reds not in r_blocks:
            raise ConsistencyError(
                f"Red points {reds} of C_Q block {block} are not a C_R block (sigma={sigma})"
            )
        pairs.append((block, reds))
    return pairs


# ============================================================================
# Eps-alternating partitions
# ============================================================================

def is_eps_alternating(sigma: Partition, eps: EpsString) -> bool:
    """
    Every block, read cyclically, alternates between letters 1 and 2.

    Evaluated both on consecutive pairs and on the restricted tuple.

    Raises:
        ConsistencyError: If the two forms disagree
    """
    _check_sigma(sigma, eps)
    letters = eps.letters
    by_pairs = all(
        letters[a - 1] != letters[b - 1]
        for block in sigma.blocks
        for a, b in zip(block, block[1:] + block[:1])
    )
    by_restriction = True
    for block in sigma.blocks:
        restricted = tuple(letters[i - 1] for i in block)
        size = len(restricted)
        if size % 2 or restricted not in ((1, 2) * (size // 2), (2, 1) * (size // 2)):
            by_restriction = False
            break
    if by_pairs != by_restriction:
        raise ConsistencyError(f"eps-alternating forms disagree on {sigma}, eps={eps}")
    return by_pairs


def enumerate_eps_alternating(eps: EpsString) -> List[Partition]:
    return [sigma for sigma in enumerate_nc(eps.m) if is_eps_alternating(sigma, eps)]


def _odd_cyclic_alternating(restricted: Tuple[int, ...]) -> bool:
    size = len(restricted)
    if size % 2 == 0:
        return False
    for shift in range(size):
        rotated = restricted[shift:] + restricted[:shift]
        if all(a != b for a, b in zip(rotated, rotated[1:])):
            return True
    return False


def prop_811_conditions(sigma: Partition, eps: EpsString) -> bool:
    """
    No singleton block, no odd block whose restriction is a rotation of an
    alternating word, and every block of C_Q(sigma) even.
    """
    _check_sigma(sigma, eps)
    if any(len(b) == 1 for b in sigma.blocks):
        return False
    for block in sigma.blocks:
        if _odd_cyclic_alternating(tuple(eps.letters[i - 1] for i in block)):
            return False
    return all(len(b) % 2 == 0 for b in cq(sigma, eps).blocks)


def verify_prop_811(sigma: Partition, eps: EpsString) -> bool:
    """
    True iff is_eps_alternating(sigma, eps) agrees with prop_811_conditions.

    Raises:
        DomainError: If eps is not balanced
    """
    if not eps.balanced:
        raise DomainError(f"eps={eps} is not balanced")
    return is_eps_alternating(sigma, eps) == prop_811_conditions(sigma, eps)


# ============================================================================
# Interleaved monomials
# ============================================================================

def insertion_positions(eps: EpsString) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
    """
    (I, J) inside {1..2m} for the monomial x_{l_1} ... x_{l_m} with
    x_1 = a_1 p_1 and x_2 = p_2 a_2: I holds the a's, J the p's.
    """
    positions_a = []
    positions_p = []
    for i, letter in enumerate(eps.letters, 1):
        if letter == 1:
            positions_a.append(2 * i - 1)
            positions_p.append(2 * i)
        else:
            positions_p.append(2 * i - 1)
            positions_a.append(2 * i)
    return tuple(positions_a), tuple(positions_p)


def interleave_noncrossing(sigma: Partition, tau: Partition, eps: EpsString) -> bool:
    """sigma carried onto I and tau onto J together form a non-crossing partition."""
    _check_sigma(sigma, eps)
    _check_sigma(tau, eps)
    positions_a, positions_p = insertion_positions(eps)
    blocks = [tuple(positions_a[x - 1] for x in b) for b in sigma.blocks]
    blocks.extend(tuple(positions_p[x - 1] for x in b) for b in tau.blocks)
    return is_noncrossing(blocks, 2 * eps.m)


# ============================================================================
# NC(m) sums
# ============================================================================

def _require_cap(series: NCSeries, needed: int, what: str) -> None:
    if series.degree_cap < needed:
        raise CapacityError(f"{what} has cap {series.degree_cap}, needs {needed}")


def eq72_rhs(eps: EpsString, r_a: NCSeries, m_p: NCSeries) -> GaussianRational:
    """
    sum over sigma in NC(m) of coef(eps; sigma)(R_a) * coef(eps; C_Q(sigma))(M_p).

    Args:
        r_a: Joint R-series of (a_1, a_2)
        m_p: Joint moment series of (p_1, p_2)
    """
    _require_cap(r_a, eps.m, "R-series of (a_1, a_2)")
    _require_cap(m_p, eps.m, "Moment series of (p_1, p_2)")
    total = ZERO
    for sigma in enumerate_nc(eps.m):
        left = coef_partition(r_a, eps.letters, sigma)
        if left:
            total = total + left * coef_partition(m_p, eps.letters, cq(sigma, eps))
    return total


def eq73_rhs(eps: EpsString, r_a: NCSeries, m_pp: NCSeries) -> GaussianRational:
    """
    sum over sigma in NC(m) of coef(eps; sigma)(R_a) * coef((1)^n; C_R(sigma))(M_{p_1 p_2}).

    Args:
        m_pp: 1-variable moment series of the product p_1 p_2
    """
    _require_cap(r_a, eps.m, "R-series of (a_1, a_2)")
    _require_cap(m_pp, eps.n, "Moment series of p_1 p_2")
    ones = (1,) * eps.n
    total = ZERO
    for sigma in enumerate_nc(eps.m):
        left = coef_partition(r_a, eps.letters, sigma)
        if left:
            total = total + left * coef_partition(m_pp, ones, cr(sigma, eps))
    return total


def family_word(eps: EpsString, heights: Sequence[int]) -> Tuple[int, ...]:
    """Letters 2(h_i - 1) + l_i of the variables z_{h_i, l_i}."""
    if len(heights) != eps.m:
        raise DomainError(f"{len(heights)} heights for an eps of length {eps.m}")
    if any(h < 1 for h in heights):
        raise DomainError(f"Heights must be positive, got {tuple(heights)}")
    return tuple(2 * (h - 1) + letter for h, letter in zip(heights, eps.letters))


def eq86_rhs(eps: EpsString, heights: Sequence[int], r_p: NCSeries) -> GaussianRational:
    """
    sum over sigma of coef(word; sigma)(R_p) * coef(lambda; C_Q(sigma))(M(u, u^-1)).

    The Haar moments are read off the free-group reduction of the lambda word.

    Args:
        heights: h_1..h_m, the pair index of each factor
        r_p: Joint R-series of p_{1,1}, p_{1,2}, ..., p_{k,1}, p_{k,2}
    """
    word = family_word(eps, heights)
    _require_cap(r_p, eps.m, "R-series of the p's")
    signs = lambdas(eps)
    total = ZERO
    for sigma in enumerate_nc(eps.m):
        left = coef_partition(r_p, word, sigma)
        if not left:
            continue
        weight = ONE
        for block in cq(sigma, eps).blocks:
            if not haar_word_moment([signs[i - 1] for i in block]):
                weight = ZERO
                break
        total = total + left * weight
    return total


def eq87_rhs(eps: EpsString, heights: Sequence[int], r_b: NCSeries) -> GaussianRational:
    """sum over sigma of coef(word; sigma)(R_b): the moment of the b-word."""
    word = family_word(eps, heights)
    _require_cap(r_b, eps.m, "R-series of the b's")
    total = ZERO
    for sigma in enumerate_nc(eps.m):
        total = total + coef_partition(r_b, word, sigma)
    return total


# ============================================================================
# Moments of the x and y words
# ============================================================================

def x_word(eps: EpsString, a1: Element, a2: Element, p1: Element, p2: Element) -> List[Element]:
    """x_{l_1} ... x_{l_m} with x_1 = a_1 p_1, x_2 = p_2 a_2."""
    x1 = as_product(a1) + as_product(p1)
    x2 = as_product(p2) + as_product(a2)
    return [x1 if letter == 1 else x2 for letter in eps.letters]


def y_word(eps: EpsString, a1: Element, a2: Element, p1: Element, p2: Element) -> List[Element]:
    """y_{l_1} ... y_{l_m} with y_1 = a_1 p_1 p_2, y_2 = a_2."""
    y1 = as_product(a1) + as_product(p1) + as_product(p2)
    y2 = as_product(a2)
    return [y1 if letter == 1 else y2 for letter in eps.letters]


@dataclass(frozen=True)
class InterleavedMoments:
    """Moments of the x- and y-words next to their NC(m) sums.

    Attributes:
        eps: The string
        x_moment: phi(x_{l_1} ... x_{l_m})
        x_sum: NC(m) sum over R(mu_{a1, a2}) and M(mu_{p1, p2})
        y_moment: phi(y_{l_1} ... y_{l_m})
        y_sum: NC(m) sum over R(mu_{a1, a2}) and M(mu_{p1 p2})
    """

    eps: EpsString
    x_moment: GaussianRational
    x_sum: GaussianRational
    y_moment: GaussianRational
    y_sum: GaussianRational

    @property
    def holds(self) -> bool:
        return self.x_moment == self.x_sum and self.y_moment == self.y_sum


def check_interleaving_space(
    eps: EpsString,
    space: FreeSpace,
    a: Tuple[Element, Element] = ("a1", "a2"),
    p: Tuple[Element, Element] = ("p1", "p2"),
) -> None:
    """
    Raises:
        DomainError: If the space is not tracial or a and p share a family
        CapacityError: If the y-word does not fit under the degree cap
    """
    if not space.tracial:
        raise DomainError("Interleaved words need a tracial space")
    a_families = {space.locate(name)[0] for e in a for name in as_product(e)}
    p_families = {space.locate(name)[0] for e in p for name in as_product(e)}
    if a_families & p_families:
        raise DomainError("{a_1, a_2} and {p_1, p_2} must live in different families")

    needed = max(2 * eps.m, eps.m + 2 * eps.n)
    if needed > space.degree_cap:
        raise CapacityError(f"eps={eps} needs degree {needed} > cap {space.degree_cap}")


def x_word_sides(
    eps: EpsString,
    space: FreeSpace,
    a: Tuple[Element, Element] = ("a1", "a2"),
    p: Tuple[Element, Element] = ("p1", "p2"),
) -> Tuple[GaussianRational, GaussianRational]:
    """(phi(x_{l_1}...x_{l_m}), its NC(m) sum); the space is assumed checked."""
    r_a = joint_r_of(space, list(a), eps.m)
    m_p = moment_series(space, list(p), eps.m).series
    return mixed_moment(space, x_word(eps, *a, *p)), eq72_rhs(eps, r_a, m_p)


def y_word_sides(
    eps: EpsString,
    space: FreeSpace,
    a: Tuple[Element, Element] = ("a1", "a2"),
    p: Tuple[Element, Element] = ("p1", "p2"),
) -> Tuple[GaussianRational, GaussianRational]:
    """(phi(y_{l_1}...y_{l_m}), its NC(m) sum); the space is assumed checked."""
    r_a = joint_r_of(space, list(a), eps.m)
    m_pp = moment_series(space, [as_product(p[0]) + as_product(p[1])], eps.n).series
    return mixed_moment(space, y_word(eps, *a, *p)), eq73_rhs(eps, r_a, m_pp)


def verify_eq72_73(
    eps: EpsString,
    space: FreeSpace,
    a: Tuple[Element, Element] = ("a1", "a2"),
    p: Tuple[Element, Element] = ("p1", "p2"),
) -> InterleavedMoments:
    """
    Compute phi(x_{l_1}...x_{l_m}) and phi(y_{l_1}...y_{l_m}) with their NC(m) sums.

    Args:
        eps: The string
        space: Tracial space with {a_1, a_2} free from {p_1, p_2}
        a: Names of a_1, a_2
        p: Names of p_1, p_2

    Raises:
        DomainError: If the space is not tracial or a and p share a family
        CapacityError: If the y-word does not fit under the degree cap
    """
    check_interleaving_space(eps, space, a, p)
    x_moment, x_sum = x_word_sides(eps, space, a, p)
    y_moment, y_sum = y_word_sides(eps, space, a, p)
    if x_moment != x_sum or y_moment != y_sum:
        logger.debug("eps=%s: x %s vs %s, y %s vs %s", eps, x_moment, x_sum, y_moment, y_sum)
    return InterleavedMoments(eps, x_moment, x_sum, y_moment, y_sum)
