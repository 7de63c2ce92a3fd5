"""
Symbolic non-commutative probability spaces.

A FreeSpace holds named variables grouped into mutually free families.
Each family carries its joint R-series (free cumulants); the joint
R-series of all variables has no coefficient that mixes two families.
Moments, transforms and freeness checks are exact computations on that
cumulant data.

Elements of a space are variable names or formal products of them,
written either as tuples of names or as strings "a*b*c". Products are
expanded into words before anything is computed.
"""

import logging
import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from typing import Callable, Dict, List, Optional, Sequence, Tuple, Union

from ncfree.core.ncpart import enumerate_nc, kreweras
from ncfree.core.ncseries import (
    NCSeries,
    Word,
    boxstar,
    moeb_coefficient,
    moeb_series,
    plain_number,
    words,
    zeta_series,
)
from ncfree.errors import CapacityError, ConsistencyError, DomainError
from ncfree.utils.gaussian import ONE, ZERO, GaussianRational

logger = logging.getLogger(__name__)

Element = Union[str, Sequence[str]]
Product = Tuple[str, ...]
# (c tuple, x tuple, left side, right side)
CriterionFailure = Tuple[
    Tuple[Product, ...], Tuple[Product, ...], GaussianRational, GaussianRational
]


def as_product(element: Element) -> Tuple[str, ...]:
    """Normalize an element to the tuple of variable names it multiplies."""
    if isinstance(element, str):
        names = tuple(part.strip() for part in element.split("*"))
    else:
        names = tuple(element)
    if not names or any(not name for name in names):
        raise DomainError(f"Malformed element {element!r}")
    return names


# ============================================================================
# Moment functionals and transforms
# ============================================================================

@dataclass(frozen=True)
class MomentFunctional:
    """The moment series M(mu); the empty word has moment 1 implicitly."""

    series: NCSeries

    @property
    def nvars(self) -> int:
        return self.series.nvars

    @property
    def degree_cap(self) -> int:
        return self.series.degree_cap

    def moment(self, word: Sequence[int]) -> GaussianRational:
        if len(word) == 0:
            return ONE
        return self.series.coef(word)


def r_from_m(moments: MomentFunctional) -> NCSeries:
    """R(mu) = M(mu) * Moeb."""
    series = moments.series
    return boxstar(series, moeb_series(series.nvars, series.degree_cap))


def r_from_m_recursive(moments: MomentFunctional) -> NCSeries:
    """
    R(mu) without the boxed-star product.

    Words are processed shortest first, using

        kappa(w) = m(w) - sum over blocks B containing position 1, B != all,
                   of kappa(w|B) * prod of the moments of the gaps of B.

    Much faster than r_from_m when many moments vanish.
    """
    series = moments.series
    mmap = {w: plain_number(v) for w, v in series.coeffs.items()}
    kappa: Dict[Word, object] = {}
    for word in words(series.nvars, series.degree_cap):
        k = len(word)
        total = mmap.get(word, 0)
        for block, weight in _first_blocks(word, mmap):
            if len(block) == k:
                continue
            value = kappa.get(tuple(word[i] for i in block), 0)
            if value:
                total = total - value * weight
        if total:
            kappa[word] = total
    return NCSeries(series.nvars, series.degree_cap, kappa)


def _first_blocks(word: Word, mmap: Dict[Word, object]):
    """
    (block, weight) for every block containing position 0 whose gaps all
    have non-zero moments; weight is the product of those gap moments.
    """
    k = len(word)

    def extend(last: int, chosen: Tuple[int, ...], weight):
        tail = word[last + 1:]
        closing = mmap.get(tail, 0) if tail else 1
        if closing:
            yield chosen, weight * closing
        for j in range(last + 1, k):
            gap = word[last + 1:j]
            value = mmap.get(gap, 0) if gap else 1
            if value:
                yield from extend(j, chosen + (j,), weight * value)

    yield from extend(0, (0,), 1)


def moments_by_partition_sum(r_series: NCSeries) -> NCSeries:
    """
    Moment series from cumulants by the explicit sum over NC(k).

    M_w = sum over pi in NC(len w) of prod over blocks of coef(w|B)(R).
    Used as an oracle for m_from_r.
    """
    rmap = r_series._coeffs
    store: Dict[Word, GaussianRational] = {}
    for k in range(1, r_series.degree_cap + 1):
        shapes = [tuple(tuple(x - 1 for x in b) for b in pi.blocks) for pi in enumerate_nc(k)]
        for word in words(r_series.nvars, k, k):
            cache: Dict[Tuple[int, ...], GaussianRational] = {}
            total = ZERO
            for blocks in shapes:
                term = ONE
                for block in blocks:
                    value = cache.get(block)
                    if value is None:
                        value = rmap.get(tuple(word[i] for i in block), ZERO)
                        cache[block] = value
                    if not value:
                        term = ZERO
                        break
                    term = term * value
                if term:
                    total = total + term
            if total:
                store[word] = total
    return NCSeries(r_series.nvars, r_series.degree_cap, store)


def m_from_r(r_series: NCSeries, cross_check: bool = False) -> MomentFunctional:
    """
    M(mu) = R(mu) * Zeta.

    Args:
        r_series: Cumulant series
        cross_check: Also evaluate the explicit NC(k) sum and compare

    Raises:
        ConsistencyError: If cross_check is set and the two routes differ
    """
    moments = boxstar(r_series, zeta_series(r_series.nvars, r_series.degree_cap))
    if cross_check:
        oracle = moments_by_partition_sum(r_series)
        if oracle != moments:
            raise ConsistencyError("boxstar route and partition-sum route give different moments")
    return MomentFunctional(moments)


# ============================================================================
# Free spaces
# ============================================================================

def is_cyclically_invariant(series: NCSeries) -> bool:
    """Every coefficient is unchanged by cyclic rotation of its word."""
    for word, value in series.coeffs.items():
        for shift in range(1, len(word)):
            if series.coeffs.get(word[shift:] + word[:shift], ZERO) != value:
                return False
    return True


class FreeSpace:
    """Named variables in mutually free families with prescribed cumulants.

    Attributes:
        variables: All variable names, family by family
        families: Tuple of name tuples
        family_r: Joint R-series of each family, letters indexing the family's names
        degree_cap: Shared degree cap D
        tracial: Whether each family's cumulants are cyclically invariant
    """

    def __init__(
        self,
        families: Sequence[Sequence[str]],
        family_r: Sequence[NCSeries],
        tracial: bool = False,
    ):
        if not families:
            raise DomainError("A free space needs at least one family")
        if len(families) != len(family_r):
            raise DomainError(f"{len(families)} families but {len(family_r)} R-series")

        caps = {r.degree_cap for r in family_r}
        if len(caps) != 1:
            raise DomainError(f"Family R-series use different degree caps {sorted(caps)}")

        self.families: Tuple[Tuple[str, ...], ...] = tuple(tuple(f) for f in families)
        self.family_r: Tuple[NCSeries, ...] = tuple(family_r)
        self.degree_cap: int = caps.pop()
        self.tracial: bool = tracial

        self._where: Dict[str, Tuple[int, int]] = {}
        for index, (names, series) in enumerate(zip(self.families, self.family_r)):
            if not names:
                raise DomainError(f"Family {index} is empty")
            if series.nvars != len(names):
                raise DomainError(
                    f"Family {names} has {len(names)} variables but its R-series has "
                    f"{series.nvars}"
                )
            for letter, name in enumerate(names, 1):
                if name in self._where:
                    raise DomainError(f"Variable '{name}' appears in more than one family")
                if "*" in name:
                    raise DomainError(f"Variable names cannot contain '*': '{name}'")
                self._where[name] = (index, letter)
            if tracial and not is_cyclically_invariant(series):
                raise DomainError(f"Family {names} is flagged tracial but is not cyclic")

        self.variables: Tuple[str, ...] = tuple(n for f in self.families for n in f)
        self._memo: Dict[Tuple[str, ...], GaussianRational] = {}

    def __repr__(self) -> str:
        return (
            f"FreeSpace(families={list(self.families)}, D={self.degree_cap}, "
            f"tracial={self.tracial})"
        )

    def locate(self, name: str) -> Tuple[int, int]:
        """(family index, letter inside the family) of a variable."""
        try:
            return self._where[name]
        except KeyError:
            raise DomainError(f"Unknown variable '{name}'")

    def expand(self, elements: Sequence[Element]) -> Tuple[str, ...]:
        """Concatenate the variable words of a sequence of elements."""
        word: List[str] = []
        for element in elements:
            word.extend(as_product(element))
        for name in word:
            self.locate(name)
        return tuple(word)

    def cumulant_of_word(self, word: Sequence[str]) -> GaussianRational:
        """Free cumulant of a word of variables: zero unless it stays in one family."""
        family, _ = self.locate(word[0])
        letters = []
        for name in word:
            f, letter = self.locate(name)
            if f != family:
                return ZERO
            letters.append(letter)
        return self.family_r[family].coef(letters)

    def moment_of_word(self, word: Tuple[str, ...]) -> GaussianRational:
        """
        Mixed moment of a word of variable names (no validation beyond lookups).

        The block of NC(k) containing the first position is chosen first;
        the gaps it leaves are contiguous subwords whose moments are
        memoized on the space.
        """
        if not word:
            return ONE
        cached = self._memo.get(word)
        if cached is not None:
            return cached

        k = len(word)
        first_family, _ = self._where[word[0]]
        series = self.family_r[first_family]
        letters = [self._where[name] for name in word]
        candidates = [i for i in range(1, k) if letters[i][0] == first_family]

        total = ZERO
        for size in range(len(candidates) + 1):
            for rest in combinations(candidates, size):
                block = (0,) + rest
                kappa = series._coeffs.get(tuple(letters[i][1] for i in block))
                if not kappa:
                    continue
                term = kappa
                bounds = block + (k,)
                for lo, hi in zip(bounds, bounds[1:]):
                    if hi - lo > 1:
                        gap = self.moment_of_word(word[lo + 1:hi])
                        if not gap:
                            term = ZERO
                            break
                        term = term * gap
                if term:
                    total = total + term

        self._memo[word] = total
        return total


def mixed_moment(space: FreeSpace, word: Sequence[Element]) -> GaussianRational:
    """
    phi of a product of variables (or formal products).

    Args:
        space: FreeSpace
        word: Sequence of variable names or products; empty gives 1

    Raises:
        DomainError: On an unknown variable
        CapacityError: If the expanded word is longer than the degree cap
    """
    expanded = space.expand(word)
    if len(expanded) > space.degree_cap:
        raise CapacityError(
            f"Moment of length {len(expanded)} needs degree {len(expanded)} > cap "
            f"{space.degree_cap}"
        )
    return space.moment_of_word(expanded)


def _derived_degree(space: FreeSpace, elements: Sequence[Element], degree: Optional[int]) -> int:
    if not elements:
        raise DomainError("Need at least one element")
    longest = max(len(as_product(e)) for e in elements)
    if degree is None:
        degree = space.degree_cap // longest
        if degree < 1:
            raise CapacityError(
                f"Element of length {longest} does not fit degree cap {space.degree_cap}"
            )
    if degree < 1:
        raise DomainError(f"Degree must be positive, got {degree}")
    if degree * longest > space.degree_cap:
        raise CapacityError(
            f"Degree {degree} for products of length {longest} needs moments of degree "
            f"{degree * longest} > cap {space.degree_cap}"
        )
    return degree


def moment_series(
    space: FreeSpace, elements: Sequence[Element], degree: Optional[int] = None
) -> MomentFunctional:
    """
    Joint moment series M(mu) of the listed elements.

    Args:
        space: FreeSpace
        elements: Variables or products; element i becomes variable z_i
        degree: Word-length cap of the result (default: as large as D allows)

    Raises:
        CapacityError: If some required moment exceeds the degree cap
    """
    degree = _derived_degree(space, elements, degree)
    products = [space.expand([e]) for e in elements]
    store: Dict[Word, GaussianRational] = {}
    for word in words(len(products), degree):
        expanded: Tuple[str, ...] = ()
        for index in word:
            expanded += products[index - 1]
        value = space.moment_of_word(expanded)
        if value:
            store[word] = value
    return MomentFunctional(NCSeries(len(products), degree, store))


def joint_r_of(
    space: FreeSpace, elements: Sequence[Element], degree: Optional[int] = None
) -> NCSeries:
    """R-series of the listed elements: moment_series followed by r_from_m."""
    return r_from_m(moment_series(space, elements, degree))


def free_cumulant(space: FreeSpace, elements: Sequence[Element]) -> GaussianRational:
    """
    Joint free cumulant kappa(e_1, ..., e_k) of a tuple of elements.

    kappa = sum over pi in NC(k) of prod_{B in pi} phi(e_B) * prod_{B in K(pi)} Moeb_{|B|}
    """
    k = len(elements)
    if k == 0:
        raise DomainError("Cumulants need at least one element")
    products = [space.expand([e]) for e in elements]
    total_length = sum(len(p) for p in products)
    if total_length > space.degree_cap:
        raise CapacityError(
            f"Cumulant needs moments of degree {total_length} > cap {space.degree_cap}"
        )

    total = ZERO
    for pi in enumerate_nc(k):
        weight = 1
        for block in kreweras(pi).blocks:
            weight *= moeb_coefficient(len(block))
        term = GaussianRational(weight)
        for block in pi.blocks:
            expanded: Tuple[str, ...] = ()
            for i in block:
                expanded += products[i - 1]
            value = space.moment_of_word(expanded)
            if not value:
                term = ZERO
                break
            term = term * value
        total = total + term
    return total


# ============================================================================
# Freeness and traciality
# ============================================================================

def mixed_coefficients(r_series: NCSeries, group_of: Sequence[int]) -> List[Word]:
    """Words with a non-zero coefficient whose letters come from more than one group."""
    return [
        word
        for word in r_series.support()
        if len({group_of[letter - 1] for letter in word}) > 1
    ]


def check_freeness(
    space: FreeSpace,
    groups: Sequence[Sequence[Element]],
    degree: Optional[int] = None,
) -> bool:
    """
    True iff the joint R-series of the union has no coefficient mixing groups.

    Raises:
        DomainError: If the groups overlap
        CapacityError: If the degree does not fit under the cap
    """
    elements: List[Tuple[str, ...]] = []
    group_of: List[int] = []
    for index, group in enumerate(groups):
        for element in group:
            normalized = as_product(element)
            if normalized in elements:
                raise DomainError(f"Element {'*'.join(normalized)} appears in two groups")
            elements.append(normalized)
            group_of.append(index)

    r_series = joint_r_of(space, elements, degree)
    offending = mixed_coefficients(r_series, group_of)
    if offending:
        logger.debug("mixed cumulants on %d words, first %s", len(offending), offending[0])
    return not offending


def check_trace(space: FreeSpace, samples: int = 24, seed: int = 0) -> bool:
    """
    True iff every family R-series is cyclically invariant and, on sampled
    words, moments are invariant under cyclic rotation.
    """
    if not all(is_cyclically_invariant(series) for series in space.family_r):
        return False

    rng = random.Random(seed)
    for _ in range(samples):
        length = rng.randint(2, space.degree_cap) if space.degree_cap > 1 else 1
        word = tuple(rng.choice(space.variables) for _ in range(length))
        value = space.moment_of_word(word)
        for shift in range(1, length):
            if space.moment_of_word(word[shift:] + word[:shift]) != value:
                logger.debug("moment of %s not cyclic", word)
                return False
    return True


def criterion_46_failures(
    space: FreeSpace,
    c_gens: Sequence[Element],
    x_elems: Sequence[Element],
    m: int,
) -> List[CriterionFailure]:
    """
    Tuples (c, x) violating

        phi(c_1 x_1 ... c_m x_m) = coef(1..m)(R(mu_{c_1..c_m}) * M(mu_{x_1..x_m}))

    Each failure is (c, x, left side, right side).

    Raises:
        DomainError: If the space is not tracial or m < 1
        CapacityError: If a product does not fit under the degree cap
    """
    if not space.tracial:
        raise DomainError("The freeness criterion needs a tracial space")
    if m < 1:
        raise DomainError(f"m must be positive, got {m}")

    cs = [as_product(c) for c in c_gens]
    xs = [as_product(x) for x in x_elems]
    pairs = [(pi.blocks, kreweras(pi).blocks) for pi in enumerate_nc(m)]
    cumulants: Dict[Tuple[Tuple[str, ...], ...], GaussianRational] = {}
    failures = []

    for c_tuple in product(cs, repeat=m):
        for x_tuple in product(xs, repeat=m):
            left_word = space.expand([e for pair in zip(c_tuple, x_tuple) for e in pair])
            if len(left_word) > space.degree_cap:
                raise CapacityError(
                    f"Criterion word of length {len(left_word)} exceeds cap {space.degree_cap}"
                )
            left = space.moment_of_word(left_word)

            right = ZERO
            for pi_blocks, k_blocks in pairs:
                term = ONE
                for block in pi_blocks:
                    key = tuple(c_tuple[i - 1] for i in block)
                    if key not in cumulants:
                        cumulants[key] = free_cumulant(space, list(key))
                    term = term * cumulants[key]
                    if not term:
                        break
                if not term:
                    continue
                for block in k_blocks:
                    gap = space.expand([x_tuple[i - 1] for i in block])
                    term = term * space.moment_of_word(gap)
                    if not term:
                        break
                right = right + term

            if left != right:
                failures.append((c_tuple, x_tuple, left, right))
    return failures


def freeness_criterion_46(
    space: FreeSpace, c_gens: Sequence[Element], x_elems: Sequence[Element], m: int
) -> bool:
    """True iff the moment/cumulant criterion holds for every tuple of length m."""
    return not criterion_46_failures(space, c_gens, x_elems, m)


# ============================================================================
# Generators and oracles
# ============================================================================

def necklace_representative(word: Word) -> Word:
    """Lexicographically smallest cyclic rotation."""
    return min(word[s:] + word[:s] for s in range(len(word)))


def random_rational(rng: random.Random, spread: int = 2, max_den: int = 3) -> Fraction:
    return Fraction(rng.randint(-spread, spread), rng.randint(1, max_den))


def random_tracial_series(
    nvars: int,
    degree_cap: int,
    rng: random.Random,
    density: float = 0.7,
    zero_if: Optional[Callable[[Word], bool]] = None,
) -> NCSeries:
    """
    Random cyclically invariant series.

    One coefficient is drawn per necklace and copied to all its rotations.
    Necklaces containing a rotation for which zero_if is true stay zero.
    """
    store: Dict[Word, Fraction] = {}
    for word in words(nvars, degree_cap):
        if necklace_representative(word) != word:
            continue
        rotations = {word[s:] + word[:s] for s in range(len(word))}
        if zero_if is not None and any(zero_if(r) for r in rotations):
            continue
        if rng.random() >= density:
            continue
        value = random_rational(rng)
        if value:
            for r in rotations:
                store[r] = value
    return NCSeries(nvars, degree_cap, store)


def free_group_reduce(word: Sequence[int]) -> Tuple[int, ...]:
    """Freely reduce a word of signed generators (g and -g are inverse letters)."""
    stack: List[int] = []
    for letter in word:
        if stack and stack[-1] == -letter:
            stack.pop()
        else:
            stack.append(letter)
    return tuple(stack)


def haar_word_moment(word: Sequence[int]) -> int:
    """
    Moment of a word in u (+1) and u^-1 (-1) for a Haar unitary u:
    1 if the word reduces to the empty word, else 0.
    """
    for letter in word:
        if letter not in (1, -1):
            raise DomainError(f"Haar words use letters +1 and -1, got {letter}")
    return 1 if not free_group_reduce(word) else 0
