"""
Non-crossing partitions of {1..n}

Representation, enumeration, lattice order and complementation maps:
- Partition / Permutation value types and the cycle encoding Perm(pi)
- Kreweras complement K and its block-relative version K_rho
- interlacing of two partitions on {1..2n}
- parity classes of NC(2n) and the bijection between intervals of NC(n)
  and parity-preserving partitions of {1..2n}

Convention:
- Elements are 1-based
- Blocks are sorted tuples, ordered by their minimum element
- Permutation products compose right to left: (s*t)(i) = s(t(i))
- Enumeration is capped by ncfree.config.ground_set_cap() (at most 12)
"""

import logging
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, product
from math import comb, factorial
from typing import Dict, Iterable, Iterator, List, Sequence, Tuple

from ncfree.config import ground_set_cap
from ncfree.errors import CapacityError, ConsistencyError, DomainError

logger = logging.getLogger(__name__)

Block = Tuple[int, ...]


# ============================================================================
# Validation helpers
# ============================================================================

def _canonical_blocks(blocks: Iterable[Iterable[int]], n: int) -> Tuple[Block, ...]:
    """
    Check that blocks partition {1..n} and return them in canonical order.

    Raises:
        DomainError: On empty blocks, overlaps, or elements outside {1..n}
    """
    if n < 1:
        raise DomainError(f"Ground set size must be positive, got {n}")

    seen = set()
    canonical = []
    for raw in blocks:
        block = tuple(sorted(int(x) for x in raw))
        if not block:
            raise DomainError("Partition blocks must be non-empty")
        for x in block:
            if x < 1 or x > n:
                raise DomainError(f"Element {x} outside ground set {{1..{n}}}")
            if x in seen:
                raise DomainError(f"Element {x} appears in more than one block")
            seen.add(x)
        canonical.append(block)

    if len(seen) != n:
        missing = sorted(set(range(1, n + 1)) - seen)
        raise DomainError(f"Blocks do not cover {{1..{n}}}; missing {missing}")

    canonical.sort(key=lambda b: b[0])
    return tuple(canonical)


def _has_crossing(blocks: Sequence[Block]) -> bool:
    """
    True if two blocks cross.

    Two blocks cross iff an arc between consecutive elements of one block
    strictly interleaves an arc of the other.
    """
    arcs = []
    for label, block in enumerate(blocks):
        for a, b in zip(block, block[1:]):
            arcs.append((a, b, label))
    for idx, (a, b, la) in enumerate(arcs):
        for c, d, lc in arcs[idx + 1:]:
            if la == lc:
                continue
            if a < c < b < d or c < a < d < b:
                return True
    return False


def is_noncrossing(blocks: Iterable[Iterable[int]], n: int) -> bool:
    """
    Test the non-crossing condition.

    Args:
        blocks: Iterable of integer collections
        n: Ground-set size

    Returns:
        True iff there is no i < j < i' < j' with i, i' in one block and
        j, j' in a different block

    Raises:
        DomainError: If blocks do not partition {1..n}
    """
    return not _has_crossing(_canonical_blocks(blocks, n))


# ============================================================================
# Value types
# ============================================================================

class Partition:
    """A non-crossing partition of {1..n} in canonical form.

    Attributes:
        n: Ground-set size
        blocks: Tuple of sorted tuples, ordered by minimum element
    """

    __slots__ = ("n", "blocks", "_block_index")

    def __init__(self, n: int, blocks: Iterable[Iterable[int]]):
        canonical = _canonical_blocks(blocks, n)
        if _has_crossing(canonical):
            raise DomainError(f"Blocks {list(canonical)} are crossing")
        self._init_trusted(n, canonical)

    def _init_trusted(self, n: int, blocks: Tuple[Block, ...]) -> None:
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "blocks", blocks)
        index = [0] * (n + 1)
        for label, block in enumerate(blocks):
            for x in block:
                index[x] = label
        object.__setattr__(self, "_block_index", tuple(index))

    @classmethod
    def _trusted(cls, n: int, blocks: Tuple[Block, ...]) -> "Partition":
        """Build from already canonical, non-crossing blocks (internal)."""
        obj = cls.__new__(cls)
        obj._init_trusted(n, blocks)
        return obj

    def __setattr__(self, name, value):
        raise AttributeError("Partition is immutable")

    @classmethod
    def singletons(cls, n: int) -> "Partition":
        return cls._trusted(n, tuple((i,) for i in range(1, n + 1)))

    @classmethod
    def full(cls, n: int) -> "Partition":
        return cls._trusted(n, (tuple(range(1, n + 1)),))

    def block_label(self, i: int) -> int:
        """Index (into self.blocks) of the block containing i."""
        return self._block_index[i]

    def block_of(self, i: int) -> Block:
        return self.blocks[self._block_index[i]]

    def same_block(self, i: int, j: int) -> bool:
        return self._block_index[i] == self._block_index[j]

    def block_sizes(self) -> List[int]:
        return sorted(len(b) for b in self.blocks)

    def __len__(self) -> int:
        return len(self.blocks)

    def __iter__(self) -> Iterator[Block]:
        return iter(self.blocks)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Partition):
            return NotImplemented
        return self.n == other.n and self.blocks == other.blocks

    def __hash__(self) -> int:
        return hash((self.n, self.blocks))

    def __repr__(self) -> str:
        return f"Partition({self.n}, {list(self.blocks)!r})"

    def __str__(self) -> str:
        return "".join("{" + ",".join(str(x) for x in b) + "}" for b in self.blocks)


class Permutation:
    """A bijection of {1..n}.

    Attributes:
        n: Ground-set size
        images: Tuple with images[i - 1] = image of i
    """

    __slots__ = ("n", "images")

    def __init__(self, images: Sequence[int]):
        imgs = tuple(int(x) for x in images)
        n = len(imgs)
        if n < 1 or sorted(imgs) != list(range(1, n + 1)):
            raise DomainError(f"Images {list(imgs)} are not a bijection of {{1..{n}}}")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "images", imgs)

    def __setattr__(self, name, value):
        raise AttributeError("Permutation is immutable")

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(range(1, n + 1))

    @classmethod
    def full_cycle(cls, n: int) -> "Permutation":
        """The cycle gamma: 1 -> 2 -> ... -> n -> 1."""
        return cls([i % n + 1 for i in range(1, n + 1)])

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def compose(self, other: "Permutation") -> "Permutation":
        """self * other, i.e. apply other first."""
        if self.n != other.n:
            raise DomainError(f"Cannot compose permutations of {self.n} and {other.n}")
        return Permutation([self.images[other.images[i] - 1] for i in range(self.n)])

    __mul__ = compose

    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for i, img in enumerate(self.images, 1):
            inv[img - 1] = i
        return Permutation(inv)

    def cycles(self) -> List[Block]:
        """Cycles as tuples starting at their minimum, ordered by minimum."""
        seen = [False] * (self.n + 1)
        result = []
        for start in range(1, self.n + 1):
            if seen[start]:
                continue
            cycle = []
            i = start
            while not seen[i]:
                seen[i] = True
                cycle.append(i)
                i = self.images[i - 1]
            result.append(tuple(cycle))
        return result

    def __eq__(self, other) -> bool:
        if not isinstance(other, Permutation):
            return NotImplemented
        return self.images == other.images

    def __hash__(self) -> int:
        return hash(self.images)

    def __repr__(self) -> str:
        return f"Permutation({list(self.images)!r})"


@dataclass(frozen=True)
class IntervalPair:
    """A pair lower <= upper in NC(n)."""

    lower: Partition
    upper: Partition

    def __post_init__(self):
        if not refinement_leq(self.lower, self.upper):
            raise DomainError(f"{self.lower} is not finer than {self.upper}")

    @property
    def n(self) -> int:
        return self.lower.n


# ============================================================================
# Enumeration
# ============================================================================

def _check_size(n: int) -> None:
    if n < 1:
        raise DomainError(f"Ground set size must be positive, got {n}")
    cap = ground_set_cap()
    if n > cap:
        raise CapacityError(f"Ground set size {n} exceeds the cap {cap}")


@lru_cache(maxsize=None)
def _shapes(k: int) -> Tuple[Tuple[Block, ...], ...]:
    """
    All non-crossing partitions of {0..k-1} as block tuples.

    The block containing 0 is chosen first; the gaps it leaves are
    intervals that carry independent non-crossing partitions.
    """
    if k == 0:
        return ((),)
    result = []
    others = range(1, k)
    for size in range(0, k):
        for rest in combinations(others, size):
            first = (0,) + rest
            bounds = list(first) + [k]
            gap_choices = []
            for lo, hi in zip(bounds, bounds[1:]):
                width = hi - lo - 1
                shift = lo + 1
                gap_choices.append(
                    [tuple(tuple(x + shift for x in b) for b in shape) for shape in _shapes(width)]
                )
            for combo in product(*gap_choices):
                blocks = [first]
                for shape in combo:
                    blocks.extend(shape)
                blocks.sort(key=lambda b: b[0])
                result.append(tuple(blocks))
    logger.debug("built %d non-crossing shapes of size %d", len(result), k)
    return tuple(result)


@lru_cache(maxsize=None)
def _enumerate_cached(n: int) -> Tuple[Partition, ...]:
    return tuple(
        Partition._trusted(n, tuple(tuple(x + 1 for x in b) for b in shape))
        for shape in _shapes(n)
    )


def enumerate_nc(n: int) -> Tuple[Partition, ...]:
    """
    Every element of NC(n) exactly once, in a fixed order.

    Args:
        n: Ground-set size, 1 <= n <= ground_set_cap()

    Returns:
        Tuple of Partition (shared, read-only)

    Raises:
        DomainError: If n < 1
        CapacityError: If n exceeds the ground-set cap
    """
    _check_size(n)
    return _enumerate_cached(n)


def catalan(k: int) -> int:
    """Catalan number C_k = binom(2k, k) / (k + 1)."""
    if k < 0:
        raise DomainError(f"Catalan index must be non-negative, got {k}")
    return comb(2 * k, k) // (k + 1)


# ============================================================================
# Order, cycles, rotation
# ============================================================================

def refinement_leq(pi: Partition, rho: Partition) -> bool:
    """
    Refinement order: True iff every block of rho is a union of blocks of pi.

    Raises:
        DomainError: If the ground sets differ
    """
    if pi.n != rho.n:
        raise DomainError(f"Ground sets differ: {pi.n} vs {rho.n}")
    for block in pi.blocks:
        label = rho.block_label(block[0])
        if any(rho.block_label(x) != label for x in block[1:]):
            return False
    return True


def perm_of(pi: Partition) -> Permutation:
    """Product of the block cycles: each block i_1 < ... < i_m maps i_1 -> i_2 -> ... -> i_1."""
    images = [0] * pi.n
    for block in pi.blocks:
        for a, b in zip(block, block[1:] + block[:1]):
            images[a - 1] = b
    return Permutation(images)


def partition_of_cycles(perm: Permutation) -> Partition:
    """
    Read a permutation's cycle structure as a partition.

    Raises:
        DomainError: If the resulting partition is crossing
    """
    return Partition(perm.n, perm.cycles())


def rotate(pi: Partition, shift: int = 1) -> Partition:
    """Image of pi under i -> i + shift (mod n, values kept in 1..n)."""
    n = pi.n
    moved = [tuple(sorted((x - 1 + shift) % n + 1 for x in b)) for b in pi.blocks]
    moved.sort(key=lambda b: b[0])
    return Partition._trusted(n, tuple(moved))


def restrict(pi: Partition, subset: Sequence[int]) -> Partition:
    """
    Restriction of pi to a subset, re-indexed to 1..len(subset) in increasing order.

    Raises:
        DomainError: If subset is empty or not contained in {1..n}
    """
    elems = sorted(set(subset))
    if not elems or elems[0] < 1 or elems[-1] > pi.n:
        raise DomainError(f"Subset {list(subset)} is not a non-empty subset of {{1..{pi.n}}}")
    position = {x: i for i, x in enumerate(elems, 1)}
    groups: Dict[int, List[int]] = {}
    for x in elems:
        groups.setdefault(pi.block_label(x), []).append(position[x])
    return Partition(len(elems), groups.values())


# ============================================================================
# Kreweras complements
# ============================================================================

def kreweras(pi: Partition) -> Partition:
    """
    Kreweras complement K(pi), from Perm(K(pi)) = Perm(pi)^-1 * gamma.

    Example:
        {1,4,5}{2,3}{6,8}{7} -> {1,3}{2}{4}{5,8}{6,7}
    """
    gamma = Permutation.full_cycle(pi.n)
    return partition_of_cycles(perm_of(pi).inverse() * gamma)


def kreweras_inverse(rho: Partition) -> Partition:
    """K^-1(rho), from Perm(K^-1(rho)) = gamma * Perm(rho)^-1."""
    gamma = Permutation.full_cycle(rho.n)
    return partition_of_cycles(gamma * perm_of(rho).inverse())


def kreweras_geometric(pi: Partition) -> Partition:
    """
    Kreweras complement from the circular picture.

    Q_i sits on the arc between P_i and P_{i+1}; Q_i ~ Q_j (i < j) iff no
    block of pi has points strictly on both sides of the chord Q_iQ_j,
    i.e. no block meets both {i+1..j} and its complement.
    """
    n = pi.n
    parent = list(range(n + 1))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            separated = False
            for block in pi.blocks:
                inside = sum(1 for h in block if i < h <= j)
                if 0 < inside < len(block):
                    separated = True
                    break
            if not separated:
                parent[find(i)] = find(j)

    groups: Dict[int, List[int]] = {}
    for i in range(1, n + 1):
        groups.setdefault(find(i), []).append(i)
    return Partition(n, groups.values())


def relative_kreweras(pi: Partition, rho: Partition) -> Partition:
    """
    Relative Kreweras complement K_rho(pi).

    Computed one block of rho at a time (K of pi restricted to the block)
    and cross-checked against Perm(K_rho(pi)) = Perm(pi)^-1 * Perm(rho).

    Args:
        pi: Partition with pi <= rho
        rho: Partition of the same ground set

    Returns:
        K_rho(pi), which is finer than rho

    Raises:
        DomainError: If pi is not finer than rho
        ConsistencyError: If the two computations disagree
    """
    if not refinement_leq(pi, rho):
        raise DomainError(f"{pi} is not finer than {rho}")

    blocks = []
    for block in rho.blocks:
        local = kreweras(restrict(pi, block))
        for local_block in local.blocks:
            blocks.append(tuple(block[i - 1] for i in local_block))
    blockwise = Partition(pi.n, blocks)

    via_perm = partition_of_cycles(perm_of(pi).inverse() * perm_of(rho))
    if via_perm != blockwise:
        raise ConsistencyError(
            f"K_rho(pi) mismatch for pi={pi}, rho={rho}: {blockwise} vs {via_perm}"
        )
    return blockwise


def relative_kreweras_inverse(pi: Partition, rho: Partition) -> Partition:
    """
    The partition pi' <= rho with K_rho(pi') = pi.

    Uses Perm(pi') = Perm(rho) * Perm(pi)^-1.

    Raises:
        DomainError: If pi is not finer than rho
    """
    if not refinement_leq(pi, rho):
        raise DomainError(f"{pi} is not finer than {rho}")
    return partition_of_cycles(perm_of(rho) * perm_of(pi).inverse())


def interlace(pi: Partition, rho: Partition) -> List[Block]:
    """Blocks on {1..2n} with pi on the even positions and rho on the odd ones."""
    if pi.n != rho.n:
        raise DomainError(f"Ground sets differ: {pi.n} vs {rho.n}")
    blocks = [tuple(2 * x for x in b) for b in pi.blocks]
    blocks.extend(tuple(2 * x - 1 for x in b) for b in rho.blocks)
    return blocks


def interlace_noncrossing(pi: Partition, rho: Partition) -> bool:
    """
    True iff pi on the evens together with rho on the odds is non-crossing.

    This holds exactly when pi <= K(rho).
    """
    return is_noncrossing(interlace(pi, rho), 2 * pi.n)


# ============================================================================
# Parity classes of NC(2n)
# ============================================================================

def _require_even(sigma: Partition) -> None:
    if sigma.n % 2:
        raise DomainError(f"Parity classes need an even ground set, got {sigma.n}")


def is_parity_alternating(sigma: Partition) -> bool:
    """
    i - Perm(sigma)(i) is odd for every i.

    Equivalent to every block having an even number of elements; both
    forms are evaluated.

    Raises:
        DomainError: If the ground set is odd
        ConsistencyError: If the two forms disagree
    """
    _require_even(sigma)
    perm = perm_of(sigma)
    by_perm = all((i - perm(i)) % 2 == 1 for i in range(1, sigma.n + 1))
    by_sizes = all(len(b) % 2 == 0 for b in sigma.blocks)
    if by_perm != by_sizes:
        raise ConsistencyError(f"parity-alternating forms disagree on {sigma}")
    return by_perm


def is_parity_preserving(sigma: Partition) -> bool:
    """
    i - Perm(sigma)(i) is even for every i.

    Equivalent to every block lying inside the odds or inside the evens.

    Raises:
        DomainError: If the ground set is odd
        ConsistencyError: If the two forms disagree
    """
    _require_even(sigma)
    perm = perm_of(sigma)
    by_perm = all((i - perm(i)) % 2 == 0 for i in range(1, sigma.n + 1))
    by_blocks = all(len({x % 2 for x in b}) == 1 for b in sigma.blocks)
    if by_perm != by_blocks:
        raise ConsistencyError(f"parity-preserving forms disagree on {sigma}")
    return by_perm


def enumerate_parity_class(size: int, kind: str) -> List[Partition]:
    """
    NC(size) filtered by parity class.

    Args:
        size: Even ground-set size
        kind: "p-alt" or "p-prsv"
    """
    if size % 2:
        raise DomainError(f"Parity classes need an even ground set, got {size}")
    if kind == "p-alt":
        test = is_parity_alternating
    elif kind == "p-prsv":
        test = is_parity_preserving
    else:
        raise DomainError(f"Unknown parity class '{kind}'")
    return [sigma for sigma in enumerate_nc(size) if test(sigma)]


# ============================================================================
# Intervals of NC(n) and the parity-preserving picture
# ============================================================================

def enumerate_intervals(n: int) -> List[IntervalPair]:
    """All pairs (pi, rho) with pi <= rho in NC(n)."""
    parts = enumerate_nc(n)
    return [
        IntervalPair(pi, rho)
        for pi in parts
        for rho in parts
        if refinement_leq(pi, rho)
    ]


def count_intervals(n: int) -> int:
    """
    Number of pairs pi <= rho in NC(n), by enumeration.

    Equals (3n)! / (n! (2n+1)!), see interval_count_formula.
    """
    parts = enumerate_nc(n)
    return sum(1 for pi in parts for rho in parts if refinement_leq(pi, rho))


def interval_count_formula(n: int) -> int:
    """(3n)! / (n! (2n+1)!)."""
    return factorial(3 * n) // (factorial(n) * factorial(2 * n + 1))


def interval_to_pprsv(pair: IntervalPair) -> Partition:
    """
    Parity-preserving partition of {1..2n} attached to pi <= rho.

    pi is transported to the evens (i -> 2i) and K^-1(rho) to the odds
    (i -> 2i - 1).
    """
    lower_on_odds = kreweras_inverse(pair.upper)
    return Partition(2 * pair.n, interlace(pair.lower, lower_on_odds))


def pprsv_to_interval(sigma: Partition) -> IntervalPair:
    """
    Inverse of interval_to_pprsv.

    Raises:
        DomainError: If sigma is not parity-preserving
    """
    if not is_parity_preserving(sigma):
        raise DomainError(f"{sigma} is not parity-preserving")
    n = sigma.n // 2
    evens = [tuple(x // 2 for x in b) for b in sigma.blocks if b[0] % 2 == 0]
    odds = [tuple((x + 1) // 2 for x in b) for b in sigma.blocks if b[0] % 2 == 1]
    pi = Partition(n, evens)
    rho = kreweras(Partition(n, odds))
    return IntervalPair(pi, rho)


def relative_complement_via_2n(pair: IntervalPair) -> Partition:
    """
    K_rho(pi) through NC(2n): take K of interval_to_pprsv(pair) and halve
    the even elements of each of its blocks.
    """
    tau = kreweras(interval_to_pprsv(pair))
    halves = []
    for block in tau.blocks:
        evens = tuple(x // 2 for x in block if x % 2 == 0)
        if evens:
            halves.append(evens)
    return Partition(pair.n, halves)


def interval_to_palt(pair: IntervalPair) -> Partition:
    """
    Diagonal bijection from intervals of NC(n) onto NC_{p-alt}(2n).

    (pi, rho) is first sent to (pi', rho) with K_rho(pi') = pi, then
    through interval_to_pprsv and K on NC(2n). The blocks of pi match the
    blocks of the result with sizes doubled.
    """
    lifted = relative_kreweras_inverse(pair.lower, pair.upper)
    return kreweras(interval_to_pprsv(IntervalPair(lifted, pair.upper)))


# ============================================================================
# Odd blocks
# ============================================================================

def has_odd_block(pi: Partition) -> bool:
    """Some block has an odd number of elements."""
    return any(len(b) % 2 for b in pi.blocks)


def has_odd_gap_block(pi: Partition) -> bool:
    """
    Some block is a singleton, or has odd size >= 3 with every difference
    between consecutive elements odd (the wrap pair is not counted).
    """
    for block in pi.blocks:
        if len(block) == 1:
            return True
        if len(block) % 2 and all((b - a) % 2 for a, b in zip(block, block[1:])):
            return True
    return False
