"""
Truncated formal power series in non-commuting variables z_1..z_n.

A series is a sparse map from words (tuples of letters in 1..n, length
1..D) to exact Gaussian-rational coefficients. There is no constant term.
The degree cap D is part of the value: reading a coefficient beyond it,
or combining series with different caps, is an error.

The boxed-star product is

    coef_w(f * g) = sum over pi in NC(k) of coef(w; pi)(f) * coef(w; K(pi))(g)

for every word w of length k <= D.
"""

import logging
from functools import lru_cache
from fractions import Fraction
from itertools import product
from types import MappingProxyType
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

from ncfree.core.ncpart import Partition, catalan, enumerate_nc, kreweras
from ncfree.errors import CapacityError, DomainError
from ncfree.utils.gaussian import ONE, ZERO, GaussianRational

logger = logging.getLogger(__name__)

Word = Tuple[int, ...]
Coefficient = Union[int, Fraction, GaussianRational]


class NCSeries:
    """Sparse truncated series with Gaussian-rational coefficients.

    Attributes:
        nvars: Number of variables
        degree_cap: Largest word length carried (D)
        coeffs: Read-only mapping word -> non-zero coefficient
    """

    __slots__ = ("nvars", "degree_cap", "_coeffs")

    def __init__(
        self,
        nvars: int,
        degree_cap: int,
        coeffs: Optional[Mapping[Sequence[int], Coefficient]] = None,
    ):
        if nvars < 1:
            raise DomainError(f"nvars must be positive, got {nvars}")
        if degree_cap < 1:
            raise DomainError(f"degree cap must be positive, got {degree_cap}")
        object.__setattr__(self, "nvars", nvars)
        object.__setattr__(self, "degree_cap", degree_cap)

        store: Dict[Word, GaussianRational] = {}
        for raw_word, raw_value in (coeffs or {}).items():
            word = self._check_word(raw_word)
            value = GaussianRational.coerce(raw_value)
            if value:
                store[word] = value
        object.__setattr__(self, "_coeffs", store)

    @classmethod
    def _trusted(cls, nvars: int, degree_cap: int, store: Dict[Word, GaussianRational]):
        obj = cls.__new__(cls)
        object.__setattr__(obj, "nvars", nvars)
        object.__setattr__(obj, "degree_cap", degree_cap)
        object.__setattr__(obj, "_coeffs", {w: v for w, v in store.items() if v})
        return obj

    def __setattr__(self, name, value):
        raise AttributeError("NCSeries is immutable")

    def _check_word(self, raw: Sequence[int]) -> Word:
        word = tuple(int(x) for x in raw)
        if not word:
            raise DomainError("Words must be non-empty (series have no constant term)")
        if len(word) > self.degree_cap:
            raise CapacityError(
                f"Word {word} has length {len(word)} beyond degree cap {self.degree_cap}"
            )
        for letter in word:
            if letter < 1 or letter > self.nvars:
                raise DomainError(f"Letter {letter} outside 1..{self.nvars} in word {word}")
        return word

    @property
    def coeffs(self) -> Mapping[Word, GaussianRational]:
        return MappingProxyType(self._coeffs)

    def coef(self, word: Sequence[int]) -> GaussianRational:
        """
        Coefficient of a word.

        Raises:
            CapacityError: If the word is longer than the degree cap
            DomainError: If the word is empty or uses an unknown letter
        """
        return self._coeffs.get(self._check_word(word), ZERO)

    def items(self) -> List[Tuple[Word, GaussianRational]]:
        """Non-zero coefficients sorted by (length, lexicographic word)."""
        return sorted(self._coeffs.items(), key=lambda kv: (len(kv[0]), kv[0]))

    def support(self) -> List[Word]:
        return [w for w, _ in self.items()]

    def is_zero(self) -> bool:
        return not self._coeffs

    def _check_compatible(self, other: "NCSeries") -> None:
        if self.nvars != other.nvars or self.degree_cap != other.degree_cap:
            raise DomainError(
                f"Series shapes differ: (nvars={self.nvars}, D={self.degree_cap}) vs "
                f"(nvars={other.nvars}, D={other.degree_cap})"
            )

    def __add__(self, other: "NCSeries") -> "NCSeries":
        self._check_compatible(other)
        store = dict(self._coeffs)
        for w, v in other._coeffs.items():
            store[w] = store.get(w, ZERO) + v
        return NCSeries._trusted(self.nvars, self.degree_cap, store)

    def __neg__(self) -> "NCSeries":
        return self.scale(-1)

    def __sub__(self, other: "NCSeries") -> "NCSeries":
        return self + (-other)

    def scale(self, factor: Coefficient) -> "NCSeries":
        c = GaussianRational.coerce(factor)
        return NCSeries._trusted(
            self.nvars, self.degree_cap, {w: v * c for w, v in self._coeffs.items()}
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, NCSeries):
            return NotImplemented
        return (
            self.nvars == other.nvars
            and self.degree_cap == other.degree_cap
            and self._coeffs == other._coeffs
        )

    def __hash__(self) -> int:
        return hash((self.nvars, self.degree_cap, frozenset(self._coeffs.items())))

    def __repr__(self) -> str:
        terms = ", ".join(f"{w}: {v}" for w, v in self.items()[:6])
        more = "" if len(self._coeffs) <= 6 else f", ... ({len(self._coeffs)} terms)"
        return f"NCSeries(nvars={self.nvars}, D={self.degree_cap}, {{{terms}{more}}})"


# ============================================================================
# Words and coefficient functionals
# ============================================================================

def words(nvars: int, max_length: int, min_length: int = 1) -> Iterator[Word]:
    """All words over 1..nvars with lengths in [min_length, max_length], shortest first."""
    letters = range(1, nvars + 1)
    for k in range(min_length, max_length + 1):
        yield from product(letters, repeat=k)


def coef(f: NCSeries, w: Sequence[int]) -> GaussianRational:
    """Coefficient of z_{w_1}...z_{w_k} in f."""
    return f.coef(w)


def coef_restricted(f: NCSeries, w: Sequence[int], positions: Iterable[int]) -> GaussianRational:
    """
    Coefficient of the subword of w at the given 1-based positions.

    Raises:
        DomainError: If positions is empty or leaves 1..len(w)
    """
    chosen = sorted(set(positions))
    if not chosen:
        raise DomainError("Restriction needs a non-empty set of positions")
    if chosen[0] < 1 or chosen[-1] > len(w):
        raise DomainError(f"Positions {chosen} outside 1..{len(w)}")
    return f.coef(tuple(w[i - 1] for i in chosen))


def coef_partition(f: NCSeries, w: Sequence[int], pi: Partition) -> GaussianRational:
    """
    Product over the blocks of pi of the restricted coefficients.

    Raises:
        DomainError: If pi is not a partition of {1..len(w)}
    """
    if pi.n != len(w):
        raise DomainError(f"Partition of {{1..{pi.n}}} used on a word of length {len(w)}")
    value = ONE
    for block in pi.blocks:
        factor = coef_restricted(f, w, block)
        if not factor:
            return ZERO
        value = value * factor
    return value


# ============================================================================
# Boxed-star product
# ============================================================================

@lru_cache(maxsize=None)
def kreweras_pairs(k: int) -> Tuple[Tuple[Tuple[Word, ...], Tuple[Word, ...]], ...]:
    """
    (pi, K(pi)) for every pi in NC(k), blocks as 0-based position tuples.

    Built once per k and shared read-only afterwards.
    """
    pairs = []
    for pi in enumerate_nc(k):
        k_pi = kreweras(pi)
        pairs.append(
            (
                tuple(tuple(x - 1 for x in b) for b in pi.blocks),
                tuple(tuple(x - 1 for x in b) for b in k_pi.blocks),
            )
        )
    logger.debug("cached %d Kreweras pairs for k=%d", len(pairs), k)
    return tuple(pairs)


def plain_number(value: GaussianRational):
    """Cheapest exact number type that represents value."""
    if value.im:
        return value
    if value.re.denominator == 1:
        return value.re.numerator
    return value.re


def _plain_map(f: NCSeries) -> Dict[Word, object]:
    return {w: plain_number(v) for w, v in f._coeffs.items()}


def _star_coefficient(word: Word, pairs, fmap, gmap):
    fcache: Dict[Word, object] = {}
    gcache: Dict[Word, object] = {}
    total = 0
    for pblocks, kblocks in pairs:
        term = 1
        for block in pblocks:
            value = fcache.get(block)
            if value is None:
                value = fmap.get(tuple(word[i] for i in block), 0)
                fcache[block] = value
            if not value:
                term = 0
                break
            term = term * value
        if not term:
            continue
        for block in kblocks:
            value = gcache.get(block)
            if value is None:
                value = gmap.get(tuple(word[i] for i in block), 0)
                gcache[block] = value
            if not value:
                term = 0
                break
            term = term * value
        if term:
            total = total + term
    return total


def boxstar(f: NCSeries, g: NCSeries) -> NCSeries:
    """
    Boxed-star product f * g.

    Args:
        f: Series
        g: Series with the same nvars and degree cap

    Returns:
        f * g with the same nvars and degree cap

    Raises:
        DomainError: If nvars or degree caps differ
    """
    f._check_compatible(g)
    if f.is_zero() or g.is_zero():
        return NCSeries(f.nvars, f.degree_cap)

    fmap = _plain_map(f)
    gmap = _plain_map(g)
    store: Dict[Word, GaussianRational] = {}
    for k in range(1, f.degree_cap + 1):
        pairs = kreweras_pairs(k)
        for word in words(f.nvars, k, k):
            total = _star_coefficient(word, pairs, fmap, gmap)
            if total:
                store[word] = GaussianRational.coerce(total)
    logger.debug(
        "boxstar nvars=%d D=%d -> %d non-zero terms", f.nvars, f.degree_cap, len(store)
    )
    return NCSeries._trusted(f.nvars, f.degree_cap, store)


def star_coefficient(f: NCSeries, g: NCSeries, word: Sequence[int]) -> GaussianRational:
    """Single coefficient of f * g, without building the whole product."""
    f._check_compatible(g)
    w = f._check_word(word)
    total = _star_coefficient(w, kreweras_pairs(len(w)), _plain_map(f), _plain_map(g))
    return GaussianRational.coerce(total)


# ============================================================================
# Canonical series
# ============================================================================

def moeb_coefficient(k: int) -> int:
    """(-1)^(k+1) (2k-2)! / ((k-1)! k!) = (-1)^(k+1) C_{k-1}."""
    if k < 1:
        raise DomainError(f"Moebius coefficient needs k >= 1, got {k}")
    sign = 1 if k % 2 else -1
    return sign * catalan(k - 1)


def zeta_series(nvars: int, degree_cap: int) -> NCSeries:
    """Every word has coefficient 1."""
    return NCSeries._trusted(
        nvars, degree_cap, {w: ONE for w in words(nvars, degree_cap)}
    )


def moeb_series(nvars: int, degree_cap: int) -> NCSeries:
    """Word of length k has coefficient (-1)^(k+1) C_{k-1}."""
    values = {k: GaussianRational(moeb_coefficient(k)) for k in range(1, degree_cap + 1)}
    return NCSeries._trusted(
        nvars, degree_cap, {w: values[len(w)] for w in words(nvars, degree_cap)}
    )


def sum_series(nvars: int, degree_cap: int) -> NCSeries:
    """z_1 + ... + z_n, the unit for boxstar."""
    return NCSeries._trusted(nvars, degree_cap, {(i,): ONE for i in range(1, nvars + 1)})


def single_variable(
    coefficients: Sequence[Coefficient], degree_cap: Optional[int] = None
) -> NCSeries:
    """1-variable series with coefficient of z^k equal to coefficients[k - 1]."""
    cap = degree_cap if degree_cap is not None else len(coefficients)
    if len(coefficients) > cap:
        raise CapacityError(f"{len(coefficients)} coefficients do not fit degree cap {cap}")
    return NCSeries(1, cap, {(1,) * k: c for k, c in enumerate(coefficients, 1)})


# ============================================================================
# Structural operations
# ============================================================================

def truncate(f: NCSeries, degree_cap: int) -> NCSeries:
    """
    Drop words longer than degree_cap.

    Raises:
        CapacityError: If degree_cap exceeds the current cap
    """
    if degree_cap > f.degree_cap:
        raise CapacityError(
            f"Cannot raise degree cap from {f.degree_cap} to {degree_cap}"
        )
    return NCSeries._trusted(
        f.nvars, degree_cap, {w: v for w, v in f._coeffs.items() if len(w) <= degree_cap}
    )


def embed(f: NCSeries, nvars: int, letter_map: Mapping[int, int]) -> NCSeries:
    """
    Rename variables: letter i of f becomes letter_map[i] in a series of nvars variables.
    """
    store: Dict[Word, GaussianRational] = {}
    for w, v in f._coeffs.items():
        try:
            new_word = tuple(letter_map[x] for x in w)
        except KeyError as e:
            raise DomainError(f"No image for letter {e.args[0]} in embedding")
        store[new_word] = store.get(new_word, ZERO) + v
    return NCSeries(nvars, f.degree_cap, store)


def linear_substitute(f: NCSeries, matrix: Sequence[Sequence[Coefficient]]) -> NCSeries:
    """
    Substitute z_i -> sum_j C[i][j] z_j and expand.

    Degree is preserved, so nothing below the cap is lost.

    Raises:
        DomainError: If the matrix is not nvars x nvars
    """
    n = f.nvars
    if len(matrix) != n or any(len(row) != n for row in matrix):
        raise DomainError(f"Substitution matrix must be {n}x{n}")
    rows = [
        [(j, v) for j, v in enumerate(map(GaussianRational.coerce, row), 1) if v]
        for row in matrix
    ]

    store: Dict[Word, GaussianRational] = {}
    for w, v in f._coeffs.items():
        for choice in product(*(rows[i - 1] for i in w)):
            value = v
            for _, c in choice:
                value = value * c
            new_word = tuple(j for j, _ in choice)
            store[new_word] = store.get(new_word, ZERO) + value
    return NCSeries._trusted(n, f.degree_cap, store)
