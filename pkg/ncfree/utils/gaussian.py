"""
Gaussian rationals: complex numbers with exact rational real and imaginary parts.

All series coefficients in ncfree are GaussianRational values. Imaginary
parts only show up in the real/imaginary change of variables; everywhere
else the imaginary part stays zero and multiplication takes a fast path.

Convention:
- Values are immutable and hashable
- Equality is exact and also accepts int and Fraction operands
- Text form of a rational is always "p/q" with q >= 1 (e.g. "1/1", "-5/2")
"""

from fractions import Fraction
from typing import Union

from ncfree.errors import DomainError

Number = Union[int, Fraction, "GaussianRational"]


def parse_rational(text: str) -> Fraction:
    """
    Parse an exact rational written as "p/q" or as an integer.

    Args:
        text: String such as "3/4", "-2/1" or "7"

    Returns:
        Fraction value

    Raises:
        DomainError: If the text is not an exact rational (floats are rejected)
    """
    cleaned = str(text).strip()
    if not cleaned:
        raise DomainError("Empty rational literal")
    if any(c in cleaned for c in ".eE"):
        raise DomainError(f"Rational must be written as p/q, got '{cleaned}'")
    try:
        value = Fraction(cleaned)
    except (ValueError, ZeroDivisionError) as e:
        raise DomainError(f"Invalid rational '{cleaned}': {e}")
    return value


def format_rational(value: Fraction) -> str:
    """Canonical "p/q" text of a rational."""
    value = Fraction(value)
    return f"{value.numerator}/{value.denominator}"


class GaussianRational:
    """Exact complex number re + im*i with rational parts.

    Attributes:
        re: Real part (Fraction)
        im: Imaginary part (Fraction)
    """

    __slots__ = ("re", "im")

    def __init__(self, re: Union[int, Fraction] = 0, im: Union[int, Fraction] = 0):
        object.__setattr__(self, "re", Fraction(re))
        object.__setattr__(self, "im", Fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    @staticmethod
    def coerce(value: Number) -> "GaussianRational":
        """Convert int / Fraction / GaussianRational to GaussianRational."""
        if isinstance(value, GaussianRational):
            return value
        if isinstance(value, (int, Fraction)):
            return GaussianRational(value, 0)
        raise DomainError(f"Cannot use {type(value).__name__} as an exact coefficient")

    # ------------------------------------------------------------------
    # Arithmetic
    # ------------------------------------------------------------------

    def __add__(self, other: Number) -> "GaussianRational":
        o = GaussianRational.coerce(other)
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other: Number) -> "GaussianRational":
        o = GaussianRational.coerce(other)
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other: Number) -> "GaussianRational":
        return GaussianRational.coerce(other) - self

    def __neg__(self) -> "GaussianRational":
        return GaussianRational(-self.re, -self.im)

    def __mul__(self, other: Number) -> "GaussianRational":
        o = GaussianRational.coerce(other)
        if not self.im and not o.im:
            return GaussianRational(self.re * o.re, 0)
        return GaussianRational(
            self.re * o.re - self.im * o.im,
            self.re * o.im + self.im * o.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other: Number) -> "GaussianRational":
        o = GaussianRational.coerce(other)
        norm = o.re * o.re + o.im * o.im
        if norm == 0:
            raise ZeroDivisionError("division by zero Gaussian rational")
        num = self * o.conjugate()
        return GaussianRational(num.re / norm, num.im / norm)

    def __rtruediv__(self, other: Number) -> "GaussianRational":
        return GaussianRational.coerce(other) / self

    def __pow__(self, exponent: int) -> "GaussianRational":
        if not isinstance(exponent, int) or exponent < 0:
            raise DomainError("Only non-negative integer powers are supported")
        result = ONE
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    # ------------------------------------------------------------------
    # Comparison / hashing
    # ------------------------------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return self.im == 0 and self.re == other
        return NotImplemented

    def __hash__(self) -> int:
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.im)

    @property
    def is_real(self) -> bool:
        return self.im == 0

    # ------------------------------------------------------------------
    # Text
    # ------------------------------------------------------------------

    def __repr__(self) -> str:
        return f"GaussianRational({self.re!r}, {self.im!r})"

    def __str__(self) -> str:
        if not self.im:
            return str(self.re)
        if not self.re:
            return f"{self.im}i"
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}i"


ZERO = GaussianRational(0, 0)
ONE = GaussianRational(1, 0)
I = GaussianRational(0, 1)


def parse_gaussian(text: str) -> GaussianRational:
    """
    Parse "p/q", "r/s i", "p/q+r/s i" or "p/q-r/s i" (spaces ignored; "i" alone is 1i).

    Raises:
        DomainError: If the text is not an exact Gaussian rational
    """
    cleaned = "".join(str(text).split())
    if not cleaned:
        raise DomainError("Empty Gaussian rational literal")
    if not cleaned.endswith("i"):
        return GaussianRational(parse_rational(cleaned), 0)

    body = cleaned[:-1]
    split = max(body.rfind("+"), body.rfind("-"))
    if split > 0:
        real_text, imag_text = body[:split], body[split:]
    else:
        real_text, imag_text = "0", body
    if imag_text in ("", "+"):
        imag = Fraction(1)
    elif imag_text == "-":
        imag = Fraction(-1)
    else:
        imag = parse_rational(imag_text)
    return GaussianRational(parse_rational(real_text), imag)


def format_gaussian(value: GaussianRational) -> str:
    """Inverse of parse_gaussian, with rationals always written as p/q."""
    real = format_rational(value.re)
    if not value.im:
        return real
    sign = "+" if value.im > 0 else "-"
    return f"{real}{sign}{format_rational(abs(value.im))}i"
