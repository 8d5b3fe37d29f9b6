"""Exact arithmetic for leveled extended-real values.

The scalar type here is ``XRat``: a nonnegative rational (exact, via
``fractions.Fraction``) or infinity.  On top of it sits ``LevelValue``:
either the zero element, or a pair ``(level, magnitude)`` with an integer
level >= 0 and a strictly positive magnitude.  The operations are

* addition: the higher level absorbs the lower; equal levels add their
  magnitudes (infinity absorbs),
* multiplication: levels add, magnitudes multiply,
* scaling by a positive extended rational: magnitude scales, level is kept,
* order: lexicographic in (level, magnitude), with zero least.

Levels are unbounded in the algebra itself; the sequence embedding
``to_sequence``/``from_sequence`` works at an explicit height bound
(default ``DEFAULT_HEIGHT_BOUND``), mapping a value of level k to the
sequence with k leading infinities, the magnitude at index k, and zeros
beyond.  The order on values agrees with lexicographic order on those
sequences, which is what makes the bound-H slice of the algebra a
faithfully ordered chunk of a countable product of extended half-lines.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering
from typing import Iterable, Optional, Sequence, Union

__all__ = [
    "DEFAULT_HEIGHT_BOUND",
    "INF",
    "LevelValue",
    "RatLike",
    "XRat",
    "ZERO",
    "compare",
    "from_sequence",
    "level_of",
    "pair",
    "real_part",
    "to_sequence",
    "total",
]

DEFAULT_HEIGHT_BOUND = 16

RatLike = Union["XRat", Fraction, int, str]


@total_ordering
class XRat:
    """A nonnegative rational or infinity, exact.

    Construct from an int, a ``Fraction``, another ``XRat``, or a string
    ("p/q", "p", or "inf").  Floats are rejected: everything in this
    library is exact.  Infinity absorbs under addition and multiplication;
    0 * inf is a logic error and raises.
    """

    __slots__ = ("_frac",)

    def __init__(self, value: RatLike = 0):
        if isinstance(value, XRat):
            self._frac: Optional[Fraction] = value._frac
            return
        if isinstance(value, str):
            text = value.strip()
            if text == "inf":
                self._frac = None
                return
            value = Fraction(text)
        if isinstance(value, bool) or not isinstance(value, (int, Fraction)):
            raise TypeError(f"not an exact rational: {value!r}")
        frac = Fraction(value)
        if frac < 0:
            raise ValueError(f"negative value not allowed: {value!r}")
        self._frac = frac

    @property
    def is_infinite(self) -> bool:
        return self._frac is None

    @property
    def as_fraction(self) -> Fraction:
        if self._frac is None:
            raise ValueError("infinite value has no Fraction form")
        return self._frac

    def __bool__(self) -> bool:
        return self._frac is None or self._frac != 0

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = XRat(other)
        if not isinstance(other, XRat):
            return NotImplemented
        return self._frac == other._frac

    def __lt__(self, other: "XRat | int | Fraction") -> bool:
        if isinstance(other, (int, Fraction)):
            other = XRat(other)
        if not isinstance(other, XRat):
            return NotImplemented
        if self._frac is None:
            return False
        if other._frac is None:
            return True
        return self._frac < other._frac

    def __hash__(self) -> int:
        return hash(("XRat", self._frac))

    def __add__(self, other: RatLike) -> "XRat":
        other = XRat(other)
        if self._frac is None or other._frac is None:
            return INF
        return XRat(self._frac + other._frac)

    __radd__ = __add__

    def __mul__(self, other: RatLike) -> "XRat":
        other = XRat(other)
        if self._frac is None or other._frac is None:
            if not self or not other:
                raise ValueError("0 * inf is undefined")
            return INF
        return XRat(self._frac * other._frac)

    __rmul__ = __mul__

    def __sub__(self, other: RatLike) -> "XRat":
        other = XRat(other)
        if other._frac is None:
            raise ValueError("cannot subtract infinity")
        if self._frac is None:
            return INF
        if self._frac < other._frac:
            raise ValueError("subtraction would go negative")
        return XRat(self._frac - other._frac)

    def __truediv__(self, other: RatLike) -> "XRat":
        other = XRat(other)
        if other._frac is None:
            raise ValueError("division by infinity is not used here")
        if other._frac == 0:
            raise ZeroDivisionError("division by zero")
        if self._frac is None:
            return INF
        return XRat(self._frac / other._frac)

    def __str__(self) -> str:
        return "inf" if self._frac is None else str(self._frac)

    def __repr__(self) -> str:
        return f"XRat({str(self)!r})"


INF = XRat("inf")


@dataclass(frozen=True)
class LevelValue:
    """Zero, or a (level, magnitude) pair of the leveled semiring.

    The zero element is the unique value with ``level is None`` and
    magnitude 0; everything else has an integer level >= 0 and a strictly
    positive magnitude (possibly infinite).  Use the module constant
    ``ZERO`` and the factory ``pair`` rather than the raw constructor.
    """

    level: Optional[int]
    magnitude: XRat

    def __post_init__(self) -> None:
        if self.level is None:
            if self.magnitude:
                raise ValueError("zero element must have magnitude 0")
            return
        if not isinstance(self.level, int) or self.level < 0:
            raise ValueError(f"level must be a nonnegative int: {self.level!r}")
        if not self.magnitude:
            raise ValueError("nonzero value needs a positive magnitude; use ZERO")

    @property
    def is_zero(self) -> bool:
        return self.level is None

    def _key(self) -> tuple:
        if self.level is None:
            return (-1, XRat(0))
        return (self.level, self.magnitude)

    def __lt__(self, other: "LevelValue") -> bool:
        if not isinstance(other, LevelValue):
            return NotImplemented
        return self._key() < other._key()

    def __le__(self, other: "LevelValue") -> bool:
        if not isinstance(other, LevelValue):
            return NotImplemented
        return self == other or self._key() < other._key()

    def __gt__(self, other: "LevelValue") -> bool:
        if not isinstance(other, LevelValue):
            return NotImplemented
        return other < self

    def __ge__(self, other: "LevelValue") -> bool:
        if not isinstance(other, LevelValue):
            return NotImplemented
        return other <= self

    def __add__(self, other: "LevelValue") -> "LevelValue":
        if not isinstance(other, LevelValue):
            return NotImplemented
        if self.is_zero:
            return other
        if other.is_zero:
            return self
        if self.level == other.level:
            return LevelValue(self.level, self.magnitude + other.magnitude)
        return self if self.level > other.level else other

    def __mul__(self, other: "LevelValue") -> "LevelValue":
        if not isinstance(other, LevelValue):
            return NotImplemented
        if self.is_zero or other.is_zero:
            return ZERO
        return LevelValue(self.level + other.level, self.magnitude * other.magnitude)

    def scale(self, scalar: RatLike) -> "LevelValue":
        """Multiply the magnitude by a positive extended rational scalar."""
        scalar = XRat(scalar)
        if not scalar:
            raise ValueError("scalar must be positive")
        if self.is_zero:
            return ZERO
        return LevelValue(self.level, self.magnitude * scalar)

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        return f"({self.level},{self.magnitude})"

    def __repr__(self) -> str:
        return "ZERO" if self.is_zero else f"pair({self.level}, {str(self.magnitude)!r})"


ZERO = LevelValue(None, XRat(0))


def pair(level: int, magnitude: RatLike) -> LevelValue:
    """Build the nonzero value (level, magnitude)."""
    return LevelValue(level, XRat(magnitude))


def level_of(x: LevelValue) -> int:
    """Level of a nonzero value; the zero element has no level and raises."""
    if x.is_zero:
        raise ValueError("the zero element has no level")
    assert x.level is not None
    return x.level


def real_part(x: LevelValue) -> XRat:
    """Magnitude of x, with the convention that zero's magnitude is 0."""
    return x.magnitude


def compare(a: LevelValue, b: LevelValue) -> int:
    """Three-way comparison: -1, 0, or 1."""
    if a == b:
        return 0
    return -1 if a < b else 1


def total(values: Iterable[LevelValue]) -> LevelValue:
    """Sum of finitely many values; the empty sum is ZERO."""
    acc = ZERO
    for v in values:
        acc = acc + v
    return acc


def to_sequence(x: LevelValue, height: int = DEFAULT_HEIGHT_BOUND) -> tuple[XRat, ...]:
    """Embed x into its height-`height` sequence form.

    A value of level k becomes (inf, ..., inf, magnitude, 0, ..., 0) with
    the magnitude at index k; zero becomes the all-zero sequence.  Raises
    when the level does not fit below the height bound.
    """
    if height < 1:
        raise ValueError("height must be at least 1")
    if x.is_zero:
        return (XRat(0),) * height
    k = level_of(x)
    if k >= height:
        raise ValueError(f"level {k} does not fit below height bound {height}")
    return (INF,) * k + (x.magnitude,) + (XRat(0),) * (height - k - 1)


def from_sequence(seq: Sequence[RatLike]) -> LevelValue:
    """Inverse of to_sequence: decode a valid sequence back to a value.

    The shape must be: some number k of leading infinities, then either a
    positive finite entry at index k followed by zeros (decoding to the
    value (k, entry)), or zeros all the way (decoding to (k-1, inf), the
    image of an infinite magnitude at level k-1).  The all-zero sequence
    decodes to ZERO; the all-infinity sequence of height H to (H-1, inf).
    Anything else raises ValueError.
    """
    entries = [XRat(v) for v in seq]
    if not entries:
        raise ValueError("empty sequence")
    k = 0
    while k < len(entries) and entries[k].is_infinite:
        k += 1
    if k == len(entries):
        return pair(len(entries) - 1, INF)
    if any(entries[i] for i in range(k + 1, len(entries))):
        raise ValueError("nonzero entry after the distinguished index")
    head = entries[k]
    if not head:
        return ZERO if k == 0 else pair(k - 1, INF)
    return pair(k, head)
