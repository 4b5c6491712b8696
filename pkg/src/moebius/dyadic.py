"""Exact dyadic rational arithmetic on the line and on the circle R mod 2.

All angular quantities in this package are stored in units of pi, so the
circle is R/2Z and dyadic rationals num/2^exp are closed under every
operation we need.  Values are always kept reduced: the numerator is odd
unless the exponent is zero.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import ParseError


class Dyadic:
    """num / 2^exp with arbitrary-precision numerator, reduced."""

    __slots__ = ("num", "exp")

    def __init__(self, num: int, exp: int = 0):
        if exp < 0:
            raise ValueError("exponent must be nonnegative")
        if num == 0:
            exp = 0
        else:
            while exp > 0 and num % 2 == 0:
                num //= 2
                exp -= 1
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "exp", exp)

    def __setattr__(self, name, value):
        raise AttributeError("Dyadic is immutable")

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other: "Dyadic") -> "Dyadic":
        a, b = self, other
        if a.exp >= b.exp:
            return Dyadic(a.num + (b.num << (a.exp - b.exp)), a.exp)
        return Dyadic(b.num + (a.num << (b.exp - a.exp)), b.exp)

    def __sub__(self, other: "Dyadic") -> "Dyadic":
        a, b = self, other
        if a.exp >= b.exp:
            return Dyadic(a.num - (b.num << (a.exp - b.exp)), a.exp)
        return Dyadic((a.num << (b.exp - a.exp)) - b.num, b.exp)

    def __neg__(self) -> "Dyadic":
        return Dyadic(-self.num, self.exp)

    def __mul__(self, other: "Dyadic") -> "Dyadic":
        return Dyadic(self.num * other.num, self.exp + other.exp)

    def half(self) -> "Dyadic":
        return Dyadic(self.num, self.exp + 1)

    def scaled_pow2(self, k: int) -> "Dyadic":
        """self / 2^k (k may be negative for multiplication)."""
        if k >= 0:
            return Dyadic(self.num, self.exp + k)
        return Dyadic(self.num << (-k), self.exp)

    # -- comparisons --------------------------------------------------------

    def _cmp(self, other: "Dyadic") -> int:
        d = (self - other).num
        return (d > 0) - (d < 0)

    def __eq__(self, other) -> bool:
        return isinstance(other, Dyadic) and self.num == other.num and self.exp == other.exp

    def __lt__(self, other: "Dyadic") -> bool:
        return self._cmp(other) < 0

    def __le__(self, other: "Dyadic") -> bool:
        return self._cmp(other) <= 0

    def __gt__(self, other: "Dyadic") -> bool:
        return self._cmp(other) > 0

    def __ge__(self, other: "Dyadic") -> bool:
        return self._cmp(other) >= 0

    def __hash__(self):
        return hash((self.num, self.exp))

    # -- conversions --------------------------------------------------------

    def floor(self) -> int:
        return self.num >> self.exp

    def ceil(self) -> int:
        return -((-self.num) >> self.exp)

    @property
    def is_integer(self) -> bool:
        return self.exp == 0

    def as_fraction(self) -> Fraction:
        return Fraction(self.num, 1 << self.exp)

    def __float__(self) -> float:
        return self.num / (1 << self.exp)

    def __str__(self) -> str:
        if self.exp == 0:
            return str(self.num)
        return f"{self.num}/{1 << self.exp}"

    def __repr__(self) -> str:
        return f"Dyadic({self})"

    def decimal(self) -> str:
        """Exact decimal expansion (dyadics always terminate)."""
        n, e = self.num, self.exp
        sign = "-" if n < 0 else ""
        n = abs(n) * 5 ** e
        s = str(n).rjust(e + 1, "0")
        if e == 0:
            return sign + s
        whole, frac = s[:-e], s[-e:]
        frac = frac.rstrip("0")
        return sign + whole + ("." + frac if frac else "")


ZERO = Dyadic(0)
ONE = Dyadic(1)
TWO = Dyadic(2)


def dyadic(value: int | str | Dyadic) -> Dyadic:
    if isinstance(value, Dyadic):
        return value
    if isinstance(value, int):
        return Dyadic(value)
    return parse_dyadic(value)


def parse_dyadic(text: str) -> Dyadic:
    """Parse "num/den" with den a power of two, or a bare integer."""
    s = text.strip()
    try:
        if "/" in s:
            num_s, den_s = s.split("/")
            num, den = int(num_s), int(den_s)
            if den <= 0 or den & (den - 1):
                raise ParseError(f"denominator of {text!r} is not a power of two")
            return Dyadic(num, den.bit_length() - 1)
        return Dyadic(int(s))
    except ValueError as exc:
        raise ParseError(f"not a dyadic rational: {text!r}") from exc


def floor_div2(d: Dyadic) -> int:
    """floor(d / 2), exact."""
    return d.num >> (d.exp + 1)


class CircleAngle:
    """A point of the circle R mod 2, stored as its representative in [0, 2)."""

    __slots__ = ("v",)

    def __init__(self, value: Dyadic):
        object.__setattr__(self, "v", value - Dyadic(2 * floor_div2(value)))

    def __setattr__(self, name, value):
        raise AttributeError("CircleAngle is immutable")

    def __eq__(self, other) -> bool:
        return isinstance(other, CircleAngle) and self.v == other.v

    def __hash__(self):
        return hash(("angle", self.v))

    def __str__(self) -> str:
        return str(self.v)

    def __repr__(self) -> str:
        return f"CircleAngle({self.v})"

    def gap_to(self, other: "CircleAngle") -> Dyadic:
        """Length of the counterclockwise arc from self to other."""
        return CircleAngle(other.v - self.v).v


def lift_into_window(a: CircleAngle, lo: Dyadic) -> Dyadic:
    """The unique real lift a + 2k with lo <= lift < lo + 2."""
    lift = a.v - Dyadic(2 * floor_div2(a.v - lo))
    if not (lo <= lift < lo + TWO):
        raise AssertionError("lift_into_window out of range")
    return lift
