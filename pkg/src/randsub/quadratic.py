"""Exact arithmetic in real quadratic fields ℚ(√Δ)."""
from __future__ import annotations

import math
from fractions import Fraction
from functools import total_ordering
from numbers import Rational


def squarefree_split(n: int) -> tuple[int, int]:
    """Write ``n = s**2 * r`` with ``r`` square-free; return ``(s, r)``."""
    if n < 0:
        raise ValueError("radicand must be non-negative")
    if n in (0, 1):
        return (1, n) if n == 1 else (0, 0)
    s, r = 1, n
    f = 2
    while f * f <= r:
        while r % (f * f) == 0:
            r //= f * f
            s *= f
        f += 1
    return s, r


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot use {x!r} as an exact rational")


@total_ordering
class QuadNumber:
    """The number ``p + q·√Δ`` with rational ``p, q`` and square-free ``Δ ≥ 0``.

    Rational values are normalised to ``q = 0, Δ = 0`` so they mix freely with
    any field.  Two irrational operands must share the same ``Δ``.
    """

    __slots__ = ("p", "q", "radicand")

    def __init__(self, p=0, q=0, radicand: int = 0):
        p = _as_fraction(p)
        q = _as_fraction(q)
        radicand = int(radicand)
        if radicand < 0:
            raise ValueError("only real quadratic fields are supported")
        s, r = squarefree_split(radicand)
        q *= s
        if r == 1:
            p, q, r = p + q, Fraction(0), 0
        if q == 0:
            r = 0
        self.p = p
        self.q = q
        self.radicand = r

    @classmethod
    def sqrt(cls, n: int) -> QuadNumber:
        return cls(0, 1, n)

    @classmethod
    def coerce(cls, x) -> QuadNumber:
        if isinstance(x, QuadNumber):
            return x
        return cls(_as_fraction(x))

    # -- structure

    @property
    def is_rational(self) -> bool:
        return self.q == 0

    @property
    def is_integer(self) -> bool:
        return self.q == 0 and self.p.denominator == 1

    def conjugate(self) -> QuadNumber:
        return QuadNumber(self.p, -self.q, self.radicand)

    def norm(self) -> Fraction:
        return self.p * self.p - self.q * self.q * self.radicand

    def _field(self, other: QuadNumber) -> int:
        if self.radicand and other.radicand and self.radicand != other.radicand:
            raise ValueError(f"cannot combine ℚ(√{self.radicand}) with ℚ(√{other.radicand})")
        return self.radicand or other.radicand

    # -- arithmetic

    def __add__(self, other):
        try:
            other = QuadNumber.coerce(other)
        except TypeError:
            return NotImplemented
        return QuadNumber(self.p + other.p, self.q + other.q, self._field(other))

    __radd__ = __add__

    def __neg__(self):
        return QuadNumber(-self.p, -self.q, self.radicand)

    def __sub__(self, other):
        try:
            other = QuadNumber.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        try:
            other = QuadNumber.coerce(other)
        except TypeError:
            return NotImplemented
        r = self._field(other)
        return QuadNumber(
            self.p * other.p + self.q * other.q * r,
            self.p * other.q + self.q * other.p,
            r,
        )

    __rmul__ = __mul__

    def inverse(self) -> QuadNumber:
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in quadratic field")
        return QuadNumber(self.p / n, -self.q / n, self.radicand)

    def __truediv__(self, other):
        try:
            other = QuadNumber.coerce(other)
        except TypeError:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return QuadNumber.coerce(other) * self.inverse()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result, base = QuadNumber(1), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __abs__(self):
        return -self if self.sign() < 0 else self

    # -- order

    def sign(self) -> int:
        p, q = self.p, self.q
        sp = (p > 0) - (p < 0)
        sq = (q > 0) - (q < 0)
        if sq == 0:
            return sp
        if sp == 0 or sp == sq:
            return sq
        # opposite signs: compare p² with q²Δ
        diff = p * p - q * q * self.radicand
        return sp if diff > 0 else sq

    def __eq__(self, other):
        try:
            other = QuadNumber.coerce(other)
        except TypeError:
            return NotImplemented
        return (self.p, self.q, self.radicand) == (other.p, other.q, other.radicand)

    def __lt__(self, other):
        try:
            other = QuadNumber.coerce(other)
        except TypeError:
            return NotImplemented
        return (self - other).sign() < 0

    def __hash__(self):
        if self.q == 0:
            return hash(self.p)
        return hash((self.p, self.q, self.radicand))

    def __bool__(self):
        return self.p != 0 or self.q != 0

    def __float__(self):
        return float(self.p) + float(self.q) * math.sqrt(self.radicand)

    def floor(self) -> int:
        guess = math.floor(float(self))
        while QuadNumber(guess) > self:
            guess -= 1
        while QuadNumber(guess + 1) <= self:
            guess += 1
        return guess

    def ceil(self) -> int:
        return -((-self).floor())

    def decimal(self, digits: int = 12) -> str:
        """Decimal rendering correct to ``digits`` places (round half up)."""
        scale = 10**digits
        n = (self * scale + Fraction(1, 2)).floor()
        sign = "-" if n < 0 else ""
        n = abs(n)
        whole, frac = divmod(n, scale)
        return f"{sign}{whole}.{frac:0{digits}d}" if digits else f"{sign}{whole}"

    # -- rendering

    def __repr__(self):
        return f"QuadNumber({self.p!s}, {self.q!s}, {self.radicand})"

    def __str__(self):
        if self.q == 0:
            return str(self.p)
        den = math.lcm(self.p.denominator, self.q.denominator)
        a = int(self.p * den)
        b = int(self.q * den)
        root = f"√{self.radicand}"
        surd = root if abs(b) == 1 else f"{abs(b)}{root}"
        if a == 0:
            body = ("-" if b < 0 else "") + surd
            return body if den == 1 else f"{body}/{den}"
        body = f"{a}{'-' if b < 0 else '+'}{surd}"
        return body if den == 1 else f"({body})/{den}"

    def to_json(self) -> dict:
        return {
            "rational": str(self.p),
            "surd": str(self.q),
            "radicand": self.radicand,
            "text": str(self),
            "approx": float(self),
        }

    @classmethod
    def from_json(cls, data) -> QuadNumber:
        if isinstance(data, (int, str)):
            return cls(Fraction(data))
        return cls(Fraction(data["rational"]), Fraction(data["surd"]), data["radicand"])
