"""Exact arithmetic in Q or in a real quadratic field Q(g), g**2 = p + q*g.

Root coordinates of the non-crystallographic and non-simply-laced types live
in Q(sqrt 2) or Q(golden ratio); everything else is rational. Values are
pairs of Fractions and never touch floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


@dataclass(frozen=True)
class QuadraticField:
    name: str
    p: int = 0  # g**2 = p + q*g; p == q == 0 means plain Q
    q: int = 0

    @property
    def is_rational(self) -> bool:
        return self.p == 0 and self.q == 0

    def __call__(self, a=0, b=0) -> Scalar:
        if self.is_rational and b:
            raise ValueError("rational field has no generator")
        return Scalar(self, Fraction(a), Fraction(b))

    @property
    def gen(self) -> Scalar:
        return self(0, 1)

    def __repr__(self) -> str:
        return self.name


RATIONALS = QuadraticField("Q")
SQRT2 = QuadraticField("Q(sqrt2)", 2, 0)
GOLDEN = QuadraticField("Q(phi)", 1, 1)


class Scalar:
    """a + b*g with rational a, b."""

    __slots__ = ("field", "a", "b")

    def __init__(self, field: QuadraticField, a: Fraction, b: Fraction) -> None:
        self.field = field
        self.a = a
        self.b = b

    def _coerce(self, other) -> Scalar:
        if isinstance(other, Scalar):
            if other.field is not self.field:
                raise TypeError(f"field mismatch: {self.field} vs {other.field}")
            return other
        if isinstance(other, (int, Fraction)):
            return Scalar(self.field, Fraction(other), Fraction(0))
        return NotImplemented

    def __add__(self, other) -> Scalar:
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Scalar(self.field, self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __neg__(self) -> Scalar:
        return Scalar(self.field, -self.a, -self.b)

    def __sub__(self, other) -> Scalar:
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Scalar(self.field, self.a - o.a, self.b - o.b)

    def __rsub__(self, other) -> Scalar:
        return -(self - other)

    def __mul__(self, other) -> Scalar:
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        # (a + bg)(c + dg) = ac + (ad + bc) g + bd (p + q g)
        bd = self.b * o.b
        f = self.field
        return Scalar(f, self.a * o.a + bd * f.p, self.a * o.b + self.b * o.a + bd * f.q)

    __rmul__ = __mul__

    def sign(self) -> int:
        """Exact sign, using g = (q + sqrt(D)) / 2 with D = q**2 + 4p > 0."""
        if self.b == 0:
            return (self.a > 0) - (self.a < 0)
        f = self.field
        # a + b g = x + y sqrt(D)
        x = self.a + self.b * Fraction(f.q, 2)
        y = self.b / 2
        disc = f.q * f.q + 4 * f.p
        sx = (x > 0) - (x < 0)
        sy = (y > 0) - (y < 0)
        if sx == 0:
            return sy
        if sx == sy:
            return sx
        # opposite signs: compare x**2 with y**2 * D
        lhs, rhs = x * x, y * y * disc
        if lhs == rhs:
            return 0
        return sx if lhs > rhs else sy

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        if isinstance(other, Scalar):
            return self.field is other.field and self.a == other.a and self.b == other.b
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.a, self.b))

    def __float__(self) -> float:
        f = self.field
        g = (f.q + (f.q * f.q + 4 * f.p) ** 0.5) / 2
        return float(self.a) + float(self.b) * g

    def __repr__(self) -> str:
        if self.b == 0:
            return str(self.a)
        return f"{self.a}{'+' if self.b >= 0 else '-'}{abs(self.b)}g"
