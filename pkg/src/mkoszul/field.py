"""Exact scalar fields: the rationals and prime fields F_p.

Rational scalars are plain :class:`fractions.Fraction` values.  Elements of
F_p are :class:`FpElement` instances, which support the same operator
protocol so the rest of the package can stay field-agnostic.
"""

from __future__ import annotations

import random
import re
from fractions import Fraction
from functools import lru_cache


class Field:
    """Common interface of the two supported scalar fields."""

    characteristic: int = 0

    def __call__(self, x):
        raise NotImplementedError

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def parse(self, text: str):
        """Parse an exact literal such as ``-3`` or ``2/5``."""
        m = re.fullmatch(r"\s*([+-]?\d+)\s*(?:/\s*(\d+)\s*)?", text)
        if m is None:
            raise ValueError(f"malformed scalar literal {text!r}")
        num = int(m.group(1))
        den = int(m.group(2)) if m.group(2) is not None else 1
        if den == 0:
            raise ZeroDivisionError(f"zero denominator in {text!r}")
        return self(Fraction(num, den))

    def render(self, x) -> str:
        return str(self(x))

    def random_element(self, rng: random.Random, bound: int = 5, nonzero: bool = False):
        raise NotImplementedError

    def divides_characteristic(self, k: int) -> bool:
        """True when the characteristic of the field divides ``k``."""
        return self.characteristic != 0 and k % self.characteristic == 0


class RationalField(Field):
    characteristic = 0

    def __call__(self, x):
        if isinstance(x, Fraction):
            return x
        if isinstance(x, FpElement):
            raise TypeError("cannot coerce an F_p element into the rationals")
        if isinstance(x, float):
            raise TypeError("floating-point values are not exact scalars")
        return Fraction(x)

    def random_element(self, rng, bound=5, nonzero=False):
        while True:
            num = rng.randint(-bound, bound)
            den = rng.randint(1, bound)
            x = Fraction(num, den)
            if x or not nonzero:
                return x

    def __repr__(self):
        return "QQ"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")


QQ = RationalField()


class PrimeField(Field):
    def __init__(self, p: int):
        if p < 2 or any(p % q == 0 for q in range(2, int(p**0.5) + 1)):
            raise ValueError(f"{p} is not a prime")
        self.p = p
        self.characteristic = p

    def __call__(self, x):
        if isinstance(x, FpElement):
            if x.field.p != self.p:
                raise TypeError(f"element of F_{x.field.p} used in F_{self.p}")
            return x
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise ZeroDivisionError(f"{x} has no image in F_{self.p}")
            return FpElement(x.numerator * pow(x.denominator, -1, self.p), self)
        if isinstance(x, int):
            return FpElement(x, self)
        raise TypeError(f"cannot coerce {type(x).__name__} into F_{self.p}")

    def render(self, x) -> str:
        return str(self(x).value)

    def random_element(self, rng, bound=None, nonzero=False):
        return FpElement(rng.randrange(1 if nonzero else 0, self.p), self)

    def elements(self):
        return [FpElement(v, self) for v in range(self.p)]

    def __repr__(self):
        return f"GF({self.p})"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))


@lru_cache(maxsize=None)
def GF(p: int) -> PrimeField:
    return PrimeField(p)


class FpElement:
    """An element of the prime field F_p."""

    __slots__ = ("value", "field")

    def __init__(self, value: int, field: PrimeField):
        self.value = value % field.p
        self.field = field

    def _coerce(self, other):
        if isinstance(other, FpElement):
            if other.field.p != self.field.p:
                raise TypeError("mixing elements of different prime fields")
            return other.value
        if isinstance(other, int):
            return other
        if isinstance(other, Fraction):
            return self.field(other).value
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FpElement(self.value + o, self.field)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FpElement(self.value - o, self.field)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FpElement(o - self.value, self.field)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FpElement(self.value * o, self.field)

    __rmul__ = __mul__

    def inverse(self):
        if self.value == 0:
            raise ZeroDivisionError("inverse of zero in F_p")
        return FpElement(pow(self.value, -1, self.field.p), self.field)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if o % self.field.p == 0:
            raise ZeroDivisionError("division by zero in F_p")
        return FpElement(self.value * pow(o, -1, self.field.p), self.field)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FpElement(o, self.field) / self

    def __neg__(self):
        return FpElement(-self.value, self.field)

    def __pos__(self):
        return self

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        return FpElement(pow(self.value, k, self.field.p), self.field)

    def __eq__(self, other):
        if isinstance(other, FpElement):
            return self.field.p == other.field.p and self.value == other.value
        if isinstance(other, (int, Fraction)):
            try:
                return self.value == self.field(other).value
            except ZeroDivisionError:
                return False
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.field.p))

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        return f"{self.value} (mod {self.field.p})"

    def __str__(self):
        return str(self.value)


def field_of(x) -> Field:
    """The field an exact scalar lives in."""
    if isinstance(x, FpElement):
        return x.field
    return QQ
