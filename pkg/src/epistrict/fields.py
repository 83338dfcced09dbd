"""Exact scalar arithmetic: prime fields Z_d and the rational field.

Scalars are plain Python objects — ``int`` for prime-field elements (kept reduced to the
canonical range ``0..d-1``) and ``fractions.Fraction`` for rationals (automatically in
lowest terms with positive denominator).  A :class:`Field` instance supplies the
operations, so vectors and matrices can stay ordinary tuples.

No floats anywhere in this module; equality of scalars is meaningful.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Union

Scalar = Union[int, Fraction]


def _is_prime(d: int) -> bool:
    if d < 2:
        return False
    if d % 2 == 0:
        return d == 2
    f = 3
    while f * f <= d:
        if d % f == 0:
            return False
        f += 2
    return True


class Field:
    """Common interface for the two exact scalar domains."""

    is_finite: bool

    def element(self, value) -> Scalar:
        """Coerce ``value`` into canonical form, validating its type."""
        raise NotImplementedError

    def add(self, a: Scalar, b: Scalar) -> Scalar:
        raise NotImplementedError

    def sub(self, a: Scalar, b: Scalar) -> Scalar:
        raise NotImplementedError

    def mul(self, a: Scalar, b: Scalar) -> Scalar:
        raise NotImplementedError

    def neg(self, a: Scalar) -> Scalar:
        raise NotImplementedError

    def inv(self, a: Scalar) -> Scalar:
        raise NotImplementedError

    def div(self, a: Scalar, b: Scalar) -> Scalar:
        return self.mul(a, self.inv(b))

    @property
    def zero(self) -> Scalar:
        raise NotImplementedError

    @property
    def one(self) -> Scalar:
        raise NotImplementedError

    def elements(self):
        """Iterate every field element (finite fields only)."""
        raise NotImplementedError


class PrimeField(Field):
    """The field Z_d for a prime modulus d, with elements ``int`` in ``0..d-1``."""

    is_finite = True

    def __init__(self, modulus: int):
        if not _is_prime(modulus):
            raise ValueError(f"modulus must be prime, got {modulus}")
        self.modulus = modulus

    def element(self, value) -> int:
        if type(value) is int:  # fast path: already the canonical representation
            return value % self.modulus
        if isinstance(value, Fraction):
            if value.denominator == 1:
                value = value.numerator
            else:
                # A reduced fraction can still land in Z_d when d does not divide
                # the denominator; convenient when loading scenario files.
                return self.div(value.numerator % self.modulus,
                                value.denominator % self.modulus)
        if not isinstance(value, int) or isinstance(value, bool):
            raise TypeError(f"prime-field element must be an int, got {value!r}")
        return value % self.modulus

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.modulus

    def sub(self, a: int, b: int) -> int:
        return (a - b) % self.modulus

    def mul(self, a: int, b: int) -> int:
        return (a * b) % self.modulus

    def neg(self, a: int) -> int:
        return (-a) % self.modulus

    def inv(self, a: int) -> int:
        a %= self.modulus
        if a == 0:
            raise ZeroDivisionError("inverse of 0 in Z_%d" % self.modulus)
        return pow(a, self.modulus - 2, self.modulus)

    @property
    def zero(self) -> int:
        return 0

    @property
    def one(self) -> int:
        return 1

    def elements(self):
        return range(self.modulus)

    def __eq__(self, other) -> bool:
        return isinstance(other, PrimeField) and other.modulus == self.modulus

    def __hash__(self) -> int:
        return hash(("PrimeField", self.modulus))

    def __repr__(self) -> str:
        return f"PrimeField({self.modulus})"


class RationalField(Field):
    """The rational numbers, with elements ``fractions.Fraction``.

    Fraction normalizes to lowest terms with a positive denominator on construction,
    which is exactly the canonical representative the rest of the package assumes.
    """

    is_finite = False

    def element(self, value) -> Fraction:
        if isinstance(value, float):
            raise TypeError("floats are not exact; pass int, Fraction or 'num/den' str")
        return Fraction(value)

    def add(self, a: Fraction, b: Fraction) -> Fraction:
        return a + b

    def sub(self, a: Fraction, b: Fraction) -> Fraction:
        return a - b

    def mul(self, a: Fraction, b: Fraction) -> Fraction:
        return a * b

    def neg(self, a: Fraction) -> Fraction:
        return -a

    def inv(self, a: Fraction) -> Fraction:
        if a == 0:
            raise ZeroDivisionError("inverse of 0")
        return 1 / a

    @property
    def zero(self) -> Fraction:
        return Fraction(0)

    @property
    def one(self) -> Fraction:
        return Fraction(1)

    def elements(self):
        raise ValueError("the rational field is infinite; cannot enumerate")

    def __eq__(self, other) -> bool:
        return isinstance(other, RationalField)

    def __hash__(self) -> int:
        return hash("RationalField")

    def __repr__(self) -> str:
        return "RationalField()"


#: Shared instance — all rational-field values interoperate through this object.
RATIONALS = RationalField()
