"""Exact coefficient fields: prime fields F_p and the rationals.

Prime-field elements are plain ``int`` values in ``[0, p)``; rational
elements are :class:`fractions.Fraction`.  Nothing here ever touches a float.
"""

from __future__ import annotations

import enum
import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

import numpy as np
from sympy import isprime

DEFAULT_PRIME = 2147483647
MIN_PRIME = 32003
MAX_PRIME = 1 << 62
RATIONAL_COEFF_BOUND = 32

Element = Union[int, Fraction]


class FieldKind(str, enum.Enum):
    PRIME = "PrimeField"
    RATIONAL = "Rational"


def default_prime() -> int:
    """Default modulus, overridable through the ``STAR_PRIME`` environment variable."""
    value = os.environ.get("STAR_PRIME")
    return int(value) if value else DEFAULT_PRIME


@dataclass(frozen=True)
class FieldConfig:
    kind: FieldKind = FieldKind.PRIME
    prime: int = DEFAULT_PRIME

    def __post_init__(self):
        object.__setattr__(self, "kind", FieldKind(self.kind))
        if self.kind is FieldKind.PRIME:
            p = self.prime
            if not MIN_PRIME <= p < MAX_PRIME:
                raise ValueError(f"prime must lie in [{MIN_PRIME}, 2^62), got {p}")
            if not isprime(p):
                raise ValueError(f"{p} is not prime")

    @classmethod
    def prime_field(cls, p: int | None = None) -> FieldConfig:
        return cls(FieldKind.PRIME, default_prime() if p is None else p)

    @classmethod
    def rationals(cls) -> FieldConfig:
        return cls(FieldKind.RATIONAL, DEFAULT_PRIME)

    @property
    def is_prime(self) -> bool:
        return self.kind is FieldKind.PRIME

    @property
    def fits_int64(self) -> bool:
        # products of two reduced residues must fit a signed 64-bit word
        return self.is_prime and self.prime < (1 << 31)

    def __str__(self):
        return f"GF({self.prime})" if self.is_prime else "QQ"

    # -- element arithmetic -------------------------------------------------

    def __call__(self, x) -> Element:
        """Coerce an int, Fraction or ``"a/b"`` string into the field."""
        if isinstance(x, str):
            x = Fraction(x.strip())
        if isinstance(x, (np.integer,)):
            x = int(x)
        if self.is_prime:
            if isinstance(x, Fraction):
                if x.denominator % self.prime == 0:
                    raise ZeroDivisionError(f"denominator of {x} vanishes mod {self.prime}")
                return x.numerator * pow(x.denominator, -1, self.prime) % self.prime
            return int(x) % self.prime
        return Fraction(x)

    def zero(self) -> Element:
        return 0 if self.is_prime else Fraction(0)

    def one(self) -> Element:
        return 1 if self.is_prime else Fraction(1)

    def add(self, a: Element, b: Element) -> Element:
        return (a + b) % self.prime if self.is_prime else a + b

    def sub(self, a: Element, b: Element) -> Element:
        return (a - b) % self.prime if self.is_prime else a - b

    def mul(self, a: Element, b: Element) -> Element:
        return a * b % self.prime if self.is_prime else a * b

    def neg(self, a: Element) -> Element:
        return -a % self.prime if self.is_prime else -a

    def inv(self, a: Element) -> Element:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, -1, self.prime) if self.is_prime else 1 / a

    def div(self, a: Element, b: Element) -> Element:
        return self.mul(a, self.inv(b))

    def pow(self, a: Element, e: int) -> Element:
        return pow(a, e, self.prime) if self.is_prime else a**e

    def random_element(self, rng: np.random.Generator) -> Element:
        """Uniform over F_p; small integers in [-B, B] over QQ."""
        if self.is_prime:
            return int(rng.integers(0, self.prime, dtype=np.int64))
        b = RATIONAL_COEFF_BOUND
        return Fraction(int(rng.integers(-b, b + 1)))

    def to_string(self, a: Element) -> str:
        return str(a)

    def to_json(self) -> dict:
        return {"kind": self.kind.value, "prime": self.prime if self.is_prime else None}

    @classmethod
    def from_json(cls, data: dict) -> FieldConfig:
        kind = FieldKind(data["kind"])
        if kind is FieldKind.RATIONAL:
            return cls.rationals()
        return cls(kind, int(data["prime"]))
