"""Sparse homogeneous polynomials in ``x0..x{n}`` over an exact field."""

from __future__ import annotations

import re
from collections import Counter
from functools import lru_cache
from itertools import combinations_with_replacement
from math import comb
from typing import Iterable, Mapping, Sequence

import numpy as np

from .field import Element, FieldConfig

Monomial = tuple[int, ...]


@lru_cache(maxsize=None)
def monomial_basis(nvars: int, d: int) -> tuple[Monomial, ...]:
    """All exponent vectors of total degree ``d`` in graded-lex order (x0 largest).

    >>> monomial_basis(2, 2)
    ((2, 0), (1, 1), (0, 2))
    """
    if nvars < 1:
        raise ValueError("nvars must be positive")
    if d < 0:
        return ()
    out = []
    for combo in combinations_with_replacement(range(nvars), d):
        counts = Counter(combo)
        out.append(tuple(counts.get(i, 0) for i in range(nvars)))
    assert len(out) == comb(nvars - 1 + d, d)
    return tuple(out)


@lru_cache(maxsize=None)
def monomial_index(nvars: int, d: int) -> dict[Monomial, int]:
    return {m: i for i, m in enumerate(monomial_basis(nvars, d))}


class MultiPoly:
    """A homogeneous polynomial with a declared degree.

    ``terms`` maps exponent tuples to nonzero field elements.  Instances are
    treated as immutable; every operation returns a new polynomial.
    """

    __slots__ = ("field", "nvars", "degree", "terms")

    def __init__(
        self,
        field: FieldConfig,
        nvars: int,
        degree: int,
        terms: Mapping[Monomial, object] | None = None,
    ):
        self.field = field
        self.nvars = nvars
        self.degree = degree
        clean: dict[Monomial, Element] = {}
        for mono, c in (terms or {}).items():
            mono = tuple(int(e) for e in mono)
            if len(mono) != nvars or sum(mono) != degree or min(mono, default=0) < 0:
                raise ValueError(f"monomial {mono} is not of degree {degree} in {nvars} variables")
            c = field(c)
            if c != 0:
                clean[mono] = c
        self.terms = clean

    @classmethod
    def _raw(cls, field, nvars, degree, terms):
        # trusted constructor: terms already reduced, nonzero and homogeneous
        p = cls.__new__(cls)
        p.field, p.nvars, p.degree, p.terms = field, nvars, degree, terms
        return p

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, field: FieldConfig, nvars: int, degree: int) -> MultiPoly:
        return cls._raw(field, nvars, degree, {})

    @classmethod
    def constant(cls, field: FieldConfig, nvars: int, c=1) -> MultiPoly:
        return cls(field, nvars, 0, {(0,) * nvars: c})

    @classmethod
    def variable(cls, field: FieldConfig, nvars: int, i: int) -> MultiPoly:
        mono = tuple(1 if j == i else 0 for j in range(nvars))
        return cls(field, nvars, 1, {mono: 1})

    @classmethod
    def linear(cls, field: FieldConfig, coeffs: Sequence) -> MultiPoly:
        nvars = len(coeffs)
        terms = {}
        for i, c in enumerate(coeffs):
            terms[tuple(1 if j == i else 0 for j in range(nvars))] = c
        return cls(field, nvars, 1, terms)

    @classmethod
    def from_coefficients(cls, field: FieldConfig, nvars: int, degree: int, coeffs: Sequence) -> MultiPoly:
        """Inverse of :meth:`coefficient_vector`."""
        basis = monomial_basis(nvars, degree)
        if len(coeffs) != len(basis):
            raise ValueError("coefficient vector has the wrong length")
        return cls(field, nvars, degree, dict(zip(basis, coeffs)))

    @classmethod
    def parse(cls, text: str, field: FieldConfig, nvars: int | None = None, degree: int | None = None) -> MultiPoly:
        return parse_poly(text, field, nvars=nvars, degree=degree)

    # -- queries ------------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, mono: Monomial) -> Element:
        return self.terms.get(tuple(mono), self.field.zero())

    def coefficient_vector(self) -> list[Element]:
        zero = self.field.zero()
        return [self.terms.get(m, zero) for m in monomial_basis(self.nvars, self.degree)]

    def linear_coefficients(self) -> list[Element]:
        if self.degree != 1:
            raise ValueError("not a linear form")
        return self.coefficient_vector()

    def eval(self, point: Sequence) -> Element:
        if len(point) != self.nvars:
            raise ValueError(f"point has {len(point)} coordinates, expected {self.nvars}")
        F = self.field
        pt = [F(x) for x in point]
        total = F.zero()
        if F.is_prime:
            p = F.prime
            for mono, c in self.terms.items():
                v = c
                for x, e in zip(pt, mono):
                    if e:
                        v = v * pow(x, e, p) % p
                total += v
            return total % p
        for mono, c in self.terms.items():
            v = c
            for x, e in zip(pt, mono):
                if e:
                    v *= x**e
            total += v
        return total

    __call__ = eval

    # -- arithmetic ---------------------------------------------------------

    def _check_compatible(self, other: MultiPoly):
        if other.field != self.field or other.nvars != self.nvars:
            raise ValueError("polynomials live in different rings")

    def __add__(self, other):
        if not isinstance(other, MultiPoly):
            return NotImplemented
        self._check_compatible(other)
        if other.degree != self.degree:
            raise ValueError(f"cannot add degree {self.degree} and degree {other.degree}")
        F = self.field
        terms = dict(self.terms)
        for mono, c in other.terms.items():
            v = F.add(terms.get(mono, 0), c)
            if v:
                terms[mono] = v
            else:
                terms.pop(mono, None)
        return MultiPoly._raw(F, self.nvars, self.degree, terms)

    def __neg__(self):
        F = self.field
        return MultiPoly._raw(F, self.nvars, self.degree, {m: F.neg(c) for m, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self + (-other)

    def scale(self, c) -> MultiPoly:
        F = self.field
        c = F(c)
        if c == 0:
            return MultiPoly.zero(F, self.nvars, self.degree)
        return MultiPoly._raw(F, self.nvars, self.degree, {m: F.mul(v, c) for m, v in self.terms.items()})

    def shift(self, mono: Monomial) -> MultiPoly:
        """Multiply by a monomial."""
        terms = {tuple(a + b for a, b in zip(m, mono)): c for m, c in self.terms.items()}
        return MultiPoly._raw(self.field, self.nvars, self.degree + sum(mono), terms)

    def __mul__(self, other):
        if not isinstance(other, MultiPoly):
            if isinstance(other, (int, str)) or hasattr(other, "denominator"):
                return self.scale(other)
            return NotImplemented
        self._check_compatible(other)
        F = self.field
        out: dict[Monomial, Element] = {}
        if F.is_prime:
            p = F.prime
            for m1, c1 in self.terms.items():
                for m2, c2 in other.terms.items():
                    key = tuple(a + b for a, b in zip(m1, m2))
                    out[key] = (out.get(key, 0) + c1 * c2) % p
        else:
            for m1, c1 in self.terms.items():
                for m2, c2 in other.terms.items():
                    key = tuple(a + b for a, b in zip(m1, m2))
                    out[key] = out.get(key, 0) + c1 * c2
        out = {m: c for m, c in out.items() if c != 0}
        return MultiPoly._raw(F, self.nvars, self.degree + other.degree, out)

    def __rmul__(self, other):
        return self.__mul__(other)

    def __pow__(self, e: int) -> MultiPoly:
        if not isinstance(e, int) or e < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = MultiPoly.constant(self.field, self.nvars, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __eq__(self, other):
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return (
            self.field == other.field
            and self.nvars == other.nvars
            and self.degree == other.degree
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.field, self.nvars, self.degree, frozenset(self.terms.items())))

    # -- text ---------------------------------------------------------------

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"MultiPoly({self.field}, nvars={self.nvars}, degree={self.degree}, {format_poly(self)!r})"


def product(polys: Iterable[MultiPoly], field: FieldConfig, nvars: int) -> MultiPoly:
    out = MultiPoly.constant(field, nvars, 1)
    for p in polys:
        out = out * p
    return out


def random_form(field: FieldConfig, nvars: int, d: int, rng: np.random.Generator) -> MultiPoly:
    """Dense random form of degree ``d``; one coefficient draw per basis monomial."""
    basis = monomial_basis(nvars, d)
    return MultiPoly(field, nvars, d, {m: field.random_element(rng) for m in basis})


# -- text grammar -----------------------------------------------------------
#   poly   = term (("+" | "-") term)*
#   term   = [coeff "*"] factor ("*" factor)*  |  coeff
#   factor = "x" index ["^" exp]
#   coeff  = integer | integer "/" integer

_TERM_SPLIT = re.compile(r"([+-])")
_FACTOR = re.compile(r"^x(\d+)(?:\^(\d+))?$")
_COEFF = re.compile(r"^\d+(?:/\d+)?$")


class PolySyntaxError(ValueError):
    pass


def _parse_terms(text: str):
    s = "".join(text.split())
    # alternating [term, sign, term, sign, ..., term]; a leading sign leaves an empty first term
    pieces = _TERM_SPLIT.split(s)
    if pieces[0] == "" and len(pieces) > 1:
        pieces = pieces[1:]
    else:
        pieces = ["+"] + pieces
    terms = []
    for sign, body in zip(pieces[0::2], pieces[1::2]):
        if not body:
            raise PolySyntaxError(f"missing term in {text!r}")
        coeff = "1"
        exps: dict[int, int] = {}
        for k, factor in enumerate(body.split("*")):
            if k == 0 and _COEFF.match(factor):
                coeff = factor
                continue
            m = _FACTOR.match(factor)
            if not m:
                raise PolySyntaxError(f"bad factor {factor!r} in {text!r}")
            idx, exp = int(m.group(1)), int(m.group(2) or 1)
            exps[idx] = exps.get(idx, 0) + exp
        terms.append((-1 if sign == "-" else 1, coeff, exps))
    if len(pieces) % 2:
        raise PolySyntaxError(f"malformed polynomial {text!r}")
    return terms


def parse_poly(text: str, field: FieldConfig, nvars: int | None = None, degree: int | None = None) -> MultiPoly:
    """Parse e.g. ``"3*x0^2*x1 - 1/2*x2^3"``.

    ``nvars`` defaults to one more than the largest variable index seen.
    """
    raw = _parse_terms(text)
    top = max((max(e) for _, _, e in raw if e), default=-1)
    if nvars is None:
        nvars = max(top + 1, 1)
    elif top >= nvars:
        raise PolySyntaxError(f"x{top} out of range for {nvars} variables")
    acc: dict[Monomial, Element] = {}
    degs = set()
    for sign, coeff, exps in raw:
        mono = tuple(exps.get(i, 0) for i in range(nvars))
        c = field(coeff)
        if sign < 0:
            c = field.neg(c)
        acc[mono] = field.add(acc.get(mono, field.zero()), c)
        degs.add(sum(mono))
    acc = {m: c for m, c in acc.items() if c != 0}
    live = {sum(m) for m in acc} or set()
    if len(live) > 1:
        raise PolySyntaxError(f"polynomial {text!r} is not homogeneous")
    if degree is None:
        degree = live.pop() if live else (degs.pop() if len(degs) == 1 else 0)
    elif live and live != {degree}:
        raise PolySyntaxError(f"expected degree {degree} in {text!r}")
    return MultiPoly._raw(field, nvars, degree, acc)


def _format_coeff(field: FieldConfig, c: Element) -> tuple[int, str]:
    if field.is_prime:
        return 1, str(c)
    return (-1, str(-c)) if c < 0 else (1, str(c))


def format_poly(p: MultiPoly) -> str:
    if not p.terms:
        return "0"
    parts = []
    for mono in sorted(p.terms, reverse=True):
        sign, mag = _format_coeff(p.field, p.terms[mono])
        factors = [f"x{i}" if e == 1 else f"x{i}^{e}" for i, e in enumerate(mono) if e]
        if mag == "1" and factors:
            body = "*".join(factors)
        else:
            body = "*".join([mag] + factors)
        if not parts:
            parts.append(("-" if sign < 0 else "") + body)
        else:
            parts.append((" - " if sign < 0 else " + ") + body)
    return "".join(parts)
