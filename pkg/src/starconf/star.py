"""General linear forms, star configurations, their points and Hilbert functions.

Index sets are 1-based tuples throughout (``(1, 2, 4)`` is the product
``L1*L2*L4``), and every enumeration of subsets is lexicographic.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Sequence

import numpy as np

from .field import Element, FieldConfig
from .linalg import DenseMatrix, nullspace, rank
from .poly import MultiPoly, monomial_basis, product, random_form

MAX_SAMPLING_ATTEMPTS = 100


class SamplingError(RuntimeError):
    """Random draws kept producing degenerate linear forms."""


class DegenerateConfigurationError(ValueError):
    """The forms are not in general position where it matters."""


@dataclass(frozen=True)
class TupleNLRD:
    n: int
    l: int
    r: int
    d: int

    def __post_init__(self):
        if min(self.n, self.l, self.r, self.d) < 1:
            raise ValueError(f"all of n, l, r, d must be positive: {self}")

    @property
    def feasible(self) -> bool:
        return self.r <= self.l and self.r <= self.d

    @property
    def codim(self) -> int:
        """Number of hyperplanes cut together, l - r + 1."""
        return self.l - self.r + 1

    def as_dict(self) -> dict:
        return {"n": self.n, "l": self.l, "r": self.r, "d": self.d}


@dataclass(frozen=True)
class LinearFormSet:
    forms: tuple[MultiPoly, ...]

    def __post_init__(self):
        object.__setattr__(self, "forms", tuple(self.forms))
        if not self.forms:
            raise ValueError("need at least one linear form")
        f0 = self.forms[0]
        for f in self.forms:
            if f.degree != 1 or f.nvars != f0.nvars or f.field != f0.field:
                raise ValueError("forms must be linear, in one ring")

    @classmethod
    def from_coefficients(cls, field: FieldConfig, coeffs: Sequence[Sequence]) -> LinearFormSet:
        return cls(tuple(MultiPoly.linear(field, row) for row in coeffs))

    @property
    def field(self) -> FieldConfig:
        return self.forms[0].field

    @property
    def nvars(self) -> int:
        return self.forms[0].nvars

    @property
    def n(self) -> int:
        return self.nvars - 1

    @property
    def l(self) -> int:
        return len(self.forms)

    def __len__(self):
        return len(self.forms)

    def __getitem__(self, i: int) -> MultiPoly:
        """1-based access: ``forms[1]`` is L1."""
        if not 1 <= i <= len(self.forms):
            raise IndexError(f"form index {i} outside 1..{len(self.forms)}")
        return self.forms[i - 1]

    def coefficient_rows(self) -> list[list[Element]]:
        return [f.linear_coefficients() for f in self.forms]

    def product(self, sigma: Sequence[int]) -> MultiPoly:
        return product((self[i] for i in sigma), self.field, self.nvars)


@dataclass(frozen=True)
class ProjectivePoint:
    coords: tuple
    label: tuple[int, ...] = ()

    def __post_init__(self):
        if all(c == 0 for c in self.coords):
            raise ValueError("the zero vector is not a projective point")


def normalize_point(field: FieldConfig, coords: Sequence, label: tuple[int, ...] = ()) -> ProjectivePoint:
    """Scale so the first nonzero coordinate is 1."""
    lead = next(c for c in coords if c != 0)
    inv = field.inv(lead)
    return ProjectivePoint(tuple(field.mul(c, inv) for c in coords), label)


def is_general_position(forms: LinearFormSet) -> bool:
    """Every min(l, n+1) of the coefficient vectors are linearly independent."""
    rows = forms.coefficient_rows()
    k = min(forms.l, forms.nvars)
    F = forms.field
    for subset in combinations(range(forms.l), k):
        if rank(DenseMatrix.from_rows(F, [rows[i] for i in subset])) < k:
            return False
    return True


def random_general_forms(n: int, l: int, field: FieldConfig, rng: np.random.Generator) -> LinearFormSet:
    if n < 1 or l < 1:
        raise ValueError("need n >= 1 and l >= 1")
    for _ in range(MAX_SAMPLING_ATTEMPTS):
        forms = LinearFormSet(tuple(random_form(field, n + 1, 1, rng) for _ in range(l)))
        if is_general_position(forms):
            return forms
    raise SamplingError(f"no general position sample for n={n}, l={l} in {MAX_SAMPLING_ATTEMPTS} attempts over {field}")


def star_generators(forms: LinearFormSet, r: int) -> list[MultiPoly]:
    """The products L_sigma over all r-subsets sigma, lexicographically."""
    if not 0 < r <= forms.l:
        raise ValueError(f"r={r} outside 1..{forms.l}")
    return [forms.product(sigma) for sigma in subsets(forms.l, r)]


def subsets(l: int, k: int) -> list[tuple[int, ...]]:
    return list(combinations(range(1, l + 1), k))


def star_points(forms: LinearFormSet) -> list[ProjectivePoint]:
    """One point per n-subset tau: the common zero of the forms in tau.

    Each point is labelled with the complement of tau, the forms that do not
    vanish there.  Order follows tau lexicographically.
    """
    n, l, F = forms.n, forms.l, forms.field
    if l < n:
        raise ValueError(f"need at least n={n} forms, got {l}")
    rows = forms.coefficient_rows()
    points = []
    for tau in subsets(l, n):
        kernel = nullspace(DenseMatrix.from_rows(F, [rows[i - 1] for i in tau]))
        if len(kernel) != 1:
            raise DegenerateConfigurationError(f"forms {tau} do not meet in a single point")
        label = tuple(i for i in range(1, l + 1) if i not in tau)
        points.append(normalize_point(F, kernel[0], label))
    return points


def expected_hf(n: int, l: int, t: int) -> int:
    """Hilbert function of C(l, n) points in generic position: min{C(n+t,n), C(l,n)}."""
    if t < 0:
        return 0
    return min(comb(n + t, n), comb(l, n))


def star_dimension(n: int, l: int, r: int) -> int | None:
    """Dimension of the star configuration, or None when it is empty."""
    if not 0 < r <= l:
        raise ValueError(f"r={r} outside 1..{l}")
    codim = l - r + 1
    return None if codim > n else n - codim


def hilbert_function(
    gens: Sequence[MultiPoly],
    t: int,
    *,
    nvars: int | None = None,
    field: FieldConfig | None = None,
) -> int:
    """dim (S/I)_t for the ideal generated by ``gens``."""
    from .membership import ideal_dim

    if gens:
        nvars = gens[0].nvars
    elif nvars is None:
        raise ValueError("nvars is required when there are no generators")
    if t < 0:
        return 0
    return len(monomial_basis(nvars, t)) - ideal_dim(gens, t, nvars=nvars, field=field)
