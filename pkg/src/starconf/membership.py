"""Degree slices of ideals as Macaulay matrices; membership and decompositions.

Membership of a form F of degree d in I = (g_1, ..., g_k) reduces to one
linear solve: F lies in I_d exactly when its coefficient vector is in the
column span of the matrix whose columns are the products g_i * m for all
monomials m of degree d - deg g_i.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Sequence

import numpy as np

from .field import FieldConfig
from .linalg import DenseMatrix, rank, solve
from .poly import Monomial, MultiPoly, monomial_basis, monomial_index
from .star import LinearFormSet, star_generators, subsets


@dataclass(frozen=True)
class MacaulayMatrix:
    degree: int
    nvars: int
    matrix: DenseMatrix
    provenance: tuple[tuple[int, Monomial], ...] = dc_field(repr=False)

    @property
    def rows(self) -> int:
        return self.matrix.rows

    @property
    def cols(self) -> int:
        return self.matrix.cols

    def rank(self) -> int:
        return rank(self.matrix)


def _ring_of(gens: Sequence[MultiPoly], nvars, field):
    if gens:
        g = gens[0]
        for h in gens:
            if h.nvars != g.nvars or h.field != g.field:
                raise ValueError("generators live in different rings")
        if nvars is not None and nvars != g.nvars:
            raise ValueError(f"generators have {g.nvars} variables, expected {nvars}")
        return g.nvars, g.field
    if nvars is None:
        raise ValueError("nvars is required for an empty generator list")
    return nvars, field or FieldConfig()


def macaulay_matrix(
    gens: Sequence[MultiPoly],
    d: int,
    *,
    nvars: int | None = None,
    field: FieldConfig | None = None,
) -> MacaulayMatrix:
    """Coefficient matrix of I_d: one row per degree-d monomial (graded lex),
    one column per (generator, multiplier monomial) pair.

    Generators of degree above ``d`` contribute no columns.
    """
    nvars, F = _ring_of(gens, nvars, field)
    row_of = monomial_index(nvars, d)
    provenance: list[tuple[int, Monomial]] = []
    columns: list[MultiPoly] = []
    for gi, g in enumerate(gens):
        if g.degree > d:
            continue
        for mono in monomial_basis(nvars, d - g.degree):
            provenance.append((gi, mono))
            columns.append(g)
    data = np.zeros((len(row_of), len(columns)), dtype=np.int64 if F.fits_int64 else object)
    if data.dtype == object:
        data[...] = F.zero()
    for j, ((gi, mono), g) in enumerate(zip(provenance, columns)):
        for m, c in g.terms.items():
            data[row_of[tuple(a + b for a, b in zip(m, mono))], j] = c
    return MacaulayMatrix(d, nvars, DenseMatrix(F, data), tuple(provenance))


def ideal_dim(gens: Sequence[MultiPoly], d: int, *, nvars: int | None = None, field: FieldConfig | None = None) -> int:
    """dim_k I_d."""
    if d < 0:
        return 0
    return macaulay_matrix(gens, d, nvars=nvars, field=field).rank()


@dataclass(frozen=True)
class Membership:
    """F = sum_i cofactors[i] * gens[i]; generators absent from ``cofactors`` get 0."""

    cofactors: dict[int, MultiPoly]
    target: MultiPoly = dc_field(repr=False)

    def assemble(self, gens: Sequence[MultiPoly]) -> MultiPoly:
        t = self.target
        total = MultiPoly.zero(t.field, t.nvars, t.degree)
        for i in sorted(self.cofactors):
            total = total + self.cofactors[i] * gens[i]
        return total


def contains(gens: Sequence[MultiPoly], F: MultiPoly) -> Membership | None:
    """Certificate that ``F`` lies in the ideal, or None if it does not."""
    if gens and (gens[0].nvars != F.nvars or gens[0].field != F.field):
        raise ValueError("F and the generators live in different rings")
    mac = macaulay_matrix(gens, F.degree, nvars=F.nvars, field=F.field)
    x = solve(mac.matrix, F.coefficient_vector())
    if x is None:
        return None
    field = F.field
    buckets: dict[int, dict[Monomial, object]] = {}
    for (gi, mono), c in zip(mac.provenance, x):
        if c != 0:
            buckets.setdefault(gi, {})[mono] = c
    cofactors = {
        gi: MultiPoly(field, F.nvars, F.degree - gens[gi].degree, terms) for gi, terms in sorted(buckets.items())
    }
    return Membership(cofactors, F)


@dataclass(frozen=True)
class Decomposition:
    forms: LinearFormSet
    r: int
    M: dict[tuple[int, ...], MultiPoly]

    def reconstruct(self) -> MultiPoly:
        """sum over sigma of L_sigma * M_sigma."""
        total = None
        for sigma in subsets(self.forms.l, self.r):
            term = self.forms.product(sigma) * self.M[sigma]
            total = term if total is None else total + term
        return total


def decompose(F: MultiPoly, forms: LinearFormSet, r: int) -> Decomposition | None:
    """Write F = sum L_sigma M_sigma over the r-subsets of the given forms.

    Returns None when F is not in the ideal of the forms' r-fold products.
    Raises ValueError when r exceeds deg F or the number of forms.
    """
    if F.nvars != forms.nvars or F.field != forms.field:
        raise ValueError("F and the forms live in different rings")
    if r > F.degree:
        raise ValueError(f"r={r} exceeds deg F={F.degree}")
    if not 0 < r <= forms.l:
        raise ValueError(f"r={r} outside 1..{forms.l}")
    gens = star_generators(forms, r)
    member = contains(gens, F)
    if member is None:
        return None
    sigmas = subsets(forms.l, r)
    zero = MultiPoly.zero(F.field, F.nvars, F.degree - r)
    M = {sigma: member.cofactors.get(i, zero) for i, sigma in enumerate(sigmas)}
    return Decomposition(forms, r, M)
