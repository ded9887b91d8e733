"""Exact dense linear algebra over F_p or QQ.

Prime fields below 2^31 run on a compiled int64 kernel; larger primes and the
rationals use pure-Python elimination (fraction-free Bareiss for rank and
determinant over QQ).  Pivoting always takes the first nonzero entry in
column order, so results are reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Sequence

import numpy as np

from . import _kernels
from .field import Element, FieldConfig

# sketching only pays off on clearly rectangular, non-tiny matrices
_SKETCH_MIN_SIDE = 48
_SKETCH_ASPECT = 1.5
_SKETCH_SEED = 0x5EED


@dataclass(frozen=True, eq=False)
class DenseMatrix:
    """A rows x cols matrix of field elements.

    ``data`` is a 2-D numpy array: int64 residues for primes below 2^31,
    object dtype (Python ints or Fractions) otherwise.
    """

    field: FieldConfig
    data: np.ndarray

    @classmethod
    def from_rows(cls, field: FieldConfig, rows: Sequence[Sequence], ncols: int | None = None) -> DenseMatrix:
        rows = [list(r) for r in rows]
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged rows")
        data = np.empty((len(rows), ncols), dtype=_dtype(field))
        for i, r in enumerate(rows):
            for j, x in enumerate(r):
                data[i, j] = field(x)
        return cls(field, data)

    @classmethod
    def zeros(cls, field: FieldConfig, rows: int, cols: int) -> DenseMatrix:
        data = np.zeros((rows, cols), dtype=_dtype(field))
        if data.dtype == object:
            data[...] = field.zero()
        return cls(field, data)

    @classmethod
    def identity(cls, field: FieldConfig, size: int) -> DenseMatrix:
        m = cls.zeros(field, size, size)
        for i in range(size):
            m.data[i, i] = field.one()
        return m

    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def cols(self) -> int:
        return self.data.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.data.shape

    @property
    def entries(self) -> list[Element]:
        """Row-major flat list of elements."""
        return [self._py(x) for x in self.data.ravel()]

    def _py(self, x):
        return int(x) if self.field.is_prime else x

    def __getitem__(self, ij) -> Element:
        return self._py(self.data[ij])

    def to_lists(self) -> list[list[Element]]:
        return [[self._py(x) for x in row] for row in self.data]

    def transpose(self) -> DenseMatrix:
        return DenseMatrix(self.field, self.data.T.copy())

    T = property(transpose)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> DenseMatrix:
        return DenseMatrix(self.field, self.data[np.ix_(list(rows), list(cols))].copy())

    def __matmul__(self, other: DenseMatrix) -> DenseMatrix:
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        if self.field.fits_int64:
            return DenseMatrix(self.field, _modmatmul(self.data, other.data, self.field.prime))
        out = self.data.dot(other.data)
        if self.field.is_prime:
            out = out % self.field.prime
        return DenseMatrix(self.field, out)

    def apply(self, vec: Sequence) -> list[Element]:
        col = DenseMatrix.from_rows(self.field, [[x] for x in vec], 1) if len(vec) else DenseMatrix.zeros(self.field, 0, 1)
        return [row[0] for row in (self @ col).to_lists()]

    def __eq__(self, other):
        if not isinstance(other, DenseMatrix):
            return NotImplemented
        return self.field == other.field and self.shape == other.shape and self.to_lists() == other.to_lists()

    def __repr__(self):
        return f"DenseMatrix({self.field}, {self.rows}x{self.cols})"


def _dtype(field: FieldConfig):
    return np.int64 if field.fits_int64 else object


def as_matrix(field: FieldConfig, m) -> DenseMatrix:
    return m if isinstance(m, DenseMatrix) else DenseMatrix.from_rows(field, m)


# -- modular matrix product via exact float64 limbs ---------------------------

_LIMB = 16
_MAX_INNER = 1 << 20


def _modmatmul(A: np.ndarray, B: np.ndarray, p: int) -> np.ndarray:
    """(A @ B) mod p for residues below 2^31.

    Each operand is split into 16-bit limbs; every partial dot product is an
    integer below 2^52, so BLAS float64 arithmetic is exact.
    """
    k = A.shape[1]
    if k > _MAX_INNER:
        out = np.zeros((A.shape[0], B.shape[1]), dtype=np.int64)
        for s in range(0, k, _MAX_INNER):
            out = (out + _modmatmul(A[:, s : s + _MAX_INNER], B[s : s + _MAX_INNER], p)) % p
        return out
    mask = (1 << _LIMB) - 1
    a_hi, a_lo = (A >> _LIMB).astype(np.float64), (A & mask).astype(np.float64)
    b_hi, b_lo = (B >> _LIMB).astype(np.float64), (B & mask).astype(np.float64)

    def part(x, y):
        return (x @ y).astype(np.int64) % p

    hh = part(a_hi, b_hi)
    mid = (part(a_hi, b_lo) + part(a_lo, b_hi)) % p
    ll = part(a_lo, b_lo)
    s32 = pow(2, 2 * _LIMB, p)
    s16 = pow(2, _LIMB, p)
    return (hh * s32 % p + mid * s16 % p + ll) % p


# -- elimination back ends ----------------------------------------------------


def _eliminate_int64(data: np.ndarray, p: int, reduced: bool, stop_at_full: bool = False):
    A = np.ascontiguousarray(data, dtype=np.int64).copy()
    pivots, det = _kernels.eliminate(A, np.int64(p), reduced, stop_at_full)
    return A, [int(c) for c in pivots], int(det)


def _eliminate_generic(rows: list[list], field: FieldConfig, reduced: bool):
    """Gauss(-Jordan) elimination with exact field operations, in place."""
    m = len(rows)
    n = len(rows[0]) if m else 0
    pivots: list[int] = []
    det = field.one()
    r = 0
    for c in range(n):
        if r == m:
            break
        piv = next((i for i in range(r, m) if rows[i][c] != 0), None)
        if piv is None:
            continue
        if piv != r:
            rows[r], rows[piv] = rows[piv], rows[r]
            det = field.neg(det)
        a = rows[r][c]
        det = field.mul(det, a)
        inv = field.inv(a)
        rows[r] = [field.mul(x, inv) for x in rows[r]]
        prow = rows[r]
        for i in range(0 if reduced else r + 1, m):
            if i == r or rows[i][c] == 0:
                continue
            f = rows[i][c]
            rows[i] = [field.sub(x, field.mul(f, y)) for x, y in zip(rows[i], prow)]
        pivots.append(c)
        r += 1
    return rows, pivots, det


def _integer_rows(data: np.ndarray) -> tuple[list[list[int]], int]:
    """Scale each rational row to integers; returns rows and the product of scales."""
    out = []
    scale = 1
    for row in data:
        s = lcm(*(Fraction(x).denominator for x in row)) if len(row) else 1
        out.append([int(Fraction(x) * s) for x in row])
        scale *= s
    return out, scale


def _bareiss(rows: list[list[int]]):
    """Fraction-free elimination on an integer matrix; returns (rank, det-if-square)."""
    m = len(rows)
    n = len(rows[0]) if m else 0
    prev = 1
    sign = 1
    r = 0
    for c in range(n):
        if r == m:
            break
        piv = next((i for i in range(r, m) if rows[i][c] != 0), None)
        if piv is None:
            continue
        if piv != r:
            rows[r], rows[piv] = rows[piv], rows[r]
            sign = -sign
        a = rows[r][c]
        prow = rows[r]
        for i in range(r + 1, m):
            b = rows[i][c]
            row = rows[i]
            # exact by Sylvester's identity
            rows[i] = [(a * row[j] - b * prow[j]) // prev if j >= c else 0 for j in range(n)]
        prev = a
        r += 1
    det = sign * prev if r == m == n else 0
    if m == n == 0:
        det = 1
    return r, det


# -- public operations --------------------------------------------------------


def rank(m: DenseMatrix) -> int:
    """Exact rank."""
    F = m.field
    rows, cols = m.shape
    if rows == 0 or cols == 0:
        return 0
    if F.fits_int64:
        data = m.data
        if rows > cols:
            data = data.T
            rows, cols = cols, rows
        if rows >= _SKETCH_MIN_SIDE and cols >= _SKETCH_ASPECT * rows:
            if _sketch_full_rank(data, F.prime):
                return rows
        _, pivots, _ = _eliminate_int64(data, F.prime, reduced=False, stop_at_full=True)
        return len(pivots)
    if F.is_prime:
        _, pivots, _ = _eliminate_generic([list(r) for r in m.data], F, reduced=False)
        return len(pivots)
    ints, _ = _integer_rows(m.data)
    return _bareiss(ints)[0]


def _sketch_full_rank(A: np.ndarray, p: int) -> bool:
    """True when ``A`` (short and wide) provably has full row rank.

    rank(A @ R) <= rank(A) for every R, so a square sketch of full rank is a
    proof; a deficient sketch proves nothing and the caller falls back.
    """
    rows, cols = A.shape
    rng = np.random.default_rng(_SKETCH_SEED)
    R = rng.integers(0, p, size=(cols, rows), dtype=np.int64)
    S = _modmatmul(A, R, p)
    _, pivots, _ = _eliminate_int64(S, p, reduced=False, stop_at_full=True)
    return len(pivots) == rows


def det(m: DenseMatrix) -> Element:
    """Exact determinant of a square matrix."""
    if m.rows != m.cols:
        raise ValueError(f"determinant of non-square {m.rows}x{m.cols} matrix")
    F = m.field
    if m.rows == 0:
        return F.one()
    if F.fits_int64:
        _, pivots, d = _eliminate_int64(m.data, F.prime, reduced=False)
        return d if len(pivots) == m.rows else 0
    if F.is_prime:
        _, pivots, d = _eliminate_generic([list(r) for r in m.data], F, reduced=False)
        return d if len(pivots) == m.rows else 0
    ints, scale = _integer_rows(m.data)
    _, d = _bareiss(ints)
    return Fraction(d, scale)


def rref(m: DenseMatrix) -> tuple[DenseMatrix, list[int]]:
    """Reduced row echelon form and pivot columns."""
    F = m.field
    if m.rows == 0 or m.cols == 0:
        return m, []
    if F.fits_int64:
        A, pivots, _ = _eliminate_int64(m.data, F.prime, reduced=True)
        return DenseMatrix(F, A), pivots
    rows, pivots, _ = _eliminate_generic([list(r) for r in m.data], F, reduced=True)
    out = np.empty(m.shape, dtype=object)
    for i, r in enumerate(rows):
        out[i, :] = r
    return DenseMatrix(F, out), pivots


def solve(m: DenseMatrix, rhs: Sequence) -> list[Element] | None:
    """One exact solution of ``m @ x = rhs`` (free variables zero), or None."""
    F = m.field
    if len(rhs) != m.rows:
        raise ValueError(f"right-hand side has length {len(rhs)}, expected {m.rows}")
    aug = np.empty((m.rows, m.cols + 1), dtype=m.data.dtype)
    aug[:, : m.cols] = m.data
    for i, x in enumerate(rhs):
        aug[i, m.cols] = F(x)
    reduced, pivots = rref(DenseMatrix(F, aug))
    if pivots and pivots[-1] == m.cols:
        return None
    x = [F.zero()] * m.cols
    for i, c in enumerate(pivots):
        x[c] = reduced[i, m.cols]
    return x


def nullspace(m: DenseMatrix) -> list[list[Element]]:
    """Basis of the right kernel, one vector per free column."""
    F = m.field
    if m.rows == 0:
        return [[F.one() if i == j else F.zero() for i in range(m.cols)] for j in range(m.cols)]
    reduced, pivots = rref(m)
    pivot_set = set(pivots)
    basis = []
    for free in range(m.cols):
        if free in pivot_set:
            continue
        v = [F.zero()] * m.cols
        v[free] = F.one()
        for i, c in enumerate(pivots):
            v[c] = F.neg(reduced[i, free])
        basis.append(v)
    return basis


def a_matrix(r: int, field: FieldConfig | None = None) -> DenseMatrix:
    """The r x r matrix with zero diagonal and ones elsewhere."""
    if r < 2:
        raise ValueError("a_matrix needs r >= 2")
    field = field or FieldConfig()
    return DenseMatrix.from_rows(field, [[0 if i == j else 1 for j in range(r)] for i in range(r)])
