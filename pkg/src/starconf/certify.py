"""Rank certificates that the generic degree-d hypersurface contains a star
configuration.

For l linear forms and forms M_sigma of degree d - r (sigma an r-subset of
[l]) put Q_i = sum over sigma containing i of (L_sigma / L_i) * M_sigma.  The
ideal I = (L_sigma) + (Q_1, ..., Q_l) is the tangent space of the
parametrisation (L, M) -> sum L_sigma M_sigma at that point, so I_d = S_d for
one choice of (L, M) shows the parametrisation is dominant.  Over F_p the
relevant matrices have integer-polynomial entries in the chosen coefficients;
maximal rank mod p forces maximal rank over QQ, hence generically over C.  A
rank shortfall proves nothing.

Two strategies check I_d = S_d for the tuples (n, n+2, 3, d):

* ``MacaulayRank``: rank of the full Macaulay matrix of I in degree d.
* ``EvaluationMatrix``: I contains the star ideal, whose degree-d quotient
  has dimension C(n+2, 2), the number of star points.  Evaluating the
  products L_k Q_j at those points gives a square matrix; full rank means
  these products span the quotient.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass
from math import comb
from typing import Sequence

import numpy as np

from .field import FieldConfig
from .linalg import DenseMatrix, rank
from .membership import ideal_dim
from .poly import MultiPoly, parse_poly, random_form
from .star import (
    LinearFormSet,
    TupleNLRD,
    random_general_forms,
    star_generators,
    star_points,
    subsets,
)

DEFAULT_RETRIES = 3


class Strategy(str, enum.Enum):
    MACAULAY = "MacaulayRank"
    EVALUATION = "EvaluationMatrix"


class Verdict(str, enum.Enum):
    CERTIFIED = "Certified"
    INCONCLUSIVE = "Inconclusive"


@dataclass(frozen=True)
class MSelection:
    """Multiplier forms M_sigma, keyed by sorted 1-based r-subsets.

    ``d`` is the target degree; every entry has degree d - r.
    """

    d: int
    entries: dict[tuple[int, ...], MultiPoly]

    def __post_init__(self):
        sizes = {len(s) for s in self.entries}
        if len(sizes) != 1:
            raise ValueError("M_sigma keys must all have the same size")
        r = sizes.pop()
        for sigma, m in self.entries.items():
            if m.degree != self.d - r:
                raise ValueError(f"M{sigma} has degree {m.degree}, expected {self.d - r}")

    @property
    def r(self) -> int:
        return len(next(iter(self.entries)))

    def __getitem__(self, sigma) -> MultiPoly:
        return self.entries[tuple(sorted(sigma))]


# -- witness multipliers -------------------------------------------------------


def witness_recipe(n: int, d: int) -> dict[tuple[int, int, int], tuple[tuple[int, ...], int]]:
    """Explicit M_sigma for the tuples (n, n+2, 3, d) as ``sigma -> (js, e)``
    meaning M_sigma = (sum of L_j for j in js)^e.

    For d = 3 every M is the constant 1.  Otherwise M_{i,j,k} = L_j^{d-3}
    (i < j < k, k >= 4) except M_{1,k-1,k} = L_k^{d-3}, which makes every
    level block of the evaluation matrix triangular up to one corner entry.
    M_{1,2,3} must not vanish at p_{1,2}, p_{1,3} or p_{2,3}; each of L1, L2,
    L3 vanishes at one of them and every other L_j at all three, so it is
    (L1 + L2 + L3)^{d-3}.
    """
    if d < 3:
        raise ValueError(f"need d >= 3, got {d}")
    if n < 2:
        raise ValueError(f"need n >= 2, got {n}")
    e = d - 3
    recipe = {}
    for sigma in subsets(n + 2, 3):
        i, j, k = sigma
        if k == 3:
            recipe[sigma] = ((1, 2, 3), e)
        elif (i, j) == (1, k - 1):
            recipe[sigma] = ((k,), e)
        else:
            recipe[sigma] = ((j,), e)
    return recipe


def witness_m(forms: LinearFormSet, d: int) -> MSelection:
    n = forms.n
    if forms.l != n + 2:
        raise ValueError(f"witness needs l = n + 2 = {n + 2} forms, got {forms.l}")
    entries = {}
    for sigma, (js, e) in witness_recipe(n, d).items():
        base = forms[js[0]]
        for j in js[1:]:
            base = base + forms[j]
        entries[sigma] = base**e
    return MSelection(d, entries)


def random_m(forms: LinearFormSet, r: int, d: int, rng: np.random.Generator) -> MSelection:
    entries = {sigma: random_form(forms.field, forms.nvars, d - r, rng) for sigma in subsets(forms.l, r)}
    return MSelection(d, entries)


# -- tangent ideal ---------------------------------------------------------------


def build_q(forms: LinearFormSet, M: MSelection) -> tuple[MultiPoly, ...]:
    """Q_i = sum over sigma containing i of L_{sigma minus i} * M_sigma.

    Built from products only; nothing is ever divided.
    """
    r, l = M.r, forms.l
    if set(M.entries) != set(subsets(l, r)):
        raise ValueError(f"M must have one entry per {r}-subset of 1..{l}")
    F, nv = forms.field, forms.nvars
    qs = []
    for i in range(1, l + 1):
        q = MultiPoly.zero(F, nv, M.d - 1)
        for sigma in subsets(l, r):
            if i in sigma:
                rest = [a for a in sigma if a != i]
                q = q + forms.product(rest) * M.entries[sigma]
        qs.append(q)
    return tuple(qs)


def tangent_ideal_gens(forms: LinearFormSet, M: MSelection) -> list[MultiPoly]:
    """The star generators L_sigma followed by Q_1..Q_l."""
    return star_generators(forms, M.r) + list(build_q(forms, M))


# -- evaluation matrix -------------------------------------------------------------


def evaluation_layout(n: int) -> tuple[list[tuple[int, int]], list[tuple[int, int]]]:
    """Row labels {r, s} (lexicographic) and column labels (k, j) for L_k * Q_j.

    Columns: L3Q1, L1Q2, L2Q3, then L_kQ_1..L_kQ_{k-1} for k = 4..n+2.
    """
    rows = [tuple(s) for s in subsets(n + 2, 2)]
    cols = [(3, 1), (1, 2), (2, 3)]
    for k in range(4, n + 3):
        cols.extend((k, j) for j in range(1, k))
    return rows, cols


def level_blocks(n: int) -> list[tuple[list[int], list[int]]]:
    """Row/column indices of the diagonal blocks, one per level k = 3..n+2.

    Level k holds the points p_{r,k} and the columns L_k Q_j; level 3 is the
    base block on p_{1,2}, p_{1,3}, p_{2,3}.  Every block above the diagonal
    is zero.
    """
    rows, cols = evaluation_layout(n)
    blocks = []
    for k in range(3, n + 3):
        ri = [i for i, (_, s) in enumerate(rows) if (s <= 3 if k == 3 else s == k)]
        ci = list(range(3)) if k == 3 else [i for i, (kk, _) in enumerate(cols) if kk == k]
        blocks.append((ri, ci))
    return blocks


def evaluation_matrix(forms: LinearFormSet, M: MSelection) -> DenseMatrix:
    """Values of L_k Q_j at the star points p_{r,s}, for l = n + 2 and r = 3."""
    n = forms.n
    if forms.l != n + 2 or M.r != 3:
        raise ValueError("evaluation matrix needs l = n + 2 forms and r = 3")
    F = forms.field
    by_label = {p.label: p for p in star_points(forms)}
    row_labels, col_labels = evaluation_layout(n)
    qs = build_q(forms, M)
    data = []
    for lab in row_labels:
        pt = by_label[lab].coords
        lvals = [f.eval(pt) for f in forms.forms]
        qvals = [q.eval(pt) for q in qs]
        data.append([F.mul(lvals[k - 1], qvals[j - 1]) for k, j in col_labels])
    return DenseMatrix.from_rows(F, data, len(col_labels))


# -- certificates ------------------------------------------------------------------


@dataclass(frozen=True)
class Certificate:
    nlrd: TupleNLRD
    field: FieldConfig
    seed: int
    strategy: Strategy
    achieved_rank: int
    target_rank: int
    verdict: Verdict
    retries_used: int
    witness: dict

    def __post_init__(self):
        if (self.verdict is Verdict.CERTIFIED) and self.achieved_rank != self.target_rank:
            raise ValueError("a certified record must reach its target rank")

    @property
    def certified(self) -> bool:
        return self.verdict is Verdict.CERTIFIED

    def to_json(self) -> dict:
        return {
            "tuple": self.nlrd.as_dict(),
            "field": self.field.to_json(),
            "seed": self.seed,
            "strategy": self.strategy.value,
            "achieved_rank": self.achieved_rank,
            "target_rank": self.target_rank,
            "verdict": self.verdict.value,
            "retries_used": self.retries_used,
            "witness": self.witness,
        }

    def dumps(self, **kw) -> str:
        return json.dumps(self.to_json(), **kw)

    @classmethod
    def from_json(cls, data: dict) -> Certificate:
        t = data["tuple"]
        return cls(
            nlrd=TupleNLRD(t["n"], t["l"], t["r"], t["d"]),
            field=FieldConfig.from_json(data["field"]),
            seed=int(data["seed"]),
            strategy=Strategy(data["strategy"]),
            achieved_rank=int(data["achieved_rank"]),
            target_rank=int(data["target_rank"]),
            verdict=Verdict(data["verdict"]),
            retries_used=int(data["retries_used"]),
            witness=data["witness"],
        )

    @classmethod
    def loads(cls, text: str) -> Certificate:
        return cls.from_json(json.loads(text))


def _sigma_key(sigma: Sequence[int]) -> str:
    return ",".join(str(i) for i in sigma)


def encode_witness(forms: LinearFormSet, M: MSelection) -> dict:
    return {
        "L": [str(f) for f in forms.forms],
        "M": {_sigma_key(s): str(M.entries[s]) for s in sorted(M.entries)},
    }


def decode_witness(witness: dict, field: FieldConfig, nvars: int, d: int) -> tuple[LinearFormSet, MSelection]:
    forms = LinearFormSet(tuple(parse_poly(s, field, nvars=nvars, degree=1) for s in witness["L"]))
    entries = {}
    for key, text in witness["M"].items():
        sigma = tuple(int(x) for x in key.split(","))
        entries[sigma] = parse_poly(text, field, nvars=nvars, degree=d - len(sigma))
    return forms, MSelection(d, entries)


def _star_quotient_ok(forms: LinearFormSet, d: int) -> bool:
    """dim (S / (L_sigma : |sigma| = 3))_d equals the number of star points."""
    n = forms.n
    gens = star_generators(forms, 3)
    return comb(n + d, n) - ideal_dim(gens, d) == comb(n + 2, 2)


def measure(strategy: Strategy, forms: LinearFormSet, M: MSelection) -> tuple[int, int, bool]:
    """(achieved_rank, target_rank, side_condition_ok) for one witness."""
    n, d = forms.n, M.d
    if strategy is Strategy.MACAULAY:
        return ideal_dim(tangent_ideal_gens(forms, M), d), comb(n + d, n), True
    achieved = rank(evaluation_matrix(forms, M))
    target = comb(n + 2, 2)
    side = achieved == target and _star_quotient_ok(forms, d)
    return achieved, target, side


def certify_tuple(
    n: int,
    d: int,
    strategy: Strategy | str = Strategy.MACAULAY,
    field: FieldConfig | None = None,
    seed: int = 1,
    retries: int = DEFAULT_RETRIES,
) -> Certificate:
    """Certify (n, n+2, 3, d) with the explicit witness multipliers.

    Attempt ``a`` (0-based) draws its forms from seed ``seed + a``;
    ``retries_used`` records the index of the reported attempt.
    """
    if d < 3:
        raise ValueError(f"tuple (n, n+2, 3, d) needs d >= 3, got d={d}")
    if n < 2:
        raise ValueError(f"need n >= 2, got n={n}")
    strategy = Strategy(strategy)
    field = field or FieldConfig.prime_field()
    nlrd = TupleNLRD(n, n + 2, 3, d)
    cert = None
    for attempt in range(retries + 1):
        rng = np.random.default_rng(seed + attempt)
        forms = random_general_forms(n, n + 2, field, rng)
        M = witness_m(forms, d)
        achieved, target, side = measure(strategy, forms, M)
        ok = achieved == target and side
        cert = Certificate(
            nlrd, field, seed, strategy, achieved, target,
            Verdict.CERTIFIED if ok else Verdict.INCONCLUSIVE, attempt, encode_witness(forms, M),
        )
        if ok:
            break
    return cert


def experimental_certify(
    n: int,
    l: int,
    r: int,
    d: int,
    field: FieldConfig | None = None,
    seed: int = 1,
    retries: int = DEFAULT_RETRIES,
) -> Certificate:
    """Tangent-space check for any (n, l, r, d) with random multipliers M_sigma."""
    nlrd = TupleNLRD(n, l, r, d)
    if not nlrd.feasible:
        raise ValueError(f"infeasible tuple {nlrd}: need r <= min(d, l)")
    field = field or FieldConfig.prime_field()
    target = comb(n + d, n)
    cert = None
    for attempt in range(retries + 1):
        rng = np.random.default_rng(seed + attempt)
        forms = random_general_forms(n, l, field, rng)
        M = random_m(forms, r, d, rng)
        achieved = ideal_dim(tangent_ideal_gens(forms, M), d)
        ok = achieved == target
        cert = Certificate(
            nlrd, field, seed, Strategy.MACAULAY, achieved, target,
            Verdict.CERTIFIED if ok else Verdict.INCONCLUSIVE, attempt, encode_witness(forms, M),
        )
        if ok:
            break
    return cert


def recheck(cert: Certificate, field: FieldConfig | None = None) -> int:
    """Recompute the achieved rank from the stored witness alone.

    Passing ``FieldConfig.rationals()`` reads the stored residues as integers
    and redoes the computation over QQ.
    """
    field = field or cert.field
    t = cert.nlrd
    forms, M = decode_witness(cert.witness, field, t.n + 1, t.d)
    if cert.strategy is Strategy.MACAULAY:
        return ideal_dim(tangent_ideal_gens(forms, M), t.d)
    return rank(evaluation_matrix(forms, M))


def verify(cert: Certificate) -> bool:
    """A certified record re-derives its rank and hits its target."""
    if not cert.certified:
        return False
    if recheck(cert) != cert.achieved_rank:
        return False
    if cert.strategy is Strategy.EVALUATION:
        t = cert.nlrd
        forms, _ = decode_witness(cert.witness, cert.field, t.n + 1, t.d)
        return _star_quotient_ok(forms, t.d)
    return True
