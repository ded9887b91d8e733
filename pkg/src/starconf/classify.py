"""Which tuples (n, l, r, d) let the generic degree-d form in n+1 variables be
written as sum L_sigma M_sigma over the r-subsets of l general linear forms.

Cases are labelled by the clauses of the classification: ``(1)`` for
l - r + 1 < n, ``(2)(i)``..``(2)(viii)`` for the positive families with
l - r + 1 = n, and ``(3)`` for l - r + 1 > n.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from math import comb
from typing import Iterator

from .star import TupleNLRD


class ClassVerdict(str, enum.Enum):
    ALWAYS_YES = "AlwaysYes"
    GENERIC_YES = "GenericYes"
    GENERIC_NO = "GenericNo"
    GENERIC_NO_LARGE_D = "GenericNoLargeD"
    UNKNOWN = "Unknown"
    INFEASIBLE = "Infeasible"


@dataclass(frozen=True)
class Classification:
    nlrd: TupleNLRD
    verdict: ClassVerdict
    case: str
    bound_value: int | None = None
    # GenericNoLargeD only settles d >> 0; any concrete d stays Unknown
    finite_d: ClassVerdict | None = None

    def to_json(self) -> dict:
        return {
            "tuple": self.nlrd.as_dict(),
            "verdict": self.verdict.value,
            "case": self.case,
            "bound_value": self.bound_value,
            "finite_d": self.finite_d.value if self.finite_d else None,
        }

    def csv_row(self) -> str:
        t = self.nlrd
        bound = "" if self.bound_value is None else str(self.bound_value)
        fin = self.finite_d.value if self.finite_d else ""
        return f"{t.n},{t.l},{t.r},{t.d},{self.verdict.value},{self.case},{bound},{fin}"


CSV_HEADER = "n,l,r,d,verdict,case,bound_value,finite_d"


def dimension_bound(n: int, l: int) -> int:
    """l*n - C(l, n): the parameter count of l hyperplanes minus the number of
    conditions C(l, n) points impose.  Negative means no generic containment.
    """
    if not 1 <= n <= l:
        raise ValueError(f"need 1 <= n <= l, got n={n}, l={l}")
    return l * n - comb(l, n)


def classify(n: int, l: int, r: int, d: int) -> Classification:
    t = TupleNLRD(n, l, r, d)
    V = ClassVerdict
    if not t.feasible:
        return Classification(t, V.INFEASIBLE, "r>min(d,l)")
    codim = l - r + 1
    if codim > n:
        return Classification(t, V.ALWAYS_YES, "(3)")
    if codim < n:
        return Classification(t, V.GENERIC_NO_LARGE_D, "(1)", finite_d=V.UNKNOWN)

    bound = dimension_bound(n, l)
    if n == 1:
        return Classification(t, V.GENERIC_YES, "(2)(i)", bound)
    if n == 2:
        if l <= 4:
            return Classification(t, V.GENERIC_YES, ("(2)(ii)", "(2)(iii)", "(2)(iv)")[l - 2], bound)
        if l == 5:
            return Classification(t, V.GENERIC_YES if d >= 5 else V.GENERIC_NO, "(2)(v)", bound)
        return Classification(t, V.GENERIC_NO, "(2) l>5", bound)
    if l <= n + 2:
        return Classification(t, V.GENERIC_YES, ("(2)(vi)", "(2)(vii)", "(2)(viii)")[l - n], bound)
    return Classification(t, V.GENERIC_NO, "(2) l>n+2", bound)


def grid(nmax: int, dmax: int, lspan: int = 6) -> Iterator[TupleNLRD]:
    """All tuples with 1 <= n <= nmax, 1 <= l <= n + lspan, 1 <= r <= l, 1 <= d <= dmax."""
    for n in range(1, nmax + 1):
        for l in range(1, n + lspan + 1):
            for r in range(1, l + 1):
                for d in range(1, dmax + 1):
                    yield TupleNLRD(n, l, r, d)


def classification_csv(nmax: int, dmax: int, lspan: int = 6) -> str:
    lines = [CSV_HEADER]
    lines.extend(classify(t.n, t.l, t.r, t.d).csv_row() for t in grid(nmax, dmax, lspan))
    return "\n".join(lines) + "\n"
