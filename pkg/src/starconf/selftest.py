"""Quick invariant checks runnable from an installed package (``starconf selftest``)."""

from __future__ import annotations

import time
from math import comb
from typing import Callable

import numpy as np

from .certify import Strategy, certify_tuple, verify
from .classify import ClassVerdict, classify, dimension_bound
from .field import FieldConfig
from .linalg import a_matrix, det, rank
from .membership import contains, decompose, ideal_dim
from .poly import random_form
from .star import expected_hf, hilbert_function, random_general_forms, star_generators, star_points, subsets


def _ring_axioms(field: FieldConfig) -> bool:
    rng = np.random.default_rng(11)
    for _ in range(100):
        p, q, s = (random_form(field, 3, 2, rng) for _ in range(3))
        if (p + q) * s != p * s + q * s:
            return False
    return True


def _eval_homomorphism(field: FieldConfig) -> bool:
    rng = np.random.default_rng(12)
    for _ in range(50):
        p, q = random_form(field, 3, 2, rng), random_form(field, 3, 3, rng)
        pt = [field.random_element(rng) for _ in range(3)]
        if (p * q).eval(pt) != field.mul(p.eval(pt), q.eval(pt)):
            return False
    return True


def _a_matrix_dets(field: FieldConfig) -> bool:
    return all(det(a_matrix(r, field)) == field((-1) ** (r - 1) * (r - 1)) for r in range(2, 13))


def _hilbert_small(field: FieldConfig) -> bool:
    rng = np.random.default_rng(13)
    for n in (2, 3):
        for l in range(n, n + 3):
            gens = star_generators(random_general_forms(n, l, field, rng), l - n + 1)
            if any(hilbert_function(gens, t) != expected_hf(n, l, t) for t in range(l + 1)):
                return False
    return True


def _points_vanish(field: FieldConfig) -> bool:
    rng = np.random.default_rng(14)
    forms = random_general_forms(3, 5, field, rng)
    gens = star_generators(forms, 3)
    pts = star_points(forms)
    if len({p.coords for p in pts}) != comb(5, 3):
        return False
    return all(g.eval(p.coords) == 0 for g in gens for p in pts)


def _big_codim_span(field: FieldConfig) -> bool:
    rng = np.random.default_rng(15)
    for n in (1, 2, 3):
        for r in (1, 2, 3):
            forms = random_general_forms(n, n + r, field, rng)
            gens = star_generators(forms, r)
            if ideal_dim(gens, r) != comb(n + r, n):
                return False
            if contains(gens, random_form(field, n + 1, r, rng)) is None:
                return False
    return True


def _decompose_roundtrip(field: FieldConfig) -> bool:
    rng = np.random.default_rng(16)
    forms = random_general_forms(2, 4, field, rng)
    M = {s: random_form(field, 3, 1, rng) for s in subsets(4, 3)}
    F = sum((forms.product(s) * M[s] for s in subsets(4, 3)[1:]), forms.product((1, 2, 3)) * M[(1, 2, 3)])
    dec = decompose(F, forms, 3)
    return dec is not None and dec.reconstruct() == F


def _certify_base(field: FieldConfig) -> bool:
    ok = True
    for strategy in Strategy:
        cert = certify_tuple(2, 3, strategy, field, seed=1)
        ok = ok and cert.certified and verify(cert)
    return ok


def _classifier_bound() -> bool:
    for n in range(3, 9):
        for l in range(n + 3, n + 9):
            if dimension_bound(n, l) >= 0:
                return False
            r = l - n + 1
            if any(classify(n, l, r, d).verdict is not ClassVerdict.GENERIC_NO for d in range(r, r + 5)):
                return False
    return all(dimension_bound(2, l) < 0 for l in range(6, 20))


def _rank_transpose(field: FieldConfig) -> bool:
    from .linalg import DenseMatrix

    rng = np.random.default_rng(17)
    for _ in range(20):
        m, n = (int(x) for x in rng.integers(1, 30, size=2))
        rows = [[int(x) for x in rng.integers(0, 3, size=n)] for _ in range(m)]
        A = DenseMatrix.from_rows(field, rows)
        if rank(A) != rank(A.T):
            return False
    return True


def checks(field: FieldConfig) -> list[tuple[str, Callable[[], bool]]]:
    return [
        ("ring axioms", lambda: _ring_axioms(field)),
        ("evaluation is multiplicative", lambda: _eval_homomorphism(field)),
        ("rank(A) = rank(A^T)", lambda: _rank_transpose(field)),
        ("det of zero-diagonal ones matrices", lambda: _a_matrix_dets(field)),
        ("star point Hilbert functions", lambda: _hilbert_small(field)),
        ("generators vanish on star points", lambda: _points_vanish(field)),
        ("r-fold products span S_r when l-r+1 > n", lambda: _big_codim_span(field)),
        ("decomposition round trip", lambda: _decompose_roundtrip(field)),
        ("certify (2,4,3,3) both strategies", lambda: _certify_base(field)),
        ("dimension bound negatives", _classifier_bound),
    ]


def run_all(field: FieldConfig | None = None, out=print) -> tuple[int, int]:
    field = field or FieldConfig.prime_field()
    passed = failed = 0
    for name, check in checks(field):
        t0 = time.perf_counter()
        try:
            ok = bool(check())
            err = ""
        except Exception as exc:  # report, keep going
            ok, err = False, f" ({type(exc).__name__}: {exc})"
        dt = time.perf_counter() - t0
        out(f"{'PASS' if ok else 'FAIL'}  {name:<45} {dt:6.2f}s{err}")
        passed += ok
        failed += not ok
    out(f"{passed} passed, {failed} failed")
    return passed, failed
