from math import comb
from pathlib import Path

import numpy as np
import pytest
from hypothesis import given, strategies as st

from starconf.classify import ClassVerdict as V, classification_csv, classify, dimension_bound, grid
from starconf.field import FieldConfig
from starconf.membership import contains
from starconf.poly import random_form
from starconf.star import random_general_forms, star_generators

FIXTURE = Path(__file__).parent / "fixtures" / "classification_n6_d10.csv"


@pytest.mark.parametrize(
    "t,verdict,case",
    [
        ((2, 5, 4, 4), V.GENERIC_NO, "(2)(v)"),
        ((2, 5, 4, 5), V.GENERIC_YES, "(2)(v)"),
        ((3, 5, 3, 7), V.GENERIC_YES, "(2)(viii)"),
        ((2, 4, 2, 5), V.ALWAYS_YES, "(3)"),
        ((4, 4, 2, 6), V.GENERIC_NO_LARGE_D, "(1)"),
        ((1, 3, 3, 5), V.GENERIC_YES, "(2)(i)"),
        ((2, 5, 4, 3), V.INFEASIBLE, "r>min(d,l)"),
        ((5, 9, 5, 9), V.GENERIC_NO, "(2) l>n+2"),
        ((2, 6, 5, 8), V.GENERIC_NO, "(2) l>5"),
    ],
)
def test_examples(t, verdict, case):
    c = classify(*t)
    assert (c.verdict, c.case) == (verdict, case)


def test_large_d_flag():
    c = classify(4, 4, 2, 6)
    assert c.finite_d is V.UNKNOWN and c.bound_value is None
    assert classify(3, 5, 3, 7).bound_value == 5


def test_dimension_bound_examples():
    assert dimension_bound(3, 6) == -2
    assert dimension_bound(2, 5) == 0
    assert dimension_bound(3, 5) == 5
    with pytest.raises(ValueError):
        dimension_bound(4, 3)


def test_negative_bound_region():
    for n in range(3, 9):
        for l in range(n + 3, n + 9):
            assert dimension_bound(n, l) < 0
            r = l - n + 1
            assert all(classify(n, l, r, d).verdict is V.GENERIC_NO for d in range(r, r + 10))
    assert all(dimension_bound(2, l) < 0 for l in range(6, 40))


@given(n=st.integers(1, 30), l=st.integers(1, 30), r=st.integers(1, 30), d=st.integers(1, 30))
def test_total_and_pure(n, l, r, d):
    a, b = classify(n, l, r, d), classify(n, l, r, d)
    assert a == b
    assert (a.verdict is V.INFEASIBLE) == (r > l or r > d)
    assert (a.bound_value is not None) == (a.verdict is not V.INFEASIBLE and l - r + 1 == n)


def test_fixture_byte_exact():
    assert classification_csv(6, 10) == FIXTURE.read_text()


def test_grid_size():
    # sum over n of sum_{l <= n+6} l * 10
    assert len(list(grid(6, 10))) == sum(10 * comb(n + 7, 2) for n in range(1, 7))


def test_always_yes_is_membership():
    F = FieldConfig.prime_field()
    rng = np.random.default_rng(0)
    for t in grid(3, 4, lspan=3):
        c = classify(t.n, t.l, t.r, t.d)
        if c.verdict is not V.ALWAYS_YES:
            continue
        gens = star_generators(random_general_forms(t.n, t.l, F, rng), t.r)
        assert contains(gens, random_form(F, t.n + 1, t.d, rng)) is not None
