from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rootcone.exact import (
    CertificateError,
    DimensionError,
    LPProblem,
    cone_intersection_problem,
    dot,
    farkas_to_separator,
    find_covector,
    integer_scale,
    inverse,
    lp_feasible,
    rank,
    separate,
    solve_linear,
    verify_farkas,
    verify_witness,
)

F = Fraction
small = st.integers(min_value=-4, max_value=4)


def test_dot_exact_and_checked():
    assert dot([F(1, 2), 3], [F(2, 3), F(-1, 9)]) == F(0)
    with pytest.raises(DimensionError):
        dot([1, 2], [1])


@pytest.mark.parametrize("v, expected", [
    ([F(1, 2), F(-1, 3), 0], (3, -2, 0)),
    ([4, 6, -8], (2, 3, -4)),
    ([0, 0], (0, 0)),
    ([F(7, 5)], (1,)),
])
def test_integer_scale(v, expected):
    assert integer_scale(v) == expected


def test_solve_linear_consistent_and_inconsistent():
    assert solve_linear([[1, 1], [1, -1]], [2, 0]) == (1, 1)
    assert solve_linear([[1, 1], [2, 2]], [1, 3]) is None
    x = solve_linear([[1, 2, 3]], [6])
    assert dot([1, 2, 3], x) == 6


def test_rank():
    assert rank([[1, 2], [2, 4]]) == 1
    assert rank([[1, 0, 0], [0, 1, 0], [1, 1, 0]]) == 2
    assert rank([]) == 0


@given(st.lists(st.lists(small, min_size=3, max_size=3), min_size=3, max_size=3))
def test_inverse_roundtrip(A):
    if rank(A) < 3:
        return
    inv = inverse(A)
    for i in range(3):
        for j in range(3):
            assert sum(F(A[i][k]) * inv[k][j] for k in range(3)) == int(i == j)


def test_lp_feasible_simple():
    # x + y = 2, x - y >= 1
    p = LPProblem.build(2, eq=[([1, 1], 2)], ge=[([1, -1], 1)])
    out = lp_feasible(p)
    assert out.feasible and verify_witness(p, out.witness)


def test_lp_infeasible_has_farkas():
    # x + y = 1, x + y >= 2
    p = LPProblem.build(2, eq=[([1, 1], 1)], ge=[([1, 1], 2)])
    out = lp_feasible(p)
    assert not out.feasible
    assert verify_farkas(p, out.farkas)


def test_lp_negative_rhs_equality():
    p = LPProblem.build(2, eq=[([1, -1], -3)])
    out = lp_feasible(p)
    assert out.feasible and verify_witness(p, out.witness)


def test_lp_dimension_checks():
    with pytest.raises(DimensionError):
        LPProblem.build(2, eq=[([1, 1, 1], 0)])


@settings(max_examples=150, deadline=None)
@given(st.integers(1, 4), st.integers(0, 3), st.integers(0, 3), st.data())
def test_lp_exactly_one_certificate(nv, ne, ng, data):
    row = st.lists(small, min_size=nv, max_size=nv)
    eq = [(data.draw(row), data.draw(small)) for _ in range(ne)]
    ge = [(data.draw(row), data.draw(small)) for _ in range(ng)]
    p = LPProblem.build(nv, eq=eq, ge=ge)
    out = lp_feasible(p)
    assert (out.witness is None) != (out.farkas is None)
    if out.feasible:
        assert verify_witness(p, out.witness)
    else:
        assert verify_farkas(p, out.farkas)


def test_separate_disjoint_cones():
    h = separate([(1, 0)], [(-1, 0), (0, 1), (0, -1)])
    assert h is not None
    assert dot((1, 0), h) >= 1
    assert all(dot(a, h) <= 0 for a in [(-1, 0), (0, 1), (0, -1)])


def test_separate_meeting_cones():
    # (1, 1) + (0, -1) = (1, 0)
    assert separate([(1, 0)], [(1, 1), (0, -1)]) is None


def test_separate_empty_strict_side():
    assert separate([], [(1, 0)]) is None


def test_cone_problem_normalizes_strict_side():
    p = cone_intersection_problem([(1, 0)], [(1, 0)])
    out = lp_feasible(p)
    assert out.feasible
    a, b = out.witness
    assert b == 1 and a == 1


def test_farkas_to_separator_rejects_bad_certificate():
    with pytest.raises(CertificateError):
        farkas_to_separator([F(1), F(0), F(0)], [(1, 0)], [])


def test_find_covector():
    h = find_covector(2, ge_one=[(1, 1)], le_zero=[(1, -1)], eq_zero=[(0, 0)])
    assert dot((1, 1), h) >= 1 and dot((1, -1), h) <= 0
    assert find_covector(1, ge_one=[(1,)], le_zero=[(1,)]) is None
