from fractions import Fraction as F
import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from sigmaconc.polyexact import UniPoly, from_roots, is_real_rooted, squarefree_part, sturm_real_root_count
from sigmaconc.rootcrit import (
    ALL_REALS,
    POSITIVE_AXIS,
    _det,
    _neville_tn,
    _toeplitz_section,
    battery,
    bezoutian_matrix,
    concavity_form,
    hermite_signature,
    kurtz,
    log_concave,
    minors_nonnegative,
    nonpositive_on,
    p2_form,
    positive_witness,
    symmetric_signature,
    total_positivity_truncated,
)

X = UniPoly.x()
rationals = st.fractions(min_value=-10, max_value=10, max_denominator=30)
nonneg = st.fractions(min_value=0, max_value=10, max_denominator=30)


# -- forms ----------------------------------------------------------------------


def test_p2_form_quadratic_is_minus_discriminant():
    P = UniPoly((3, 2, 1))
    # n P P'' + (1 - n) P'^2 = 2 (P P'' - P'^2 / 2) = -disc
    assert p2_form(P) == UniPoly((8,))


def test_p2_form_remark_cubic():
    P = X**3 + X**2 + X / 3
    assert p2_form(P) == 3 * UniPoly((F(-2, 27), F(-6, 27)))


def test_p2_form_monomial_vanishes():
    for n in range(1, 7):
        assert p2_form(X**n).is_zero()


def test_p2_form_rejects_constants():
    with pytest.raises(ValueError):
        p2_form(UniPoly((4,)))


# -- sign decisions ------------------------------------------------------------------


def test_nonpositive_examples():
    R = -(3 * X + 1)
    assert nonpositive_on(R, POSITIVE_AXIS)
    assert not nonpositive_on(R, ALL_REALS)
    assert nonpositive_on(-((X - 1) ** 2), ALL_REALS)
    assert nonpositive_on(UniPoly(), ALL_REALS)
    assert not nonpositive_on(UniPoly((1,)), POSITIVE_AXIS)


def test_positive_witness_is_genuine():
    R = -((X - 1) ** 2) * (X - 3) * (X - 4)
    t = positive_witness(R, POSITIVE_AXIS)
    assert t is not None and t > 0 and R(t) > 0
    assert 3 < t < 4


def test_double_root_touching_zero():
    # -(X - 1/3)^2 (X^2 + 1) touches zero once; still <= 0
    assert nonpositive_on(-((X - F(1, 3)) ** 2) * (X**2 + 1), ALL_REALS)
    # a simple root on the positive axis means a sign change
    assert not nonpositive_on(-(X - F(1, 3)) * (X**2 + 1), POSITIVE_AXIS)


@given(st.lists(rationals, min_size=1, max_size=7))
@settings(max_examples=120, deadline=None)
def test_nonpositive_against_dense_sampling(coeffs):
    R = UniPoly(coeffs)
    ts = [F(k, 7) for k in range(-100, 101)]
    for domain in (ALL_REALS, POSITIVE_AXIS):
        pts = ts if domain == ALL_REALS else [t for t in ts if t > 0]
        if nonpositive_on(R, domain):
            assert all(R(t) <= 0 for t in pts)
        else:
            w = positive_witness(R, domain)
            assert R(w) > 0
            if domain == POSITIVE_AXIS:
                assert w > 0


# -- Hermite form ------------------------------------------------------------------


def _bivariate_check(P, L, x, y):
    n = P.degree
    lhs = sum(L[i][j] * x**i * y**j for i in range(n) for j in range(n))
    dP = P.derivative()
    return (x - y) * lhs == P(x) * dP(y) - P(y) * dP(x)


@given(st.lists(rationals, min_size=2, max_size=8))
@settings(max_examples=60, deadline=None)
def test_bezoutian_division_is_exact(coeffs):
    P = UniPoly(coeffs)
    if P.degree < 1:
        return
    L = bezoutian_matrix(P)
    assert all(L[i][j] == L[j][i] for i in range(len(L)) for j in range(len(L)))
    rng = random.Random(len(coeffs))
    for _ in range(5):
        x, y = F(rng.randint(-50, 50), rng.randint(1, 9)), F(rng.randint(-50, 50), rng.randint(1, 9))
        assert _bivariate_check(P, L, x, y)


def test_hermite_examples():
    assert bezoutian_matrix(X**2 - 1) == [[2, 0], [0, 2]]
    assert hermite_signature(X**2 - 1) == (2, 0)
    assert bezoutian_matrix(X**2 + 1) == [[-2, 0], [0, 2]]
    assert hermite_signature(X**2 + 1) == (1, 1)
    # double root: rank 1, one distinct real root
    assert hermite_signature(X**2) == (1, 0)


@given(st.lists(rationals, min_size=2, max_size=9))
@settings(max_examples=100, deadline=None)
def test_hermite_count_matches_sturm(coeffs):
    P = UniPoly(coeffs)
    if P.degree < 1:
        return
    s, t = hermite_signature(P)
    assert s - t == sturm_real_root_count(P)
    # rank = number of distinct complex roots
    assert s + t == squarefree_part(P).degree


@given(st.integers(1, 6), st.integers(0, 10**6))
@settings(max_examples=60, deadline=None)
def test_symmetric_signature_against_eigenvalues(n, seed):
    rng = np.random.default_rng(seed)
    A = rng.integers(-4, 5, size=(n, n))
    A = A + A.T
    if seed % 3 == 0:
        np.fill_diagonal(A, 0)
    w = np.linalg.eigvalsh(A.astype(float))
    s, t = symmetric_signature([[F(int(v)) for v in row] for row in A])
    assert s == int(np.sum(w > 1e-9))
    assert t == int(np.sum(w < -1e-9))


# -- total positivity ---------------------------------------------------------------------


def test_tp_examples():
    assert total_positivity_truncated([1, 2, 1], 3)
    assert not total_positivity_truncated([1, 1, 1], 3)
    assert total_positivity_truncated([1, 0, 0, 0], 2)
    with pytest.raises(ValueError, match="non-negative coefficients"):
        total_positivity_truncated([1, -1], 2)


def test_tp_named_minor():
    # rows {2,3,4} x cols {1,2,3} (1-based) of the Toeplitz matrix of (1,1,1)
    T = _toeplitz_section([F(1), F(1), F(1)], 5)
    minor = [[T[i][j] for j in (0, 1, 2)] for i in (1, 2, 3)]
    assert _det(minor) == -1


@given(st.lists(st.integers(0, 6), min_size=2, max_size=4), st.integers(1, 3))
@settings(max_examples=80, deadline=None)
def test_neville_matches_brute_force_minors(coeffs, order):
    coeffs = [F(max(coeffs[0], 1))] + [F(c) for c in coeffs[1:]]
    size = len(coeffs) - 1 + order
    T = _toeplitz_section(coeffs, size)
    assert _neville_tn(T) == minors_nonnegative(T, size)


@given(st.lists(st.fractions(min_value=0, max_value=5, max_denominator=5), min_size=1, max_size=5))
@settings(max_examples=40, deadline=None)
def test_tp_true_for_negative_real_roots(roots):
    P = from_roots([-r - 1 for r in roots])
    assert total_positivity_truncated(P.coeffs, P.degree + 2)


# -- sign-pattern criteria -----------------------------------------------------------------


def test_log_concave_examples():
    assert not log_concave([1, 1, 2])
    assert log_concave([1, 2, 1])
    assert log_concave([1, 3, 3, 1], weighted=True)
    assert not is_real_rooted(UniPoly((1, 1, 2)))


def test_kurtz_examples():
    assert kurtz([1, 5, 6, 1])
    assert sturm_real_root_count(UniPoly((1, 5, 6, 1))) == 3
    assert not kurtz([1, 2, 1])
    assert is_real_rooted(UniPoly((1, 2, 1)))
    assert not kurtz([1, 1, 1])
    assert not kurtz([1, 0, 1])


# -- battery -------------------------------------------------------------------------------


def test_battery_remark_example():
    r = battery(X**3 + X**2 + X / 3)
    assert (r.p1_exact, r.p2_holds, r.p3_holds) == (False, False, True)


def test_battery_cube():
    r = battery((X + 1) ** 3)
    assert r.p1_exact and r.p2_holds and r.p3_holds
    assert r.log_concave and r.log_concave_weighted and r.totally_positive_truncated
    assert r.kurtz is False


def test_battery_kurtz_instance():
    r = battery(UniPoly((1, 5, 6, 1)))
    assert r.kurtz and r.p1_exact


def test_battery_negative_coefficients_skip_sign_criteria():
    r = battery(X**2 - 1)
    assert r.p1_exact and r.log_concave is None and r.kurtz is None
    assert r.totally_positive_truncated is None


@given(st.lists(nonneg, min_size=2, max_size=9))
@settings(max_examples=150, deadline=None)
def test_battery_lattice_on_nonnegative_polys(coeffs):
    P = UniPoly(coeffs)
    if P.degree < 1:
        return
    r = battery(P)  # raises CriteriaInconsistency on any forbidden combination
    if r.degree == 2:
        assert r.p1_exact == r.p2_holds == r.p3_holds
    if r.degree == 3:
        assert r.p1_exact == r.p2_holds


@given(st.lists(st.fractions(min_value=-5, max_value=5, max_denominator=9), min_size=1, max_size=6))
@settings(max_examples=60, deadline=None)
def test_real_rooted_inputs_satisfy_p2(roots):
    P = from_roots(roots)
    assert nonpositive_on(p2_form(P), ALL_REALS)


def test_concavity_form_reversal_identity():
    P = UniPoly((3, 1, 4, 1, 5))
    n = 4
    from sigmaconc.polyexact import reverse

    assert concavity_form(reverse(P), n) == reverse(concavity_form(P, n), 2 * n - 4)
