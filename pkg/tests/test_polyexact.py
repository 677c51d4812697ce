from fractions import Fraction as F
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from sigmaconc.polyexact import (
    RootFindingError,
    UniPoly,
    cardan_reduce,
    complex_roots,
    convolution_sum,
    discriminant_small,
    format_poly,
    from_roots,
    is_real_rooted,
    parse_poly,
    parse_scalar,
    poly_gcd,
    reverse,
    root_bound,
    squarefree_decomposition,
    squarefree_part,
    sturm_chain,
    sturm_real_root_count,
)

rationals = st.fractions(min_value=-10, max_value=10, max_denominator=50)
X = UniPoly.x()


def test_construction_strips_and_rejects_floats():
    P = UniPoly((1, 2, 0, 0))
    assert P.coeffs == (1, 2)
    assert P.degree == 1
    assert UniPoly().degree == -1
    with pytest.raises(TypeError):
        UniPoly((1.5, 2))


def test_arithmetic():
    P = UniPoly((1, 1))
    assert P * P == UniPoly((1, 2, 1))
    assert (P * P - P) == UniPoly((0, 1, 1))
    q, r = divmod(UniPoly((1, 0, 1)), P)
    assert q * P + r == UniPoly((1, 0, 1))
    assert r == UniPoly((2,))
    assert P(F(1, 2)) == F(3, 2)


def test_parse_and_format():
    assert parse_poly("0,1/3,1,1") == X**3 + X**2 + X / 3
    assert parse_poly("1,1,1/3,0", descending=True) == X**3 + X**2 + X / 3
    assert format_poly(UniPoly()) == "0"
    with pytest.raises(ValueError, match="'1/x'"):
        parse_scalar("1/x")
    with pytest.raises(ValueError, match="zero denominator"):
        parse_scalar("3/0")


def test_from_roots_examples():
    assert from_roots([-1, -2]) == UniPoly((2, 3, 1))
    assert from_roots([]) == UniPoly((1,))
    assert from_roots([0, 0, 0]) == X**3


def test_convolution_sum_examples():
    assert convolution_sum(X, X) == 2 * X
    P = (X + 1) * (X + 3)
    Q = (X + 2) ** 2
    assert convolution_sum(P, Q) == UniPoly((30, 32, 8))
    assert convolution_sum(UniPoly((1,)), UniPoly((1,))) == UniPoly((1,))
    with pytest.raises(ValueError, match="convolution requires equal degrees"):
        convolution_sum(X, X**2)


def test_sturm_examples():
    assert sturm_real_root_count(X**2 - 2) == 2
    assert sturm_real_root_count(X**2 + 1) == 0
    assert sturm_real_root_count((X + 1) ** 2) == 1
    assert sturm_real_root_count(X**2 - 2, (0, math.inf)) == 1
    # half-open (lo, hi]
    assert sturm_real_root_count(X * (X - 1), (0, 1)) == 1
    chain = sturm_chain(X**3 - X)
    assert chain.variations(-math.inf) - chain.variations(math.inf) == 3


def test_real_rootedness_examples():
    assert is_real_rooted(X * (X - 1) * (X - 2) * (X - 4) * (X - 5) * (X - 6))
    assert not is_real_rooted(X**3 + X**2 + X / 3)
    assert is_real_rooted((X + 1) ** 4 * (X - 3))
    assert is_real_rooted(UniPoly((5,)))


def test_squarefree():
    P = (X - 1) ** 3 * (X + 2) ** 2 * (X - 5)
    sq = squarefree_part(P)
    assert sq.degree == 3
    dec = squarefree_decomposition(P)
    mults = {m: f.degree for f, m in dec}
    assert mults == {1: 1, 2: 1, 3: 1}
    assert poly_gcd(P, P.derivative()).degree == 3


def test_discriminant_and_cardan():
    assert discriminant_small(UniPoly((1, 3, 3, 1))) == 0
    assert discriminant_small(UniPoly((1, 0, 1))) == -4
    p, q = cardan_reduce(X**3 + 3 * X**2 + X)
    assert (p, q) == (-2, 1)


def test_cubic_discriminant_matches_depressed_form():
    # disc(P) = a3^4 * (-(4 p^3 + 27 q^2)) for the depressed cubic
    P = UniPoly((F(1, 3), 2, -1, 3))
    p, q = cardan_reduce(P)
    assert discriminant_small(P) == 3**4 * -(4 * p**3 + 27 * q**2)


def test_complex_roots_multiplicity():
    rs = complex_roots((X + 1) ** 2)
    assert rs.multiplicities == [2]
    assert abs(rs.roots[0] + 1) < 1e-10
    rs = complex_roots(X**2 + 1)
    assert sorted(round(z.imag) for z in rs.roots) == [-1, 1]
    assert rs.real_parts() is None


def test_complex_roots_float_input():
    rs = complex_roots(np.array([-6.0, 11.0, -6.0, 1.0]))
    assert sorted(z.real for z in rs.roots) == pytest.approx([1, 2, 3], abs=1e-10)


def test_root_bound():
    P = from_roots([3, -7, F(1, 2)])
    assert root_bound(P) >= 7


@given(st.lists(rationals, min_size=1, max_size=8))
@settings(max_examples=60, deadline=None)
def test_from_roots_is_real_rooted(roots):
    assert is_real_rooted(from_roots(roots))


@given(st.lists(rationals, min_size=1, max_size=10))
@settings(max_examples=80, deadline=None)
def test_reverse_preserves_real_rootedness(coeffs):
    P = UniPoly(coeffs)
    if P.degree < 1 or P.coeffs[0] == 0:
        return
    assert is_real_rooted(P) == is_real_rooted(reverse(P))


@given(st.lists(rationals, min_size=2, max_size=9))
@settings(max_examples=80, deadline=None)
def test_sturm_split_at_zero(coeffs):
    P = UniPoly(coeffs)
    if P.degree < 1:
        return
    total = sturm_real_root_count(P)
    assert total == sturm_real_root_count(P, (-math.inf, 0)) + sturm_real_root_count(P, (0, math.inf))


@given(st.lists(st.integers(-10, 10), min_size=2, max_size=3, unique=True))
@settings(max_examples=60, deadline=None)
def test_discriminant_sign_agrees_with_sturm(roots):
    # perturb a real-rooted polynomial both ways
    P = from_roots(roots)
    for shift in (F(0), F(1, 3), F(50)):
        Q = P + UniPoly((shift,))
        d = discriminant_small(Q)
        assert (d >= 0) == is_real_rooted(Q)


@given(st.lists(st.integers(-10, 10), min_size=1, max_size=7, unique=True))
@settings(max_examples=40, deadline=None)
def test_complex_roots_recover_separated_roots(roots):
    rs = complex_roots(from_roots(roots))
    got = sorted(z.real for z in rs.roots)
    assert got == pytest.approx(sorted(roots), abs=1e-8)


def test_rootfinding_error_carries_partial():
    err = RootFindingError("stuck", [1j])
    assert err.partial == [1j]
