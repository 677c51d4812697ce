from fractions import Fraction as F
import warnings

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from sigmaconc.concave import (
    CERTIFIED,
    COUNTEREXAMPLE,
    NO_VIOLATION,
    SamplingBudgetWarning,
    closedform_det,
    concavity_matrix,
    concavity_scan,
    determinant_check,
    exact_concavity_det,
    fd_det,
    in_X,
    in_Xi,
    marcus_lopes_check,
    nsd_verdict,
    p2_certificate,
    p3_shift_vector,
    quadratic_form,
    sample_gamma,
    set_membership,
)
from sigmaconc.hyperb import pascinde_lift
from sigmaconc.symfun import _esp_batch


# -- concavity matrix and NSD ----------------------------------------------------------


def test_concavity_matrix_examples():
    M = concavity_matrix("0,1", [F(1), F(2), F(3)], 1)
    assert all(v == 0 for row in M for v in row)
    M = concavity_matrix("0,0,1", [F(1), F(1)], F(1, 2))
    assert M == [[F(-1, 2), F(1, 2)], [F(1, 2), F(-1, 2)]]
    M = concavity_matrix("1,1,1", [F(1), F(2)], 1)
    assert M == [[0, 6], [6, 0]]  # f = 1 + 3 + 2, H = [[0,1],[1,0]]
    with pytest.raises(ValueError, match="positivity"):
        concavity_matrix("-5,1", [F(1), F(1)], F(1, 2))


def test_concavity_matrix_mu_one_is_fH():
    x = [F(1, 2), F(3), F(2)]
    M = concavity_matrix("1,2,3,4", x, 1)
    from sigmaconc.symfun import f_derivatives

    d = f_derivatives("1,2,3,4", x)
    assert M == [[d.value * h for h in row] for row in d.hessian]


def test_nsd_examples():
    assert nsd_verdict([[-1, 1], [1, -1]]).nsd
    r = nsd_verdict([[0, 1], [1, 0]])
    assert not r.nsd
    assert abs(abs(r.direction[0]) - 2**-0.5) < 1e-12
    assert r.direction[0] * r.direction[1] > 0
    assert nsd_verdict([[0, 0], [0, 0]]).nsd
    with pytest.raises(ValueError, match="symmetric"):
        nsd_verdict([[0, 1], [0, 0]])


# -- p = 2 certificate -------------------------------------------------------------------


def test_p2_certificate_examples():
    c = p2_certificate("1,2,3", 2)
    assert c.status == "concave" and c.margin == 2
    assert p2_certificate("1,1,1", 3).status == "not-concave"
    c = p2_certificate("1,2,3", 3)
    assert c.status == "boundary" and c.margin == 0
    with pytest.raises(ValueError):
        p2_certificate("1,-1,1", 3)


def test_p2_certificate_agrees_with_scan_examples():
    assert concavity_scan("1,2,3", 2, samples=500, seed=0).status == NO_VIOLATION
    v = concavity_scan("1,1,1", 3, samples=500, seed=0)
    assert v.status == COUNTEREXAMPLE
    w = v.witness
    M = concavity_matrix("1,1,1", w.point, F(1, 2))
    assert quadratic_form(M, w.direction) == w.exact_value > 0


def test_scan_affine_and_zero_degree():
    assert concavity_scan("0,1", 3, samples=200).status == NO_VIOLATION
    assert concavity_scan("5", 3, samples=200).status == NO_VIOLATION


def test_scan_effective_degree_and_errors():
    with pytest.raises(ValueError, match="reduce p"):
        concavity_scan("1,1,1,1", 2, samples=10)
    with pytest.raises(ValueError):
        concavity_scan("1,1,1", 3, samples=10, p=1)


def test_scan_deterministic_across_workers():
    a = "1,0,1"
    d1 = concavity_scan(a, 4, samples=600, seed=3, workers=1).as_dict()
    d3 = concavity_scan(a, 4, samples=600, seed=3, workers=3).as_dict()
    assert d1 == d3


@given(st.integers(2, 6), st.lists(st.fractions(min_value=F(1, 10), max_value=10,
                                                 max_denominator=20), min_size=3, max_size=3))
@settings(max_examples=25, deadline=None)
def test_p2_certificate_vs_scan(n, a):
    cert = p2_certificate(a, n)
    scale = 1e-6 * n * float(max(a)) ** 2
    if abs(cert.margin) < scale:
        return
    v = concavity_scan(a, n, samples=1000, seed=1)
    if cert.status == "concave":
        assert v.status == NO_VIOLATION
    else:
        assert v.status == COUNTEREXAMPLE


# -- closed-form determinants -----------------------------------------------------------


def test_p3_shift_vector_example():
    assert p3_shift_vector("1,1,1,1", [F(1), F(2), F(3)]) == [F(5, 2), F(3, 2), F(1, 2)]


def test_sparse_n_example():
    assert closedform_det("1,1,0,1", [1, 1, 1], "sparse-n") == 3


def test_closedform_errors():
    with pytest.raises(ValueError, match="reduce p"):
        closedform_det("1,1,1,0", [1, 1, 1], "p3")
    with pytest.raises(ValueError, match="singular"):
        closedform_det("1,1,0,1", [0, 1, 1], "sparse-n")
    with pytest.raises(ValueError, match="singular"):
        # y_1 = (a2 + a3 s1)/2 - a3 x1 = 0
        closedform_det("1,1,0,1", [1, F(1, 2), F(1, 2)], "p3")


@pytest.mark.parametrize("n", [3, 4, 5])
def test_p3_closed_form_equals_exact_det(n):
    rng = np.random.default_rng(n)
    for _ in range(10):
        a = [F(int(v), 3) for v in rng.integers(1, 20, 4)]
        x = [F(int(v), 7) for v in rng.integers(1, 60, n)]
        try:
            cf = closedform_det(a, x, "p3")
        except ValueError:
            continue
        assert cf == exact_concavity_det(a, x, 3)


@pytest.mark.parametrize("n", [3, 4, 5])
def test_sparse_n_sign_matches_exact_det(n):
    rng = np.random.default_rng(10 + n)
    for _ in range(10):
        a = [F(int(rng.integers(0, 10))), F(int(rng.integers(1, 10)))] + [F(0)] * (n - 2) \
            + [F(int(rng.integers(1, 10)))]
        x = [F(int(v), 5) for v in rng.integers(1, 40, n)]
        cf = closedform_det(a, x, "sparse-n")
        ex = exact_concavity_det(a, x, n)
        assert (cf > 0) == (ex > 0) and (cf < 0) == (ex < 0)


def test_fd_det_sign_matches_exact():
    a, x = "1,2,3,1", [F(1, 2), F(3, 2), F(2)]
    fd, scale = fd_det(a, [float(v) for v in x], 3)
    ex = exact_concavity_det(a, x, 3)
    assert abs(fd) > 1e-8 * scale
    assert (fd > 0) == (ex > 0)


def test_determinant_check_driver():
    r = determinant_check("1,2,3,1", "p3", n=4, points=30, seed=2)
    assert r.agree + r.degenerate + r.singular == 30 and not r.disagree
    with pytest.raises(ValueError):
        determinant_check("1,2,3,1,1", "p3", n=4)
    with pytest.raises(ValueError):
        determinant_check("1,2,3,1", "sparse-n")


# -- sampling ---------------------------------------------------------------------------


def test_sample_gamma_examples():
    P = sample_gamma(3, 3, 2, seed=7)
    assert P.shape == (2, 3) and np.all(P > 0)
    assert np.array_equal(sample_gamma(3, 2, 40, seed=1), sample_gamma(3, 2, 40, seed=1))
    Q = sample_gamma(2, 1, 200, seed=0)
    assert np.any(Q < 0)
    e = _esp_batch(Q, 1)
    assert np.all(e > 0)


def test_sample_gamma_budget_warning():
    with warnings.catch_warnings(record=True) as rec:
        warnings.simplefilter("always")
        P = sample_gamma(8, 7, 40, seed=0, budget_factor=0)
    assert any(issubclass(w.category, SamplingBudgetWarning) for w in rec)
    assert len(P) == 20


# -- set membership ------------------------------------------------------------------------


def test_membership_examples():
    assert in_Xi("1,2,3", 3)
    assert not in_Xi("1,1,1", 3)
    assert in_Xi("0,0,2,5", 4)
    m = set_membership("1,2,3", 3, samples=300)
    assert m.in_Xi and m.in_X and m.K_scan.status == NO_VIOLATION and not m.flags


def test_in_X_witness():
    ok, t = in_X("1,1,1", 3)
    assert not ok and t > 0


@given(st.lists(st.fractions(min_value=0, max_value=5, max_denominator=5), min_size=2, max_size=4),
       st.integers(3, 5))
@settings(max_examples=40, deadline=None)
def test_real_rooted_diagonal_implies_diagonal_concavity(a, n):
    if not any(a[1:]):
        return
    if in_Xi(a, n):
        assert in_X(a, n)[0]


# -- theorems as numeric invariants ---------------------------------------------------------


def test_marcus_lopes_examples():
    assert marcus_lopes_check(0, 1, [1, 2, 3])
    assert marcus_lopes_check(1, 1, [1, 2, 3])
    assert marcus_lopes_check(2, 0, [1, 1, 1])
    with pytest.raises(ValueError):
        marcus_lopes_check(3, 2, [1, 2, 3])


def test_marcus_lopes_sampled():
    rng = np.random.default_rng(0)
    for n in range(2, 6):
        for k in range(0, n + 1):
            for l in range(0, n - k + 1):
                if k + l > 5 or (k == 0 and l == 0):
                    continue
                for _ in range(4):
                    x = 10.0 ** rng.uniform(-1, 1, n)
                    assert marcus_lopes_check(k, l, x), (k, l, x)


def test_pascinde_lift_is_concave():
    for lam, p, n in [([1, 2], 2, 3), ([F(1, 2), 3, 1], 3, 3), ([2, 0, 1, 5], 3, 4)]:
        a = pascinde_lift(lam, p)
        assert concavity_scan(a, n, samples=400, seed=5).status == NO_VIOLATION


def test_status_constants_distinct():
    assert len({CERTIFIED, COUNTEREXAMPLE, NO_VIOLATION}) == 3
