"""Real-rootedness criteria for univariate polynomials.

Exact decisions (real-rootedness, the concavity inequality on the line or
the half-line, the Hermite form signature) are combined with the classical
necessary condition (log-concavity), a sufficient one (Kurtz) and a
truncated total-positivity test. :func:`battery` runs them all and checks
that the known implications between them hold.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Sequence

from .polyexact import (
    UniPoly,
    _exact,
    _isquarefree,
    _isturm,
    _to_primitive_ints,
    _variations,
    format_poly,
    is_real_rooted,
    root_bound,
    sturm_real_root_count,
)

ALL_REALS = "all-reals"
POSITIVE_AXIS = "positive-axis"


class CriteriaInconsistency(AssertionError):
    """Two criteria disagree in a way the theory forbids."""


def concavity_form(P: UniPoly, p: int) -> UniPoly:
    """p P P'' + (1 - p) P'^2, i.e. p times the 1/p-concavity numerator."""
    d1 = P.derivative()
    return P * P.derivative(2) * p + d1 * d1 * (1 - p)


def p2_form(P: UniPoly) -> UniPoly:
    n = P.degree
    if n < 1:
        raise ValueError("p2_form needs a non-constant polynomial")
    return concavity_form(P, n)


def _sample_points(R: UniPoly, domain: str) -> list[Fraction]:
    """Rational non-roots of R splitting the open domain into pieces with at most one root.

    Between two consecutive sample points R has at most one distinct root, and
    no roots lie outside the outermost points, so R <= 0 on the domain iff R is
    negative at every returned point.
    """
    a = _isquarefree(_to_primitive_ints(R))
    chain = _isturm(a)

    def count(lo, hi):
        return _variations(chain, lo) - _variations(chain, hi)

    def nonroot(t):
        return R(t) != 0

    B = root_bound(R) + 1
    if domain == ALL_REALS:
        lo = -B
    elif domain == POSITIVE_AXIS:
        lo = min(Fraction(1), B)
        while count(Fraction(0), lo) > 0 or not nonroot(lo):
            lo /= 2
    else:
        raise ValueError(f"unknown domain {domain!r}")
    hi = B
    points = [lo]

    def split(l, h):
        n = count(l, h)
        if n <= 1:
            return
        m = (l + h) / 2
        k = 2
        while not nonroot(m):
            m = l + (h - l) * Fraction(1, k + 1)
            k += 1
        split(l, m)
        points.append(m)
        split(m, h)

    if hi > lo:
        split(lo, hi)
        points.append(hi)
    return points


def nonpositive_on(R: UniPoly, domain: str = ALL_REALS) -> bool:
    """Exact decision of R <= 0 on the real line or on the open positive half-line."""
    return positive_witness(R, domain) is None


def positive_witness(R: UniPoly, domain: str = ALL_REALS) -> Fraction | None:
    """A rational point of the domain where R > 0, or None if R <= 0 throughout."""
    if R.is_zero():
        return None
    if R.degree == 0:
        if R.lead > 0:
            return Fraction(1)
        return None
    for t in _sample_points(R, domain):
        if R(t) > 0:
            return t
    return None


def bezoutian_matrix(P: UniPoly) -> list[list[Fraction]]:
    """Coefficients l_ij of (P(X)P'(Y) - P(Y)P'(X)) / (X - Y)."""
    n = P.degree
    a = [P[i] for i in range(n + 1)]
    b = [P.derivative()[j] for j in range(n)]
    L = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n + 1):
        for j in range(n):
            c = a[i] * b[j]
            if not c or i == j:
                continue
            # X^i Y^j - X^j Y^i = (X - Y) * sgn * (XY)^m * sum_s X^s Y^(h-1-s)
            lo, hi = min(i, j), max(i, j)
            sgn = 1 if i > j else -1
            h = hi - lo
            for s in range(h):
                L[lo + s][lo + h - 1 - s] += sgn * c
    return L


def symmetric_signature(M: Sequence[Sequence[Fraction]]) -> tuple[int, int]:
    """(positive, negative) inertia by exact congruence reduction."""
    A = [[Fraction(v) for v in row] for row in M]
    s = t = 0
    while A:
        n = len(A)
        piv = next((i for i in range(n) if A[i][i] != 0), None)
        if piv is not None:
            d = A[piv][piv]
            if d > 0:
                s += 1
            else:
                t += 1
            rest = [i for i in range(n) if i != piv]
            A = [[A[i][j] - A[i][piv] * A[piv][j] / d for j in rest] for i in rest]
            continue
        off = next(((i, j) for i in range(n) for j in range(i + 1, n) if A[i][j] != 0), None)
        if off is None:
            break
        i, j = off
        # zero-diagonal block [[0,c],[c,0]] has inertia (1, 1)
        s += 1
        t += 1
        c = A[i][j]
        rest = [k for k in range(n) if k not in (i, j)]
        # Schur complement with block inverse [[0, 1/c], [1/c, 0]]
        A = [[A[k][l] - (A[k][i] * A[j][l] + A[k][j] * A[i][l]) / c for l in rest] for k in rest]
    return s, t


def hermite_signature(P: UniPoly) -> tuple[int, int]:
    """Signature of the Hermite quadratic form; s - t counts distinct real roots."""
    if P.degree < 1:
        raise ValueError("hermite_signature needs degree >= 1")
    return symmetric_signature(bezoutian_matrix(P))


def _toeplitz_section(coeffs: Sequence[Fraction], size: int) -> list[list[Fraction]]:
    return [[coeffs[i - j] if 0 <= i - j < len(coeffs) else Fraction(0) for j in range(size)]
            for i in range(size)]


def _neville_tn(A: list[list[Fraction]]) -> bool:
    """Neville-elimination test for total non-negativity of a nonsingular matrix."""

    def eliminate(M):
        M = [row[:] for row in M]
        n = len(M)
        for k in range(n):
            for i in range(n - 1, k, -1):
                if M[i][k] == 0:
                    continue
                if M[i - 1][k] == 0:
                    return None  # would need a row exchange
                m = M[i][k] / M[i - 1][k]
                if m < 0:
                    return None
                M[i] = [x - m * y for x, y in zip(M[i], M[i - 1])]
        return M

    U = eliminate(A)
    if U is None or any(U[k][k] <= 0 for k in range(len(U))):
        return False
    T = eliminate([list(col) for col in zip(*A)])
    return T is not None


def minors_nonnegative(A: list[list[Fraction]], max_size: int) -> bool:
    """Brute-force check of every minor of size <= max_size (small matrices only)."""
    n = len(A)
    for k in range(1, min(max_size, n) + 1):
        for rows in combinations(range(n), k):
            for cols in combinations(range(n), k):
                if _det([[A[r][c] for c in cols] for r in rows]) < 0:
                    return False
    return True


def _det(M: list[list[Fraction]]) -> Fraction:
    M = [row[:] for row in M]
    n = len(M)
    det = Fraction(1)
    for k in range(n):
        piv = next((i for i in range(k, n) if M[i][k] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != k:
            M[k], M[piv] = M[piv], M[k]
            det = -det
        det *= M[k][k]
        for i in range(k + 1, n):
            f = M[i][k] / M[k][k]
            if f:
                M[i] = [x - f * y for x, y in zip(M[i], M[k])]
    return det


def total_positivity_truncated(coeffs: Sequence, order: int) -> bool:
    """No negative minor found in the leading (n + order) section of the Toeplitz matrix.

    False certifies that the polynomial is not real-rooted. The section is
    nonsingular (a0 > 0), so Neville elimination decides total non-negativity
    of the whole section, which covers every minor of size <= order.
    """
    cs = [_exact(c) for c in coeffs]
    while len(cs) > 1 and cs[-1] == 0:
        cs.pop()
    if any(c < 0 for c in cs):
        raise ValueError("theorem requires non-negative coefficients")
    if not cs or cs[0] == 0:
        raise ValueError("total positivity test requires a0 != 0")
    size = len(cs) - 1 + order
    return _neville_tn(_toeplitz_section(cs, size))


def log_concave(coeffs: Sequence, weighted: bool = False) -> bool:
    cs = [_exact(c) for c in coeffs]
    while len(cs) > 1 and cs[-1] == 0:
        cs.pop()
    n = len(cs) - 1
    if weighted:
        cs = [c / comb(n, k) for k, c in enumerate(cs)]
    return all(cs[k - 1] * cs[k + 1] <= cs[k] ** 2 for k in range(1, n))


def kurtz(coeffs: Sequence) -> bool:
    """Strict Kurtz inequalities; only meaningful for strictly positive coefficients."""
    cs = [_exact(c) for c in coeffs]
    while len(cs) > 1 and cs[-1] == 0:
        cs.pop()
    if any(c <= 0 for c in cs):
        return False
    return all(4 * cs[k - 1] * cs[k + 1] < cs[k] ** 2 for k in range(1, len(cs) - 1))


@dataclass(frozen=True)
class CriterionReport:
    polynomial: str
    degree: int
    p1_exact: bool
    p2_holds: bool
    p3_holds: bool
    sturm_count: int
    hermite_real_count: int
    hermite_s: int
    hermite_t: int
    log_concave: bool | None
    log_concave_weighted: bool | None
    kurtz: bool | None
    totally_positive_truncated: bool | None
    tp_order: int | None

    def as_dict(self) -> dict:
        return asdict(self)


def battery(P: UniPoly, tp_order: int | None = None) -> CriterionReport:
    """Run every criterion on P and verify their implication lattice.

    Coefficient-sign criteria (log-concavity, Kurtz, total positivity) are
    reported as None when P has a negative coefficient. Total positivity is
    applied after removing the X^k factor so that a0 != 0.
    """
    if P.degree < 1:
        raise ValueError("battery needs degree >= 1")
    n = P.degree
    form = p2_form(P)
    p1 = is_real_rooted(P)
    p2 = nonpositive_on(form, ALL_REALS)
    p3 = nonpositive_on(form, POSITIVE_AXIS)
    sturm = sturm_real_root_count(P)
    s, t = hermite_signature(P)
    nonneg = all(c >= 0 for c in P.coeffs)
    lc = lcw = kz = tp = None
    order = None
    if nonneg:
        lc = log_concave(P.coeffs)
        lcw = log_concave(P.coeffs, weighted=True)
        kz = kurtz(P.coeffs)
        stripped = list(P.coeffs)
        while stripped[0] == 0:
            stripped.pop(0)
        order = (len(stripped) - 1) + 2 if tp_order is None else tp_order
        tp = total_positivity_truncated(stripped, order)
    report = CriterionReport(
        polynomial=format_poly(P), degree=n, p1_exact=p1, p2_holds=p2, p3_holds=p3,
        sturm_count=sturm, hermite_real_count=s - t, hermite_s=s, hermite_t=t,
        log_concave=lc, log_concave_weighted=lcw, kurtz=kz,
        totally_positive_truncated=tp, tp_order=order,
    )
    _check_lattice(P, report)
    return report


def _check_lattice(P: UniPoly, r: CriterionReport) -> None:
    problems = []
    if r.p1_exact and not r.p2_holds:
        problems.append("p1 => p2")
    if r.p2_holds and not r.p3_holds:
        problems.append("p2 => p3")
    if r.hermite_real_count != r.sturm_count:
        problems.append("hermite count == sturm count")
    if r.kurtz and not r.p1_exact:
        problems.append("kurtz => p1")
    if r.log_concave is not None and r.p1_exact and not r.log_concave:
        problems.append("p1 => log-concave")
    if r.log_concave_weighted is not None and r.p1_exact and not r.log_concave_weighted:
        problems.append("p1 => weighted log-concave")
    if r.totally_positive_truncated is False and r.p1_exact:
        problems.append("not TP => not p1")
    if r.degree == 2 and not (r.p1_exact == r.p2_holds == r.p3_holds):
        problems.append("deg 2: p1 <=> p2 <=> p3")
    if r.degree == 3 and r.p1_exact != r.p2_holds:
        problems.append("deg 3: p1 <=> p2")
    if problems:
        raise CriteriaInconsistency(
            f"criteria lattice violated for P = {format_poly(P)}: {problems}; report = {r}")
