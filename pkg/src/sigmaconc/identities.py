"""Exact identity suites over random rational instances.

Every check is an equality of rationals or of exact polynomials, so a
failure is a genuine bug (or a genuine error in a stated identity), never
rounding noise.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .hyperb import pi_p_closed, pi_p_direct
from .polyexact import convolution_sum, discriminant_small, from_roots, reverse
from .rootcrit import concavity_form
from .symfun import sigma_all, shift_expand, shift_expand_by_derivative


def random_rationals(rng, count: int, lo: int = -10, hi: int = 10, max_den: int = 100):
    out = []
    for _ in range(count):
        q = int(rng.integers(1, max_den + 1))
        out.append(Fraction(int(rng.integers(lo * q, hi * q + 1)), q))
    return out


@dataclass
class SuiteResult:
    checked: int = 0
    failures: list = field(default_factory=list)

    def as_dict(self) -> dict:
        return {"checked": self.checked, "failures": self.failures}


def _strs(xs):
    return [str(v) for v in xs]


def merge_suite(rng, instances: int, max_n: int) -> SuiteResult:
    res = SuiteResult()
    for _ in range(instances):
        l = int(rng.integers(0, max_n + 1))
        m = int(rng.integers(0, max_n + 1))
        lam, mu = random_rationals(rng, l), random_rationals(rng, m)
        el, em, eall = sigma_all(lam), sigma_all(mu), sigma_all(lam + mu)
        for k in range(l + m + 1):
            rhs = sum((el[k - j] * em[j] for j in range(k + 1) if k - j <= l and j <= m),
                      Fraction(0))
            res.checked += 1
            if eall[k] != rhs:
                res.failures.append({"lambda": _strs(lam), "mu": _strs(mu), "k": k})
    return res


def shift_suite(rng, instances: int, max_n: int) -> SuiteResult:
    res = SuiteResult()
    for _ in range(instances):
        l = int(rng.integers(1, max_n + 1))
        lam = random_rationals(rng, l)
        for k in range(l + 1):
            res.checked += 1
            if shift_expand(k, lam) != shift_expand_by_derivative(k, lam):
                res.failures.append({"lambda": _strs(lam), "k": k})
    return res


def leave_one_out_suite(rng, instances: int, max_n: int) -> SuiteResult:
    """sum_i sigma_k(x with x_i removed) == (n - k) sigma_k(x)."""
    res = SuiteResult()
    for _ in range(instances):
        n = int(rng.integers(1, max_n + 1))
        x = random_rationals(rng, n)
        e = sigma_all(x)
        drops = [sigma_all(x[:i] + x[i + 1:]) for i in range(n)]
        for k in range(n):
            res.checked += 1
            if sum((d[k] for d in drops), Fraction(0)) != (n - k) * e[k]:
                res.failures.append({"x": _strs(x), "k": k})
    return res


def pi_p_suite(rng, instances: int, max_p: int) -> SuiteResult:
    res = SuiteResult()
    for p in range(1, max_p + 1):
        for _ in range(instances):
            mu, lam = random_rationals(rng, p), random_rationals(rng, p)
            res.checked += 1
            if pi_p_closed(mu, lam) != pi_p_direct(mu, lam):
                res.failures.append({"mu": _strs(mu), "lambda": _strs(lam), "p": p})
    return res


def discriminant_suite(rng, instances: int) -> SuiteResult:
    """p = 2: disc(P Q'' + P' Q' + P'' Q) == 16 [(l1 - l2)^2 + (m1 - m2)^2]."""
    res = SuiteResult()
    for _ in range(instances):
        lam, mu = random_rationals(rng, 2), random_rationals(rng, 2)
        S = convolution_sum(from_roots([-v for v in lam]), from_roots([-v for v in mu]))
        expected = 16 * ((lam[0] - lam[1]) ** 2 + (mu[0] - mu[1]) ** 2)
        res.checked += 1
        if discriminant_small(S) != expected:
            res.failures.append({"lambda": _strs(lam), "mu": _strs(mu),
                                 "disc": str(discriminant_small(S)), "expected": str(expected)})
    return res


def reversal_suite(rng, instances: int, max_n: int) -> SuiteResult:
    """The n-concavity form of the reversed polynomial is the reversed form."""
    res = SuiteResult()
    for _ in range(instances):
        n = int(rng.integers(2, max(3, max_n + 1)))
        P = from_roots(random_rationals(rng, n))
        R = concavity_form(P, n)
        res.checked += 1
        if concavity_form(reverse(P, n), n) != reverse(R, 2 * n - 4):
            res.failures.append({"P": _strs(P.coeffs), "n": n})
    return res


@dataclass
class IdentityReport:
    seed: int
    instances: int
    max_p: int
    max_n: int
    suites: dict

    @property
    def failures(self) -> int:
        return sum(len(s.failures) for s in self.suites.values())

    def as_dict(self) -> dict:
        return {"seed": self.seed, "instances": self.instances, "max_p": self.max_p,
                "max_n": self.max_n, "failures": self.failures,
                "suites": {k: v.as_dict() for k, v in self.suites.items()}}


def run_identity_suite(max_p: int = 6, max_n: int = 6, instances: int = 100,
                       seed: int = 0) -> IdentityReport:
    rng = np.random.default_rng(seed)
    suites = {
        "merge": merge_suite(rng, instances, max_n),
        "shift_two_route": shift_suite(rng, instances, max_n),
        "leave_one_out": leave_one_out_suite(rng, instances, max_n),
        "pi_p": pi_p_suite(rng, instances, max_p),
        "discriminant_p2": discriminant_suite(rng, instances),
        "reversal": reversal_suite(rng, instances, max_n),
    }
    return IdentityReport(seed, instances, max_p, max_n, suites)
