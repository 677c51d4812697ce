"""Certifying 1/p-concavity of f_a = sum a_k sigma_k on the positive orthant.

A positive function u is mu-concave iff u H(u) + (mu - 1) D(u) D(u)^T is
negative semidefinite; :func:`concavity_matrix` builds that matrix. Sampling
scans run in floats and every reported violation is re-established in exact
rational arithmetic at a rationalised point and direction, so a
counterexample is always a certificate. "no-violation-found" is only ever
evidence.
"""

from __future__ import annotations

import logging
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

import numpy as np

from .polyexact import _exact, is_real_rooted
from .rootcrit import POSITIVE_AXIS, concavity_form, positive_witness
from .symfun import (
    EXACT,
    CoeffVec,
    _esp_batch,
    bar_f,
    f_derivatives,
    f_derivatives_batch,
    mode_of,
    sigma_all,
)

log = logging.getLogger(__name__)

CERTIFIED = "certified-concave"
COUNTEREXAMPLE = "counterexample"
NO_VIOLATION = "no-violation-found"

SCAN_TOL = 1e-9
FD_TOL = 1e-6
MAX_DENOMINATOR = 10**6


class SamplingBudgetWarning(UserWarning):
    pass


@dataclass
class Witness:
    point: list[Fraction]
    direction: list[Fraction]
    exact_value: Fraction

    def as_dict(self) -> dict:
        return {"point": [str(v) for v in self.point],
                "direction": [str(v) for v in self.direction],
                "exact_value_as_string": str(self.exact_value)}


@dataclass
class ConcavityVerdict:
    status: str
    witness: Witness | None = None
    samples_used: int = 0
    tolerance: float = SCAN_TOL
    seed: int | None = None
    discarded: int = 0

    def as_dict(self) -> dict:
        return {"status": self.status,
                "witness": self.witness.as_dict() if self.witness else None,
                "samples_used": self.samples_used,
                "tolerance": self.tolerance,
                "seed": self.seed,
                "discarded": self.discarded}


def concavity_matrix(a, x, mu):
    """f H + (mu - 1) D D^T at x; sign-equivalent to the Hessian of f^mu."""
    d = f_derivatives(a, x)
    f, D, H = d.value, d.gradient, d.hessian
    if f <= 0:
        raise ValueError("outside positivity domain: f(x) <= 0")
    n = len(D)
    if mode_of(list(x)) == EXACT:
        mu = _exact(mu) if not isinstance(mu, Fraction) else mu
        return [[f * H[i][j] + (mu - 1) * D[i] * D[j] for j in range(n)] for i in range(n)]
    Hm = np.array(H, dtype=float)
    Dv = np.array(D, dtype=float)
    return f * Hm + (float(mu) - 1) * np.outer(Dv, Dv)


@dataclass
class NSDResult:
    nsd: bool
    lambda_max: float
    scale: float
    direction: np.ndarray | None = None


def nsd_verdict(M, tol: float = SCAN_TOL) -> NSDResult:
    """Negative-semidefiniteness test by symmetric eigendecomposition.

    NSD iff the largest eigenvalue is at most tol * max(1, max |M_ij|). On
    failure the corresponding unit eigenvector is returned.
    """
    A = np.array([[float(v) for v in row] for row in M], dtype=float)
    if A.size == 0:
        return NSDResult(True, 0.0, 1.0)
    scale = max(1.0, float(np.max(np.abs(A))))
    if np.max(np.abs(A - A.T)) > 1e-12 * scale:
        raise ValueError("nsd_verdict needs a symmetric matrix")
    w, V = np.linalg.eigh((A + A.T) / 2)
    lam = float(w[-1])
    if lam <= tol * scale:
        return NSDResult(True, lam, scale)
    return NSDResult(False, lam, scale, V[:, -1])


def rationalize(v, max_den: int = MAX_DENOMINATOR) -> list[Fraction]:
    return [Fraction(float(t)).limit_denominator(max_den) for t in v]


def quadratic_form(M, v) -> Fraction:
    n = len(v)
    return sum((v[i] * M[i][j] * v[j] for i in range(n) for j in range(n)), Fraction(0))


def exact_violation(a, x, direction, p: int) -> Witness | None:
    """Re-check a float violation exactly; returns the witness if v^T M v > 0."""
    xq = rationalize(x)
    if any(t <= 0 for t in xq):
        return None
    vq = rationalize(direction)
    if not any(vq):
        return None
    M = concavity_matrix(a, xq, Fraction(1, p))
    val = quadratic_form(M, vq)
    if val > 0:
        return Witness(xq, vq, val)
    return None


# -- p = 2 certificate ----------------------------------------------------------


@dataclass
class P2Certificate:
    status: str  # concave | not-concave | boundary
    margin: Fraction

    def as_dict(self) -> dict:
        return {"status": self.status, "margin": str(self.margin)}


def p2_certificate(a, n: int) -> P2Certificate:
    """Exact verdict for sqrt(a0 + a1 s1 + a2 s2) on the positive orthant."""
    a = CoeffVec.of(a)
    if a.p != 2:
        raise ValueError("p2_certificate needs a = (a0, a1, a2)")
    if any(c < 0 for c in a):
        raise ValueError("theorem requires non-negative coefficients")
    if n < 2:
        raise ValueError("p2_certificate needs n >= 2")
    a0, a1, a2 = a.a
    margin = n * a1 * a1 - 2 * (n - 1) * a0 * a2
    if margin > 0:
        return P2Certificate("concave", margin)
    if margin == 0:
        return P2Certificate("boundary", margin)
    return P2Certificate("not-concave", margin)


# -- closed-form determinants ----------------------------------------------------


def p3_shift_vector(a, x) -> list:
    """y with H_ij = y_i + y_j off the diagonal, for p = 3."""
    a = CoeffVec.of(a)
    s1 = sum(x, Fraction(0)) if mode_of(list(x)) == EXACT else float(sum(x))
    a2, a3 = a[2], a[3]
    if mode_of(list(x)) != EXACT:
        a2, a3 = float(a2), float(a3)
    return [(a2 + a3 * s1) / 2 - a3 * xi for xi in x]


def _det_p3(a: CoeffVec, x: list) -> Fraction:
    if a.p != 3:
        raise ValueError("kind=p3 needs a = (a0, a1, a2, a3)")
    if a[3] == 0:
        raise ValueError("a3 = 0: reduce p")
    n = len(x)
    y = p3_shift_vector(a, x)
    if any(v == 0 for v in y):
        raise ValueError("formula singular at this point (some y_i = 0)")
    d = f_derivatives(a, x)
    f, D = d.value, d.gradient
    ey = sigma_all(y)
    s1y, sn1y, sny = ey[1], ey[n - 1], ey[n]
    if s1y == 0:
        raise ValueError("formula singular at this point (sigma_1(y) = 0)")
    sumD = sum(D, Fraction(0))
    sum_f_over_y = sum((fi / yi for fi, yi in zip(D, y)), Fraction(0))
    sum_f2_over_y = sum((fi * fi / yi for fi, yi in zip(D, y)), Fraction(0))
    first = sny / s1y * (s1y * sum_f_over_y - (n - 2) * sumD) ** 2
    second = ((n - 2) ** 2 * sny - s1y * sn1y) * (sum_f2_over_y - sumD**2 / s1y + 3 * f)
    return -Fraction(1, 6) * (-2 * f) ** (n - 1) * (first + second)


def _det_sparse_n(a: CoeffVec, x: list) -> Fraction:
    n = len(x)
    if n < 3:
        raise ValueError("kind=sparse-n needs n >= 3")
    if a.p != n or any(a[k] != 0 for k in range(2, n)):
        raise ValueError("kind=sparse-n needs a = (a0, a1, 0, ..., 0, a_n)")
    if any(v == 0 for v in x):
        raise ValueError("formula singular at this point (some x_i = 0)")
    a1, an = a[1], a[n]
    sn = sigma_all(x)[n]
    f = a[0] + a1 * sum(x, Fraction(0)) + an * sn
    z = [a1 * xi + an * sn for xi in x]
    bracket = sum(z, Fraction(0)) ** 2 - (n - 1) * sum((zi * zi for zi in z), Fraction(0)) \
        - n * f * an * sn
    return (-1) ** n * bracket / sn**2


def closedform_det(a, x, kind: str) -> Fraction:
    """Closed form sign-equivalent to det H(f^(1/p)) at x, exact arithmetic.

    kind='p3' for a = (a0, a1, a2, a3); kind='sparse-n' for a = (a0, a1, 0, ..., 0, a_n).
    """
    a = CoeffVec.of(a)
    xs = [_exact(v) for v in x]
    if kind == "p3":
        return _det_p3(a, xs)
    if kind == "sparse-n":
        return _det_sparse_n(a, xs)
    raise ValueError(f"unknown kind {kind!r}")


def exact_concavity_det(a, x, p: int) -> Fraction:
    """det(f H + (1/p - 1) D D^T) at a rational point; same sign as det H(f^(1/p))."""
    from .rootcrit import _det

    M = concavity_matrix(a, [_exact(v) for v in x], Fraction(1, p))
    return _det(M)


# -- finite differences -----------------------------------------------------------


def fd_hessian(func: Callable[[np.ndarray], float], x, rel_step: float = 1e-3) -> np.ndarray:
    """Central-difference Hessian with one Richardson extrapolation level."""
    x = np.asarray(x, dtype=float)
    n = len(x)
    h0 = rel_step * np.where(x != 0, np.abs(x), 1.0)

    def hess(h):
        H = np.zeros((n, n))
        f0 = func(x)
        for i in range(n):
            ei = np.zeros(n)
            ei[i] = h[i]
            H[i, i] = (func(x + ei) - 2 * f0 + func(x - ei)) / h[i] ** 2
            for j in range(i + 1, n):
                ej = np.zeros(n)
                ej[j] = h[j]
                v = (func(x + ei + ej) - func(x + ei - ej) - func(x - ei + ej)
                     + func(x - ei - ej)) / (4 * h[i] * h[j])
                H[i, j] = H[j, i] = v
        return H

    return (4 * hess(h0 / 2) - hess(h0)) / 3


def power_function(a, p: int) -> Callable[[np.ndarray], float]:
    a = CoeffVec.of(a)
    c = a.floats()

    def g(x):
        e = _esp_batch(np.asarray(x, dtype=float)[None, :], len(c) - 1)[0]
        return float(e @ c) ** (1.0 / p)

    return g


def fd_det(a, x, p: int) -> tuple[float, float]:
    """Finite-difference det H(f^(1/p)) and its Hadamard scale (product of row norms)."""
    H = fd_hessian(power_function(a, p), x)
    return float(np.linalg.det(H)), float(np.prod(np.linalg.norm(H, axis=1)))


DEGENERACY_MARGIN = 1e-8


@dataclass
class DetCheck:
    kind: str
    a: tuple
    n: int
    points: int
    seed: int
    agree: int = 0
    disagree: list = field(default_factory=list)
    degenerate: int = 0
    singular: int = 0

    def as_dict(self) -> dict:
        return {"kind": self.kind, "a": [str(c) for c in self.a], "n": self.n,
                "points": self.points, "seed": self.seed, "agree": self.agree,
                "disagree": self.disagree, "degenerate": self.degenerate,
                "singular": self.singular}


def _sign(v) -> int:
    return (v > 0) - (v < 0)


def determinant_check(a, kind: str, n: int | None = None, points: int = 100,
                      seed: int = 0) -> DetCheck:
    """Compare the sign of closedform_det with a finite-difference det H(f^(1/p)).

    Points are rational, log-uniform in [0.1, 10]. A finite-difference value
    below DEGENERACY_MARGIN times its Hadamard scale is counted as degenerate.
    """
    a = CoeffVec.of(a)
    if kind == "sparse-n":
        n = a.p
        if n < 3 or any(a[k] != 0 for k in range(2, n)) or a[n] == 0:
            raise ValueError("kind=sparse-n needs a = (a0, a1, 0, ..., 0, a_n), n >= 3")
    elif kind == "p3":
        if n is None:
            raise ValueError("kind=p3 needs n")
        if a.p != 3 or a[3] == 0:
            raise ValueError("kind=p3 needs a = (a0, a1, a2, a3) with a3 != 0")
    else:
        raise ValueError(f"unknown kind {kind!r}")
    if any(c < 0 for c in a):
        raise ValueError("determinant check needs non-negative coefficients")
    rng = np.random.default_rng(seed)
    out = DetCheck(kind, a.a, n, points, seed)
    for _ in range(points):
        x = [Fraction(float(v)).limit_denominator(1000) for v in 10.0 ** rng.uniform(-1, 1, n)]
        try:
            cf = closedform_det(a, x, kind)
        except ValueError:
            out.singular += 1
            continue
        fd, scale = fd_det(a, [float(v) for v in x], a.p)
        if abs(fd) <= DEGENERACY_MARGIN * scale:
            out.degenerate += 1
        elif _sign(cf) == _sign(fd):
            out.agree += 1
        else:
            out.disagree.append({"x": [str(v) for v in x], "closedform": str(cf), "fd": fd})
    return out


# -- sampling --------------------------------------------------------------------


def sample_gamma(n: int, k: int, count: int, seed: int, budget_factor: int = 1000) -> np.ndarray:
    """Deterministic sample of points of the cone {sigma_0..sigma_k > 0}.

    Log-uniform positive coordinates in [1e-2, 1e2] always lie in the cone.
    For k < n half of the points are sign-mixed draws kept by rejection.
    """
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= n, got k={k}, n={n}")
    rng = np.random.default_rng(seed)
    n_mixed = count // 2 if k < n else 0
    pos = 10.0 ** rng.uniform(-2, 2, size=(count - n_mixed, n))
    mixed = []
    attempts = 0
    while len(mixed) < n_mixed and attempts < budget_factor * max(n_mixed, 1):
        batch = 10.0 ** rng.uniform(-2, 2, size=(256, n)) * rng.choice([-1.0, 1.0], size=(256, n))
        attempts += 256
        e = _esp_batch(batch, k)
        ok = np.all(e > 0, axis=1)
        mixed.extend(batch[ok][: n_mixed - len(mixed)])
    if len(mixed) < n_mixed:
        warnings.warn(f"rejection budget exhausted: {len(mixed)}/{n_mixed} sign-mixed points",
                      SamplingBudgetWarning, stacklevel=2)
    pts = np.vstack([pos] + ([np.array(mixed)] if mixed else []))
    e = _esp_batch(pts, k)
    assert np.all(e > 0), "sampled point outside the cone"
    return pts


def _scan_chunk(a, X, p, tol):
    value, grad, hess = f_derivatives_batch(a, X)
    M = value[:, None, None] * hess + (1.0 / p - 1.0) * grad[:, :, None] * grad[:, None, :]
    w, V = np.linalg.eigh(M)
    scale = np.maximum(1.0, np.max(np.abs(M), axis=(1, 2)))
    flagged = np.nonzero(w[:, -1] > tol * scale)[0]
    return value, flagged, V[:, :, -1]


def concavity_scan(a, n: int, samples: int = 1000, seed: int = 0, p: int | None = None,
                   tol: float = SCAN_TOL, workers: int = 1) -> ConcavityVerdict:
    """Sample the positive orthant looking for an exact violation of 1/p-concavity.

    The exponent uses the effective degree of a (last nonzero coefficient).
    Flags that fail the exact re-check are counted in ``discarded``.
    """
    a = CoeffVec.of(a)
    pe = a.effective_p
    if p is not None and p < pe:
        raise ValueError(f"p={p} below the effective degree {pe}")
    if pe > n:
        raise ValueError(f"sigma_k vanishes identically for k > n={n}; reduce p")
    if pe == 0:
        return ConcavityVerdict(NO_VIOLATION, None, 0, tol, seed)
    X = sample_gamma(n, n, samples, seed)
    chunks = np.array_split(X, max(1, workers))
    if workers > 1:
        with ThreadPoolExecutor(workers) as ex:
            results = list(ex.map(lambda C: _scan_chunk(a, C, pe, tol), chunks))
    else:
        results = [_scan_chunk(a, C, pe, tol) for C in chunks]
    discarded = 0
    for C, (value, flagged, vecs) in zip(chunks, results):
        if np.any(value <= 0):
            raise ValueError("f_a is not positive on the sampled points")
        for i in flagged:
            wit = exact_violation(a, C[i], vecs[i], pe)
            if wit is not None:
                return ConcavityVerdict(COUNTEREXAMPLE, wit, samples, tol, seed, discarded)
            discarded += 1
    return ConcavityVerdict(NO_VIOLATION, None, samples, tol, seed, discarded)


# -- set membership ---------------------------------------------------------------


@dataclass
class Membership:
    in_Xi: bool
    in_X: bool
    K_scan: ConcavityVerdict
    flags: list[str] = field(default_factory=list)
    diagonal_witness: Fraction | None = None

    def as_dict(self) -> dict:
        return {"in_Xi": self.in_Xi, "in_X": self.in_X, "K_scan": self.K_scan.as_dict(),
                "flags": self.flags,
                "diagonal_witness": None if self.diagonal_witness is None
                else str(self.diagonal_witness)}


def in_X(a, n: int) -> tuple[bool, Fraction | None]:
    """Exact test of concavity of bar_f^(1/p) on t > 0; returns a t where it fails."""
    a = CoeffVec.of(a)
    pe = a.effective_p
    if pe == 0:
        return True, None
    P = bar_f(a, n)
    t = positive_witness(concavity_form(P, pe), POSITIVE_AXIS)
    return t is None, t


def in_Xi(a, n: int) -> bool:
    return is_real_rooted(bar_f(CoeffVec.of(a), n))


def set_membership(a, n: int, samples: int = 1000, seed: int = 0) -> Membership:
    a = CoeffVec.of(a)
    if any(c < 0 for c in a):
        raise ValueError("set membership is defined for non-negative coefficients")
    xi = in_Xi(a, n)
    x_ok, t = in_X(a, n)
    scan = concavity_scan(a, n, samples=samples, seed=seed)
    flags = []
    if xi and scan.status == COUNTEREXAMPLE:
        flags.append("refutes-conjecture-2")
    if x_ok and scan.status == COUNTEREXAMPLE:
        flags.append("refutes-conjecture-1")
    if xi and not x_ok:
        flags.append("inconsistent: real-rooted but not diagonally concave")
    return Membership(xi, x_ok, scan, flags, t)


# -- known theorems as numerical invariants ---------------------------------------


def marcus_lopes_check(k: int, l: int, x, tol: float = FD_TOL) -> bool:
    """Finite-difference NSD check of (sigma_{k+l}/sigma_k)^(1/l), or sigma_k^(1/k) when l = 0."""
    x = np.asarray([float(v) for v in x])
    n = len(x)
    if k + l > n or k < 0 or l < 0 or (l == 0 and k == 0):
        raise ValueError("need k + l <= n with (k, l) != (0, 0)")
    top = k + l

    def g(y):
        e = _esp_batch(np.asarray(y)[None, :], top)[0]
        if l == 0:
            return e[k] ** (1.0 / k)
        return (e[top] / e[k]) ** (1.0 / l)

    e = _esp_batch(x[None, :], top)[0]
    if e[k] <= 0:
        raise ValueError("denominator sigma_k(x) <= 0")
    H = fd_hessian(g, x)
    res = nsd_verdict((H + H.T) / 2, tol)
    if not res.nsd:
        log.warning("numerical red flag: proven concavity failed at k=%d l=%d x=%s", k, l, x)
    return res.nsd
