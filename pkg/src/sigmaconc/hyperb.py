"""Hyperbolic polynomials, semi-symmetric polynomials and the conjecture harness.

Each conjecture trial draws its inputs from a generator seeded by
``SeedSequence(seed, spawn_key=(trial,))``, so a trial's outcome depends only
on the master seed and its index, never on how trials are scheduled.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial
from typing import Callable, Sequence

import numpy as np

from .concave import COUNTEREXAMPLE, concavity_matrix, concavity_scan, in_X, quadratic_form
from .polyexact import (
    UniPoly,
    _exact,
    complex_roots,
    convolution_sum,
    format_poly,
    from_roots,
    is_real_rooted,
    squarefree_part,
    sturm_real_root_count,
)
from .rootcrit import ALL_REALS, nonpositive_on, p2_form
from .symfun import CoeffVec, _coerce, shift_expand, sigma_all


# -- homogeneous polynomials --------------------------------------------------


@dataclass(frozen=True)
class HomogeneousSpec:
    """A homogeneous polynomial on R^dim given by an exact evaluator."""

    kind: str
    dim: int
    degree: int
    evaluator: Callable[[Sequence[Fraction]], Fraction]
    params: tuple = ()

    def __call__(self, x) -> Fraction:
        if len(x) != self.dim:
            raise ValueError(f"expected a point of dimension {self.dim}")
        return self.evaluator([_exact(v) for v in x])


def sigma_spec(k: int, n: int) -> HomogeneousSpec:
    if not 0 <= k <= n:
        raise ValueError("need 0 <= k <= n")
    return HomogeneousSpec("sigma_k", n, k, lambda x: sigma_all(x)[k], (k, n))


def s_np_spec(n: int, p: int) -> HomogeneousSpec:
    """s_{n,p} as a polynomial on R^(n+p): first n coordinates x, last p coordinates lambda."""
    if p > n:
        raise ValueError("s_{n,p} needs p <= n")
    return HomogeneousSpec("s_np", n + p, p, lambda z: s_np_eval(z[:n], z[n:]), (n, p))


def custom_spec(func, dim: int, degree: int) -> HomogeneousSpec:
    return HomogeneousSpec("custom", dim, degree, func)


def s_np_eval(x, lam):
    """sum_k sigma_k(x) sigma_{p-k}(lam) / C(n, k) with p = len(lam)."""
    n, p = len(x), len(lam)
    if p > n:
        raise ValueError("s_{n,p} needs p <= n")
    ex, el = sigma_all(x), sigma_all(lam)
    return sum((ex[k] * el[p - k] / comb(n, k) for k in range(p + 1)), Fraction(0))


def interpolate(ts: Sequence[Fraction], vals: Sequence[Fraction]) -> UniPoly:
    """Exact Lagrange interpolation (solves the Vandermonde system)."""
    out = UniPoly()
    for i, (ti, vi) in enumerate(zip(ts, vals)):
        if not vi:
            continue
        basis = UniPoly((1,))
        den = Fraction(1)
        for j, tj in enumerate(ts):
            if j != i:
                basis = basis * UniPoly((-tj, 1))
                den *= ti - tj
        out = out + basis * (vi / den)
    return out


def restrict_to_line(spec: HomogeneousSpec, x, v) -> UniPoly:
    """The univariate polynomial t -> spec(x + t v)."""
    x = [_exact(c) for c in x]
    v = [_exact(c) for c in v]
    if len(x) != spec.dim or len(v) != spec.dim:
        raise ValueError("dimension mismatch")
    if spec.kind == "sigma_k" and all(c == 1 for c in v):
        return shift_expand(spec.params[0], x)
    ts = [Fraction(t) for t in range(spec.degree + 1)]
    vals = [spec([xi + t * vi for xi, vi in zip(x, v)]) for t in ts]
    return interpolate(ts, vals)


@dataclass
class ProbeVerdict:
    status: str  # no-violation | not-hyperbolic
    trials: int
    witness: list[Fraction] | None = None
    reason: str = ""

    def as_dict(self) -> dict:
        return {"status": self.status, "trials": self.trials,
                "witness": None if self.witness is None else [str(c) for c in self.witness],
                "reason": self.reason}


def _rational_uniform(rng, lo: int, hi: int, max_den: int = 100) -> Fraction:
    q = int(rng.integers(1, max_den + 1))
    return Fraction(int(rng.integers(lo * q, hi * q + 1)), q)


def hyperbolicity_probe(spec: HomogeneousSpec, v, trials: int = 1000, seed: int = 0,
                        derivatives: int = 0) -> ProbeVerdict:
    """Random search for a line parallel to v on which spec is not real-rooted.

    ``derivatives`` > 0 probes the directional derivative sum_i v_i d_i applied
    that many times, which equals differentiating the line restriction.
    """
    v = [_exact(c) for c in v]
    if spec(v) <= 0:
        return ProbeVerdict("not-hyperbolic", 0, None, "spec(v) <= 0")
    rng = np.random.default_rng(seed)
    for t in range(trials):
        x = [_rational_uniform(rng, -10, 10) for _ in range(spec.dim)]
        P = restrict_to_line(spec, x, v).derivative(derivatives)
        if P.is_zero():
            continue
        if not is_real_rooted(P):
            return ProbeVerdict("not-hyperbolic", t + 1, x, "restriction not real-rooted")
    return ProbeVerdict("no-violation", trials)


# -- pi_p ---------------------------------------------------------------------


def pi_p_closed(mu, lam) -> UniPoly:
    """Closed double sum for s_{p,p}(mu + X 1, lam + X 1)."""
    mu, lam = _coerce(mu), _coerce(lam)
    p = len(mu)
    if len(lam) != p:
        raise ValueError("mu and lambda must have the same length")
    em, el = sigma_all(mu), sigma_all(lam)
    coeffs = []
    for l in range(p + 1):
        c = sum((Fraction(factorial(p - i) * factorial(l + i), factorial(p) * factorial(l))
                 * em[p - l - i] * el[i] for i in range(p - l + 1)), Fraction(0))
        coeffs.append(c * 2**l)
    return UniPoly(coeffs)


def pi_p_direct(mu, lam) -> UniPoly:
    """(1/p!) sum_k P^(k) Q^(p-k) with P, Q the monic polynomials with roots -mu, -lam."""
    mu, lam = _coerce(mu), _coerce(lam)
    p = len(mu)
    if len(lam) != p:
        raise ValueError("mu and lambda must have the same length")
    P = from_roots([-m for m in mu])
    Q = from_roots([-l for l in lam])
    return convolution_sum(P, Q) / factorial(p)


def pascinde_lift(lam, p: int, a_p=1) -> CoeffVec:
    """a_k = a_p sigma_{p-k}(lam), so that f_a(x) = a_p sigma_p(lam, x)."""
    lam = [_exact(c) for c in lam]
    a_p = _exact(a_p)
    if any(c < 0 for c in lam):
        raise ValueError("lambda must be non-negative")
    if a_p <= 0:
        raise ValueError("a_p must be positive")
    if len(lam) < p:
        raise ValueError("lambda needs dimension m + p >= p")
    e = sigma_all(lam)
    return CoeffVec(tuple(a_p * e[p - k] for k in range(p + 1)))


def diagonal_lift(lam, n: int) -> CoeffVec:
    """a with C(n,k) a_k / (C(n,p) a_p) = sigma_{p-k}(lam), a_p = 1 (bar f real-rooted)."""
    lam = [_exact(c) for c in lam]
    p = len(lam)
    if p > n:
        raise ValueError("need p <= n")
    e = sigma_all(lam)
    return CoeffVec(tuple(Fraction(comb(n, p), comb(n, k)) * e[p - k] for k in range(p + 1)))


# -- conjecture harness ----------------------------------------------------------


@dataclass
class TrialReport:
    conjecture: int
    p: int | None
    n: int | None
    trials: int
    seed: int
    counterexamples: list[dict] = field(default_factory=list)
    suspected: int = 0
    stats: dict = field(default_factory=dict)
    elapsed_ms: float | None = None

    def as_dict(self) -> dict:
        return {"conjecture": self.conjecture, "p": self.p, "n": self.n, "trials": self.trials,
                "seed": self.seed, "counterexamples": self.counterexamples,
                "suspected": self.suspected, "stats": self.stats,
                "elapsed_ms": self.elapsed_ms}


@dataclass(frozen=True)
class TrialParams:
    p: int = 2
    n: int = 3
    R: int = 10
    samples: int = 500
    complex_prob: float = 0.5
    scan_tol: float = 1e-9


def trial_rng(seed: int, index: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(index,)))


def random_roots(rng, p: int, R: int) -> list[Fraction]:
    return [_rational_uniform(rng, -R, R) for _ in range(p)]


def _strs(xs) -> list[str]:
    return [str(v) for v in xs]


def _trial_conj4(rng, prm: TrialParams):
    mu = random_roots(rng, prm.p, prm.R)
    lam = random_roots(rng, prm.p, prm.R)
    P = pi_p_direct(mu, lam)
    if is_real_rooted(P):
        return None, 0
    return {"inputs": {"mu": _strs(mu), "lambda": _strs(lam)},
            "failed_check": "pi_p(mu, lambda) is real-rooted",
            "exact_values": {"pi_p": format_poly(P)}}, 0


def _random_complex_rooted(rng, p: int, R: int, complex_prob: float):
    """Real polynomial of degree p, monic, with roots drawn as reals or conjugate pairs."""
    roots: list[tuple[Fraction, Fraction]] = []
    while len(roots) < p:
        if p - len(roots) >= 2 and rng.uniform() < complex_prob:
            re = _rational_uniform(rng, -R, R)
            im = _rational_uniform(rng, 0, R)
            if im == 0:
                im = Fraction(1, 100)
            roots += [(re, im), (re, -im)]
        else:
            roots.append((_rational_uniform(rng, -R, R), Fraction(0)))
    P = UniPoly((1,))
    i = 0
    while i < len(roots):
        re, im = roots[i]
        if im != 0:
            P = P * UniPoly((re * re + im * im, -2 * re, 1))
            i += 2
        else:
            P = P * UniPoly((-re, 1))
            i += 1
    return P, roots


def _hull(points: list[tuple[Fraction, Fraction]]) -> list[tuple[Fraction, Fraction]]:
    """Exact convex hull (monotone chain), counter-clockwise, collinear points dropped."""
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower, upper = [], []
    for pt in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], pt) <= 0:
            lower.pop()
        lower.append(pt)
    for pt in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], pt) <= 0:
            upper.pop()
        upper.append(pt)
    return lower[:-1] + upper[:-1]


def hull_distance(z: complex, hull: list[tuple[Fraction, Fraction]]) -> float:
    """Euclidean distance from z to the convex polygon (0 inside)."""
    H = [complex(float(a), float(b)) for a, b in hull]
    if len(H) == 1:
        return abs(z - H[0])

    def seg_dist(a, b):
        d = b - a
        if d == 0:
            return abs(z - a)
        t = max(0.0, min(1.0, ((z - a) * d.conjugate()).real / abs(d) ** 2))
        return abs(z - (a + t * d))

    edges = list(zip(H, H[1:] + H[:1])) if len(H) > 2 else [(H[0], H[1])]
    dist = min(seg_dist(a, b) for a, b in edges)
    if len(H) > 2:
        inside = all(((b - a).conjugate() * (z - a)).imag >= 0 for a, b in edges)
        if inside:
            return 0.0
    return dist


def _refine_root(P: UniPoly, z: complex, dps: int = 40) -> complex:
    import mpmath

    with mpmath.workdps(dps):
        coeffs = [mpmath.mpf(c.numerator) / c.denominator for c in reversed(P.coeffs)]
        dcoeffs = [mpmath.mpf(c.numerator) / c.denominator
                   for c in reversed(P.derivative().coeffs)]
        w = mpmath.mpc(z.real, z.imag)
        for _ in range(60):
            step = mpmath.polyval(coeffs, w) / mpmath.polyval(dcoeffs, w)
            w -= step
            if abs(step) < mpmath.mpf(10) ** (-dps + 5):
                break
        return complex(w)


def _trial_conj5(rng, prm: TrialParams):
    P, rp = _random_complex_rooted(rng, prm.p, prm.R, prm.complex_prob)
    Q, rq = _random_complex_rooted(rng, prm.p, prm.R, prm.complex_prob)
    S = convolution_sum(P, Q)
    hull = _hull(rp + rq)
    diam = max(abs(complex(float(a), float(b)) - complex(float(c), float(d)))
               for a, b in rp + rq for c, d in rp + rq)
    tol = 1e-8 * (1 + diam)
    roots = complex_roots(S)
    suspected = 0
    for z in roots.roots:
        if hull_distance(z, hull) <= tol:
            continue
        zr = _refine_root(S, z)
        dist = hull_distance(zr, hull)
        if dist <= tol:
            suspected += 1
            continue
        return {"inputs": {"P": format_poly(P), "Q": format_poly(Q),
                           "roots_P": [f"{a}+{b}i" for a, b in rp],
                           "roots_Q": [f"{a}+{b}i" for a, b in rq]},
                "failed_check": "roots of sum_k P^(k) Q^(p-k) lie in the hull of roots of P, Q",
                "exact_values": {"sum": format_poly(S), "root": repr(zr),
                                 "hull_distance": repr(dist), "tolerance": repr(tol)}}, suspected
    return None, suspected


def _random_nonneg_poly(rng, n: int, R: int) -> UniPoly:
    kind = rng.integers(3)
    if kind == 0:
        # real-rooted with non-positive roots, then a positive perturbation
        roots = [-_rational_uniform(rng, 0, R) for _ in range(n)]
        P = from_roots(roots)
        eps = Fraction(int(rng.integers(0, 50)), 100)
        k = int(rng.integers(0, n + 1))
        return P + UniPoly([0] * k + [eps * max(abs(c) for c in P.coeffs)])
    if kind == 1:
        return UniPoly([Fraction(int(rng.integers(0, 100)), int(rng.integers(1, 20)))
                        for _ in range(n)] + [Fraction(int(rng.integers(1, 100)), 10)])
    return from_roots([-_rational_uniform(rng, 0, R) for _ in range(n)])


def _trial_conj3(rng, prm: TrialParams):
    P = _random_nonneg_poly(rng, prm.n, prm.R)
    if P.degree < 1:
        return None, 0
    p2 = nonpositive_on(p2_form(P), ALL_REALS)
    if p2 and not is_real_rooted(P):
        return {"inputs": {"P": format_poly(P)},
                "failed_check": "P P'' + (1/n - 1) P'^2 <= 0 on R implies P real-rooted",
                "exact_values": {"degree": P.degree, "p2_form": format_poly(p2_form(P)),
                                 "p2_form_nonpositive": True, "real_rooted": False,
                                 "distinct_real_roots": sturm_real_root_count(P),
                                 "distinct_roots": squarefree_part(P).degree}}, 0
    return None, 0


def _trial_conj2(rng, prm: TrialParams):
    lam = [_rational_uniform(rng, 0, prm.R) for _ in range(prm.p)]
    a = diagonal_lift(lam, prm.n)
    scan_seed = int(rng.integers(0, 2**63 - 1))
    v = concavity_scan(a, prm.n, samples=prm.samples, seed=scan_seed, tol=prm.scan_tol)
    if v.status == COUNTEREXAMPLE:
        return {"inputs": {"lambda": _strs(lam), "a": _strs(a.a), "n": prm.n},
                "failed_check": "f_a is 1/p-concave on the positive orthant",
                "exact_values": v.witness.as_dict()}, v.discarded
    return None, v.discarded


def _random_log_uniform_coeffs(rng, p: int) -> CoeffVec:
    vals = 10.0 ** rng.uniform(-2, 2, size=p + 1)
    return CoeffVec(tuple(Fraction(float(v)).limit_denominator(1000) for v in vals))


def _trial_conj1(rng, prm: TrialParams):
    a = _random_log_uniform_coeffs(rng, prm.p)
    ok, t = in_X(a, prm.n)
    scan_seed = int(rng.integers(0, 2**63 - 1))
    if ok:
        v = concavity_scan(a, prm.n, samples=prm.samples, seed=scan_seed, tol=prm.scan_tol)
        if v.status == COUNTEREXAMPLE:
            return {"inputs": {"a": _strs(a.a), "n": prm.n},
                    "failed_check": "diagonal concavity implies concavity on the orthant",
                    "exact_values": v.witness.as_dict()}, v.discarded
        return "accepted", v.discarded
    # outside X: the diagonal witness must violate concavity on the orthant as well
    pt = [t] * prm.n
    ones = [Fraction(1)] * prm.n
    val = quadratic_form(concavity_matrix(a, pt, Fraction(1, a.effective_p)), ones)
    if val <= 0:
        return {"inputs": {"a": _strs(a.a), "n": prm.n, "t": str(t)},
                "failed_check": "diagonal non-concavity is seen by the orthant Hessian",
                "exact_values": {"quadratic_form": str(val)}}, 0
    return None, 0


_TRIALS = {1: _trial_conj1, 2: _trial_conj2, 3: _trial_conj3, 4: _trial_conj4, 5: _trial_conj5}


def _validate(cid: int, prm: TrialParams) -> None:
    if cid not in _TRIALS:
        raise ValueError(f"unknown conjecture {cid}")
    if cid in (1, 2) and not 1 <= prm.p <= prm.n:
        raise ValueError("conjectures 1 and 2 need 1 <= p <= n")
    if cid in (4, 5) and prm.p < 1:
        raise ValueError("conjectures 4 and 5 need p >= 1")
    if cid == 3 and prm.n < 1:
        raise ValueError("conjecture 3 needs a degree n >= 1")


def _run_range(cid: int, prm: TrialParams, seed: int, start: int, stop: int):
    out = []
    for i in range(start, stop):
        res, suspected = _TRIALS[cid](trial_rng(seed, i), prm)
        out.append((i, res, suspected))
    return out


def conjecture_trial(cid: int, trials: int = 1000, seed: int = 0, workers: int = 1,
                     timing: bool = False, **params) -> TrialReport:
    """Run ``trials`` independent randomized checks of conjecture ``cid``.

    Conjecture 3 uses ``n`` as the polynomial degree; the others use ``p``
    (and ``n`` for 1 and 2). Every counterexample carries exact inputs.
    """
    prm = TrialParams(**params)
    _validate(cid, prm)
    t0 = time.perf_counter()
    if workers > 1 and trials > 1:
        bounds = np.linspace(0, trials, workers + 1).astype(int)
        with ProcessPoolExecutor(workers) as ex:
            futs = [ex.submit(_run_range, cid, prm, seed, int(a), int(b))
                    for a, b in zip(bounds, bounds[1:]) if b > a]
            rows = [r for f in futs for r in f.result()]
    else:
        rows = _run_range(cid, prm, seed, 0, trials)
    rows.sort(key=lambda r: r[0])
    report = TrialReport(cid, prm.p if cid != 3 else None, prm.n if cid in (1, 2, 3) else None,
                         trials, seed)
    accepted = 0
    for i, res, suspected in rows:
        report.suspected += suspected
        if res == "accepted":
            accepted += 1
        elif res is not None:
            report.counterexamples.append({"trial": i, **res})
    if cid == 1:
        report.stats["accepted"] = accepted
        report.stats["acceptance_rate"] = accepted / trials if trials else 0.0
    if cid in (4, 5):
        report.stats["R"] = prm.R
    if cid in (1, 2):
        report.stats["samples"] = prm.samples
    if timing:
        report.elapsed_ms = round((time.perf_counter() - t0) * 1000, 3)
    return report


def replay_trial(cid: int, seed: int, index: int, **params):
    """Re-run one trial from its seed and index (reproduces a reported counterexample)."""
    prm = TrialParams(**params)
    return _TRIALS[cid](trial_rng(seed, index), prm)[0]
