"""Elementary symmetric polynomials and linear combinations of them.

Points are plain sequences. A point whose entries are ints/Fractions is
evaluated exactly; a point containing floats (or a float numpy array) is
evaluated in floating point. Mixing Fractions with floats is rejected.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

import numpy as np

from .polyexact import UniPoly, _exact, complex_roots, from_roots, parse_scalars

EXACT = "exact"
FLOAT = "float"


def mode_of(x) -> str:
    """'exact' for int/Fraction entries, 'float' for float entries; mixing is an error."""
    if isinstance(x, np.ndarray) and x.dtype.kind == "f":
        return FLOAT
    has_frac = has_float = False
    for v in x:
        if isinstance(v, Fraction):
            has_frac = True
        elif isinstance(v, (float, np.floating)):
            has_float = True
        elif not isinstance(v, (int, np.integer)):
            raise TypeError(f"unsupported scalar {v!r}")
    if has_frac and has_float:
        raise TypeError("point mixes exact and float coordinates")
    return FLOAT if has_float else EXACT


def _coerce(x) -> list:
    if mode_of(x) == FLOAT:
        return [float(v) for v in x]
    return [Fraction(int(v)) if isinstance(v, (int, np.integer)) else v for v in x]


def parse_point(text: str) -> list[Fraction]:
    return parse_scalars(text)


@dataclass(frozen=True)
class CoeffVec:
    """a = (a_0, ..., a_p) defining f_a = sum a_k sigma_k."""

    a: tuple[Fraction, ...]

    def __post_init__(self):
        if not self.a:
            raise ValueError("coefficient vector must have length >= 1")
        object.__setattr__(self, "a", tuple(_exact(c) for c in self.a))

    @classmethod
    def of(cls, a) -> "CoeffVec":
        if isinstance(a, CoeffVec):
            return a
        if isinstance(a, str):
            return cls(tuple(parse_scalars(a)))
        return cls(tuple(a))

    @property
    def p(self) -> int:
        return len(self.a) - 1

    @property
    def effective_p(self) -> int:
        k = len(self.a) - 1
        while k > 0 and self.a[k] == 0:
            k -= 1
        return k

    def __iter__(self):
        return iter(self.a)

    def __len__(self):
        return len(self.a)

    def __getitem__(self, k):
        return self.a[k]

    def to_text(self) -> str:
        return ",".join(str(c) for c in self.a)

    def floats(self) -> np.ndarray:
        return np.array([float(c) for c in self.a])


def sigma_all(x) -> list:
    """[sigma_0(x), ..., sigma_n(x)] via the product prod (1 + x_i t)."""
    xs = _coerce(x)
    zero, one = (0.0, 1.0) if mode_of(xs) == FLOAT else (Fraction(0), Fraction(1))
    e = [one] + [zero] * len(xs)
    for i, xi in enumerate(xs, start=1):
        for k in range(i, 0, -1):
            e[k] = e[k] + xi * e[k - 1]
    return e


def sigma(k: int, x):
    if k < 0 or k > len(x):
        return Fraction(0) if mode_of(x) == EXACT else 0.0
    return sigma_all(x)[k]


def in_gamma(x, k: int) -> bool:
    """Membership in the cone where sigma_0, ..., sigma_k are all positive."""
    e = sigma_all(x)
    return all(v > 0 for v in e[: k + 1])


def _drop(x, *idx):
    return [v for i, v in enumerate(x) if i not in idx]


def sigma_gradient(k: int, x) -> list:
    """Gradient of sigma_k: entry i is sigma_{k-1} of x with coordinate i removed."""
    n = len(x)
    if not 1 <= k <= n:
        raise ValueError(f"k={k} out of range for n={n}")
    xs = _coerce(x)
    return [sigma_all(_drop(xs, i))[k - 1] for i in range(n)]


@dataclass
class SymDerivatives:
    value: object
    gradient: list
    hessian: list


def _check_degree(a: CoeffVec, n: int) -> None:
    if a.effective_p > n:
        raise ValueError(f"sigma_k vanishes identically for k > n={n}; reduce p")


def f_value(a, x):
    a = CoeffVec.of(a)
    _check_degree(a, len(x))
    e = sigma_all(x)
    if mode_of(e) == FLOAT:
        return sum(float(c) * e[k] for k, c in enumerate(a.a[: a.effective_p + 1]))
    return sum((c * e[k] for k, c in enumerate(a.a[: a.effective_p + 1])), Fraction(0))


def f_derivatives(a, x) -> SymDerivatives:
    """Value, gradient and Hessian of f_a at x by leave-one-out recomputation."""
    a = CoeffVec.of(a)
    xs = _coerce(x)
    n = len(xs)
    _check_degree(a, n)
    p = a.effective_p
    fl = mode_of(xs) == FLOAT
    cs = [float(c) for c in a.a[: p + 1]] if fl else list(a.a[: p + 1])
    zero = 0.0 if fl else Fraction(0)
    e = sigma_all(xs)
    value = sum((cs[k] * e[k] for k in range(p + 1)), zero)
    grad = []
    for i in range(n):
        ei = sigma_all(_drop(xs, i))
        grad.append(sum((cs[k] * ei[k - 1] for k in range(1, p + 1)), zero))
    hess = [[zero] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            eij = sigma_all(_drop(xs, i, j))
            h = sum((cs[k] * eij[k - 2] for k in range(2, p + 1)), zero)
            hess[i][j] = hess[j][i] = h
    return SymDerivatives(value, grad, hess)


def _esp_batch(X: np.ndarray, kmax: int) -> np.ndarray:
    """sigma_0..sigma_kmax of every row of X (m, d) -> (m, kmax + 1)."""
    m, d = X.shape
    e = np.zeros((m, kmax + 1))
    e[:, 0] = 1.0
    for j in range(d):
        e[:, 1:] = e[:, 1:] + X[:, j : j + 1] * e[:, :-1]
    return e


def f_derivatives_batch(a, X: np.ndarray):
    """Vectorised float f_a, gradients (m, n) and Hessians (m, n, n) at rows of X."""
    a = CoeffVec.of(a)
    X = np.asarray(X, dtype=float)
    m, n = X.shape
    _check_degree(a, n)
    p = a.effective_p
    c = a.floats()[: p + 1]
    value = _esp_batch(X, p) @ c
    grad = np.zeros((m, n))
    hess = np.zeros((m, n, n))
    if p >= 1:
        for i in range(n):
            Xi = np.delete(X, i, axis=1)
            grad[:, i] = _esp_batch(Xi, p - 1) @ c[1:]
    if p >= 2:
        for i in range(n):
            for j in range(i + 1, n):
                Xij = np.delete(X, (i, j), axis=1)
                h = _esp_batch(Xij, p - 2) @ c[2:]
                hess[:, i, j] = h
                hess[:, j, i] = h
    return value, grad, hess


def bar_f(a, n: int) -> UniPoly:
    """Restriction of f_a to the diagonal t * (1, ..., 1)."""
    a = CoeffVec.of(a)
    _check_degree(a, n)
    return UniPoly(comb(n, k) * c for k, c in enumerate(a.a))


def merge_sigma_check(lam, mu, k: int) -> bool:
    """Exact check of sigma_k(lam, mu) == sum_j sigma_{k-j}(lam) sigma_j(mu)."""
    lam, mu = _coerce(lam), _coerce(mu)
    lhs = sigma(k, list(lam) + list(mu))
    el, em = sigma_all(lam), sigma_all(mu)
    rhs = sum((el[k - j] * em[j] for j in range(k + 1) if k - j < len(el) and j < len(em)),
              Fraction(0))
    return lhs == rhs


def shift_expand(k: int, lam, check: bool = False) -> UniPoly:
    """sigma_k(lam + X * 1) as a polynomial in X (binomial-sum form)."""
    lam = _coerce(lam)
    l = len(lam)
    if not 0 <= k <= l:
        raise ValueError(f"k={k} out of range for dimension {l}")
    if mode_of(lam) == FLOAT:
        raise TypeError("shift_expand is exact; use shift_expand_float for float points")
    e = sigma_all(lam)
    P = UniPoly(comb(l - k + i, i) * e[k - i] for i in range(k + 1))
    if check:
        Q = shift_expand_by_derivative(k, lam)
        if P != Q:
            raise AssertionError(f"shift expansion routes disagree: {P} vs {Q}")
    return P


def shift_expand_by_derivative(k: int, lam) -> UniPoly:
    """(l-k)-th derivative of prod (X + lam_i), divided by (l-k)!."""
    lam = _coerce(lam)
    l = len(lam)
    full = from_roots([-v for v in lam])
    fact = 1
    for i in range(2, l - k + 1):
        fact *= i
    return full.derivative(l - k) / fact


def shift_expand_float(k: int, lam) -> np.ndarray:
    lam = np.asarray(lam, dtype=float)
    l = len(lam)
    e = _esp_batch(lam[None, :], l)[0]
    return np.array([comb(l - k + i, i) * e[k - i] for i in range(k + 1)])


def reduce_to_mu(x, k: int, rel_tol: float = 1e-9) -> list[float]:
    """mu in R^k with sigma_l(x) = C(n,k)/C(n-l,k-l) sigma_l(mu) for every l <= k."""
    n = len(x)
    if not 1 <= k <= n:
        raise ValueError(f"k={k} out of range for n={n}")
    if mode_of(x) == EXACT:
        rs = complex_roots(shift_expand(k, x))
    else:
        rs = complex_roots(shift_expand_float(k, x))
    real = rs.real_parts()
    if real is None or len(real) != k:
        raise ArithmeticError("reduction failed: restriction is not numerically real-rooted")
    mu = sorted(-r for r in real)
    ex = [float(v) for v in sigma_all(x)]
    em = sigma_all(mu)
    for l in range(k + 1):
        lhs = ex[l]
        rhs = comb(n, k) / comb(n - l, k - l) * em[l]
        scale = max(1.0, abs(lhs), comb(n, k) / comb(n - l, k - l)
                    * float(sigma_all([abs(m) for m in mu])[l]))
        if abs(lhs - rhs) > rel_tol * scale:
            raise ArithmeticError(f"reduction failed at l={l}: {lhs} vs {rhs}")
    return mu
