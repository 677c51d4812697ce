"""Exact univariate polynomials over the rationals.

Coefficients are stored in ascending order as :class:`fractions.Fraction`.
Real-root decisions (Sturm counts, squarefree reduction) never touch floats:
they run on integer primitive remainder sequences, which differ from the
classical Sturm chain only by positive factors and therefore give identical
sign-variation counts.

Complex roots are approximated separately (Aberth iteration in doubles) and
only ever feed numerical tests, never a real-rootedness verdict.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "UniPoly",
    "SturmChain",
    "RootSet",
    "RootFindingError",
    "parse_poly",
    "format_poly",
    "reverse",
    "poly_gcd",
    "squarefree_part",
    "squarefree_decomposition",
    "sturm_chain",
    "sturm_real_root_count",
    "is_real_rooted",
    "discriminant_small",
    "cardan_reduce",
    "complex_roots",
    "from_roots",
    "convolution_sum",
    "root_bound",
]


def _exact(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, (bool, float, complex)) or not isinstance(c, (int, np.integer, str)):
        raise TypeError(f"exact coefficient required, got {type(c).__name__}: {c!r}")
    return Fraction(c) if not isinstance(c, np.integer) else Fraction(int(c))


class UniPoly:
    """Dense polynomial with exact rational coefficients, ascending order.

    The zero polynomial has an empty coefficient tuple and degree -1.
    Instances are immutable and hashable.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [_exact(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("UniPoly is immutable")

    @classmethod
    def x(cls) -> "UniPoly":
        return cls((0, 1))

    @classmethod
    def const(cls, c) -> "UniPoly":
        return cls((c,))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lead(self) -> Fraction:
        if not self.coeffs:
            return Fraction(0)
        return self.coeffs[-1]

    def is_zero(self) -> bool:
        return not self.coeffs

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, k: int) -> Fraction:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return Fraction(0)

    def __eq__(self, other):
        if isinstance(other, UniPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == UniPoly((other,)).coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"UniPoly({format_poly(self)!r})"

    def _coerce(self, other) -> "UniPoly":
        if isinstance(other, UniPoly):
            return other
        return UniPoly((other,))

    def __add__(self, other):
        o = self._coerce(other)
        n = max(len(self.coeffs), len(o.coeffs))
        return UniPoly(self[k] + o[k] for k in range(n))

    __radd__ = __add__

    def __neg__(self):
        return UniPoly(-c for c in self.coeffs)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, UniPoly):
            c = _exact(other)
            return UniPoly(c * a for a in self.coeffs)
        if self.is_zero() or other.is_zero():
            return UniPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return UniPoly(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        c = _exact(other)
        return UniPoly(a / c for a in self.coeffs)

    def __pow__(self, k: int):
        out = UniPoly((1,))
        for _ in range(k):
            out = out * self
        return out

    def __divmod__(self, other: "UniPoly"):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.coeffs)
        db, lb = other.degree, other.lead
        q = [Fraction(0)] * max(len(r) - db, 0)
        while len(r) - 1 >= db and r:
            shift = len(r) - 1 - db
            c = r[-1] / lb
            q[shift] = c
            for i, b in enumerate(other.coeffs):
                r[i + shift] -= c * b
            r.pop()
            while r and r[-1] == 0:
                r.pop()
        return UniPoly(q), UniPoly(r)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __call__(self, t):
        """Horner evaluation; exact for rational ``t``, numeric otherwise."""
        if isinstance(t, (int, Fraction)):
            acc = Fraction(0)
            for c in reversed(self.coeffs):
                acc = acc * t + c
            return acc
        acc = 0.0 * t
        for c in reversed(self.coeffs):
            acc = acc * t + float(c)
        return acc

    def derivative(self, k: int = 1) -> "UniPoly":
        cs = list(self.coeffs)
        for _ in range(k):
            cs = [i * c for i, c in enumerate(cs)][1:]
        return UniPoly(cs)

    def monic(self) -> "UniPoly":
        if self.is_zero():
            return self
        return self / self.lead

    def shift(self, s) -> "UniPoly":
        """Return P(X + s)."""
        s = _exact(s)
        out = UniPoly()
        base = UniPoly((s, 1))
        for c in reversed(self.coeffs):
            out = out * base + c
        return out

    def to_floats(self) -> np.ndarray:
        return np.array([float(c) for c in self.coeffs], dtype=float)


# -- text form -------------------------------------------------------------


def parse_scalar(token: str) -> Fraction:
    """Parse ``"int"`` or ``"int/int"`` into a Fraction."""
    tok = token.strip()
    num, sep, den = tok.partition("/")
    try:
        n = int(num)
        d = int(den) if sep else 1
    except ValueError:
        raise ValueError(f"malformed scalar {token!r}") from None
    if d == 0:
        raise ValueError(f"malformed scalar {token!r}: zero denominator")
    return Fraction(n, d)


def parse_scalars(text: str) -> list[Fraction]:
    if not text.strip():
        return []
    return [parse_scalar(t) for t in text.split(",")]


def parse_poly(text: str, descending: bool = False) -> UniPoly:
    cs = parse_scalars(text)
    if descending:
        cs = cs[::-1]
    return UniPoly(cs)


def format_scalar(c: Fraction) -> str:
    return str(Fraction(c))


def format_poly(P: UniPoly) -> str:
    return ",".join(format_scalar(c) for c in P.coeffs) if P.coeffs else "0"


# -- basic operations ------------------------------------------------------


def reverse(P: UniPoly, degree: int | None = None) -> UniPoly:
    """Return X^d P(1/X) with d the declared degree (default: deg P)."""
    d = P.degree if degree is None else degree
    if d < P.degree:
        raise ValueError("declared degree below actual degree")
    padded = [P[k] for k in range(d + 1)]
    return UniPoly(padded[::-1])


def from_roots(roots: Sequence) -> UniPoly:
    """Monic expansion of prod (X - r)."""
    P = UniPoly((1,))
    for r in roots:
        P = P * UniPoly((-_exact(r), 1))
    return P


def convolution_sum(P: UniPoly, Q: UniPoly) -> UniPoly:
    """Sum over k of P^(k) * Q^(p-k) for two polynomials of common degree p."""
    if P.degree != Q.degree or P.is_zero():
        raise ValueError("convolution requires equal degrees")
    p = P.degree
    out = UniPoly()
    for k in range(p + 1):
        out = out + P.derivative(k) * Q.derivative(p - k)
    return out


# -- integer engine for gcd / Sturm -----------------------------------------


def _to_primitive_ints(P: UniPoly) -> list[int]:
    """Positive rescaling of P to a primitive integer coefficient list."""
    if P.is_zero():
        return []
    den = reduce(math.lcm, (c.denominator for c in P.coeffs), 1)
    ints = [int(c * den) for c in P.coeffs]
    return _primitive(ints)


def _primitive(a: list[int]) -> list[int]:
    g = reduce(math.gcd, a, 0)
    if g > 1:
        a = [x // g for x in a]
    return a


def _ideriv(a: list[int]) -> list[int]:
    return [i * c for i, c in enumerate(a)][1:]


def _iprem(a: list[int], b: list[int]) -> list[int]:
    """|lc(b)|^k * (a mod b) for integer lists; the multiplier is positive."""
    r = list(a)
    db = len(b) - 1
    lb = b[-1]
    mult = abs(lb)
    sgn = 1 if lb > 0 else -1
    while r and len(r) - 1 >= db:
        shift = len(r) - 1 - db
        c = r[-1] * sgn
        if mult != 1:
            r = [mult * x for x in r]
        for i, bi in enumerate(b):
            r[i + shift] -= c * bi
        while r and r[-1] == 0:
            r.pop()
    return r


def _igcd(a: list[int], b: list[int]) -> list[int]:
    a, b = _primitive(list(a)), _primitive(list(b))
    while b:
        r = _iprem(a, b)
        a, b = b, (_primitive(r) if r else [])
    if a and a[-1] < 0:
        a = [-x for x in a]
    return a


def _iexact_div(a: list[int], b: list[int]) -> list[int]:
    """Exact quotient a / b over Q, rescaled to a primitive integer list."""
    qa, _ = divmod(UniPoly(a), UniPoly(b))
    return _to_primitive_ints(qa)


def _isquarefree(a: list[int]) -> list[int]:
    if len(a) <= 2:
        return list(a)
    g = _igcd(a, _ideriv(a))
    if len(g) <= 1:
        return list(a)
    return _iexact_div(a, g)


def _isign_at(a: list[int], t) -> int:
    """Sign of the polynomial at a rational or infinite point."""
    if t == math.inf or t == -math.inf:
        lead = a[-1]
        s = 1 if lead > 0 else -1
        if t == -math.inf and (len(a) - 1) % 2 == 1:
            s = -s
        return s
    t = Fraction(t)
    u, w = t.numerator, t.denominator
    # homogenised Horner: sum a_i u^i w^(d-i) = w^d P(t), same sign as P(t)
    acc = 0
    wp = 1
    for c in reversed(a):
        acc = acc * u + c * wp
        wp *= w
    return (acc > 0) - (acc < 0)


def _isturm(a: list[int]) -> list[list[int]]:
    chain = [a, _primitive(_ideriv(a))] if len(a) > 1 else [a]
    while len(chain[-1]) > 1:
        r = _iprem(chain[-2], chain[-1])
        if not r:
            break
        r = _primitive([-x for x in r])
        chain.append(r)
    return chain


def _variations(chain: list[list[int]], t) -> int:
    signs = [s for s in (_isign_at(c, t) for c in chain) if s != 0]
    return sum(1 for u, v in zip(signs, signs[1:]) if u != v)


def _norm_endpoint(t):
    if t is None:
        raise ValueError("interval endpoint required")
    if isinstance(t, float):
        if math.isinf(t):
            return t
        raise TypeError("finite endpoints must be exact (int or Fraction)")
    return _exact(t)


# -- Sturm -----------------------------------------------------------------


@dataclass(frozen=True)
class SturmChain:
    """Classical chain P, P', -rem(P, P'), ... with exact rational entries."""

    chain: tuple[UniPoly, ...]

    def sign_sequence(self, t) -> tuple[int, ...]:
        out = []
        for c in self.chain:
            ints = _to_primitive_ints(c)
            # positive rescaling keeps the sign
            out.append(_isign_at(ints, t) if ints else 0)
        return tuple(out)

    def variations(self, t) -> int:
        signs = [s for s in self.sign_sequence(t) if s]
        return sum(1 for u, v in zip(signs, signs[1:]) if u != v)

    @property
    def signs_at_minus_inf(self) -> tuple[int, ...]:
        return self.sign_sequence(-math.inf)

    @property
    def signs_at_plus_inf(self) -> tuple[int, ...]:
        return self.sign_sequence(math.inf)


def sturm_chain(P: UniPoly) -> SturmChain:
    if P.is_zero():
        raise ValueError("undefined root count for the zero polynomial")
    chain = [P]
    if P.degree >= 1:
        chain.append(P.derivative())
        while chain[-1].degree >= 1:
            r = chain[-2] % chain[-1]
            if r.is_zero():
                break
            chain.append(-r)
    return SturmChain(tuple(chain))


def poly_gcd(P: UniPoly, Q: UniPoly) -> UniPoly:
    """Monic gcd over Q (zero if both inputs are zero)."""
    g = _igcd(_to_primitive_ints(P), _to_primitive_ints(Q))
    return UniPoly(g).monic()


def squarefree_part(P: UniPoly) -> UniPoly:
    """P / gcd(P, P'), rescaled to a primitive integer polynomial with positive lead."""
    if P.is_zero():
        raise ValueError("squarefree part of the zero polynomial")
    s = _isquarefree(_to_primitive_ints(P))
    if s[-1] < 0:
        s = [-x for x in s]
    return UniPoly(s)


def squarefree_decomposition(P: UniPoly) -> list[tuple[UniPoly, int]]:
    """Yun's algorithm: pairs (A_i, i) with P = c * prod A_i^i, A_i squarefree coprime."""
    if P.degree < 1:
        return []
    a = P.monic()
    b = a.derivative()
    c = poly_gcd(a, b)
    w = a // c
    y = b // c
    out = []
    i = 1
    while w.degree >= 1:
        z = y - w.derivative()
        g = poly_gcd(w, z) if not z.is_zero() else w
        if g.degree >= 1:
            out.append((g, i))
        w = w // g
        y = z // g
        i += 1
    return out


def sturm_real_root_count(P: UniPoly, interval=(-math.inf, math.inf)) -> int:
    """Number of distinct real roots of P in the half-open interval (lo, hi]."""
    if P.is_zero():
        raise ValueError("undefined root count for the zero polynomial")
    lo, hi = (_norm_endpoint(t) for t in interval)
    if not lo < hi:
        return 0
    a = _isquarefree(_to_primitive_ints(P))
    if len(a) <= 1:
        return 0
    chain = _isturm(a)
    return _variations(chain, lo) - _variations(chain, hi)


def is_real_rooted(P: UniPoly) -> bool:
    """True iff every complex root of P is real (multiplicities allowed)."""
    if P.is_zero():
        raise ValueError("real-rootedness undefined for the zero polynomial")
    a = _isquarefree(_to_primitive_ints(P))
    d = len(a) - 1
    if d <= 1:
        return True
    chain = _isturm(a)
    return _variations(chain, -math.inf) - _variations(chain, math.inf) == d


def root_bound(P: UniPoly) -> Fraction:
    """Cauchy bound: every root satisfies |r| < 1 + max |a_k / a_n|."""
    lead = abs(P.lead)
    return 1 + max((abs(c) / lead for c in P.coeffs[:-1]), default=Fraction(0))


# -- small degree ------------------------------------------------------------


def discriminant_small(P: UniPoly) -> Fraction:
    """Discriminant for degree 2 or 3; non-negative iff P is real-rooted."""
    if P.degree == 2:
        a0, a1, a2 = P.coeffs
        return a1 * a1 - 4 * a0 * a2
    if P.degree == 3:
        a0, a1, a2, a3 = P.coeffs
        return (a1**2 * a2**2 + 18 * a0 * a1 * a2 * a3 - 27 * a0**2 * a3**2
                - 4 * a1**3 * a3 - 4 * a2**3 * a0)
    raise ValueError(f"discriminant_small needs degree 2 or 3, got {P.degree}")


def cardan_reduce(P: UniPoly) -> tuple[Fraction, Fraction]:
    """Depressed-cubic coefficients (p, q) with P(X) = a3 * Q(X + a2/(3 a3))."""
    if P.degree != 3:
        raise ValueError(f"cardan_reduce needs degree 3, got {P.degree}")
    a0, a1, a2, a3 = P.coeffs
    p = a1 / a3 - a2**2 / (3 * a3**2)
    q = a0 / a3 - a1 * a2 / (3 * a3**2) + 2 * a2**3 / (27 * a3**3)
    return p, q


# -- complex roots -------------------------------------------------------------


class RootFindingError(RuntimeError):
    """Raised when simultaneous iteration fails; ``partial`` holds the last iterate."""

    def __init__(self, msg, partial=None):
        super().__init__(msg)
        self.partial = partial


@dataclass
class RootSet:
    roots: list[complex]
    multiplicities: list[int]
    residuals: list[float] = field(default_factory=list)

    @property
    def degree(self) -> int:
        return sum(self.multiplicities)

    def expanded(self) -> list[complex]:
        out = []
        for r, m in zip(self.roots, self.multiplicities):
            out.extend([r] * m)
        return out

    def real_parts(self, imag_tol: float = 1e-9) -> list[float] | None:
        """Real roots with multiplicity, or None if any root is clearly complex."""
        out = []
        for r, m in zip(self.roots, self.multiplicities):
            if abs(r.imag) > imag_tol * (1 + abs(r)):
                return None
            out.extend([r.real] * m)
        return out


RESIDUAL_TOL = 1e-12
CLUSTER_TOL = 1e-8
MAX_ITER = 500
MAX_RESTARTS = 5


def _residual_ok(c: np.ndarray, z: np.ndarray) -> np.ndarray:
    val = np.polynomial.polynomial.polyval(z, c)
    scale = np.polynomial.polynomial.polyval(np.abs(z), np.abs(c))
    return np.abs(val) <= RESIDUAL_TOL * np.maximum(scale, 1e-300)


def _aberth(c: np.ndarray, rng: np.random.Generator) -> np.ndarray:
    """Simultaneous Aberth-Ehrlich iteration; ``c`` ascending, nonzero lead."""
    d = len(c) - 1
    c = c / c[-1]
    if d == 1:
        return np.array([-c[0]], dtype=complex)
    dc = np.polynomial.polynomial.polyder(c)
    radius = 1 + np.max(np.abs(c[:-1]))
    last = None
    for attempt in range(MAX_RESTARTS + 1):
        # geometric-mean radius guess, rotated away from the real axis
        r0 = max(abs(c[0]) ** (1.0 / d), 1e-3) if c[0] != 0 else 0.5
        r0 = min(r0, radius)
        phase = 0.4 + rng.uniform(0, 2 * np.pi) * (attempt > 0)
        z = r0 * np.exp(1j * (2 * np.pi * np.arange(d) / d + phase))
        if attempt:
            z = z * (1 + 0.1 * rng.standard_normal(d))
        for _ in range(MAX_ITER):
            p = np.polynomial.polynomial.polyval(z, c)
            dp = np.polynomial.polynomial.polyval(z, dc)
            with np.errstate(all="ignore"):
                ratio = p / dp
                diff = z[:, None] - z[None, :]
                np.fill_diagonal(diff, 1.0)
                inv = 1.0 / diff
                np.fill_diagonal(inv, 0.0)
                s = inv.sum(axis=1)
                w = ratio / (1 - ratio * s)
            w = np.where(np.isfinite(w), w, 0.0)
            z = z - w
            if np.all(np.abs(w) <= 1e-15 * (1 + np.abs(z))):
                break
        last = z
        if np.all(np.isfinite(z)) and np.all(_residual_ok(c, z)):
            return z
    raise RootFindingError("refinement failed", partial=last)


def _newton_polish(c: np.ndarray, z: np.ndarray, steps: int = 3) -> np.ndarray:
    dc = np.polynomial.polynomial.polyder(c)
    for _ in range(steps):
        p = np.polynomial.polynomial.polyval(z, c)
        dp = np.polynomial.polynomial.polyval(z, dc)
        with np.errstate(all="ignore"):
            step = np.where(dp != 0, p / dp, 0)
        znew = z - step
        better = np.abs(np.polynomial.polynomial.polyval(znew, c)) <= np.abs(p)
        z = np.where(better & np.isfinite(znew), znew, z)
    return z


def _cluster(z: np.ndarray) -> tuple[list[complex], list[int]]:
    radius = CLUSTER_TOL * (1 + float(np.max(np.abs(z)))) if len(z) else 0.0
    order = sorted(range(len(z)), key=lambda i: (z[i].real, z[i].imag))
    groups: list[list[complex]] = []
    for i in order:
        for g in groups:
            if abs(np.mean(g) - z[i]) <= radius:
                g.append(z[i])
                break
        else:
            groups.append([z[i]])
    return [complex(np.mean(g)) for g in groups], [len(g) for g in groups]


def _roots_of_floats(c: np.ndarray, rng) -> np.ndarray:
    nz = np.nonzero(c)[0]
    lo = int(nz[0])
    c = c[lo:]
    zeros = np.zeros(lo, dtype=complex)
    if len(c) == 1:
        return zeros
    z = _aberth(c.astype(complex), rng)
    z = _newton_polish(c.astype(complex), z)
    return np.concatenate([zeros, z])


def complex_roots(P, seed: int = 0) -> RootSet:
    """Approximate all complex roots of P with multiplicities.

    Exact input is split by Yun's squarefree decomposition first, so
    multiplicities are exact and every iteration runs on simple roots.
    A float coefficient sequence falls back to clustering nearby iterates
    within ``1e-8 * (1 + max|root|)``.
    """
    rng = np.random.default_rng(seed)
    if isinstance(P, UniPoly):
        if P.degree < 1:
            raise ValueError("complex_roots needs degree >= 1")
        roots: list[complex] = []
        mults: list[int] = []
        for factor, m in squarefree_decomposition(P):
            c = factor.to_floats()
            z = _roots_of_floats(c, rng)
            roots.extend(complex(r) for r in z)
            mults.extend([m] * len(z))
        order = sorted(range(len(roots)), key=lambda i: (roots[i].real, roots[i].imag))
        roots = [roots[i] for i in order]
        mults = [mults[i] for i in order]
        c = P.to_floats()
    else:
        c = np.asarray(P, dtype=complex)
        while len(c) and c[-1] == 0:
            c = c[:-1]
        if len(c) < 2:
            raise ValueError("complex_roots needs degree >= 1")
        z = _roots_of_floats(c, rng)
        roots, mults = _cluster(z)
    zz = np.array(roots, dtype=complex)
    val = np.abs(np.polynomial.polynomial.polyval(zz, c))
    scale = np.polynomial.polynomial.polyval(np.abs(zz), np.abs(c))
    res = [float(v / s) if s else float(v) for v, s in zip(val, scale)]
    return RootSet(roots, mults, res)
