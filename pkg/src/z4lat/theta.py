"""Truncated exact q-series on a quarter-integer exponent grid.

A QSeries stores integer coefficients keyed by e, meaning the monomial
q^(e/4) with q = e^(i*pi*z); lattice theta series live here because
Construction A4 points (c + 4z)/2 have quarter-integer squared norms and
theta2 contributes exponents ((2m+1)/2)^2.  Truncation T is a contract:
exponents beyond T quarter-units are absent, and products discard them.

Jacobi theta functions on this grid:

    theta2(z) -> coefficient 2 at e = (2m+1)^2
    theta3(z) -> 1 at e = 0, 2 at e = 4 m^2
    theta4(z) -> same support as theta3 with sign (-1)^m

Theta maps (quoting the standard substitutions used throughout):

    A4 lattice of a Z4 code:   swe(theta3(4z), theta2(z)/2, theta2(4z))
    2-level Construction C:    jwe(theta3(4z), theta2(4z), theta2(z)/2, theta2(z)/2)
    binary Construction A:     W(theta3(2z), theta2(2z))

Each packing sits inside a product of scaled copies of Z (its envelope);
evaluation at i*tau reports a rigorous tail bound obtained from the
envelope: tail <= full envelope value - truncated envelope value.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import TailBoundError, ValidationError

DEFAULT_TRUNCATION = 200  # quarter-units, i.e. exponents up to q^50


class QSeries:
    """Sparse truncated series; immutable by convention."""

    __slots__ = ("terms", "truncation", "envelope", "_pow_cache")

    def __init__(self, terms: dict, truncation: int, envelope: dict | None = None):
        if truncation < 0:
            raise ValidationError("truncation must be non-negative")
        self.terms = {int(e): c for e, c in terms.items() if c and e <= truncation}
        if any(e < 0 for e in self.terms):
            raise ValidationError("negative exponents are not representable")
        self.truncation = truncation
        self.envelope = dict(envelope) if envelope else None
        self._pow_cache: dict[int, "QSeries"] = {}

    @classmethod
    def one(cls, truncation: int) -> "QSeries":
        return cls({0: 1}, truncation)

    def coefficient(self, e: int):
        return self.terms.get(e, 0)

    def with_envelope(self, envelope: dict | None) -> "QSeries":
        return QSeries(self.terms, self.truncation, envelope)

    def __eq__(self, other):
        return (
            isinstance(other, QSeries)
            and self.truncation == other.truncation
            and self.terms == other.terms
        )

    def __repr__(self):
        head = ", ".join(f"q^{Fraction(e, 4)}: {c}" for e, c in sorted(self.terms.items())[:6])
        return f"QSeries(T={self.truncation}; {head}{'...' if len(self.terms) > 6 else ''})"

    def sorted_terms(self):
        return sorted(self.terms.items())


def qs_add(a: QSeries, b: QSeries) -> QSeries:
    T = min(a.truncation, b.truncation)
    out = {e: c for e, c in a.terms.items() if e <= T}
    for e, c in b.terms.items():
        if e <= T:
            out[e] = out.get(e, 0) + c
    return QSeries(out, T)


def qs_sub(a: QSeries, b: QSeries) -> QSeries:
    return qs_add(a, qs_scale(b, -1))


def qs_scale(a: QSeries, k) -> QSeries:
    return QSeries({e: k * c for e, c in a.terms.items()}, a.truncation, a.envelope)


def qs_div_exact(a: QSeries, k: int) -> QSeries:
    out = {}
    for e, c in a.terms.items():
        if c % k:
            raise ValidationError(f"coefficient {c} at exponent {e} not divisible by {k}")
        out[e] = c // k
    return QSeries(out, a.truncation, a.envelope)


def qs_mul(a: QSeries, b: QSeries) -> QSeries:
    T = min(a.truncation, b.truncation)
    out: dict[int, int] = {}
    bs = sorted((e, c) for e, c in b.terms.items())
    for e1, c1 in a.terms.items():
        if e1 > T:
            continue
        room = T - e1
        for e2, c2 in bs:
            if e2 > room:
                break
            key = e1 + e2
            out[key] = out.get(key, 0) + c1 * c2
    env = None
    if a.envelope and b.envelope:
        env = dict(a.envelope)
        for u, d in b.envelope.items():
            env[u] = env.get(u, 0) + d
    return QSeries(out, T, env)


def qs_pow(a: QSeries, k: int) -> QSeries:
    if k < 0:
        raise ValidationError("negative series powers are not supported")
    if k == 0:
        return QSeries.one(a.truncation)
    result = a
    for _ in range(k - 1):
        result = qs_mul(result, a)
    return result


def qs_cache_pow(a: QSeries, k: int) -> QSeries:
    """Like qs_pow but memoizes successive powers on the base series."""
    if k == 0:
        return QSeries.one(a.truncation)
    cache = a._pow_cache
    if 1 not in cache:
        cache[1] = a
    top = max(cache)
    while top < k:
        cache[top + 1] = qs_mul(cache[top], a)
        top += 1
    return cache[k]


def jacobi_theta(kind: int, argument_scale: int = 1, truncation: int = DEFAULT_TRUNCATION) -> QSeries:
    """theta_2/3/4(scale * z) as a QSeries.

    argument_scale s multiplies every exponent by s; {1, 2, 4} cover all
    substitutions used by the theta maps.
    """
    if kind not in (2, 3, 4):
        raise ValidationError("kind must be 2, 3 or 4")
    if argument_scale not in (1, 2, 4):
        raise ValidationError("argument_scale must be 1, 2 or 4")
    s, T = argument_scale, truncation
    terms: dict[int, int] = {}
    if kind == 2:
        m = 0
        while s * (2 * m + 1) ** 2 <= T:
            terms[s * (2 * m + 1) ** 2] = 2
            m += 1
        env = {s: 1}
    else:
        terms[0] = 1
        m = 1
        while 4 * s * m * m <= T:
            terms[4 * s * m * m] = 2 if kind == 3 else (2 if m % 2 == 0 else -2)
            m += 1
        env = {4 * s: 1}
    return QSeries(terms, T, env)


@dataclass(frozen=True)
class LatticeSpec:
    """Dimension, volume and theta series of one lattice (or packing)."""

    dimension: int
    volume: float
    theta: QSeries

    def __post_init__(self):
        if self.volume <= 0:
            raise ValidationError("volume must be positive")


def theta_a4(p, truncation: int = DEFAULT_TRUNCATION) -> QSeries:
    """Theta series of the A4 lattice (1/2)(C + 4Z^n) from swe_C."""
    if p.nvars != 3:
        raise ValidationError("expected a 3-variable swe")
    bases = (
        jacobi_theta(3, 4, truncation),
        qs_div_exact(jacobi_theta(2, 1, truncation), 2),
        jacobi_theta(2, 4, truncation),
    )
    return p.substitute_series(bases).with_envelope({1: p.degree})


def theta_construction_c(p, truncation: int = DEFAULT_TRUNCATION) -> QSeries:
    """Theta series of (1/2)(A1 + 2A2 + 4Z^n) from jwe_{A1,A2}.

    Valid for lattice and nonlattice packings alike.
    """
    if p.nvars != 4:
        raise ValidationError("expected a 4-variable jwe")
    half_theta2 = qs_div_exact(jacobi_theta(2, 1, truncation), 2)
    bases = (
        jacobi_theta(3, 4, truncation),
        jacobi_theta(2, 4, truncation),
        half_theta2,
        half_theta2,
    )
    return p.substitute_series(bases).with_envelope({1: p.degree})


def theta_binary_a(w, truncation: int = DEFAULT_TRUNCATION) -> QSeries:
    """Theta series of the packing (1/sqrt 2)(A + 2Z^n) from W_A(x, y)."""
    if w.nvars != 2:
        raise ValidationError("expected a 2-variable weight enumerator")
    bases = (jacobi_theta(3, 2, truncation), jacobi_theta(2, 2, truncation))
    return w.substitute_series(bases).with_envelope({2: w.degree})


def _coordinate_theta_full(u: int, tau: float) -> float:
    """sum over m of exp(-pi*tau*u*m^2/4), summed to machine precision."""
    x = math.exp(-math.pi * tau * u / 4.0)
    total = 1.0
    m = 1
    while True:
        term = 2.0 * x ** (m * m)
        total += term
        if term < 1e-18 * total:
            return total
        m += 1


def _plain_eval(terms, tau: float) -> float:
    x4 = math.exp(-math.pi * tau / 4.0)
    return math.fsum(float(c) * x4**e for e, c in sorted(terms.items()))


def _envelope_tail_bound(envelope: tuple, T: int, tau: float) -> float:
    """Rigorous bound on the envelope mass beyond exponent T at i*tau.

    The envelope has non-negative coefficients, so for any 0 < theta < 1

        sum_{e > T} c_e x^(e/4) <= exp(-pi tau (1-theta) (T+1)/4) * E(theta tau),

    where E is the full envelope value; minimised over a small theta grid.
    """
    best = math.inf
    for theta in (0.2, 0.4, 0.6, 0.8):
        full = 1.0
        for u, dim in envelope:
            full *= _coordinate_theta_full(u, theta * tau) ** dim
        bound = math.exp(-math.pi * tau * (1.0 - theta) * (T + 1) / 4.0) * full
        best = min(best, bound)
    return best


def eval_qseries(s: QSeries, tau: float, tol: float = 1e-9) -> float:
    """Numeric value at z = i*tau with a tail-bound certificate.

    With an envelope the bound is rigorous (the packing's coefficients are
    dominated by the envelope's); without one, a geometric extrapolation
    of the top decade of retained terms is used.  Raises TailBoundError
    when the bound exceeds tol * max(|value|, 1).
    """
    if tau <= 0:
        raise ValidationError("tau must be positive")
    value = _plain_eval(s.terms, tau)
    T = s.truncation
    if s.envelope:
        env = tuple(sorted(s.envelope.items()))
        tail = _envelope_tail_bound(env, T, tau)
    else:
        ratio = math.exp(-math.pi * tau / 4.0) * 1.5  # 1.5 absorbs slow coefficient growth
        band = [(e, c) for e, c in s.terms.items() if e > 0.9 * T]
        top = sum(abs(c) * math.exp(-math.pi * tau * e / 4.0) for e, c in band)
        tail = top * ratio / (1.0 - ratio) if ratio < 1.0 else math.inf
    if tail > tol * max(abs(value), 1.0):
        raise TailBoundError(tail, tol * max(abs(value), 1.0))
    return value


def jacobi_identity_residual(lam: LatticeSpec, lam_dual: LatticeSpec, tau: float, tol: float = 1e-9) -> float:
    """|Theta_L(i tau) - vol(L*) tau^(-n/2) Theta_L*(i/tau)| as a test harness value."""
    n = lam.dimension
    lhs = eval_qseries(lam.theta, tau, tol=tol)
    rhs = lam_dual.volume * tau ** (-n / 2.0) * eval_qseries(lam_dual.theta, 1.0 / tau, tol=tol)
    return abs(lhs - rhs)
