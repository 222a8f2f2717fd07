"""Secrecy figures of merit for lattices built from Z4 and binary codes.

For a formally self-dual Z4 code the inverse secrecy function of its A4
lattice collapses to one variable:

    1 / Xi(tau) = swe_C(1+t, (1-t^4)^(1/4), 1-t) / 2^n,
    t(tau) = theta4(i tau) / theta3(i tau)  in (0, 1),

so maximising Xi means minimising the objective
h(t) = swe_C(1+t, (1-t^4)^(1/4), 1-t) on (0,1).  When every b-exponent of
the swe is divisible by 4, h is an exact polynomial in v = t^4 and expands
in the basis (v - v^2)^s as

    h(t) = 2^n * sum_s beta_s (-t^8 + t^4)^s,      s = 0..floor(n/8),

with rational beta_s.  If g(u) = sum_{s>=1} s beta_s u^(s-1) < 0 on
(0, 1/4] (the image of t^4 - t^8), the supremum sits at tau = 1, i.e.
t = 2^(-1/4), and the gain is exactly 1 / sum_s beta_s (1/4)^s.

The Type I gain bound solves S n^T = e1^T where column s+1 of S holds the
first l+1 integer q-coefficients of theta3^(n-8s) * Theta_E8^s and returns
1 / (omega . n) with omega = (1, 3/4, ..., (3/4)^l).

Flatness factor: eps(tau) = vol * tau^(n/2) * Theta(i tau) - 1, and
tau^(n) = max{tau in (0,1): eps <= 1/n} by bisection on the monotone eps.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .enumerators import HomPoly, we_is_formally_self_dual
from .errors import ValidationError
from .theta import (
    DEFAULT_TRUNCATION,
    LatticeSpec,
    eval_qseries,
    theta_a4,
    theta_binary_a,
)

SYMMETRY_T = 2 ** (-0.25)


# ---------------------------------------------------------------------------
# exact univariate helpers (dense coefficient lists, index = degree)
# ---------------------------------------------------------------------------


def _p_add(a, b):
    n = max(len(a), len(b))
    return [(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)]


def _p_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _p_pow(a, k):
    out = [1]
    for _ in range(k):
        out = _p_mul(out, a)
    return out


def h_t_polynomial(p: HomPoly) -> list:
    """h(t) as an exact integer polynomial in t.

    Requires every b-exponent divisible by 4 so that the b-factor
    (1-t^4)^(j/4) is a polynomial.
    """
    if p.nvars != 3:
        raise ValidationError("expected a 3-variable swe")
    if any(j % 4 for (_, j, _k) in p.terms):
        raise ValidationError("a b-exponent is not divisible by 4; h is not polynomial")
    out = [0]
    one_plus = [1, 1]
    one_minus = [1, -1]
    one_minus_t4 = [1, 0, 0, 0, -1]
    for (i, j, k), c in p.sorted_terms():
        term = _p_mul(_p_pow(one_plus, i), _p_pow(one_minus, k))
        term = _p_mul(term, _p_pow(one_minus_t4, j // 4))
        out = _p_add(out, [c * x for x in term])
    return out


@dataclass(frozen=True)
class BetaVector:
    """Exact rational coefficients beta_0..beta_l of the (v - v^2)^s expansion."""

    ell: int
    betas: tuple

    def __post_init__(self):
        if len(self.betas) != self.ell + 1:
            raise ValidationError("need exactly ell + 1 coefficients")


def beta_extract(p_or_h, n: int | None = None) -> BetaVector:
    """Expand h exactly in powers of (v - v^2), v = t^4; error on residuals.

    Accepts a swe (HomPoly) or a raw h(t) coefficient list together with n
    (the ingestion path for codes whose swe is only published as h).
    """
    if isinstance(p_or_h, HomPoly):
        n = p_or_h.degree
        h = h_t_polynomial(p_or_h)
    else:
        if n is None:
            raise ValidationError("raw h polynomials need the code length n")
        h = list(p_or_h)
    if any(h[d] for d in range(len(h)) if d % 4):
        raise ValidationError("h has exponents not divisible by 4; not of the Type I form")
    vpoly = [Fraction(h[4 * s], 2**n) for s in range((len(h) + 3) // 4)]
    ell = n // 8
    basis = [1]  # (v - v^2)^s as v-coefficient lists
    betas = []
    residual = vpoly[:]
    vv = [Fraction(0), Fraction(1), Fraction(-1)]
    basis_poly = [Fraction(1)]
    for s in range(ell + 1):
        beta = residual[s] if s < len(residual) else Fraction(0)
        if basis_poly[s] != 1:  # pragma: no cover - lowest term of (v-v^2)^s is v^s
            raise ValidationError("triangular basis invariant broken")
        betas.append(beta)
        residual = _p_add(residual, [-beta * c for c in basis_poly])
        basis_poly = _p_mul(basis_poly, vv)
    if any(residual):
        raise ValidationError("h does not lie in the span of (v - v^2)^s up to floor(n/8)")
    return BetaVector(ell=ell, betas=tuple(betas))


def _sturm_chain(poly):
    """Sturm chain of a Fraction coefficient list (index = degree)."""

    def norm(p):
        while p and p[-1] == 0:
            p.pop()
        return p

    def deriv(p):
        return [i * c for i, c in enumerate(p)][1:]

    def rem(a, b):
        a = a[:]
        while len(a) >= len(b) and any(a):
            f = a[-1] / b[-1]
            shift = len(a) - len(b)
            for i, c in enumerate(b):
                a[i + shift] -= f * c
            norm(a)
        return a

    chain = [norm([Fraction(c) for c in poly])]
    if not chain[0]:
        return chain
    chain.append(norm(deriv(chain[0])))
    while chain[-1]:
        r = rem(chain[-2][:], chain[-1])
        if not r:
            break
        chain.append([-c for c in r])
    return [p for p in chain if p]


def _sign_changes(chain, x: Fraction) -> int:
    signs = []
    for p in chain:
        v = sum(c * x**i for i, c in enumerate(p))
        if v:
            signs.append(1 if v > 0 else -1)
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def strong_condition_check(b: BetaVector) -> bool:
    """Exactly decide g(u) = sum_{s>=1} s beta_s u^(s-1) < 0 on (0, 1/4].

    g(1/4) < 0 plus an empty Sturm root count on (0, 1/4] settles strict
    negativity on the whole half-open interval.
    """
    g = [s * b.betas[s] for s in range(1, b.ell + 1)]
    while g and g[-1] == 0:
        g.pop()
    if not g:
        return False  # empty or zero sum is not strictly negative
    quarter = Fraction(1, 4)
    g_quarter = sum(c * quarter**i for i, c in enumerate(g))
    if g_quarter >= 0:
        return False
    chain = _sturm_chain(g)
    roots = _sign_changes(chain, Fraction(0)) - _sign_changes(chain, quarter)
    return roots == 0


def gain_from_beta(b: BetaVector) -> Fraction:
    """Exact secrecy gain 1 / sum_s beta_s (1/4)^s."""
    denom = sum(Fraction(b.betas[s]) * Fraction(1, 4) ** s for s in range(b.ell + 1))
    if denom == 0:
        raise ValidationError("beta coefficients sum to zero at v = 1/4")
    return 1 / denom


# ---------------------------------------------------------------------------
# scalar theta values and the t(tau) map
# ---------------------------------------------------------------------------


def theta3_value(tau: float) -> float:
    x = math.exp(-math.pi * tau)
    total, m = 1.0, 1
    while True:
        term = 2.0 * x ** (m * m)
        total += term
        if term < 1e-18 * total:
            return total
        m += 1


def theta4_value(tau: float) -> float:
    x = math.exp(-math.pi * tau)
    total, m = 1.0, 1
    while True:
        term = 2.0 * (-1) ** m * x ** (m * m)
        total += term
        if abs(term) < 1e-18:
            return total
        m += 1


def t_of_tau(tau: float) -> float:
    """t(tau) = theta4(i tau)/theta3(i tau); strictly increasing, t(1) = 2^(-1/4)."""
    if tau <= 0:
        raise ValidationError("tau must be positive")
    return theta4_value(tau) / theta3_value(tau)


def tau_of_t(t: float) -> float:
    """Invert t(tau) by bisection on log tau."""
    if not 0 < t < 1:
        raise ValidationError("t must lie in (0, 1)")
    lo, hi = -12.0, 12.0
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if t_of_tau(math.exp(mid)) < t:
            lo = mid
        else:
            hi = mid
    return math.exp(0.5 * (lo + hi))


# ---------------------------------------------------------------------------
# numeric h evaluation and the gain report
# ---------------------------------------------------------------------------


def gain_objective(p: HomPoly, t) -> float:
    """swe(1+t, (1-t^4)^(1/4), 1-t): 2^n over the secrecy function at t."""
    t = np.asarray(t, dtype=float)
    if np.any((t <= 0) | (t >= 1)):
        raise ValidationError("t must lie in (0, 1)")
    b = (1.0 - t**4) ** 0.25
    total = np.zeros_like(t)
    for (i, j, k), c in p.sorted_terms():
        total = total + float(c) * (1.0 + t) ** i * b**j * (1.0 - t) ** k
    return total if total.shape else float(total)


def _minimize_h(p: HomPoly) -> tuple[float, float]:
    """1024-point scan plus golden-section refinement to |dt| < 1e-10."""
    grid = (np.arange(1024) + 0.5) / 1024.0
    values = gain_objective(p, grid)
    i = int(np.argmin(values))
    lo = float(grid[max(i - 1, 0)])
    hi = float(grid[min(i + 1, 1023)])
    phi = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    c = b - phi * (b - a)
    d = a + phi * (b - a)
    fc, fd = gain_objective(p, c), gain_objective(p, d)
    while b - a > 1e-10:
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - phi * (b - a)
            fc = gain_objective(p, c)
        else:
            a, c, fc = c, d, fd
            d = a + phi * (b - a)
            fd = gain_objective(p, d)
    t_star = float(0.5 * (a + b))
    return t_star, float(gain_objective(p, t_star))


@dataclass(frozen=True)
class SecrecyReport:
    t_star: float
    tau_star: float
    xi: float
    exact_xi: Fraction | None
    at_symmetry_point: bool
    strong_condition_verified: bool
    fsd: bool
    betas: BetaVector | None = None

    def as_dict(self):
        return {
            "t_star": self.t_star,
            "tau_star": self.tau_star,
            "xi": self.xi,
            "exact_xi": str(self.exact_xi) if self.exact_xi is not None else None,
            "at_symmetry_point": self.at_symmetry_point,
            "strong_condition_verified": self.strong_condition_verified,
            "fsd": self.fsd,
            "betas": [str(x) for x in self.betas.betas] if self.betas else None,
        }


def secrecy_gain(p: HomPoly, fsd: bool | None = None) -> SecrecyReport:
    """Minimise the gain objective over (0,1); certify exactly when possible.

    fsd=None triggers the MacWilliams fixed-point check; a non-FSD input
    still yields a report (volume 1 assumed) with the flag cleared.
    """
    from .enumerators import is_formally_self_dual

    if fsd is None:
        fsd = is_formally_self_dual(p)
    n = p.degree
    t_star, h_min = _minimize_h(p)
    xi = 2.0**n / h_min
    at_sym = abs(t_star - SYMMETRY_T) < 1e-6
    exact_xi = None
    strong = False
    betas = None
    if all(j % 4 == 0 for (_, j, _k) in p.terms):
        try:
            betas = beta_extract(p)
        except ValidationError:
            betas = None
        if betas is not None:
            strong = strong_condition_check(betas)
            if strong:
                exact_xi = gain_from_beta(betas)
    return SecrecyReport(
        t_star=t_star,
        tau_star=tau_of_t(t_star),
        xi=xi,
        exact_xi=exact_xi,
        at_symmetry_point=at_sym,
        strong_condition_verified=strong,
        fsd=bool(fsd),
        betas=betas,
    )


def secrecy_gain_binary(w: HomPoly, truncation: int = DEFAULT_TRUNCATION) -> SecrecyReport:
    """Gain of the binary Construction A packing of a length-n code.

    Xi(tau) = theta3(i tau)^n / Theta(i tau); maximised by golden section
    on log tau in [-3, 3].  For an enumerator passing the binary
    MacWilliams fixed point the curve is symmetric about tau = 1, so the
    evaluation folds tau < 1 to 1/tau (which also keeps the truncated
    series inside its certified range).
    """
    if w.nvars != 2:
        raise ValidationError("expected a binary weight enumerator")
    n = w.degree
    if n % 2:
        raise ValidationError("binary packing gain needs even length")
    theta = theta_binary_a(w, truncation)
    fsd = we_is_formally_self_dual(w)

    def xi_at(log_tau: float) -> float:
        tau = math.exp(log_tau)
        if fsd and tau < 1.0:
            tau = 1.0 / tau
        return theta3_value(tau) ** n / eval_qseries(theta, tau)

    phi = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = -3.0, 3.0
    c = b - phi * (b - a)
    d = a + phi * (b - a)
    fc, fd = xi_at(c), xi_at(d)
    while b - a > 1e-10:
        if fc > fd:  # maximise
            b, d, fd = d, c, fc
            c = b - phi * (b - a)
            fc = xi_at(c)
        else:
            a, c, fc = c, d, fd
            d = a + phi * (b - a)
            fd = xi_at(d)
    log_tau = 0.5 * (a + b)
    tau_star = math.exp(abs(log_tau)) if fsd else math.exp(log_tau)
    return SecrecyReport(
        t_star=t_of_tau(tau_star),
        tau_star=tau_star,
        xi=xi_at(log_tau),
        exact_xi=None,
        at_symmetry_point=abs(math.log(tau_star)) < 1e-4,
        strong_condition_verified=False,
        fsd=fsd,
    )


# ---------------------------------------------------------------------------
# Type I upper bound
# ---------------------------------------------------------------------------


def _int_series_mul(a, b, top):
    out = [0] * (top + 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if i + j > top:
                    break
                out[i + j] += x * y
    return out


def _int_series_pow(base, k, top):
    out = [1] + [0] * top
    for _ in range(k):
        out = _int_series_mul(out, base, top)
    return out


def _integer_theta_series(top):
    """theta3, theta4 and Theta_E8 as integer-exponent q-series lists."""
    theta3 = [0] * (top + 1)
    theta4 = [0] * (top + 1)
    theta3[0] = theta4[0] = 1
    m = 1
    while m * m <= top:
        theta3[m * m] = 2
        theta4[m * m] = 2 if m % 2 == 0 else -2
        m += 1
    t3_4 = _int_series_pow(theta3, 4, top)
    t4_4 = _int_series_pow(theta4, 4, top)
    e8 = [
        a - b + c
        for a, b, c in zip(
            _int_series_mul(t3_4, t3_4, top),
            _int_series_mul(t3_4, t4_4, top),
            _int_series_mul(t4_4, t4_4, top),
        )
    ]
    return theta3, e8


def _solve_exact(A, rhs):
    """Gaussian elimination over Fractions; A square, must be invertible."""
    n = len(A)
    M = [[Fraction(A[i][j]) for j in range(n)] + [Fraction(rhs[i])] for i in range(n)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if M[r][col] != 0), None)
        if pivot is None:
            raise ValidationError("singular coefficient matrix")
        M[col], M[pivot] = M[pivot], M[col]
        inv = 1 / M[col][col]
        M[col] = [x * inv for x in M[col]]
        for r in range(n):
            if r != col and M[r][col]:
                f = M[r][col]
                M[r] = [x - f * y for x, y in zip(M[r], M[col])]
    return [M[i][n] for i in range(n)]


def typeI_upper_bound(n: int, check_positivity: bool = True) -> Fraction:
    """Upper bound on the gain of an n-dimensional Type I formally unimodular lattice."""
    if not 2 <= n <= 40:
        raise ValidationError("the bound is tabulated for 2 <= n <= 40 only")
    ell = n // 8
    theta3, e8 = _integer_theta_series(ell)
    cols = []
    for s in range(ell + 1):
        col = _int_series_mul(_int_series_pow(theta3, n - 8 * s, ell), _int_series_pow(e8, s, ell), ell)
        cols.append(col)
    S = [[cols[s][i] for s in range(ell + 1)] for i in range(ell + 1)]
    omega = [Fraction(3, 4) ** s for s in range(ell + 1)]
    x = _solve_exact(S, [1] + [0] * ell)
    if check_positivity:
        for s in range(1, ell + 1):
            xs = _solve_exact(S, [1 if i == s else 0 for i in range(ell + 1)])
            if sum(w * v for w, v in zip(omega, xs)) <= 0:
                raise ValidationError(f"positivity side condition fails at column {s + 1} for n={n}")
    denom = sum(w * v for w, v in zip(omega, x))
    if denom <= 0:
        raise ValidationError("bound denominator not positive")
    return 1 / denom


# ---------------------------------------------------------------------------
# flatness factor
# ---------------------------------------------------------------------------


def flatness_factor(lam: LatticeSpec, tau: float, tol: float = 1e-9) -> float:
    """eps(tau) = vol * tau^(n/2) * Theta(i tau) - 1."""
    if tau <= 0:
        raise ValidationError("tau must be positive")
    return lam.volume * tau ** (lam.dimension / 2.0) * eval_qseries(lam.theta, tau, tol=tol) - 1.0


def tau_threshold(lam: LatticeSpec, tol: float = 1e-6) -> float:
    """max{tau in (0,1): eps(tau) <= 1/n} by bisection on the monotone eps."""
    n = lam.dimension
    target = 1.0 / n
    if flatness_factor(lam, 1.0) <= target:
        return 1.0
    lo = 0.5
    while flatness_factor(lam, lo) > target:
        lo *= 0.5
        if lo < 1e-9:
            raise ValidationError("flatness factor exceeds 1/n arbitrarily close to 0")
    hi = min(2 * lo, 1.0)
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if flatness_factor(lam, mid) <= target:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def a4_lattice(p: HomPoly, size: int | None = None, truncation: int = DEFAULT_TRUNCATION) -> LatticeSpec:
    """LatticeSpec of the A4 lattice of a code with the given swe.

    vol((1/2)(C + 4Z^n)) = 2^n / |C|; formally self-dual codes give 1.
    """
    size = size if size is not None else p.mass
    return LatticeSpec(dimension=p.degree, volume=2.0**p.degree / size, theta=theta_a4(p, truncation))
