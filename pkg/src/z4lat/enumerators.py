"""Exact sparse enumerator polynomials and their MacWilliams transforms.

swe_C(a,b,c) = sum over codewords of a^n0 b^(n1+n3) c^n2, where n_i counts
coordinates equal to i.  Its MacWilliams identity over Z4 is

    swe_C(a,b,c) = (1/|C_dual|) swe_{C_dual}(a+2b+c, a-c, a-2b+c),

and a code whose swe is a fixed point of this substitution (with
|C|^2 = 4^n) is formally self-dual.  The joint weight enumerator of two
binary codes counts per-coordinate bit patterns over codeword pairs:

    jwe_{A1,A2}(a,b,c,d) = sum a^d00 b^d01 c^d10 d^d11,

with the four-variable MacWilliams substitution
(a+b+c+d, a-b+c-d, a+b-c-d, a-b-c+d) scaled by 1/(|A1||A2|).

Coefficients are arbitrary-precision ints (Fractions after a transform);
exponent keys are tuples, kept sorted only when serialised.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .binary import BinaryCode
from .codes import DEFAULT_BUDGET, Z4Code
from .errors import BudgetError, ValidationError
from .kernels import census


@dataclass(frozen=True)
class HomPoly:
    """Homogeneous sparse polynomial: exponent tuple -> coefficient."""

    nvars: int
    degree: int
    terms: dict = field(default_factory=dict)

    def __post_init__(self):
        for exp, coef in self.terms.items():
            if len(exp) != self.nvars or sum(exp) != self.degree:
                raise ValidationError(f"exponent {exp} not homogeneous of degree {self.degree}")
            if coef == 0:
                raise ValidationError("zero coefficients must be dropped")

    @property
    def mass(self):
        return sum(self.terms.values())

    def __eq__(self, other):
        return (
            isinstance(other, HomPoly)
            and self.nvars == other.nvars
            and self.degree == other.degree
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.nvars, self.degree, tuple(sorted(self.terms.items()))))

    def sorted_terms(self):
        return sorted(self.terms.items())

    def map_coeffs(self, f):
        return HomPoly(self.nvars, self.degree, {e: fc for e, c in self.terms.items() if (fc := f(c)) != 0})

    def substitute_series(self, bases):
        """Evaluate with each variable replaced by a q-series (see theta)."""
        from .theta import QSeries, qs_add, qs_cache_pow, qs_mul, qs_scale

        if len(bases) != self.nvars:
            raise ValidationError("one base series per variable required")
        total = None
        for exp, coef in self.sorted_terms():
            term = None
            for base, e in zip(bases, exp):
                if e == 0:
                    continue
                p = qs_cache_pow(base, e)
                term = p if term is None else qs_mul(term, p)
            if term is None:
                term = QSeries.one(bases[0].truncation)
            contrib = qs_scale(term, coef)
            total = contrib if total is None else qs_add(total, contrib)
        if total is None:
            raise ValidationError("empty polynomial has no series value")
        return total


SwePoly = HomPoly  # 3 vars (a, b, c)
JwePoly = HomPoly  # 4 vars (a, b, c, d)
WePoly = HomPoly  # 2 vars (x, y)


def swe_from_census(counts: np.ndarray, n: int) -> SwePoly:
    terms = {}
    for n0 in range(n + 1):
        for n2 in range(n + 1 - n0):
            c = int(counts[n0, n2])
            if c:
                terms[(n0, n - n0 - n2, n2)] = c
    return HomPoly(3, n, terms)


def swe(code: Z4Code, budget: int = DEFAULT_BUDGET) -> SwePoly:
    """Exact symmetrized weight enumerator via the census kernel."""
    return swe_from_census(census(code, budget=budget), code.n)


def we(code: BinaryCode, budget: int = DEFAULT_BUDGET) -> WePoly:
    """Hamming weight enumerator W(x, y) of a binary linear code."""
    if code.size > budget:
        raise BudgetError(required=code.size, budget=budget)
    counts = {}
    for m in code.codeword_masks(budget=budget):
        w = m.bit_count()
        counts[w] = counts.get(w, 0) + 1
    return HomPoly(2, code.n, {(code.n - w, w): c for w, c in counts.items()})


def jwe(a1: BinaryCode, a2: BinaryCode, budget: int = DEFAULT_BUDGET) -> JwePoly:
    """Joint weight enumerator of two equal-length binary codes."""
    if a1.n != a2.n:
        raise ValidationError("joint enumerator needs equal lengths")
    pairs = a1.size * a2.size
    if pairs > budget:
        raise BudgetError(required=pairs, budget=budget)
    n = a1.n
    m1 = a1.codeword_masks(budget=budget)
    m2 = a2.codeword_masks(budget=budget)
    terms = {}
    for x in m1:
        wx = x.bit_count()
        for y in m2:
            d11 = (x & y).bit_count()
            d10 = wx - d11
            d01 = y.bit_count() - d11
            key = (n - d01 - d10 - d11, d01, d10, d11)
            terms[key] = terms.get(key, 0) + 1
    return HomPoly(4, n, terms)


def _poly_mul(p: dict, q: dict, nvars: int) -> dict:
    out = {}
    for e1, c1 in p.items():
        for e2, c2 in q.items():
            key = tuple(e1[i] + e2[i] for i in range(nvars))
            out[key] = out.get(key, 0) + c1 * c2
    return {e: c for e, c in out.items() if c}


_form_pow_cache: dict = {}


def _form_power(form_key, form: dict, e: int, nvars: int) -> dict:
    """Memoized e-th power of a linear form given as a sparse dict."""
    if e == 0:
        return {(0,) * nvars: 1}
    key = (form_key, e)
    if key not in _form_pow_cache:
        _form_pow_cache[key] = _poly_mul(_form_power(form_key, form, e - 1, nvars), form, nvars)
    return _form_pow_cache[key]


def _linear_substitution(p: HomPoly, forms, form_keys) -> dict:
    """Expand p with each variable replaced by a linear form, exactly."""
    out = {}
    for exp, coef in p.terms.items():
        prod = {(0,) * p.nvars: 1}
        for i, e in enumerate(exp):
            if e:
                prod = _poly_mul(prod, _form_power(form_keys[i], forms[i], e, p.nvars), p.nvars)
        for key, c in prod.items():
            out[key] = out.get(key, 0) + coef * c
    return {e: c for e, c in out.items() if c}


_SWE_FORMS = (
    {(1, 0, 0): 1, (0, 1, 0): 2, (0, 0, 1): 1},  # a + 2b + c
    {(1, 0, 0): 1, (0, 0, 1): -1},  # a - c
    {(1, 0, 0): 1, (0, 1, 0): -2, (0, 0, 1): 1},  # a - 2b + c
)

_JWE_FORMS = (
    {(1, 0, 0, 0): 1, (0, 1, 0, 0): 1, (0, 0, 1, 0): 1, (0, 0, 0, 1): 1},
    {(1, 0, 0, 0): 1, (0, 1, 0, 0): -1, (0, 0, 1, 0): 1, (0, 0, 0, 1): -1},
    {(1, 0, 0, 0): 1, (0, 1, 0, 0): 1, (0, 0, 1, 0): -1, (0, 0, 0, 1): -1},
    {(1, 0, 0, 0): 1, (0, 1, 0, 0): -1, (0, 0, 1, 0): -1, (0, 0, 0, 1): 1},
)


def macwilliams_swe(p: SwePoly, dual_size: int | None = None) -> HomPoly:
    """(1/|C|) p(a+2b+c, a-c, a-2b+c), expanded exactly over rationals.

    The divisor defaults to the total mass of p (the code size for genuine
    enumerators); passing dual_size pins it to 4^n / dual_size instead.
    Applying the transform twice with matched sizes is the identity.
    """
    if p.nvars != 3:
        raise ValidationError("swe transform expects 3 variables")
    divisor = 4**p.degree // dual_size if dual_size else p.mass
    raw = _linear_substitution(p, _SWE_FORMS, ("swe0", "swe1", "swe2"))
    return HomPoly(3, p.degree, {e: v for e, c in raw.items() if (v := Fraction(c, divisor)) != 0})


def macwilliams_jwe(p: JwePoly, sizes: tuple[int, int] | None = None) -> HomPoly:
    """Four-variable MacWilliams substitution scaled by 1/(|A1||A2|)."""
    if p.nvars != 4:
        raise ValidationError("jwe transform expects 4 variables")
    divisor = sizes[0] * sizes[1] if sizes else p.mass
    raw = _linear_substitution(p, _JWE_FORMS, ("jwe0", "jwe1", "jwe2", "jwe3"))
    return HomPoly(4, p.degree, {e: v for e, c in raw.items() if (v := Fraction(c, divisor)) != 0})


def integerize(p: HomPoly) -> HomPoly:
    """Cast rational coefficients back to ints; error if any denominator remains."""
    out = {}
    for e, c in p.terms.items():
        f = Fraction(c)
        if f.denominator != 1:
            raise ValidationError(f"coefficient {c} at {e} is not an integer")
        out[e] = int(f)
    return HomPoly(p.nvars, p.degree, out)


def is_formally_self_dual(code_or_swe, n: int | None = None, size: int | None = None, budget: int = DEFAULT_BUDGET) -> bool:
    """swe equals its own MacWilliams transform and |C|^2 = 4^n.

    The fixed point is decided in integer arithmetic: the substituted
    expansion must equal mass * swe term by term.
    """
    if isinstance(code_or_swe, Z4Code):
        code = code_or_swe
        if 2 * code.k1 + code.k2 != code.n:
            return False
        p = swe(code, budget=budget)
    else:
        p = code_or_swe
        size = size if size is not None else p.mass
        if size * size != 4**p.degree:
            return False
    raw = _linear_substitution(p, _SWE_FORMS, ("swe0", "swe1", "swe2"))
    mass = p.mass
    return raw == {e: mass * c for e, c in p.terms.items()}


def euclidean_census(counts: np.ndarray, n: int):
    """Multiset {squared Euclidean weight: count} from a census array."""
    out = {}
    for n0 in range(n + 1):
        for n2 in range(n + 1 - n0):
            c = int(counts[n0, n2])
            if c:
                e = n - n0 + 3 * n2  # (n1+n3) + 4*n2
                out[e] = out.get(e, 0) + c
    return out


def classify_type(code: Z4Code, budget: int = DEFAULT_BUDGET) -> str:
    """'II' / 'I' / 'neither' by Euclidean weights mod 8 and 4; 'not-fsd' first.

    Type II: every codeword weight divisible by 8; Type I: divisible by 4
    but not all by 8.  Searched codes routinely contain weights not
    divisible by 4 at all, which is the distinct 'neither' outcome.
    """
    counts = census(code, budget=budget)
    p = swe_from_census(counts, code.n)
    if not (2 * code.k1 + code.k2 == code.n and is_formally_self_dual(p)):
        return "not-fsd"
    weights_mod = {e % 8 for e in euclidean_census(counts, code.n)}
    if weights_mod == {0}:
        return "II"
    if all(m % 4 == 0 for m in weights_mod):
        return "I"
    return "neither"


def min_distances(code: Z4Code, budget: int = DEFAULT_BUDGET) -> tuple[int, int]:
    """(min Lee, min squared Euclidean) weight over nonzero codewords."""
    counts = census(code, budget=budget)
    n = code.n
    best_lee = None
    best_euc = None
    for n0 in range(n + 1):
        for n2 in range(n + 1 - n0):
            if not counts[n0, n2] or (n0 == n and n2 == 0):
                continue
            lee = n - n0 + n2
            euc = n - n0 + 3 * n2
            best_lee = lee if best_lee is None else min(best_lee, lee)
            best_euc = euc if best_euc is None else min(best_euc, euc)
    if best_lee is None:
        raise ValidationError("the zero code has no nonzero codeword")
    return best_lee, best_euc


def gray_we_from_swe(p: SwePoly) -> WePoly:
    """Weight enumerator of the Gray image: W(x,y) = swe(x^2, xy, y^2).

    The Gray map 0->00, 1->01, 2->11, 3->10 doubles the length, so the
    degree doubles; total coefficient mass is preserved.
    """
    if p.nvars != 3:
        raise ValidationError("expected a 3-variable swe")
    out = {}
    for (i, j, k), c in p.terms.items():
        key = (2 * i + j, j + 2 * k)
        out[key] = out.get(key, 0) + c
    return HomPoly(2, 2 * p.degree, {e: c for e, c in out.items() if c})


def we_is_formally_self_dual(w: WePoly) -> bool:
    """Binary MacWilliams fixed point: W = 2^(-n/2) W(x+y, x-y)."""
    if w.nvars != 2:
        raise ValidationError("expected a 2-variable weight enumerator")
    if w.mass**2 != 2**w.degree:
        return False
    forms = ({(1, 0): 1, (0, 1): 1}, {(1, 0): 1, (0, 1): -1})
    raw = _linear_substitution(w, forms, ("we0", "we1"))
    return {e: Fraction(c, w.mass) for e, c in raw.items() if c} == {
        e: Fraction(c) for e, c in w.terms.items()
    }
