"""Builders for the code families feeding Construction A4.

Nested binary sums:  C = A1 + 2A2 for binary A1 inside A2 is Z4-linear iff
the chain is closed under the element-wise product; |C| = |A1| * |A2|, and
C_dual = A2_dual + 2 A1_dual.  When W_{A1} = W_{A2_dual} and
W_{A2} = W_{A1_dual} (even length), C is formally self-dual.

Double circulant codes:  generator (I | B) with B either a circulant R_eta
(pure) or a bordered block

    ( alpha beta ... beta )
    ( gamma               )
    (  ...     R_{eta-1}  )
    ( gamma               )

where row i of R is the (i-1)-fold right cyclic shift of the seed.  A
self-dual bordered code forces, mod 4:

    i)   alpha^2 + (eta-1) beta^2 = 3
    ii)  alpha*gamma + beta * sum r_i = 0
    iii) gamma^2 + sum r_i^2 = 3
    iv)  (eta-2) gamma^2 + 2 * sum_{i<j} r_i r_j = 0

and no pure double circulant code over Z4 is ever self-dual.

Odd extension (length 2*eta + 1, type 4^eta 2^1):

    ( I_eta  a^T   B  )
    (  0      2   2c  )

self-dual iff a^T a + B B^T = 3I and 2a + 2c B^T = 0 (mod 4).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .binary import BinaryCode
from .codes import Z4Code
from .errors import ClosureError, ValidationError


def closure_check(a1: BinaryCode, a2: BinaryCode) -> bool:
    """A1 inside A2 and all basis products of A1 land in A2.

    Bilinearity over F2 reduces the all-pairs condition to basis pairs;
    membership goes through the parity checks of A2.
    """
    if a1.n != a2.n:
        raise ValidationError("codes must have equal length")
    for row in a1.generator:
        if not a2.contains(row):
            return False
    k = a1.k
    for i in range(k):
        for j in range(i, k):
            if not a2.contains(a1.generator[i] * a1.generator[j] % 2):
                return False
    return True


def nested_sum(a1: BinaryCode, a2: BinaryCode) -> Z4Code:
    """The Z4-linear code A1 + 2A2 with its natural typed generator.

    Rows: the A1 basis embedded in Z4 (order 4), then twice a basis
    completing A1 to A2 (order 2).  Cardinality |A1| * |A2|.
    """
    if a1.n != a2.n:
        raise ValidationError("codes must have equal length")
    for row in a1.generator:
        if not a2.contains(row):
            raise ClosureError(tuple(int(x) for x in row), "not a subcode")
    k = a1.k
    for i in range(k):
        for j in range(i, k):
            prod = a1.generator[i] * a1.generator[j] % 2
            if not a2.contains(prod):
                raise ClosureError(i, j)
    # complete the A1 basis to an A2 basis over F2
    from .binary import f2_rref

    completion = []
    stack = a1.generator.copy()
    for row in a2.generator:
        trial = np.vstack([stack, row]) if stack.size else row.reshape(1, -1)
        _, pivots = f2_rref(trial)
        if len(pivots) > stack.shape[0]:
            completion.append(row)
            stack = trial
    if stack.shape[0] != a2.k:
        raise ValidationError("completion failed; generators not independent")
    top = a1.generator % 4
    bottom = (2 * np.array(completion, dtype=np.int64)) % 4 if completion else np.zeros((0, a1.n), dtype=np.int64)
    return Z4Code(n=a1.n, generator=np.vstack([top, bottom]) if top.size or bottom.size else np.zeros((0, a1.n), dtype=np.int64), k1=a1.k, k2=a2.k - a1.k)


def fsd_precondition_check(a1: BinaryCode, a2: BinaryCode) -> bool:
    """W_{A1} = W_{A2_dual} and W_{A2} = W_{A1_dual}, exactly; even length only."""
    from .enumerators import we

    if a1.n != a2.n:
        raise ValidationError("codes must have equal length")
    if a1.n % 2:
        raise ValidationError("the nested-sum criterion needs even length")
    return we(a1) == we(a2.dual()) and we(a2) == we(a1.dual())


def reed_muller(r: int, v: int) -> BinaryCode:
    """R(r, v): span of all v-variable Boolean monomials of degree <= r.

    Monomials in graded-lex order over x1..xv, evaluation points in binary
    counting order, which pins the generator bit-exactly.
    """
    if not 0 <= r <= v:
        raise ValidationError("order must satisfy 0 <= r <= v")
    n = 2**v
    points = np.array([[(p >> (v - 1 - i)) & 1 for i in range(v)] for p in range(n)], dtype=np.int64)
    rows = []
    from itertools import combinations

    for deg in range(r + 1):
        for mono in combinations(range(v), deg):
            col = np.ones(n, dtype=np.int64)
            for i in mono:
                col &= points[:, i]
            rows.append(col)
    return BinaryCode(n=n, generator=np.array(rows, dtype=np.int64), k=len(rows))


def rm_z4(m: int) -> Z4Code:
    """R(1, m) + 2 R(m-2, m); closure holds for m >= 4 (degree-2 products)."""
    if m < 3:
        raise ValidationError("m must be at least 3")
    return nested_sum(reed_muller(1, m), reed_muller(m - 2, m))


# ---------------------------------------------------------------------------
# double circulant codes and odd extensions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CirculantSeed:
    r: tuple

    def __post_init__(self):
        object.__setattr__(self, "r", tuple(int(x) % 4 for x in self.r))
        if not self.r:
            raise ValidationError("seed must be nonempty")

    @property
    def eta(self) -> int:
        return len(self.r)

    def matrix(self) -> np.ndarray:
        """Row i is the i-fold right cyclic shift of the seed."""
        eta = self.eta
        R = np.zeros((eta, eta), dtype=np.int64)
        for i in range(eta):
            for j in range(eta):
                R[i, j] = self.r[(j - i) % eta]
        return R


@dataclass(frozen=True)
class BorderParams:
    alpha: int
    beta: int
    gamma: int
    r: CirculantSeed

    def __post_init__(self):
        object.__setattr__(self, "alpha", int(self.alpha) % 4)
        object.__setattr__(self, "beta", int(self.beta) % 4)
        object.__setattr__(self, "gamma", int(self.gamma) % 4)

    @property
    def eta(self) -> int:
        return self.r.eta + 1

    def matrix(self) -> np.ndarray:
        eta = self.eta
        B = np.zeros((eta, eta), dtype=np.int64)
        B[0, 0] = self.alpha
        B[0, 1:] = self.beta
        B[1:, 0] = self.gamma
        B[1:, 1:] = self.r.matrix()
        return B


def pdcc(seed: CirculantSeed) -> Z4Code:
    """Pure double circulant code (I_eta | R_eta), type 4^eta."""
    eta = seed.eta
    G = np.hstack([np.eye(eta, dtype=np.int64), seed.matrix()])
    return Z4Code(n=2 * eta, generator=G, k1=eta, k2=0)


def bdcc(params: BorderParams) -> Z4Code:
    """Bordered double circulant code (I_eta | B_eta^bc), type 4^eta."""
    eta = params.eta
    if eta < 2:
        raise ValidationError("bordered construction needs eta >= 2")
    G = np.hstack([np.eye(eta, dtype=np.int64), params.matrix()])
    return Z4Code(n=2 * eta, generator=G, k1=eta, k2=0)


def bdcc_self_dual_conditions(params: BorderParams) -> tuple[bool, bool, bool, bool]:
    """The four necessary self-duality congruences, reported separately."""
    eta = params.eta
    r = params.r.r
    a, b, g = params.alpha, params.beta, params.gamma
    s1 = sum(r)
    s2 = sum(x * x for x in r)
    cross = sum(r[i] * r[j] for i in range(len(r)) for j in range(i + 1, len(r)))
    return (
        (a * a + (eta - 1) * b * b) % 4 == 3,
        (a * g + b * s1) % 4 == 0,
        (g * g + s2) % 4 == 3,
        ((eta - 2) * g * g + 2 * cross) % 4 == 0,
    )


def no_self_dual_pdcc_check(eta: int, budget_eta: int = 8) -> bool:
    """Exhaustively confirm G G^T != O over all 4^eta seeds (a test harness)."""
    if eta > budget_eta:
        raise ValidationError(f"eta = {eta} exceeds the enumeration budget {budget_eta}")
    for idx in range(4**eta):
        seed = CirculantSeed(tuple((idx >> (2 * i)) & 3 for i in range(eta)))
        G = np.hstack([np.eye(eta, dtype=np.int64), seed.matrix()])
        if not ((G @ G.T) % 4).any():
            return False
    return True


@dataclass(frozen=True)
class OddExtensionParams:
    B: np.ndarray  # eta x eta over Z4, typically a DCC block
    a: tuple  # binary, length eta
    c: tuple  # binary, length eta

    def __post_init__(self):
        B = np.asarray(self.B, dtype=np.int64) % 4
        object.__setattr__(self, "B", B)
        object.__setattr__(self, "a", tuple(int(x) for x in self.a))
        object.__setattr__(self, "c", tuple(int(x) for x in self.c))
        eta = B.shape[0]
        if B.shape != (eta, eta):
            raise ValidationError("B must be square")
        if len(self.a) != eta or len(self.c) != eta:
            raise ValidationError("a and c must have length eta")
        if any(x not in (0, 1) for x in self.a + self.c):
            raise ValidationError("a and c must be binary")

    @property
    def eta(self) -> int:
        return self.B.shape[0]


def odd_extension(params: OddExtensionParams) -> Z4Code:
    """Length 2*eta + 1 code of type 4^eta 2^1 (standard form by shape)."""
    eta = params.eta
    a_col = np.array(params.a, dtype=np.int64).reshape(eta, 1)
    top = np.hstack([np.eye(eta, dtype=np.int64), a_col, params.B])
    bottom = np.hstack([np.zeros(eta, dtype=np.int64), [2], 2 * np.array(params.c, dtype=np.int64)]).reshape(1, -1)
    return Z4Code(n=2 * eta + 1, generator=np.vstack([top, bottom]) % 4, k1=eta, k2=1)


def oext_self_dual_check(params: OddExtensionParams) -> bool:
    """a^T a + B B^T = 3I and 2a + 2c B^T = 0, both mod 4."""
    B = params.B
    a = np.array(params.a, dtype=np.int64)
    c = np.array(params.c, dtype=np.int64)
    eta = params.eta
    lhs1 = (np.outer(a, a) + B @ B.T) % 4
    if not np.array_equal(lhs1, 3 * np.eye(eta, dtype=np.int64) % 4):
        return False
    lhs2 = (2 * a + 2 * (c @ B.T)) % 4
    return not lhs2.any()
