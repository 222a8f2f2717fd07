"""Exact arithmetic for linear codes over Z4 = {0,1,2,3}.

A code is an additive subgroup of Z4^n.  Every code is permutation
equivalent to one with a generator in standard form

    ( I_k1   A    B  )
    (  0   2 I_k2 2C )

with A, C binary and B over Z4; such a code has type 4^k1 2^k2 and
4^k1 * 2^k2 codewords.  The dual of a standard-form code is generated by

    ( -B^T - C^T A^T   C^T    I_{n-k1-k2} )
    (      2 A^T      2 I_k2       0      )

and has type 4^(n-k1-k2) 2^k2.

Z4Code stores a *typed presentation*: the first k1 generator rows have
additive order 4, the last k2 rows have order 2 (all entries even), and the
message map Z4^k1 x Z2^k2 -> codewords is injective.  Standard-form
generators satisfy this, and so do the dual generators above and the
double-circulant / odd-extension generators built in `constructions`,
which lets those keep their printed matrices byte-exactly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, NamedTuple

import numpy as np

from .errors import BudgetError, ValidationError

DEFAULT_BUDGET = 2**26


class WeightTriple(NamedTuple):
    hamming: int
    lee: int
    euclidean: int


def weights(x) -> WeightTriple:
    """Hamming, Lee and squared-Euclidean weight of a Z4 vector.

    lee(x)    = sum_i min(x_i, 4 - x_i)
    euclid(x) = sum_i min(x_i, 4 - x_i)^2
    """
    v = np.asarray(x, dtype=np.int64) % 4
    lee_per = np.minimum(v, 4 - v)
    return WeightTriple(
        hamming=int(np.count_nonzero(v)),
        lee=int(lee_per.sum()),
        euclidean=int((lee_per**2).sum()),
    )


def _as_z4_matrix(M) -> np.ndarray:
    A = np.asarray(M, dtype=np.int64)
    if A.ndim != 2:
        raise ValidationError("generator must be a 2-D matrix")
    return A % 4


@dataclass(frozen=True, eq=False)
class Z4Code:
    """A Z4-linear code with a typed generator presentation."""

    n: int
    generator: np.ndarray  # (k1 + k2) x n, first k1 rows order 4, last k2 order 2
    k1: int
    k2: int
    column_permutation: tuple = field(default=None)  # output col j = input col perm[j]

    def __post_init__(self):
        G = _as_z4_matrix(self.generator)
        object.__setattr__(self, "generator", G)
        if G.shape != (self.k1 + self.k2, self.n):
            raise ValidationError("generator shape disagrees with (k1, k2, n)")
        if self.k2 and (G[self.k1 :] % 2).any():
            raise ValidationError("order-2 generator rows must have even entries")
        if self.column_permutation is None:
            object.__setattr__(self, "column_permutation", tuple(range(self.n)))

    @property
    def size(self) -> int:
        return 4**self.k1 * 2**self.k2

    @property
    def type_str(self) -> str:
        return f"4^{self.k1} 2^{self.k2}"

    def codeword(self, message) -> np.ndarray:
        """Codeword for one message in Z4^k1 x Z2^k2."""
        m = np.asarray(message, dtype=np.int64)
        return (m @ self.generator) % 4


def standard_form(M) -> Z4Code:
    """Reduce a generator matrix over Z4 to standard form.

    Column scan is left to right.  A column gets a unit pivot (1 or 3,
    normalised by multiplying the row by 3) whenever one exists among the
    unprocessed rows; columns offering only 2s are deferred to a second
    pass that builds the 2I_k2 block.  Duplicate and zero rows vanish
    during elimination.  The permutation moving pivot columns to the front
    is recorded so callers can undo it; the row span of the permuted input
    equals the row span of the returned generator.
    """
    G = _as_z4_matrix(M).copy()
    k, n = G.shape

    processed: list[int] = []  # rows already used as pivots
    unit_cols: list[int] = []
    two_cols: list[int] = []
    unit_rows: list[int] = []
    two_rows: list[int] = []
    free = list(range(k))

    def eliminate(pivot_row: int, col: int, unit: bool):
        for r in range(k):
            if r == pivot_row:
                continue
            v = G[r, col]
            if unit:
                if v:
                    G[r] = (G[r] - v * G[pivot_row]) % 4
            elif v == 2:
                G[r] = (G[r] - G[pivot_row]) % 4

    deferred = []
    for col in range(n):
        pivot = next((r for r in free if G[r, col] % 2 == 1), None)
        if pivot is None:
            if any(G[r, col] for r in free):
                deferred.append(col)
            continue
        if G[pivot, col] == 3:
            G[pivot] = (G[pivot] * 3) % 4
        eliminate(pivot, col, unit=True)
        unit_cols.append(col)
        unit_rows.append(pivot)
        free.remove(pivot)

    # No units remain among the free rows, so they are entirely even:
    # the deferred columns get F2-style pivots with 2 on the diagonal.
    for col in deferred:
        pivot = next((r for r in free if G[r, col] == 2), None)
        if pivot is None:
            continue
        eliminate(pivot, col, unit=False)
        two_cols.append(col)
        two_rows.append(pivot)
        free.remove(pivot)

    k1, k2 = len(unit_cols), len(two_cols)
    perm = unit_cols + two_cols + [c for c in range(n) if c not in unit_cols and c not in two_cols]
    out = G[np.array(unit_rows + two_rows, dtype=np.intp)][:, np.array(perm, dtype=np.intp)] if k1 + k2 else np.zeros((0, n), dtype=np.int64)

    # Force the A block binary: entries above a 2-pivot reduce mod 2.
    for j in range(k1, k1 + k2):
        two_row = k1 + (j - k1)
        for r in range(k1):
            if out[r, j] >= 2:
                out[r] = (out[r] - out[two_row]) % 4

    for r in free:
        if G[r].any():  # pragma: no cover - elimination always clears spanned rows
            raise ValidationError("row reduction left a nonzero unpivoted row")

    return Z4Code(n=n, generator=out, k1=k1, k2=k2, column_permutation=tuple(perm))


def _standard_blocks(code: Z4Code):
    """Split a standard-form generator into its A, B, C blocks; validate shape."""
    k1, k2, n = code.k1, code.k2, code.n
    G = code.generator
    if not np.array_equal(G[:k1, :k1], np.eye(k1, dtype=np.int64)):
        raise ValidationError("generator is not in standard form (I block)")
    if k2:
        if not np.array_equal(G[k1:, k1 : k1 + k2], 2 * np.eye(k2, dtype=np.int64)):
            raise ValidationError("generator is not in standard form (2I block)")
        if G[k1:, :k1].any():
            raise ValidationError("generator is not in standard form (zero block)")
    A = G[:k1, k1 : k1 + k2] % 4
    B = G[:k1, k1 + k2 :] % 4
    C = (G[k1:, k1 + k2 :] // 2) % 2
    if (A > 1).any():
        raise ValidationError("generator is not in standard form (A not binary)")
    return A, B, C


def dual_code(code: Z4Code) -> Z4Code:
    """Dual of a standard-form code, in the same coordinates.

    Rejects presentations that are not in standard form.  The returned
    generator is the block matrix quoted in the module docstring, which is
    itself a valid typed presentation (type 4^(n-k1-k2) 2^k2).
    """
    A, B, C = _standard_blocks(code)
    k1, k2, n = code.k1, code.k2, code.n
    k3 = n - k1 - k2
    top = np.hstack([(-B.T - C.T @ A.T) % 4, C.T % 4, np.eye(k3, dtype=np.int64)])
    bot = np.hstack([(2 * A.T) % 4, 2 * np.eye(k2, dtype=np.int64), np.zeros((k2, k3), dtype=np.int64)])
    return Z4Code(
        n=n,
        generator=np.vstack([top, bot]) % 4,
        k1=k3,
        k2=k2,
        column_permutation=code.column_permutation,
    )


def enumerate_codewords(code: Z4Code, start: int = 0, stop: int | None = None, budget: int = DEFAULT_BUDGET) -> Iterator[np.ndarray]:
    """Yield codewords for message indices [start, stop).

    Messages sweep Z4^k1 x Z2^k2 in mixed-radix lexicographic order (Z4
    digits first, last digit fastest), so the stream is deterministic and
    parallel consumers can partition the index range.
    """
    M = code.size
    if M > budget:
        raise BudgetError(required=M, budget=budget)
    if stop is None:
        stop = M
    if not (0 <= start <= stop <= M):
        raise ValidationError(f"index range [{start}, {stop}) outside [0, {M})")
    radices = [4] * code.k1 + [2] * code.k2
    k = len(radices)
    G = code.generator
    for idx in range(start, stop):
        digits = np.zeros(k, dtype=np.int64)
        rem = idx
        for i in range(k - 1, -1, -1):
            rem, digits[i] = divmod(rem, radices[i])
        yield (digits @ G) % 4 if k else np.zeros(code.n, dtype=np.int64)


def codeword_set(code: Z4Code, budget: int = DEFAULT_BUDGET) -> set:
    """All codewords as a set of tuples (small codes only)."""
    return {tuple(int(v) for v in w) for w in enumerate_codewords(code, budget=budget)}


def is_self_dual(code: Z4Code) -> bool:
    """Exact self-duality: G G^T = 0 (mod 4) plus |C|^2 = 4^n.

    G G^T = 0 gives C a subset of its dual; matching cardinalities force
    equality, so no enumeration is needed.
    """
    G = code.generator
    if (G @ G.T % 4).any():
        return False
    return 2 * code.k1 + code.k2 == code.n
