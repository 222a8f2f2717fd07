"""Binary linear codes: F2 row reduction, duals, membership, enumeration.

Codewords are also handled as bitmask integers (bit j = coordinate j),
which keeps pair censuses for joint weight enumerators cheap.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import BudgetError, ValidationError


def f2_rref(M) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form over F2; returns (R, pivot_columns)."""
    A = (np.asarray(M, dtype=np.int64) % 2).copy()
    if A.ndim != 2:
        raise ValidationError("binary generator must be a 2-D matrix")
    rows, cols = A.shape
    pivots = []
    r = 0
    for c in range(cols):
        pivot = next((i for i in range(r, rows) if A[i, c]), None)
        if pivot is None:
            continue
        A[[r, pivot]] = A[[pivot, r]]
        for i in range(rows):
            if i != r and A[i, c]:
                A[i] ^= A[r]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return A[: len(pivots)], pivots


@dataclass(frozen=True, eq=False)
class BinaryCode:
    """An [n, 2^k] binary linear code given by an independent-row generator."""

    n: int
    generator: np.ndarray
    k: int

    @classmethod
    def from_matrix(cls, M, n: int | None = None) -> "BinaryCode":
        A = np.asarray(M, dtype=np.int64) % 2
        if A.size == 0:
            if n is None:
                raise ValidationError("zero code needs an explicit length")
            return cls(n=n, generator=np.zeros((0, n), dtype=np.int64), k=0)
        R, pivots = f2_rref(A)
        return cls(n=A.shape[1], generator=R, k=len(pivots))

    @classmethod
    def zero(cls, n: int) -> "BinaryCode":
        return cls(n=n, generator=np.zeros((0, n), dtype=np.int64), k=0)

    @classmethod
    def full(cls, n: int) -> "BinaryCode":
        return cls(n=n, generator=np.eye(n, dtype=np.int64), k=n)

    @property
    def size(self) -> int:
        return 2**self.k

    def contains(self, v) -> bool:
        """Membership by reduction against the rref generator."""
        w = (np.asarray(v, dtype=np.int64) % 2).copy()
        if w.shape != (self.n,):
            raise ValidationError("vector length mismatch")
        R, pivots = f2_rref(self.generator) if self.k else (self.generator, [])
        for row, c in zip(R, pivots):
            if w[c]:
                w ^= row
        return not w.any()

    def dual(self) -> "BinaryCode":
        """Parity-check dual via the systematic construction on the rref."""
        R, pivots = f2_rref(self.generator)
        n, k = self.n, len(pivots)
        others = [c for c in range(n) if c not in pivots]
        H = np.zeros((n - k, n), dtype=np.int64)
        for i, c in enumerate(others):
            H[i, c] = 1
            for r, p in enumerate(pivots):
                H[i, p] = R[r, c]
        return BinaryCode(n=n, generator=H, k=n - k)

    def codeword_masks(self, budget: int = 2**26) -> list[int]:
        """All codewords as bitmask ints, message order with last digit fastest."""
        if self.size > budget:
            raise BudgetError(required=self.size, budget=budget)
        rows = [int("".join(str(int(b)) for b in reversed(row)), 2) if row.any() else 0 for row in self.generator]
        masks = [0]
        for row in rows:  # doubling keeps the last message digit fastest
            masks = [x for m in masks for x in (m, m ^ row)]
        return masks
