# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled codeword census over Z4.

Sweeps all 4^k1 * 2^k2 messages with an odometer: each increment (carries
included) adds one generator row to the running codeword mod 4, so the
whole sweep costs O(n) amortised per codeword.  The census counts
codewords by (#zeros, #twos); together with n this determines the swe
monomial and both the Lee and squared-Euclidean weight of a word.
"""

import numpy as np

cimport numpy as cnp

cnp.import_array()


def census(cnp.uint8_t[:, ::1] G, int k1, int k2):
    """Return an (n+1) x (n+1) int64 array: counts[n0][n2] over all codewords."""
    cdef int k = k1 + k2
    cdef int n = G.shape[1]
    cdef cnp.ndarray[cnp.int64_t, ndim=2] counts_arr = np.zeros((n + 1, n + 1), dtype=np.int64)
    cdef cnp.int64_t[:, ::1] counts = counts_arr
    cdef cnp.uint8_t[::1] cw = np.zeros(n, dtype=np.uint8)
    cdef cnp.uint8_t[::1] digits = np.zeros(k if k else 1, dtype=np.uint8)
    cdef long long M = 1
    cdef int i, j, n0, n2, radix
    cdef long long step
    for i in range(k1):
        M *= 4
    for i in range(k2):
        M *= 2

    counts[n][0] += 1  # zero codeword
    for step in range(M - 1):
        i = k - 1
        while True:
            radix = 2 if i >= k1 else 4
            for j in range(n):
                cw[j] = (cw[j] + G[i, j]) & 3
            digits[i] += 1
            if digits[i] == radix:
                digits[i] = 0
                i -= 1
            else:
                break
        n0 = 0
        n2 = 0
        for j in range(n):
            if cw[j] == 0:
                n0 += 1
            elif cw[j] == 2:
                n2 += 1
        counts[n0][n2] += 1
    return counts_arr
