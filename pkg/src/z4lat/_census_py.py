"""Pure-Python (numpy) fallback for the codeword census kernel.

Splits the message space into an outer odometer over the leading digits
and an inner block of at most 2^16 messages whose codeword contributions
are tabulated once; each outer step shifts the whole block by one outer
codeword and bin-counts (#zeros, #twos) vectorised.
"""

import numpy as np

_BLOCK_DIGITS = 8  # inner digits; at radix 4 this caps blocks at 65536 rows


def _message_block(radices):
    """All messages for the given radices, last digit fastest."""
    size = 1
    for r in radices:
        size *= r
    block = np.zeros((size, len(radices)), dtype=np.uint8)
    rep = size
    for i, r in enumerate(radices):
        rep //= r
        block[:, i] = np.tile(np.repeat(np.arange(r, dtype=np.uint8), rep), size // (rep * r))
    return block


def census(G, k1, k2):
    G = np.asarray(G, dtype=np.uint8)
    k = k1 + k2
    n = G.shape[1]
    counts = np.zeros((n + 1) * (n + 1), dtype=np.int64)
    radices = [4] * k1 + [2] * k2

    split = max(k - _BLOCK_DIGITS, 0)
    outer_rad = radices[:split]
    inner = _message_block(radices[split:]) if k - split else np.zeros((1, 0), dtype=np.uint8)
    inner_cw = (inner.astype(np.int64) @ G[split:].astype(np.int64)) % 4 if k - split else np.zeros((1, n), dtype=np.int64)

    outer_cw = np.zeros(n, dtype=np.int64)
    outer_digits = [0] * split
    outer_steps = 1
    for r in outer_rad:
        outer_steps *= r

    for step in range(outer_steps):
        if step:
            i = split - 1
            while True:
                outer_cw = (outer_cw + G[i]) % 4
                outer_digits[i] += 1
                if outer_digits[i] == outer_rad[i]:
                    outer_digits[i] = 0
                    i -= 1
                else:
                    break
        block = (inner_cw + outer_cw) % 4
        n0 = (block == 0).sum(axis=1)
        n2 = (block == 2).sum(axis=1)
        counts += np.bincount(n0 * (n + 1) + n2, minlength=(n + 1) * (n + 1))
    return counts.reshape(n + 1, n + 1)
