"""Bit-packed helpers for length <= 128 binary vectors.

A vector is a Python int with bit i = coordinate i.  For bulk work the
vectors are packed into numpy uint64 arrays of shape (m, 2) (low word,
high word) so that XOR/popcount fan out through numpy.
"""

from __future__ import annotations

import numpy as np

MASK64 = (1 << 64) - 1


def pack(v: int) -> np.ndarray:
    return np.array([v & MASK64, v >> 64], dtype=np.uint64)


def pack_many(vs) -> np.ndarray:
    out = np.empty((len(vs), 2), dtype=np.uint64)
    for i, v in enumerate(vs):
        out[i, 0] = v & MASK64
        out[i, 1] = v >> 64
    return out


def unpack(row: np.ndarray) -> int:
    return int(row[0]) | (int(row[1]) << 64)


def weights(arr: np.ndarray) -> np.ndarray:
    """Hamming weights of an (m, 2) packed array."""
    return np.bitwise_count(arr).sum(axis=1, dtype=np.int64)


def all_words(rows: list[int], cap_dim: int = 26) -> np.ndarray:
    """All 2^k span words of the given (independent) rows, packed (2^k, 2).

    Index bit j of a word's position selects rows[j].
    """
    k = len(rows)
    if k > cap_dim:
        raise ValueError(f"refusing to enumerate 2^{k} words (cap 2^{cap_dim})")
    out = np.zeros((1 << k, 2), dtype=np.uint64)
    for j, r in enumerate(rows):
        half = 1 << j
        out[half : 2 * half] = out[:half] ^ pack(r)
    return out


def min_weight_words(rows: list[int], bound: int | None = None) -> int:
    """Exact minimum nonzero-span weight by meet-in-the-middle enumeration.

    With ``bound``, returns early with any value < bound once a witness
    below the bound is found (the value returned is still the weight of a
    real codeword).
    """
    k = len(rows)
    if k == 0:
        raise ValueError("zero code has no nonzero word")
    if k <= 26:
        w = weights(all_words(rows))
        w[0] = np.iinfo(np.int64).max
        return int(w.min())
    k1 = k // 2
    a = all_words(rows[:k1])
    b = all_words(rows[k1:])
    best = np.iinfo(np.int64).max
    chunk = max(1, (1 << 22) // len(a))
    for start in range(0, len(b), chunk):
        blk = b[start : start + chunk]
        x = blk[:, None, :] ^ a[None, :, :]
        w = np.bitwise_count(x).sum(axis=2, dtype=np.int64)
        if start == 0:
            w[0, 0] = np.iinfo(np.int64).max
        m = int(w.min())
        if m < best:
            best = m
            if bound is not None and best < bound:
                return best
    return best


def min_dist_to_span(v: int, span_words: np.ndarray) -> int:
    """min over words w of wt(v ^ w) for packed span_words."""
    x = span_words ^ pack(v)
    return int(np.bitwise_count(x).sum(axis=1, dtype=np.int64).min())
