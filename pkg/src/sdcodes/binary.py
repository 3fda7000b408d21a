"""Binary linear codes as bit-packed generator matrices.

Rows are Python ints (bit i = coordinate i).  Codes are stored in reduced
row echelon form, so two equal codes have identical ``rows`` tuples.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from . import bitops

EXHAUSTIVE_DIM = 22  # above this, minimum weight uses information sets


class CodeError(ValueError):
    pass


def rref_bits(rows, n: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Reduced row echelon form over GF(2); returns (rows, pivot columns).

    Pivots are chosen at the lowest set bit; rows come out sorted by pivot.
    """
    basis: list[int] = []  # row with pivot at pivots[i]
    pivots: list[int] = []
    for r in rows:
        for p, b in zip(pivots, basis):
            if (r >> p) & 1:
                r ^= b
        if r:
            p = (r & -r).bit_length() - 1
            # insert keeping pivots sorted
            idx = 0
            while idx < len(pivots) and pivots[idx] < p:
                idx += 1
            pivots.insert(idx, p)
            basis.insert(idx, r)
            # back-substitute into earlier rows
            for i in range(len(basis)):
                if i != idx and (basis[i] >> p) & 1:
                    basis[i] ^= r
    return tuple(basis), tuple(pivots)


class BinaryCode:
    """A binary [n, k] linear code."""

    __slots__ = ("n", "rows", "pivots", "_words")

    def __init__(self, n: int, rows=()):
        if n < 0 or n > 128:
            raise CodeError(f"unsupported length {n}")
        for r in rows:
            if r >> n:
                raise CodeError("generator row exceeds code length")
        self.n = n
        self.rows, self.pivots = rref_bits(rows, n)
        self._words = None

    @property
    def dim(self) -> int:
        return len(self.rows)

    def __eq__(self, other) -> bool:
        return isinstance(other, BinaryCode) and self.n == other.n and self.rows == other.rows

    def __hash__(self) -> int:
        return hash((self.n, self.rows))

    def __repr__(self) -> str:
        return f"BinaryCode[{self.n},{self.dim}]"

    def contains(self, v: int) -> bool:
        for p, b in zip(self.pivots, self.rows):
            if (v >> p) & 1:
                v ^= b
        return v == 0

    def __le__(self, other: "BinaryCode") -> bool:
        return all(other.contains(r) for r in self.rows)

    def words_packed(self) -> np.ndarray:
        """All 2^k codewords, packed; cached.  Only for dim <= 26."""
        if self._words is None:
            self._words = bitops.all_words(list(self.rows))
        return self._words

    def words(self):
        for row in self.words_packed():
            yield bitops.unpack(row)

    def dual(self) -> "BinaryCode":
        """Dual under the standard inner product."""
        n = self.n
        free = [c for c in range(n) if c not in self.pivots]
        out = []
        for c in free:
            v = 1 << c
            for p, r in zip(self.pivots, self.rows):
                if (r >> c) & 1:
                    v |= 1 << p
            out.append(v)
        return BinaryCode(n, out)

    def is_self_dual(self) -> bool:
        return 2 * self.dim == self.n and self == self.dual()

    def is_self_orthogonal(self) -> bool:
        return all(
            (r1 & r2).bit_count() % 2 == 0
            for i, r1 in enumerate(self.rows)
            for r2 in self.rows[i:]
        )

    def is_doubly_even(self) -> bool:
        """Generator-row criterion: row weights divisible by 4 and pairwise
        even intersections (equivalent to doubly-even for the span)."""
        rows = self.rows
        if any(r.bit_count() % 4 for r in rows):
            return False
        return all(
            (rows[i] & rows[j]).bit_count() % 2 == 0
            for i in range(len(rows))
            for j in range(i + 1, len(rows))
        )

    def punctured(self, cols) -> "BinaryCode":
        keep = [c for c in range(self.n) if c not in set(cols)]
        return BinaryCode(len(keep), [_select_bits(r, keep) for r in self.rows])

    def shortened(self, cols) -> "BinaryCode":
        cols = set(cols)
        mask = 0
        for c in cols:
            mask |= 1 << c
        sub = [r for r in _span_basis_avoiding(self.rows, mask)]
        keep = [c for c in range(self.n) if c not in cols]
        return BinaryCode(len(keep), [_select_bits(r, keep) for r in sub])

    def weight_distribution(self) -> list[int]:
        if self.dim > EXHAUSTIVE_DIM:
            raise CodeError("weight distribution needs dim <= %d" % EXHAUSTIVE_DIM)
        dist = [0] * (self.n + 1)
        if self.dim == 0:
            dist[0] = 1
            return dist
        w = bitops.weights(self.words_packed())
        vals, counts = np.unique(w, return_counts=True)
        for v, c in zip(vals, counts):
            dist[int(v)] = int(c)
        return dist


def _select_bits(r: int, keep) -> int:
    out = 0
    for i, c in enumerate(keep):
        if (r >> c) & 1:
            out |= 1 << i
    return out


def _span_basis_avoiding(rows, mask: int):
    """Basis of the subcode of <rows> with support disjoint from mask."""
    work = list(rows)
    # eliminate the masked coordinates
    done = []
    for c in range(128):
        if not (mask >> c) & 1:
            continue
        piv = None
        for i, r in enumerate(work):
            if (r >> c) & 1:
                piv = i
                break
        if piv is None:
            continue
        p = work.pop(piv)
        work = [r ^ p if (r >> c) & 1 else r for r in work]
    return [r for r in work if r]


def extremal_bound(n: int) -> int:
    """Upper bound 4 + 4*floor(n/24) for the minimum distance of a
    doubly-even self-dual code."""
    return 4 + 4 * (n // 24)


@dataclass
class WeightProfile:
    """Outcome of a weight computation."""

    function: str
    minimum: int
    distribution: list[int] | None = None


# -- minimum weight ---------------------------------------------------


def min_weight(code: BinaryCode) -> int:
    """Exact minimum weight.  Exhaustive for small dimension, otherwise a
    Brouwer-Zimmermann style information-set search with matching lower
    and upper bounds."""
    if code.dim == 0:
        raise CodeError("zero code has no nonzero word")
    if code.dim <= EXHAUSTIVE_DIM:
        return bitops.min_weight_words(list(code.rows))
    return _bz_search(code, target=None)


def min_weight_at_least(code: BinaryCode, bound: int) -> bool:
    """True iff every nonzero codeword has weight >= bound.  May stop as
    soon as a lighter word is found."""
    if code.dim == 0:
        return True
    if code.dim <= EXHAUSTIVE_DIM:
        return bitops.min_weight_words(list(code.rows), bound=bound) >= bound
    return _bz_search(code, target=bound) >= bound


def _information_sets(code: BinaryCode):
    """Greedy disjoint information sets; yields (rows, relative_rank)."""
    n, k = code.n, code.dim
    used: set[int] = set()
    sets = []
    while len(used) < n:
        avoid = 0
        for c in used:
            avoid |= 1 << c
        # RREF preferring pivots outside `used`
        rows = list(code.rows)
        basis, pivots = [], []
        for pref in (False, True):
            for c in range(n):
                if ((avoid >> c) & 1) != pref:
                    continue
                piv = None
                for i, r in enumerate(rows):
                    if (r >> c) & 1:
                        piv = i
                        break
                if piv is None:
                    continue
                p = rows.pop(piv)
                rows = [r ^ p if (r >> c) & 1 else r for r in rows]
                basis = [b ^ p if (b >> c) & 1 else b for b in basis]
                basis.append(p)
                pivots.append(c)
        rel = sum(1 for c in pivots if c not in used)
        if rel == 0:
            break
        used.update(pivots)
        sets.append((basis, rel))
    return sets


def _bz_search(code: BinaryCode, target: int | None) -> int:
    k = code.dim
    sets = _information_sets(code)
    ub = code.n
    for w in range(1, k + 1):
        for basis, _rel in sets:
            for combo in itertools.combinations(basis, w):
                v = 0
                for r in combo:
                    v ^= r
                wt = v.bit_count()
                if wt < ub:
                    ub = wt
                    if target is not None and ub < target:
                        return ub
        lb = sum(max(0, (w + 1) - (k - rel)) for _basis, rel in sets)
        if lb >= ub:
            return ub
        if target is not None and lb >= target:
            return lb
    return ub
