"""Fast complete canonical keys for monomially-acting column groups.

The generic canonizer in :mod:`sdcodes.canon` backtracks over column
orderings and is far too slow for the millions of small component codes
the search pipelines have to deduplicate.  This module computes a
different (but equally complete) invariant that exploits the span
structure of a subfield-linear code:

For a code C <= K^l, linear over a subfield S, acted on by a per-column
"cell" group H (value tables on K), the full symmetric group on the l
columns and an optional list of global value tables (field automorphisms
and/or scalars), consider ordered S-bases (w_1, ..., w_d) drawn from the
codeword span of a globally-transformed copy of C.  Every column j then
carries the base-|K| encoding of its digit string (w_1[j], ..., w_d[j]),
minimized over the cell group ("cellmin") and the columns are read as a
sorted multiset.  The key of C is the lexicographic minimum of this
sorted vector over all global tables and all ordered bases.

Completeness: equal keys exhibit bases of the two spans whose cellmin
column multisets agree, i.e. the column tuples agree up to cell maps and
a column permutation — exactly an equivalence under the acting group.
Invariance: the key is defined through the code's span alone, which any
group element maps onto the span of the image code.

The minimum is computed hierarchically: the tie set of basis prefixes
achieving the minimal sorted signature at depth i is refined to depth
i+1, so only argmin prefixes are ever extended.  Per column the search
keeps the set of cells still achieving the running cellmin; a cell that
is non-minimal on a prefix can never become minimal on an extension
because encodings compare prefix-first.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from .fields import GF, galois_group
from .component import subfield_embedding


class SpanKeyError(ValueError):
    pass


@lru_cache(maxsize=None)
def _scale_index_table(sub_k: int, dim: int) -> np.ndarray:
    """sc[lam, i] = index of lam * (coefficient vector i), digits base 2^sub_k.

    Index addition is plain XOR (subfield addition is XOR on every digit).
    """
    S = GF(sub_k)
    size = S.size
    n = size**dim
    idx = np.arange(n, dtype=np.int64)
    digits = []
    t = idx.copy()
    for _ in range(dim):
        digits.append(t % size)
        t //= size
    out = np.zeros((size, n), dtype=np.int64)
    for lam in range(size):
        tab = np.array([S.mul(lam, v) for v in range(size)], dtype=np.int64)
        acc = np.zeros(n, dtype=np.int64)
        mult = 1
        for d in digits:
            acc += tab[d] * mult
            mult *= size
        out[lam] = acc
    return out


class SpanKey:
    """Key engine for codes over GF(2^field_k), linear over GF(2^sub_k)."""

    def __init__(self, field_k: int, length: int, sub_k: int | None = None,
                 cells=None, global_tables=None, tie_cap: int = 200000):
        self.K = GF(field_k)
        self.length = length
        self.sub_k = field_k if sub_k is None else sub_k
        self.S = GF(self.sub_k)
        self.emb, _ = subfield_embedding(field_k, self.sub_k)
        ident = tuple(range(self.K.size))
        self.cells = np.array(sorted({tuple(c) for c in (cells or [ident])} | {ident}),
                              dtype=np.int64)
        self.ncells = self.cells.shape[0]
        self.global_tables = [tuple(t) for t in (global_tables or [ident])]
        self.tie_cap = tie_cap
        # per-column multiplication table for span construction
        self.mul = np.array(self.K.mul_table, dtype=np.int64)
        self.full_cell_mask = (1 << self.ncells) - 1
        # When the cell group is exactly the scalar group of the full field
        # (and the code is full-field linear), states that differ only by a
        # single scalar applied to the chosen basis words are genuinely
        # future-equivalent: the code span is closed under that scalar, so
        # candidate value multisets match level by level.  Such twins can be
        # collapsed by minimizing the cell-activity masks over a uniform
        # scalar relabeling.  (Not valid for general cell groups, where a
        # global value map need not fix the code.)
        self._scalar_trans = None
        if self.sub_k == field_k:
            scalar_maps = {tuple(self.K.mul(s, x) for x in range(self.K.size))
                           for s in range(1, self.K.size)}
            if {tuple(c) for c in self.cells} == scalar_maps:
                cell_of = {tuple(c): i for i, c in enumerate(self.cells.tolist())}
                scalar_of = [next(s for s in range(1, self.K.size)
                                  if self.K.mul(s, 1) == c[1])
                             for c in self.cells.tolist()]
                trans = []
                for lam in range(2, self.K.size):
                    perm = [cell_of[tuple(self.K.mul(self.K.mul(scalar_of[i], lam), x)
                                          for x in range(self.K.size))]
                            for i in range(self.ncells)]
                    trans.append(np.array(perm, dtype=np.int64))
                self._scalar_trans = trans

    # -- span ---------------------------------------------------------

    def _span_words(self, rows) -> np.ndarray:
        """(|S|^d, l) digit array of the S-span; word i has coefficient
        digits of i (base |S|, row 0 least significant)."""
        words = np.zeros((1, self.length), dtype=np.int64)
        for r in rows:
            ra = np.array(r, dtype=np.int64)
            blocks = [words ^ self.mul[self.emb[lam], ra][None, :] if lam else words
                      for lam in range(self.S.size)]
            words = np.concatenate(blocks, axis=0)
        return words

    # -- hierarchical minimization -------------------------------------

    def key(self, rows) -> tuple:
        rows = [tuple(r) for r in rows]
        d = len(rows)
        if d == 0:
            return (0,)
        if any(len(r) != self.length for r in rows):
            raise SpanKeyError("row length mismatch")
        best = None
        for gt in self.global_tables:
            g = np.array(gt, dtype=np.int64)
            grows = [tuple(int(g[x]) for x in r) for r in rows]
            k = self._key_one(grows, d)
            if best is None or k < best:
                best = k
        return (d,) + best

    def _key_one(self, rows, d: int) -> tuple:
        W = self._span_words(rows)
        nwords = W.shape[0]
        sc = _scale_index_table(self.sub_k, d)
        levels: list[tuple] = []
        # a state: (enc (l,), cellmask (l,) int, span frozenset, signature-history)
        enc0 = np.zeros(self.length, dtype=np.int64)
        mask0 = np.full(self.length, self.full_cell_mask, dtype=np.int64)
        states = [(enc0, mask0, frozenset({0}))]
        for _level in range(d):
            best_sig = None
            winners = []
            for enc, cmask, span in states:
                keep = np.ones(nwords, dtype=bool)
                keep[np.fromiter(span, count=len(span), dtype=np.int64)] = False
                keep[0] = False
                cand = np.nonzero(keep)[0]
                if cand.size == 0:
                    raise SpanKeyError("span exhausted before reaching full rank")
                digs = W[cand]  # (m, l)
                vals = self.cells[:, digs]  # (ncells, m, l)
                active = ((cmask[None, None, :] >> np.arange(self.ncells)[:, None, None]) & 1).astype(bool)
                vals = np.where(active, vals, np.int64(self.K.size))
                s = vals.min(axis=0)  # (m, l)
                tot = enc[None, :] * self.K.size + s
                sig = np.sort(tot, axis=1)
                order = np.lexsort(sig.T[::-1])
                msig = sig[order[0]]
                if best_sig is not None and tuple(msig) > best_sig:
                    continue
                ties = np.nonzero((sig == msig[None, :]).all(axis=1))[0]
                t = tuple(int(x) for x in msig)
                if best_sig is None or t < best_sig:
                    best_sig = t
                    winners = []
                for ti in ties:
                    winners.append((enc, cmask, span, int(cand[ti]),
                                    tot[ti], s[ti], vals[:, ti, :]))
            levels.append(best_sig)
            # build next states, deduplicating future-equivalent ones
            nxt = {}
            for enc, cmask, span, widx, tot_row, s_row, vals_row in winners:
                new_enc = tot_row
                new_mask = ((vals_row == s_row[None, :]).astype(np.int64)
                            * (1 << np.arange(self.ncells))[:, None]).sum(axis=0)
                # cells no longer active must stay inactive
                new_mask &= cmask
                new_span = frozenset(int(x) for x in
                                     np.bitwise_xor.outer(sc[:, widx],
                                                          np.array(sorted(span), dtype=np.int64)).ravel())
                # duplicate states (same per-column data in the same column
                # order, same subspan) are literally the same search node;
                # column order must be respected because candidates are
                # fixed words, not multisets
                colkey = tuple(new_mask.tolist())
                if self._scalar_trans is not None:
                    bits = (new_mask[None, :] >> np.arange(self.ncells)[:, None]) & 1
                    for perm in self._scalar_trans:
                        tmask = (bits * (1 << perm)[:, None]).sum(axis=0)
                        ck = tuple(tmask.tolist())
                        if ck < colkey:
                            colkey = ck
                nxt.setdefault((tuple(new_enc.tolist()), colkey, new_span),
                               (new_enc, new_mask, new_span))
            states = list(nxt.values())
            if len(states) > self.tie_cap:
                raise SpanKeyError(f"tie set exceeded cap {self.tie_cap}")
        return tuple(x for sig in levels for x in sig)


# -- stock engines -----------------------------------------------------


@lru_cache(maxsize=None)
def semilinear_monomial_key(field_k: int, length: int) -> SpanKey:
    """Full-field-linear codes under (F*)^l wr S_l extended by the Galois
    group (semilinear monomial isometries)."""
    F = GF(field_k)
    cells = [tuple(F.mul(s, x) for x in range(F.size)) for s in range(1, F.size)]
    return SpanKey(field_k, length, cells=cells,
                   global_tables=list(galois_group(field_k)))


@lru_cache(maxsize=None)
def dihedral_key(length: int) -> SpanKey:
    """F4-linear codes in GF(16)^l under the per-column group generated by
    multiplication with the order-5 element and conjugation x -> x^4.
    Global F4* scalars are omitted: they fix every F4-linear code."""
    from .fields import xi16

    F = GF(4)
    xi_mult = tuple(F.mul(xi16(), x) for x in range(16))
    conj = tuple(F.frobenius(F.frobenius(x)) for x in range(16))
    cells = set()
    frontier = [tuple(range(16))]
    while frontier:
        t = frontier.pop()
        if t in cells:
            continue
        cells.add(t)
        for s in (xi_mult, conj):
            frontier.append(tuple(s[t[x]] for x in range(16)))
    return SpanKey(4, length, sub_k=2, cells=sorted(cells))
