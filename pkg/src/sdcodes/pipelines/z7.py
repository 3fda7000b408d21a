"""Nonexistence pipeline for a [72,36,16] doubly-even self-dual code
with an automorphism of order 7 (ten 7-cycles, two fixed points).

The invariant subcode splits into a binary part on the cycle space and
two dual-paired components over F8 of length 10.  Stages:

1. classify the F8-linear candidate codes for the first paired slot,
   column by column up to semilinear monomial equivalence, with minimum
   distance >= 4 and dual minimum distance >= 4, bucketed by
   (dimension, distance, dual distance);
2. filter each class by the mixed condition: the binary span of the
   embedded code together with the embedded dual must keep minimum
   distance >= 16;
3. enumerate the 945 glue codes on the ten cycle blocks (all perfect
   pairings of the blocks, each yielding the doubly-even glue of a
   five-fold pairing structure);
4. for every survivor and every glue code, exhibit a word of weight
   < 16 in the combined code.

Dimension 3 runs at desk scale; dimensions 4 and 5 reproduce the
multi-million-class table rows and are gated behind the extended flag
(they are multi-day single-machine jobs).
"""

from __future__ import annotations

import itertools
import json
import os
import time

import numpy as np

from ..binary import BinaryCode, min_weight_at_least
from ..component import ComponentCode, component_dual
from ..fields import GF
from ..groupalg import Decomposition, GroupSpec
from ..permgroup import from_cycles
from ..spankey import semilinear_monomial_key
from .manifest import RunManifest, default_outdir, expected_counts

F8 = GF(3)
MUL = np.array([[F8.mul(x, y) for y in range(8)] for x in range(8)], dtype=np.int64)
INV = [0] + [F8.inv(x) for x in range(1, 8)]

LENGTH = 10
DMIN = 4


def pnorm(col):
    """Projective normalization: first nonzero entry scaled to 1."""
    for e in col:
        if e:
            iv = INV[e]
            return tuple(int(MUL[iv, x]) for x in col)
    return tuple(col)


def line_points(p, q):
    """Nonzero projective points in the span of two points."""
    pts = set()
    for a in range(8):
        for b in range(8):
            v = tuple(int(MUL[a, x] ^ MUL[b, y]) for x, y in zip(p, q))
            if any(v):
                pts.add(pnorm(v))
    return pts


def _digits(dim: int):
    idx = np.arange(8 ** dim)
    return [(idx >> (3 * i)) & 7 for i in range(dim)]


def span_values(col, dim: int) -> np.ndarray:
    """Value of each span word (indexed by coefficient digits) at one
    column."""
    out = np.zeros(8 ** dim, dtype=np.int8)
    for i, dig in enumerate(_digits(dim)):
        out ^= MUL[dig, col[i]].astype(np.int8)
    return out


def span_matrix(cols, dim: int) -> np.ndarray:
    return np.stack([span_values(c, dim) for c in cols], axis=1)


def code_distance(cols, dim: int) -> int:
    s = span_matrix(cols, dim)
    w = (s != 0).sum(axis=1)
    return int(w[w > 0].min())


def dual_distance(cols, cap: int = 6) -> int:
    """Smallest number of linearly dependent columns (the dual minimum
    distance), capped."""
    dim = len(cols[0])
    for t in range(2, cap + 1):
        for combo in itertools.combinations(range(len(cols)), t):
            m = [list(cols[j]) for j in combo]
            if _rank(m) < t:
                return t
    return cap


def _rank(cols) -> int:
    a = [list(c) for c in cols]
    rank, dim = 0, len(a[0])
    for c in range(dim):
        piv = next((r for r in range(rank, len(a)) if a[r][c]), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        iv = INV[a[rank][c]]
        a[rank] = [int(MUL[iv, x]) for x in a[rank]]
        for r in range(len(a)):
            if r != rank and a[r][c]:
                f = a[r][c]
                a[r] = [x ^ int(MUL[f, y]) for x, y in zip(a[r], a[rank])]
        rank += 1
    return rank


def _rows_of(cols):
    dim = len(cols[0])
    return tuple(tuple(c[i] for c in cols) for i in range(dim))


# ---------------------------------------------------------------------------
# stage 1: column-by-column classification

CHECKPOINT_VERSION = 1


def _children(cols, k_max: int):
    """Candidate extensions of a column list: a new pivot column (if the
    dimension may still grow) or a normalized point off all lines
    through existing columns (keeping the dual distance >= 4)."""
    d = len(cols[0])
    pts = {pnorm(c) for c in cols}
    forb = set(pts)
    pl = sorted(pts)
    for a in range(len(pl)):
        for b in range(a + 1, len(pl)):
            forb |= line_points(pl[a], pl[b])
    if d < k_max:
        yield tuple(c + (0,) for c in cols) + ((0,) * d + (1,),)
    if d >= 2:
        for p in itertools.product(range(8), repeat=d):
            if any(p) and pnorm(p) == p and p not in forb:
                yield cols + (p,)


def classify_f8_codes(k_max: int, checkpoint_path: str | None = None,
                      verbose: bool = False):
    """One representative per semilinear monomial equivalence class of
    F8-linear length-10 codes built column by column with d >= 4 and
    dual distance >= 4 and dimension <= k_max.  Returns (final column
    lists, per-level class counts).

    Per level, children are first grouped by the cheap invariant
    (dimension, span weight distribution) and only ambiguous groups go
    through the complete canonical key."""
    frontier = [((1,),)]
    counts = []
    start_level = 1
    if checkpoint_path and os.path.exists(checkpoint_path):
        with open(checkpoint_path) as fh:
            ck = json.load(fh)
        if ck.get("version") != CHECKPOINT_VERSION or ck.get("k_max") != k_max:
            raise RuntimeError("checkpoint does not match this run")
        frontier = [tuple(tuple(c) for c in st) for st in ck["frontier"]]
        counts = ck["counts"]
        start_level = ck["level"]
        if verbose:
            print(f"[z7] resumed at level {start_level} "
                  f"({len(frontier)} classes)", flush=True)

    for j in range(start_level, LENGTH):
        t0 = time.time()
        groups: dict = {}
        for cols in frontier:
            d = len(cols[0])
            smat = span_matrix(cols, d)
            wts = (smat != 0).sum(axis=1)
            for child in _children(cols, k_max):
                nd = len(child[0])
                if nd == d:
                    v = span_values(tuple(c[-1] for c in child), d)
                    cw = wts + (v != 0)
                else:
                    cw = (span_matrix(child, nd) != 0).sum(axis=1)
                mw = int(cw[cw > 0].min())
                if mw + (LENGTH - (j + 1)) < DMIN:
                    continue
                wd = np.bincount(cw, minlength=LENGTH + 1).tobytes()
                groups.setdefault((nd, wd), []).append(child)
        nxt = []
        for (nd, _), members in sorted(groups.items()):
            if len(members) == 1:
                nxt.append(members[0])
                continue
            seen = {}
            for child in members:
                key = semilinear_monomial_key(3, j + 1).key(_rows_of(child))
                if key not in seen:
                    seen[key] = child
            nxt.extend(seen[k] for k in sorted(seen))
        frontier = nxt
        counts.append(len(frontier))
        if verbose:
            print(f"[z7] length {j + 1}: {len(frontier)} classes "
                  f"({round(time.time() - t0, 1)} s)", flush=True)
        if checkpoint_path:
            with open(checkpoint_path, "w") as fh:
                json.dump({"version": CHECKPOINT_VERSION, "k_max": k_max,
                           "level": j + 1, "counts": counts,
                           "frontier": [[list(c) for c in st] for st in frontier]},
                          fh)
    return frontier, counts


def bucket_table(finals):
    """Class counts keyed 'k,d,ddual'."""
    out: dict[str, list] = {}
    for cols in finals:
        d = len(cols[0])
        key = f"{d},{code_distance(cols, d)},{dual_distance(cols)}"
        out.setdefault(key, []).append(cols)
    return out


# ---------------------------------------------------------------------------
# stage 2: mixed minimum distance filter

class MixedScan:
    """Weights of words of the embedded pair (first slot code, second
    slot dual) on the ten 7-cycles, and coset minima against the glue
    block masks."""

    def __init__(self):
        g = from_cycles(72, [tuple(range(7 * k, 7 * k + 7)) for k in range(10)])
        self.dec = Decomposition(GroupSpec([g], 72))
        iso1, iso2 = self.dec.isos[1], self.dec.isos[2]
        self.iso1, self.iso2 = iso1, iso2
        b1 = self._blocks(iso1)
        b2 = self._blocks(iso2)
        self.wmix = np.array([[bin(b1[x] ^ b2[y]).count("1")
                               for y in range(8)] for x in range(8)],
                             dtype=np.int64)
        masks = sorted(set(itertools.combinations(range(10), 4))
                       | set(itertools.combinations(range(10), 8)))
        self.masks = masks
        u = np.zeros((len(masks), 10), dtype=np.int64)
        for i, m in enumerate(masks):
            u[i, list(m)] = 1
        self._u = u

    @staticmethod
    def _blocks(iso):
        rws = iso.E_rows()
        out = []
        for s in range(8):
            v = 0
            for b in range(3):
                if (s >> b) & 1:
                    v ^= rws[b]
            out.append(v & 127)
        return out

    def dual_rows(self, cols):
        c1 = ComponentCode(F8, LENGTH, _rows_of(cols))
        return [tuple(r) for r in
                component_dual(c1, self.iso1, self.iso2).rows]

    @staticmethod
    def _words(rows):
        w = np.zeros((1, LENGTH), dtype=np.int8)
        for r in rows:
            ra = np.array(r, dtype=np.int8)
            w = np.concatenate([w ^ MUL[c, ra][None, :].astype(np.int8)
                                for c in range(8)], axis=0)
        return w

    def _pair_weights(self, xs, ys):
        w = np.zeros(len(xs), dtype=np.int64)
        for j in range(LENGTH):
            w += self.wmix[xs[:, j].astype(np.int64), ys[:, j].astype(np.int64)]
        return w

    def is_survivor(self, cols) -> bool:
        """Exact check that every nonzero word of the embedded pair has
        weight >= 16 (full product scan with early exit)."""
        xs = self._words(_rows_of(cols))
        ys = self._words(self.dual_rows(cols))
        zero = np.zeros_like(ys[:1])
        for s in range(0, len(ys), 1 << 16):
            ch = ys[s:s + (1 << 16)]
            w = self._pair_weights(np.repeat(zero, len(ch), axis=0), ch)
            if s == 0:
                w = w[1:]
            if len(w) and int(w.min()) < 16:
                return False
        for i in range(1, len(xs)):
            xr = np.repeat(xs[i:i + 1], len(ys), axis=0)
            w = self._pair_weights(xr, ys)
            if int(w.min()) < 16:
                return False
        return True

    def witness_survivor(self, cols) -> bool:
        """Fast filter: scans pure words plus mixed words with sparse
        dual part; a word of weight < 16 found here is definitive, the
        absence is confirmed by the exact branch-and-bound check."""
        xs = self._words(_rows_of(cols))
        ys = self._words(self.dual_rows(cols))
        hw = (ys != 0).sum(axis=1)
        if len(ys) > 1:
            w = self._pair_weights(np.zeros_like(ys[1:]), ys[1:])
            if int(w.min()) < 16:
                return False
        w = self._pair_weights(xs[1:], np.zeros_like(xs[1:]))
        if int(w.min()) < 16:
            return False
        low = ys[(hw > 0) & (hw <= 5)]
        for s in range(1, len(xs), 4):
            ch = xs[s:s + 4]
            if len(low):
                xr = np.repeat(ch, len(low), axis=0)
                yr = np.tile(low, (len(ch), 1))
                if int(self._pair_weights(xr, yr).min()) < 16:
                    return False
        return self._exact_confirm(cols)

    def _exact_confirm(self, cols) -> bool:
        return min_weight_at_least(BinaryCode(72, self._pair_rows(cols)), 16)

    def _pair_rows(self, cols):
        """Binary generator rows of the embedded pair code."""
        rows = []
        c1 = ComponentCode(F8, LENGTH, _rows_of(cols))
        for code, iso in ((c1, self.iso1),
                          (ComponentCode(F8, LENGTH, self.dual_rows(cols)),
                           self.iso2)):
            for r in code.rows:
                for b in range(3):
                    rows.append(iso.apply([int(MUL[1 << b, x]) for x in r]))
        return rows

    # -- stage 4 ------------------------------------------------------

    def mask_minima(self, cols):
        """For each 4- or 8-block mask, an upper bound on the minimum
        weight of the corresponding glue coset of the embedded pair,
        from all pure words and the mixed words with sparse dual part.
        A bound below 16 is a definitive refutation certificate; masks
        staying at >= 16 here are settled by the exact check."""
        xs = self._words(_rows_of(cols))
        ys = self._words(self.dual_rows(cols))
        running = np.full(len(self.masks), 99, dtype=np.int64)

        def absorb(xa, ya):
            w7 = np.zeros(xa.shape, dtype=np.int64)
            for j in range(LENGTH):
                w7[:, j] = self.wmix[xa[:, j].astype(np.int64),
                                     ya[:, j].astype(np.int64)]
            wtc = w7.sum(axis=1)
            for s0 in range(0, len(w7), 50000):
                p = self._u @ (7 - 2 * w7[s0:s0 + 50000]).T \
                    + wtc[None, s0:s0 + 50000]
                np.minimum(running, p.min(axis=1), out=running)

        for s in range(0, len(ys), 1 << 19):
            ch = ys[s:s + (1 << 19)]
            absorb(np.zeros_like(ch), ch)
        absorb(xs, np.zeros_like(xs))
        hw = (ys != 0).sum(axis=1)
        low = ys[hw <= 6]
        step = max(1, (1 << 19) // max(1, len(low)))
        for s in range(1, len(xs), step):
            ch = xs[s:s + step]
            absorb(np.repeat(ch, len(low), axis=0),
                   np.tile(low, (len(ch), 1)))
        return {m: int(v) for m, v in zip(self.masks, running.tolist())}

    def glue_certified(self, minval, pairing) -> bool:
        """True when some glue word of the pairing meets a coset word of
        weight < 16 (refuting this survivor/pairing combination)."""
        for k in (2, 4):
            for combo in itertools.combinations(pairing, k):
                m = tuple(sorted(x for p in combo for x in p))
                if minval[m] < 16:
                    return True
        return False

    def exact_pairing_check(self, cols, pairing) -> bool:
        """Branch-and-bound fallback: is the full combined code (pair
        embedding plus the pairing's glue) of minimum distance >= 16?"""
        rows = self._pair_rows(cols)
        allone = (1 << 7) - 1
        block = [sum(allone << (7 * b) for b in pr) for pr in pairing]
        # doubly-even glue: differences of the block pairs (weights 28)
        rows.extend(block[i] ^ block[i + 1] for i in range(4))
        return min_weight_at_least(BinaryCode(72, rows), 16)


def pairings(items):
    if not items:
        yield []
        return
    a = items[0]
    for i in range(1, len(items)):
        for rest in pairings(items[1:i] + items[i + 1:]):
            yield [(a, items[i])] + rest


# ---------------------------------------------------------------------------
# driver

def z7_run(stage_limit: int = 4, extended: bool = False,
           outdir: str | None = None, workers: int = 1,
           verbose: bool = False) -> RunManifest:
    """Run the pipeline through the given stage.  Desk scale covers
    dimension 3; the extended flag raises the classification to
    dimension 5 (a multi-day job) and scans every survivor."""
    outdir = outdir or default_outdir()
    os.makedirs(outdir, exist_ok=True)
    exp = expected_counts()["z7"]
    k_max = 5 if extended else 3
    man = RunManifest("z7", {"stage_limit": stage_limit,
                             "extended": extended, "k_max": k_max,
                             "workers": workers})

    t0 = time.time()
    ckpt = os.path.join(outdir, f"z7-classify-k{k_max}.json")
    finals, level_counts = classify_f8_codes(
        k_max, checkpoint_path=ckpt, verbose=verbose)
    buckets = bucket_table(finals)
    counts1 = {k: len(v) for k, v in sorted(buckets.items())}
    counts1["levels"] = level_counts
    expected1 = {k: v["classes"] for k, v in exp["table"].items()
                 if int(k.split(",")[0]) <= k_max}
    man.add_stage("slot-classification", counts1, expected1,
                  seconds=time.time() - t0, checkpoint=ckpt)
    if stage_limit < 2:
        man.finish("incomplete")
        man.write(os.path.join(outdir, "z7-manifest.jsonl"))
        return man

    t0 = time.time()
    scan = MixedScan()
    survivors = {}
    for key, members in sorted(buckets.items()):
        if key not in exp["table"]:
            continue
        kept = []
        for cols in members:
            ok = (scan.is_survivor(cols) if len(members) <= 4
                  else scan.witness_survivor(cols))
            if ok:
                kept.append(cols)
        survivors[key] = kept
    counts2 = {k: len(v) for k, v in sorted(survivors.items())}
    expected2 = {k: v["survivors"] for k, v in exp["table"].items()
                 if int(k.split(",")[0]) <= k_max}
    man.add_stage("mixed-distance-filter", counts2, expected2,
                  seconds=time.time() - t0)
    if stage_limit < 3:
        man.finish("incomplete")
        man.write(os.path.join(outdir, "z7-manifest.jsonl"))
        return man

    t0 = time.time()
    allp = list(pairings(list(range(10))))
    man.add_stage("glue-codes", {"glue_codes": len(allp)},
                  {"glue_codes": exp["stage3"]["glue_codes"]},
                  seconds=time.time() - t0)
    if stage_limit < 4:
        man.finish("incomplete")
        man.write(os.path.join(outdir, "z7-manifest.jsonl"))
        return man

    t0 = time.time()
    found = 0
    scanned = 0
    for key, kept in sorted(survivors.items()):
        for cols in kept:
            minval = scan.mask_minima(cols)
            for pg in allp:
                scanned += 1
                if scan.glue_certified(minval, pg):
                    continue
                if scan.exact_pairing_check(cols, pg):
                    found += 1
    counts4 = {"codes_found": found, "combinations": scanned}
    ok = man.add_stage("glue-scan", counts4,
                       {"codes_found": exp["stage4"]["codes_found"]},
                       seconds=time.time() - t0)
    man.finish("none found" if (found == 0 and ok) else f"{found} codes found")
    man.write(os.path.join(outdir, "z7-manifest.jsonl"))
    return man
