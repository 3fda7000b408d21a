"""Nonexistence pipeline for a [72,36,16] doubly-even self-dual code
whose automorphism group contains a dihedral group of order 10 (an
order-5 element with fourteen 5-cycles and two fixed points, inverted
by an involution).

The invariant code is described by a staircase generator matrix over
GF(16) of up to seven rows on seven columns; the involution couples the
columns in conjugate pairs, and completions are glued against a list of
binary codes built from the unique self-dual [14,7,4] code.  Stages:

1. construct the base [14,7,4] code, certify its uniqueness by the
   self-dual mass formula, locate the conjugacy class of fixed-point-
   free involutory automorphisms, and expand the orbit of the code
   under the centralizer of the reference involution (1,920 codes);
   derive the glue row tables from their doubly-even subcodes;
2. enumerate the first-row candidates (3,525 vectors, 6 classes) and
   the candidate list for the remaining rows (15,705 vectors);
3. run the level-synchronous classification of staircase matrices with
   the feasibility tests (conjugate-pair self-orthogonality, scaled
   5-fold weight >= 8), canonical rejection, and extendability
   filtering against the glue list, comparing per-level class counts;
4. at the last level, verify that every candidate has an empty glue
   list.

Levels above 3 are gated behind the extended flag (the level-4
frontier has ~850,000 classes; a multi-day single-machine job)."""

from __future__ import annotations

import itertools
import os
import time
from functools import lru_cache
from math import factorial

import numpy as np

from ..backtrack import SearchProblem, run_backtrack
from ..binary import BinaryCode
from ..bitops import all_words, weights
from ..canon import automorphism_group
from ..component import galois16, subfield_embedding, wt5
from ..fields import GF
from ..permgroup import cycles, symmetric_centralizer
from ..spankey import dihedral_key
from .manifest import RunManifest, default_outdir, expected_counts
from .selfdual import selfdual_mass_min4

K16 = GF(4)
XI = 8  # a fixed primitive 5th root of unity in GF(16)

WT5 = np.array([wt5(x) for x in range(16)], dtype=np.int64)
MUL16 = np.array([[K16.mul(x, y) for y in range(16)] for x in range(16)],
                 dtype=np.int64)
CONJ = np.array([galois16(x) for x in range(16)], dtype=np.int64)
# conjugate-pair duality form: frm[x,y] = t + conj(t), t = x * conj(y)
FRM = np.zeros((16, 16), dtype=np.int64)
for _x in range(16):
    for _y in range(16):
        _t = K16.mul(_x, galois16(_y))
        FRM[_x, _y] = _t ^ galois16(_t)

_EMB, _ = subfield_embedding(4, 2)
F4STAR = [_EMB[1], _EMB[2], _EMB[3]]
F4XI = sorted({K16.mul(e, XI) for e in _EMB} | {0})

LENGTH = 7
LEVELS = 7


# ---------------------------------------------------------------------------
# stage 1: base code, involution, orbit, glue tables

def _selfdual14() -> BinaryCode:
    """First self-dual [14,7] code with minimum distance 4 found by a
    deterministic depth-first search."""

    def min_ok(rows):
        wt = weights(all_words(rows))
        return int(wt[wt > 0].min()) >= 4

    def dfs(code: BinaryCode):
        if code.dim == 7:
            return code
        have = set(int(w) for w in code.words())
        for w in sorted(int(w) for w in code.dual().words()):
            if w == 0 or w in have or bin(w).count("1") % 2:
                continue
            rows = list(code.rows) + [w]
            if not min_ok(rows):
                continue
            got = dfs(BinaryCode(14, rows))
            if got is not None:
                return got
        return None

    out = dfs(BinaryCode(14, [0b1111]))
    if out is None:
        raise RuntimeError("no self-dual [14,7,4] code found")
    return out


def _apply_perm14(code: BinaryCode, perm) -> BinaryCode:
    return BinaryCode(code.n, [sum(((r >> i) & 1) << perm[i] for i in range(code.n))
                               for r in code.rows])


def stage1_base(verbose=False):
    """Base code orbit and glue tables; returns (orbit codes, Ubig,
    Tail, counts)."""
    a0 = _selfdual14()
    aut = automorphism_group(a0)
    mass_ok = factorial(14) // aut.order == selfdual_mass_min4(14)
    if not mass_ok:
        raise RuntimeError("mass formula does not certify uniqueness of the base code")
    invs = [g for g in aut.elements(cap=100000)
            if all(g[g[i]] == i and g[i] != i for i in range(14))]
    fpf_count = len(invs)
    cycle_ok = all(sorted(len(c) for c in cycles(g)) == [2] * 7 for g in invs)
    # single conjugacy class: the conjugation orbit of one of them under
    # the group generators covers them all
    gens = aut.generators if hasattr(aut, "generators") else aut.gens
    orb = {invs[0]}
    frontier = [invs[0]]
    while frontier:
        x = frontier.pop()
        for g in gens:
            gi = tuple(sorted(range(14), key=lambda i: g[i]))
            y = tuple(g[x[gi[i]]] for i in range(14))
            if y not in orb:
                orb.add(y)
                frontier.append(y)
    single_class = orb == set(invs)

    x = invs[0]
    pairs = sorted((min(i, x[i]), max(i, x[i])) for i in range(14) if i < x[i])
    t = [0] * 14
    for j, (a, b) in enumerate(pairs):
        t[a], t[b] = 2 * j, 2 * j + 1
    base = _apply_perm14(a0, t)
    x0 = tuple(i ^ 1 for i in range(14))
    if tuple(t[x[i]] for i in _inv_perm(t)) != x0:
        raise RuntimeError("involution relabelling failed")

    u = symmetric_centralizer(14, x0)
    ugens = u.generators if hasattr(u, "generators") else u.gens
    seen = {base}
    frontier = [base]
    while frontier:
        c = frontier.pop()
        for g in ugens:
            d = _apply_perm14(c, g)
            if d not in seen:
                seen.add(d)
                frontier.append(d)
    orbit = sorted(seen, key=lambda c: c.rows)

    sup, tails = [], []
    for c in orbit:
        d0 = BinaryCode(14, [w for w in c.words() if bin(w).count("1") % 4 == 0])
        dp = d0.dual()
        if d0.dim != 6 or dp.dim != 8:
            raise RuntimeError("doubly-even subcode has unexpected dimension")
        for w in dp.words():
            if w == 0:
                continue
            wt = bin(w).count("1")
            tails.append(0 if wt % 4 == 0 else (2 if wt % 2 == 0 else 1))
            sup.append([(w >> j) & 1 for j in range(14)])
    ubig = np.array(sup, dtype=np.float32)
    tail = np.array(tails, dtype=np.float32)
    counts = {
        "base_code_classes": 1,
        "aut_order": aut.order,
        "involutions": fpf_count,
        "involution_class_single": int(single_class and cycle_ok),
        "centralizer_order": u.order,
        "orbit": len(orbit),
    }
    if verbose:
        print("[d10] stage1:", counts, flush=True)
    return orbit, ubig, tail, counts


def _inv_perm(p):
    out = [0] * len(p)
    for i, v in enumerate(p):
        out[v] = i
    return out


# ---------------------------------------------------------------------------
# stage 2: row candidate lists

def _ok_wt5(v) -> bool:
    return all(int(WT5[MUL16[mu, list(v)]].sum()) >= 8 for mu in F4STAR)


@lru_cache(maxsize=None)
def row_candidates(i: int) -> np.ndarray:
    """Feasible vectors for staircase row i (1-based): fixed pivot
    pattern, free entries on the right, scaled 5-fold weight >= 8."""
    if i == 1:
        return np.array([(0, 0, 0, 1) + b
                         for b in itertools.product(range(16), repeat=3)
                         if _ok_wt5((0, 0, 0, 1) + b)], dtype=np.int64)
    col = 3 - ((i - 2) // 2 + 1)
    piv = 1 if i % 2 == 0 else XI
    out = []
    for a in F4XI:
        for b in itertools.product(range(16), repeat=3):
            v = [0] * 7
            v[col] = piv
            v[3] = a
            v[4:7] = list(b)
            if _ok_wt5(tuple(v)):
                out.append(tuple(v))
    return np.array(out, dtype=np.int64)


# ---------------------------------------------------------------------------
# span and glue machinery

def _span_chunks(rows, head: int = 4):
    """The GF(16)-span of the conjugate-interleaved generators of a
    staircase state, yielded as (chunk, 14) arrays; the first chunk is
    the subspan of the leading generators (zero word first)."""
    gens = []
    for r in rows:
        g = np.zeros(14, dtype=np.int64)
        g[0::2] = r
        g[1::2] = CONJ[list(r)]
        gens.append(g)
    h = min(len(gens), head)
    headspan = np.zeros((1, 14), dtype=np.int64)
    for g in gens[:h]:
        headspan = np.concatenate(
            [headspan ^ MUL16[c, g][None, :] for c in range(16)], axis=0)
    tailgens = gens[h:]
    for combo in itertools.product(range(16), repeat=len(tailgens)):
        off = np.zeros(14, dtype=np.int64)
        for c, g in zip(combo, tailgens):
            off ^= MUL16[c, g]
        yield headspan ^ off[None, :]


class GlueTables:
    """The 1,920 glue codes as stacked dual-word supports with tail
    weights, and the extendability test of a staircase state."""

    def __init__(self, ubig: np.ndarray, tail: np.ndarray):
        self.ubig = ubig
        self.tail = tail
        self.ncodes = len(ubig) // 255

    def glue_count(self, rows) -> int:
        """Number of glue codes all of whose coset minima against the
        state's span stay >= 16 (0 means the state cannot extend to a
        code of minimum distance 16)."""
        alive = np.ones(self.ncodes, dtype=bool)
        u3 = self.ubig.reshape(self.ncodes, 255, 14)
        t3 = self.tail.reshape(self.ncodes, 255)
        first = True
        for chunk in _span_chunks(rows):
            wt = WT5[chunk].astype(np.float32)
            wtb = wt.sum(axis=1)
            kern = wtb[1:] if first else wtb
            first = False
            if len(kern) and float(kern.min()) < 16:
                return 0
            idx = np.nonzero(alive)[0]
            if not len(idx):
                return 0
            rowsu = u3[idx].reshape(-1, 14)
            tails = t3[idx].reshape(-1, 1)
            step = max(64, 8_000_000 // max(1, len(rowsu)))
            for s in range(0, len(chunk), step):
                p = rowsu @ (5.0 - 2.0 * wt[s:s + step]).T \
                    + wtb[None, s:s + step] + tails
                m = p.reshape(len(idx), 255, -1).min(axis=(1, 2))
                dead = m < 16
                if dead.any():
                    alive[idx[dead]] = False
                    idx = np.nonzero(alive)[0]
                    if not len(idx):
                        return 0
                    rowsu = u3[idx].reshape(-1, 14)
                    tails = t3[idx].reshape(-1, 1)
        return int(alive.sum())


def _f4_span(rows) -> np.ndarray:
    """The GF(4)-span of the staircase rows, shape (4^k, 7)."""
    words = np.zeros((1, LENGTH), dtype=np.int64)
    for r in rows:
        ra = np.array(r, dtype=np.int64)
        words = np.concatenate(
            [words] + [words ^ MUL16[_EMB[lam], ra][None, :]
                       for lam in range(1, 4)], axis=0)
    return words


def feasible_mask(rows, cand: np.ndarray) -> np.ndarray:
    """Which candidate rows stay self-orthogonal under the
    conjugate-pair form against all previous rows and keep every scaled
    combination with the GF(4)-span at 5-fold weight >= 8."""
    m = cand.shape[0]
    ok = np.ones(m, dtype=bool)
    for r in rows:
        f = np.zeros(m, dtype=np.int64)
        for j in range(LENGTH):
            f ^= FRM[r[j], cand[:, j]]
        ok &= f == 0
    span = _f4_span(rows)
    for mu in F4STAR:
        mv = MUL16[mu, cand]
        for s in span:
            w = WT5[mv ^ s[None, :]].sum(axis=1)
            ok &= w >= 8
    return ok


# ---------------------------------------------------------------------------
# the search problem

class StaircaseProblem(SearchProblem):
    """Level i holds one representative per equivalence class of
    feasible i-row staircase matrices; parents whose glue list is empty
    are not extended (extendability filtering after canonical
    rejection)."""

    def __init__(self, glue: GlueTables):
        self.problem_id = "staircase-16-7"
        self.levels = LEVELS
        self.glue = glue
        self._lcache: dict = {}
        self.lstats: dict[int, list[int]] = {}

    def roots(self):
        for v in row_candidates(1):
            yield [tuple(int(x) for x in v)]

    def _extendable(self, rows) -> bool:
        key = tuple(rows)
        if key not in self._lcache:
            self._lcache[key] = self.glue.glue_count(rows)
        return self._lcache[key] > 0

    def children(self, level, rows):
        n = self.glue.glue_count(rows)
        self.lstats.setdefault(level, [0, 0])
        self.lstats[level][0] += 1
        self.lstats[level][1] += n > 0
        if n == 0:
            return
        cand = row_candidates(level + 1)
        mask = feasible_mask(rows, cand)
        for v in cand[mask]:
            yield rows + [tuple(int(x) for x in v)]

    def canonical_key(self, level, rows) -> str:
        return str(dihedral_key(LENGTH).key(tuple(tuple(r) for r in rows)))

    def serialize_state(self, level, rows):
        return [list(r) for r in rows]

    def deserialize_state(self, level, blob):
        return [tuple(r) for r in blob]


# ---------------------------------------------------------------------------
# driver

def d10_run(stage_limit: int = 4, extended: bool = False,
            outdir: str | None = None, workers: int = 1,
            verbose: bool = False) -> RunManifest:
    outdir = outdir or default_outdir()
    os.makedirs(outdir, exist_ok=True)
    exp = expected_counts()["d10"]
    max_level = LEVELS if extended else 3
    man = RunManifest("d10", {"stage_limit": stage_limit,
                              "extended": extended, "workers": workers,
                              "max_level": max_level})

    t0 = time.time()
    orbit, ubig, tail, counts1 = stage1_base(verbose)
    man.add_stage("base-code-orbit", counts1,
                  {**exp["stage1"], "involution_class_single": 1},
                  seconds=time.time() - t0)
    if stage_limit < 2:
        man.finish("incomplete")
        man.write(os.path.join(outdir, "d10-manifest.jsonl"))
        return man

    t0 = time.time()
    glue = GlueTables(ubig, tail)
    problem = StaircaseProblem(glue)
    cand1 = row_candidates(1)
    cand2 = row_candidates(2)
    roots = {}
    for v in cand1:
        rows = [tuple(int(x) for x in v)]
        roots.setdefault(problem.canonical_key(1, rows), rows)
    counts2 = {"first_row_candidates": len(cand1),
               "other_row_candidates": len(cand2),
               "first_row_orbits": len(roots)}
    man.add_stage("row-candidates", counts2, dict(exp["stage2"]),
                  seconds=time.time() - t0)
    if stage_limit < 3:
        man.finish("incomplete")
        man.write(os.path.join(outdir, "d10-manifest.jsonl"))
        return man

    t0 = time.time()
    ckpt = os.path.join(outdir, f"d10-levels-{max_level}.json")
    res = run_backtrack(problem, checkpoint_path=ckpt, workers=workers,
                        stage_limit=max_level,
                        progress=(lambda lv, n: print(f"[d10] level {lv}: {n} classes",
                                                      flush=True)) if verbose else None)
    counts3 = {f"level_{i}": res.counters.get(i, 0)
               for i in range(1, max_level + 1)}
    expected3 = {f"level_{i}": exp["levels"][i - 1]
                 for i in range(1, max_level + 1)}
    notes3 = None
    if workers <= 1 and problem.lstats:
        notes3 = "; ".join(
            f"level {lv}: {b} of {a} classes extendable"
            for lv, (a, b) in sorted(problem.lstats.items()))
    man.add_stage("staircase-levels", counts3, expected3,
                  seconds=time.time() - t0, checkpoint=ckpt, notes=notes3)
    if stage_limit < 4:
        man.finish("incomplete")
        man.write(os.path.join(outdir, "d10-manifest.jsonl"))
        return man

    if not extended:
        man.finish("incomplete (final levels need the extended flag)")
        man.write(os.path.join(outdir, "d10-manifest.jsonl"))
        return man

    t0 = time.time()
    found = 0
    for rows in res.solutions:
        found += glue.glue_count(rows) > 0
    counts4 = {"codes_found": found, "candidates": len(res.solutions)}
    ok = man.add_stage("final-glue-lists", counts4,
                       {"codes_found": exp["stage4"]["codes_found"]},
                       seconds=time.time() - t0)
    man.finish("none found" if (found == 0 and ok) else f"{found} codes found")
    man.write(os.path.join(outdir, "d10-manifest.jsonl"))
    return man
