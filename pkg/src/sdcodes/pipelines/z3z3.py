"""Nonexistence pipeline for a [72,36,16] doubly-even self-dual code
whose automorphism group contains an elementary abelian group of order
9 acting with eight regular orbits.

The group G = <g, h> of order 9 acts on 72 points in eight 9-blocks;
position 9k + 3a + b carries the group element g^a h^b of block k.  The
invariant subcode decomposes through the components of the invariant
algebra (one binary component, two self-dual-field components over F4
and one dual pair of F4 components).  Stages:

1. build the [24,12,8] code fixed by the order-3 element h, relabelled
   so that its binary component is the reference [8,4,4] code;
2. list all glue candidates for the second F4 slot: the monomial orbit
   of the F4-expanded [8,4,4] code filtered by the mixed minimum
   distance condition;
3. group the candidates into orbits under the stabilizer of the fixed
   components;
4. assemble the length-72 kernel codes D (dimension 20, minimum
   distance >= 16, doubly even) and fuse the orbits under full
   coordinate equivalence, using weight enumerators for the lower bound
   and explicit block-structure-preserving moves for the upper bound;
5. per equivalence class, compute the lists of glue candidates for the
   paired components whose coset distances stay >= 16;
6. scan all pairs from the two lists and verify that every completion
   has a word of weight < 16.

Stage 6 is by far the heaviest part and only runs with the extended
flag; everything else is desk scale.  Each stage writes its artifact to
the output directory and is reloaded on re-runs, so interrupted runs
resume at stage granularity (stage 6 additionally checkpoints its pair
scan).
"""

from __future__ import annotations

import itertools
import json
import os
import time

import numpy as np

from ..binary import BinaryCode, min_weight
from ..bitops import all_words, weights
from ..canon import (ActionSpec, Monomial, _scalar_tables, are_equivalent,
                     automorphism_group, canonical_form, orbit_of_code)
from ..component import ComponentCode, assemble, split, zero_component
from ..fields import GF
from ..groupalg import Decomposition, GroupSpec
from .manifest import RunManifest, default_outdir, expected_counts
from .setups import (GOLAY_TRIPLES, HAMMING8_ROWS, block9_shift, hamming8,
                     qr_golay24, triple_shift)

F4 = GF(2)


def _apply_perm(code: BinaryCode, perm) -> BinaryCode:
    rows = [sum(((r >> i) & 1) << perm[i] for i in range(code.n))
            for r in code.rows]
    return BinaryCode(code.n, rows)


def _log(verbose, *msg):
    if verbose:
        print("[z3z3]", *msg, flush=True)


# ---------------------------------------------------------------------------
# stage 1: the relabelled [24,12,8] code with binary component h8

def stage1_fixed_code():
    """The [24,12,8] code arranged so that consecutive triples are the
    orbits of an order-3 automorphism and the binary component of the
    splitting equals the reference [8,4,4] code.  Returns the code, its
    F4 component and the counts dict."""
    g24 = qr_golay24()
    old_of_new = [GOLAY_TRIPLES[j][t] for j in range(8) for t in range(3)]
    golay = BinaryCode(24, [sum(((r >> old_of_new[i]) & 1) << i for i in range(24))
                            for r in g24.rows])
    dec3 = Decomposition(GroupSpec([triple_shift(24)], 24))
    d0, _ = split(golay, dec3.isos)
    d0bin = BinaryCode(8, [sum(x << i for i, x in enumerate(r)) for r in d0.rows])
    m = are_equivalent(d0bin, hamming8(), ActionSpec.binary(8))
    if m is None:
        raise RuntimeError("binary component is not equivalent to the [8,4,4] code")
    p = m.perm
    lift = tuple(p[i // 3] * 3 + i % 3 for i in range(24))
    golay2 = _apply_perm(golay, lift)
    e0, c1 = split(golay2, dec3.isos)
    e0bin = BinaryCode(8, [sum(x << i for i, x in enumerate(r)) for r in e0.rows])
    if e0bin != hamming8():
        raise RuntimeError("relabelling failed to align the binary component")
    shifted = _apply_perm(golay2, triple_shift(24))
    counts = {
        "dimension": golay2.dim,
        "min_distance": min_weight(golay2),
        "invariant": int(shifted == golay2),
        "doubly_even": int(golay2.is_doubly_even()),
    }
    return golay2, c1, counts


# ---------------------------------------------------------------------------
# stage 2: glue candidate list

_U15 = None


def _pair_min_d(c: ComponentCode, wtab) -> int:
    """Minimum distance of the binary span of h8 (on the triple space)
    together with the embedded image of c."""
    global _U15
    if _U15 is None:
        _U15 = np.array([[(w >> i) & 1 for i in range(8)]
                         for w in hamming8().words() if w], dtype=np.int64)
    w = np.array(list(c.words()), dtype=np.int64)
    wt = np.zeros(w.shape, dtype=np.int64)
    for x in range(4):
        wt[w == x] = wtab[x]
    wtb = wt.sum(axis=1)
    p = _U15 @ (3 - 2 * wt).T + wtb[None, :]
    return min(int(p.min()), int(wtb[wtb > 0].min()))


def stage2_glue_list(c1: ComponentCode, verbose=False):
    """Monomial orbit of the F4-expanded [8,4,4] code, filtered by the
    mixed minimum distance condition; returns (list, counts)."""
    dec3 = Decomposition(GroupSpec([triple_shift(24)], 24))
    wtab = dec3.isos[1].weight_table
    f4h8 = ComponentCode(F4, 8, [tuple((r >> i) & 1 for i in range(8))
                                 for r in HAMMING8_ROWS])
    act = ActionSpec.monomial(2, 8)
    orb = orbit_of_code(f4h8, act, cap=200000)
    _log(verbose, "orbit size", len(orb))
    glue = [c for c in orb if _pair_min_d(c, wtab) >= 8]
    glue.sort(key=lambda c: c.rows)
    if not any(c == c1 for c in glue):
        raise RuntimeError("fixed F4 component missing from the candidate list")
    counts = {"orbit": len(orb), "glue_compatible": len(glue)}
    return glue, counts


# ---------------------------------------------------------------------------
# stage 3: orbits under the stabilizer of the fixed components

def _closure(gen_list, cap=200000):
    ident = Monomial.identity(8, 2)
    elems = {ident.key(): ident}
    for g in gen_list:
        elems.setdefault(g.key(), g)
    frontier = list(elems.values())
    while frontier:
        nxt = []
        for a in frontier:
            for g in gen_list:
                b = a.then(g)
                if b.key() not in elems:
                    elems[b.key()] = b
                    nxt.append(b)
        frontier = nxt
        if len(elems) > cap:
            raise RuntimeError("monomial closure exceeds cap")
    return elems


def c1_stabilizer(c1: ComponentCode):
    """All monomial maps fixing the F4 component of the fixed code,
    and the sublist whose permutation part also fixes h8 (as a binary
    code on the block positions)."""
    act = ActionSpec.monomial(2, 8)
    res = canonical_form(c1, act)
    gens = list(res.stabilizer_gens)
    scal = _scalar_tables(F4, [1, 2, 3])
    id8 = tuple(range(8))
    for pat in itertools.product(range(3), repeat=8):
        mm = Monomial(id8, tuple(scal[i] for i in pat))
        if any(pat) and mm.apply_code(c1) == c1:
            gens.append(mm)
    elems = _closure(gens)
    if len(elems) != res.stabilizer_order:
        raise RuntimeError("stabilizer closure does not match its computed order")
    h8c = hamming8()
    cent = [mm for mm in elems.values() if _apply_perm(h8c, mm.perm) == h8c]
    return list(elems.values()), cent


def stage3_orbits(c1: ComponentCode, glue, verbose=False):
    """Orbits of the candidate list under the monomial maps fixing both
    components of the fixed code; returns (orbit id per candidate,
    orbit reps as indices, counts)."""
    stab, cent = c1_stabilizer(c1)
    _log(verbose, "stabilizer", len(stab), "centralizer", len(cent))
    # deterministic small generating set for faster orbit breadth-first runs
    pool = sorted(cent, key=lambda mm: mm.key())
    cgens, known = [], {Monomial.identity(8, 2).key()}
    for mm in pool:
        if mm.key() in known:
            continue
        cgens.append(mm)
        known = set(_closure(cgens))
        if len(known) == len(cent):
            break
    index = {c: i for i, c in enumerate(glue)}
    orb_of = [-1] * len(glue)
    reps = []
    for i0 in range(len(glue)):
        if orb_of[i0] >= 0:
            continue
        oid = len(reps)
        reps.append(i0)
        orb_of[i0] = oid
        frontier = [glue[i0]]
        while frontier:
            c = frontier.pop()
            for mm in cgens:
                d = mm.apply_code(c)
                j = index.get(d)
                if j is None:
                    raise RuntimeError("candidate orbit leaves the candidate list")
                if orb_of[j] < 0:
                    orb_of[j] = oid
                    frontier.append(d)
    counts = {"stabilizer": len(stab), "centralizer": len(cent),
              "orbits": len(reps)}
    return orb_of, reps, counts


# ---------------------------------------------------------------------------
# stage 4: the kernel codes and their fusion under full equivalence

class _DisjointSets:
    def __init__(self, n):
        self.p = list(range(n))

    def find(self, x):
        while self.p[x] != x:
            self.p[x] = self.p[self.p[x]]
            x = self.p[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.p[max(ra, rb)] = min(ra, rb)


def _decomposition72():
    return Decomposition(GroupSpec([block9_shift(72), triple_shift(72)], 72))


def _plane_lifts():
    """Lifts to 72 points of the invertible linear maps of the exponent
    plane (a, b) at position 9k + 3a + b; every lift normalizes the
    group action blockwise."""
    out = []
    for p, q, r, s in itertools.product(range(3), repeat=4):
        if (p * s - q * r) % 3 == 0:
            continue
        if (p, q, r, s) == (1, 0, 0, 1):
            continue
        perm = []
        for i in range(72):
            a, b = divmod(i % 9, 3)
            perm.append((i // 9) * 9 + 3 * ((p * a + q * b) % 3) + (r * a + s * b) % 3)
        out.append(tuple(perm))
    return out


class KernelFamily:
    """The 138 orbit representatives assembled into length-72 kernel
    codes, plus the data shared by the fusion and glue stages."""

    def __init__(self, c1: ComponentCode, glue, orb_of, reps, verbose=False):
        self.dec = _decomposition72()
        self.c1 = c1
        self.glue = glue
        self.orb_of = orb_of
        self.reps = reps
        self.verbose = verbose
        isos = self.dec.isos
        self.c0 = ComponentCode(isos[0].field, 8,
                                [tuple((r >> i) & 1 for i in range(8))
                                 for r in HAMMING8_ROWS])
        self._index = {c: i for i, c in enumerate(glue)}
        self._stab = None
        self._paut8 = None
        self._align_cache = {}
        self.kernels = [self.assemble_kernel(glue[i]) for i in reps]

    def assemble_kernel(self, c2: ComponentCode) -> BinaryCode:
        isos = self.dec.isos
        parts = [self.c0, self.c1, c2, zero_component(isos[3]),
                 zero_component(isos[4])]
        return assemble(parts, isos)

    # -- fusion moves -------------------------------------------------

    def _orbit_id(self, c2: ComponentCode) -> int:
        j = self._index.get(c2)
        if j is None:
            raise RuntimeError("fusion move leaves the candidate list")
        return self.orb_of[j]

    def _align(self, cp: ComponentCode):
        """A monomial with h8-preserving permutation part mapping cp to
        the fixed F4 component, or None."""
        if cp.rows in self._align_cache:
            return self._align_cache[cp.rows]
        if self._stab is None:
            self._stab, _ = c1_stabilizer(self.c1)
            self._paut8 = {tuple(p) for p in
                           automorphism_group(hamming8()).elements(cap=10000)}
        out = None
        m0 = are_equivalent(cp, self.c1, ActionSpec.monomial(2, 8))
        if m0 is not None:
            for st in self._stab:
                comp = m0.then(st)
                if comp.perm in self._paut8:
                    out = comp
                    break
        self._align_cache[cp.rows] = out
        return out

    def fuse(self):
        """Partition of the orbit representatives under full coordinate
        equivalence of their kernel codes.  Lower bound from weight
        enumerators; upper bound from explicit moves (per-block scalar
        reglue and exponent-plane maps), all of which preserve the block
        structure of the group action."""
        n = len(self.reps)
        wes = []
        for d in self.kernels:
            wt = weights(all_words(list(d.rows)))
            wes.append(tuple(np.bincount(wt, minlength=73).tolist()))
        we_groups = {}
        for i, w in enumerate(wes):
            we_groups.setdefault(w, []).append(i)

        ds = _DisjointSets(n)
        id8 = tuple(range(8))
        scal = _scalar_tables(F4, [1, 2, 3])
        # per-column scalar moves: the free reglue of the second F4 slot
        for i in range(n):
            c2 = self.glue[self.reps[i]]
            for col in range(8):
                for a in (1, 2):
                    tables = tuple(scal[a] if j == col else scal[0]
                                   for j in range(8))
                    img = Monomial(id8, tables).apply_code(c2)
                    ds.union(i, self._orbit_id(img))
        # exponent-plane moves
        lifts = [lift for lift in _plane_lifts()
                 if self._pattern_preserving(lift)]
        _log(self.verbose, "plane moves kept:", len(lifts))
        for lift in lifts:
            for i in range(n):
                parts = split(_apply_perm(self.kernels[i], lift), self.dec.isos)
                if parts[3].dim or parts[4].dim or parts[0] != self.c0:
                    raise RuntimeError("plane move broke the component pattern")
                m = self._align(parts[1])
                if m is None:
                    continue
                img = Monomial(m.perm, tuple(scal[0] for _ in range(8))
                               ).apply_code(parts[2])
                ds.union(i, self._orbit_id(img))

        groups = {}
        for i in range(n):
            groups.setdefault(ds.find(i), []).append(i)
        fused = sorted(groups.values(), key=lambda g: (-len(g), g[0]))
        # consistency: explicit moves must never merge across invariants
        for grp in fused:
            if len({wes[i] for i in grp}) != 1:
                raise RuntimeError("fusion merged codes with different weight enumerators")
        return fused, len(we_groups)

    def _pattern_preserving(self, lift) -> bool:
        parts = split(_apply_perm(self.kernels[0], lift), self.dec.isos)
        return parts[3].dim == 0 and parts[4].dim == 0

    def verify_kernels(self):
        bad = 0
        for d in self.kernels:
            wt = weights(all_words(list(d.rows)))
            ok = (d.dim == 20 and int(wt[wt > 0].min()) >= 16
                  and bool((wt % 4 == 0).all()) and d.is_self_orthogonal())
            bad += not ok
        return bad


def stage4_fusion(family: KernelFamily):
    fused, n_invariant = family.fuse()
    bad = family.verify_kernels()
    counts = {
        "codes": len(family.reps),
        "verified": len(family.reps) - bad,
        "classes": len(fused),
        "invariant_classes": n_invariant,
    }
    sizes = [len(g) for g in fused]
    return fused, sizes, counts


# ---------------------------------------------------------------------------
# stages 5/6: coset distances of the paired components

def _blocks_of(words: np.ndarray) -> np.ndarray:
    """The eight 9-bit blocks of each packed 72-bit word, as (n, 8)."""
    w0, w1 = words[:, 0], words[:, 1]
    cols = [((w0 >> (9 * k)) & 511) for k in range(7)]
    cols.append((w0 >> 63) | ((w1 << 1) & 511))
    return np.stack(cols, axis=1).astype(np.uint16)


def _pattern_table(iso) -> np.ndarray:
    """Packed 72-bit embedding images of all 65,536 eight-symbol F4
    words of one paired component, index = sum sym_k << 2k."""
    tab = np.array(iso.table, dtype=np.uint64)
    idx = np.arange(65536, dtype=np.uint64)
    w0 = np.zeros(65536, dtype=np.uint64)
    for k in range(7):
        w0 |= tab[(idx >> np.uint64(2 * k)) & np.uint64(3)] << np.uint64(9 * k)
    top = tab[(idx >> np.uint64(14)) & np.uint64(3)]
    w0 |= (top & np.uint64(1)) << np.uint64(63)
    w1 = top >> np.uint64(1)
    return np.stack([w0, w1], axis=1)


def _near_words(words: np.ndarray, block_pats, budget: int = 15) -> np.ndarray:
    """The subset of packed words that can possibly lie within the
    budget of some pattern whose blocks are all drawn from block_pats
    (blockwise triangle-inequality prefilter)."""
    b = np.arange(512, dtype=np.uint16)
    mt = np.min([np.bitwise_count(b ^ np.uint16(t)) for t in block_pats], axis=0)
    score = mt[_blocks_of(words)].sum(axis=1)
    return words[score <= budget]


def _coset_minima(pats: np.ndarray, words: np.ndarray,
                  chunk_elems: int = 1 << 23) -> np.ndarray:
    """For each packed pattern, the minimum Hamming distance to the
    given packed word set (exact on the given set)."""
    if len(words) == 0:
        return np.full(len(pats), 255, dtype=np.uint16)
    out = np.empty(len(pats), dtype=np.uint16)
    step = max(1, chunk_elems // len(words))
    for i in range(0, len(pats), step):
        c = pats[i:i + step]
        d = np.bitwise_count(c[:, None, :] ^ words[None, :, :]).sum(axis=2)
        out[i:i + step] = d.min(axis=1)
    return out


def _word_ids(glue) -> np.ndarray:
    """All 255 nonzero words of each glue candidate as 16-bit symbol
    pattern indices, shape (len(glue), 255)."""
    shifts = np.array([1 << (2 * k) for k in range(8)], dtype=np.uint32)
    out = np.empty((len(glue), 255), dtype=np.uint32)
    for i, c in enumerate(glue):
        w = np.array([v for v in c.words() if any(v)], dtype=np.uint32)
        out[i] = w @ shifts
    return out


class GlueScan:
    """Coset-distance machinery of one kernel class: which glue
    candidates keep the two paired slots at distance >= 16, and the
    pair scan over both lists."""

    def __init__(self, kernel: BinaryCode, dec, verbose=False):
        self.kernel = kernel
        self.verbose = verbose
        iso3, iso4 = dec.isos[3], dec.isos[4]
        self.pat3 = _pattern_table(iso3)
        self.pat4 = _pattern_table(iso4)
        self.t3 = list(iso3.table)
        self.t4 = list(iso4.table)
        self.words = all_words(list(kernel.rows))
        self._w3 = None
        self._w4 = None
        self._w34 = None
        self.md3 = None
        self.md4 = None
        self._combo_cache = {}

    def slot_minima(self):
        t0 = time.time()
        self._w3 = _near_words(self.words, [0] + self.t3[1:])
        self._w4 = _near_words(self.words, [0] + self.t4[1:])
        _log(self.verbose, "near words slot3", len(self._w3),
             "slot4", len(self._w4))
        self.md3 = np.minimum(_coset_minima(self.pat3, self._w3), 255)
        self.md4 = np.minimum(_coset_minima(self.pat4, self._w4), 255)
        _log(self.verbose, "slot minima done", round(time.time() - t0, 1), "s")

    def slot_lists(self, word_ids: np.ndarray):
        """Boolean masks over the glue list for slots 3 and 4."""
        if self.md3 is None:
            self.slot_minima()
        ok3 = (self.md3 >= 16)[word_ids].all(axis=1)
        ok4 = (self.md4 >= 16)[word_ids].all(axis=1)
        return ok3, ok4

    # -- pair scan ----------------------------------------------------

    def _combo_words(self):
        if self._w34 is None:
            combos = sorted({a ^ b for a in self.t3 for b in self.t4})
            self._w34 = _near_words(self.words, combos)
            _log(self.verbose, "near words mixed", len(self._w34))
        return self._w34

    def _zero_word_weight(self, c3: np.ndarray, c4: np.ndarray) -> np.ndarray:
        """Weight of the embedded mixed pattern itself (distance to the
        zero word of the kernel)."""
        tab = np.array([[bin(a ^ b).count("1") for b in self.t4]
                        for a in self.t3], dtype=np.uint16)
        out = np.zeros(len(c3), dtype=np.uint16)
        for k in range(8):
            out += tab[(c3 >> (2 * k)) & 3, (c4 >> (2 * k)) & 3]
        return out

    def combos_ok(self, c3: np.ndarray, c4: np.ndarray) -> np.ndarray:
        """For mixed symbol patterns (c3 nonzero, c4 nonzero): does the
        coset of the combined embedded pattern keep weight >= 16?"""
        ok = self._zero_word_weight(c3, c4) >= 16
        idx = np.nonzero(ok)[0]
        if len(idx):
            pats = self.pat3[c3[idx]] ^ self.pat4[c4[idx]]
            md = _coset_minima(pats, self._combo_words())
            ok[idx] = md >= 16
        return ok

    def _combo_verdicts(self, keys: np.ndarray) -> np.ndarray:
        """Cached combo check; keys = c3 << 16 | c4."""
        uniq = np.unique(keys)
        missing = np.array([k for k in uniq.tolist()
                            if k not in self._combo_cache], dtype=np.uint64)
        if len(missing):
            c3 = (missing >> np.uint64(16)).astype(np.uint32)
            c4 = (missing & np.uint64(0xFFFF)).astype(np.uint32)
            ok = self.combos_ok(c3, c4)
            for k, v in zip(missing.tolist(), ok.tolist()):
                self._combo_cache[k] = bool(v)
        return np.array([self._combo_cache[k] for k in keys.tolist()], dtype=bool)

    def pair_scan(self, ids3: np.ndarray, ids4: np.ndarray,
                  checkpoint: str | None = None, probes: int = 64):
        """Scan all pairs from the two slot lists; returns (number of
        pairs whose completion keeps minimum distance >= 16, pairs
        scanned).  Probes mixed words in ascending coset-weight order
        and finishes survivors with the exhaustive combo check."""
        n3, n4 = len(ids3), len(ids4)
        md3v = self.md3[ids3].astype(np.int32)
        md4v = self.md4[ids4].astype(np.int32)
        k = 16
        sel3 = np.argsort(md3v, axis=1, kind="stable")[:, :k]
        sel4 = np.argsort(md4v, axis=1, kind="stable")[:, :k]
        p3 = np.take_along_axis(ids3, sel3, axis=1)
        p4 = np.take_along_axis(ids4, sel4, axis=1)
        order = sorted(((i, j) for i in range(k) for j in range(k)),
                       key=lambda t: t[0] + t[1])[:probes]

        alive = np.ones((n3, n4), dtype=bool)
        start_round = 0
        if checkpoint and os.path.exists(checkpoint):
            with np.load(checkpoint) as z:
                alive = z["alive"]
                start_round = int(z["round"])
            _log(self.verbose, "resumed pair scan at probe", start_round,
                 "alive", int(alive.sum()))
        for r in range(start_round, len(order)):
            if not alive.any():
                break
            i, j = order[r]
            rows, cols = np.nonzero(alive)
            keys = (p3[rows, i].astype(np.uint64) << np.uint64(16)) \
                | p4[cols, j].astype(np.uint64)
            ok = self._combo_verdicts(keys)
            alive[rows[~ok], cols[~ok]] = False
            if checkpoint and r % 8 == 7:
                np.savez_compressed(checkpoint, alive=alive, round=r + 1)
            _log(self.verbose, "probe", r, "alive", int(alive.sum()))
        # exhaustive check of whatever survived the probes
        found = 0
        for a, b in zip(*np.nonzero(alive)):
            g3 = np.repeat(ids3[a], 255)
            g4 = np.tile(ids4[b], 255)
            if self._combo_verdicts(
                    (g3.astype(np.uint64) << np.uint64(16)) | g4).all():
                found += 1
        if checkpoint and os.path.exists(checkpoint):
            os.remove(checkpoint)
        return found, n3 * n4


# ---------------------------------------------------------------------------
# driver

def _artifact(outdir, name):
    return os.path.join(outdir, name)


def z3z3_run(stage_limit: int = 6, extended: bool = False,
             outdir: str | None = None, workers: int = 1,
             verbose: bool = False) -> RunManifest:
    """Run the pipeline through the given stage; stage 6 requires the
    extended flag.  Stage artifacts and the manifest are written to the
    output directory."""
    outdir = outdir or default_outdir()
    os.makedirs(outdir, exist_ok=True)
    exp = expected_counts()["z3z3"]
    man = RunManifest("z3z3", {"stage_limit": stage_limit,
                               "extended": extended, "workers": workers})
    state_path = _artifact(outdir, "z3z3-stages.json")
    state = {}
    if os.path.exists(state_path):
        with open(state_path) as fh:
            state = json.load(fh)

    def save_state():
        with open(state_path, "w") as fh:
            json.dump(state, fh)

    verdict = "incomplete"
    t0 = time.time()
    if "stage1" in state:
        s1 = state["stage1"]
        golay2 = BinaryCode(24, s1["code"])
        dec3 = Decomposition(GroupSpec([triple_shift(24)], 24))
        c1 = split(golay2, dec3.isos)[1]
        counts1 = s1["counts"]
    else:
        golay2, c1, counts1 = stage1_fixed_code()
        state["stage1"] = {"code": [int(r) for r in golay2.rows],
                           "counts": counts1}
        save_state()
    man.add_stage("fixed-code", counts1,
                  {**exp["stage1"], "invariant": 1, "doubly_even": 1},
                  seconds=time.time() - t0)
    if stage_limit < 2:
        man.finish(verdict)
        man.write(_artifact(outdir, "z3z3-manifest.jsonl"))
        return man

    t0 = time.time()
    if "stage2" in state:
        s2 = state["stage2"]
        glue = [ComponentCode(F4, 8, [tuple(r) for r in rows])
                for rows in s2["glue"]]
        counts2 = s2["counts"]
    else:
        glue, counts2 = stage2_glue_list(c1, verbose)
        state["stage2"] = {"glue": [[list(r) for r in c.rows] for c in glue],
                           "counts": counts2}
        save_state()
    man.add_stage("glue-candidates", counts2,
                  {"glue_compatible": exp["stage2"]["glue_compatible"]},
                  seconds=time.time() - t0)
    if stage_limit < 3:
        man.finish(verdict)
        man.write(_artifact(outdir, "z3z3-manifest.jsonl"))
        return man

    t0 = time.time()
    if "stage3" in state:
        s3 = state["stage3"]
        orb_of, reps, counts3 = s3["orb_of"], s3["reps"], s3["counts"]
    else:
        orb_of, reps, counts3 = stage3_orbits(c1, glue, verbose)
        state["stage3"] = {"orb_of": orb_of, "reps": reps, "counts": counts3}
        save_state()
    man.add_stage("candidate-orbits", counts3,
                  {"orbits": exp["stage3"]["orbits"]},
                  seconds=time.time() - t0)
    if stage_limit < 4:
        man.finish(verdict)
        man.write(_artifact(outdir, "z3z3-manifest.jsonl"))
        return man

    t0 = time.time()
    family = KernelFamily(c1, glue, orb_of, reps, verbose)
    if "stage4" in state:
        s4 = state["stage4"]
        fused, counts4 = s4["fused"], s4["counts"]
    else:
        fused, _, counts4 = stage4_fusion(family)
        state["stage4"] = {"fused": fused, "counts": counts4}
        save_state()
    man.add_stage("kernel-fusion", counts4,
                  {"codes": exp["stage4"]["codes"],
                   "classes": exp["stage4"]["classes"],
                   "verified": exp["stage4"]["codes"]},
                  seconds=time.time() - t0,
                  notes="classes fused by block-structure-preserving moves; "
                        "invariant_classes is the weight-enumerator lower bound")
    if stage_limit < 5:
        man.finish(verdict)
        man.write(_artifact(outdir, "z3z3-manifest.jsonl"))
        return man

    t0 = time.time()
    wid_path = _artifact(outdir, "z3z3-wordids.npy")
    if os.path.exists(wid_path):
        word_ids = np.load(wid_path)
    else:
        word_ids = _word_ids(glue)
        np.save(wid_path, word_ids)
    scans = []
    slot3_sizes, slot4_sizes = [], []
    slot_lists = []
    for grp in fused:
        kernel = family.kernels[grp[0]]
        scan = GlueScan(kernel, family.dec, verbose)
        ok3, ok4 = scan.slot_lists(word_ids)
        scans.append(scan)
        slot_lists.append((ok3, ok4))
        slot3_sizes.append(int(ok3.sum()))
        slot4_sizes.append(int(ok4.sum()))
    counts5 = {"slot3_sizes": slot3_sizes, "slot4_sizes": slot4_sizes}
    man.add_stage("slot-lists", counts5, dict(exp["stage5"]),
                  seconds=time.time() - t0,
                  notes="sizes listed per class, largest class first")
    if stage_limit < 6:
        man.finish(verdict)
        man.write(_artifact(outdir, "z3z3-manifest.jsonl"))
        return man

    if not extended:
        man.finish("incomplete (pair scan needs the extended flag)")
        man.write(_artifact(outdir, "z3z3-manifest.jsonl"))
        return man

    t0 = time.time()
    found = 0
    pairs = 0
    for ci, (scan, (ok3, ok4)) in enumerate(zip(scans, slot_lists)):
        ids3 = word_ids[np.nonzero(ok3)[0]]
        ids4 = word_ids[np.nonzero(ok4)[0]]
        ckpt = _artifact(outdir, f"z3z3-pairs-class{ci}.npz")
        f, p = scan.pair_scan(ids3, ids4, checkpoint=ckpt)
        found += f
        pairs += p
    counts6 = {"codes_found": found, "pairs": pairs}
    ok = man.add_stage("pair-scan", counts6,
                       {"codes_found": exp["stage6"]["codes_found"]},
                       seconds=time.time() - t0)
    verdict = "none found" if (found == 0 and ok) else f"{found} codes found"
    man.finish(verdict)
    man.write(_artifact(outdir, "z3z3-manifest.jsonl"))
    return man
