"""Canonical forms of codes under (semi)monomial column actions.

The action on a code of length l over K, linear over a subfield S, is
generated by
  * a column permutation part (full S_l for canonization; an arbitrary
    generator list is allowed for plain orbit computations),
  * a per-column "cell" group H of S-linear value maps on K (scalar
    multiplications, and for the GF(16)/GF(4) case also conjugation),
  * a global part applied to every coordinate at once (field scalars
    and/or Galois automorphisms; these need not be S-linear).

The canonical representative is the code whose reduced-echelon generator
matrix, serialized column block by column block, is lexicographically
smallest over the action; the search is a backtracking over (column,
cell) choices with three prunings: the running serialization must match
the best known prefix, candidate columns are restricted to the smallest
invariant class (weight-incidence signatures), and columns equivalent
under already-discovered automorphisms are skipped.
"""

from __future__ import annotations

import itertools

import numpy as np

from .binary import BinaryCode, CodeError
from .component import ComponentCode, subfield_embedding
from .fields import GF, galois_group
from .permgroup import PermGroup, identity as perm_identity, inv as perm_inv, mul as perm_mul


class ActionError(ValueError):
    pass


# ---------------------------------------------------------------------
# actions and monomial elements


def _table_id(k: int) -> tuple:
    return tuple(range(1 << k))


def _scalar_tables(field: GF, scalars) -> list[tuple]:
    return [tuple(field.mul(s, x) for x in range(field.size)) for s in scalars]


def _close_tables(field: GF, tables) -> list[tuple]:
    out = [_table_id(field.k)]
    frontier = list(out)
    while frontier:
        t = frontier.pop()
        for g in tables:
            c = tuple(g[t[x]] for x in range(field.size))
            if c not in out:
                out.append(c)
                frontier.append(c)
    return out


class ActionSpec:
    """Description of a group acting on codes of length l over GF(2^k)."""

    def __init__(self, field_k: int, length: int, sub_k: int | None = None,
                 cells=None, global_tables=None, perm_gens=None):
        self.field = GF(field_k)
        self.length = length
        self.sub_k = field_k if sub_k is None else sub_k
        ident = _table_id(field_k)
        self.cells = [tuple(t) for t in (cells or [ident])]
        if ident not in self.cells:
            self.cells.insert(0, ident)
        self.cells.sort()
        closed = sorted(_close_tables(self.field, self.cells))
        if closed != self.cells:
            raise ActionError("cell maps do not form a group")
        self.global_tables = [tuple(t) for t in (global_tables or [ident])]
        if ident not in self.global_tables:
            self.global_tables.insert(0, ident)
        self.global_tables.sort()
        if sorted(_close_tables(self.field, self.global_tables)) != self.global_tables:
            raise ActionError("global maps do not form a group")
        self.perm_gens = None if perm_gens is None else [tuple(p) for p in perm_gens]
        # cells must be S-linear so that row reduction commutes with them
        emb, _ = subfield_embedding(field_k, self.sub_k)
        F = self.field
        for t in self.cells:
            for s in emb:
                for x in range(F.size):
                    if t[F.mul(s, x)] != F.mul(s, t[x]):
                        raise ActionError("cell map is not linear over the coefficient field")

    # -- stock actions ------------------------------------------------

    @staticmethod
    def binary(n: int, perm_gens=None) -> "ActionSpec":
        return ActionSpec(1, n, perm_gens=perm_gens)

    @staticmethod
    def monomial(field_k: int, length: int, with_galois: bool = False, perm_gens=None) -> "ActionSpec":
        """Full monomial group (F*)^l wr S_l, optionally with the global
        Galois group."""
        F = GF(field_k)
        cells = _scalar_tables(F, range(1, F.size))
        glb = list(galois_group(field_k)) if with_galois else None
        return ActionSpec(field_k, length, cells=cells, global_tables=glb, perm_gens=perm_gens)

    @staticmethod
    def semimonomial5(length: int, perm_gens=None) -> "ActionSpec":
        """F4-linear codes in GF(16)^l: global F4* scalars, per-column
        group generated by xi-multiplication and conjugation x -> x^4."""
        from .fields import xi16

        F = GF(4)
        xi_mult = tuple(F.mul(xi16(), x) for x in range(16))
        conj = tuple(F.frobenius(F.frobenius(x)) for x in range(16))
        cells = _close_tables(F, [xi_mult, conj])
        emb, _ = subfield_embedding(4, 2)
        glb = _scalar_tables(F, [emb[s] for s in range(1, 4)])
        return ActionSpec(4, length, sub_k=2, cells=cells, global_tables=glb, perm_gens=perm_gens)

    @property
    def group_order(self) -> int:
        import math

        if self.perm_gens is None:
            p = math.factorial(self.length)
        else:
            p = PermGroup(self.perm_gens, self.length).order
        return p * len(self.cells) ** self.length * len(self.global_tables) // self._overlap()

    def _overlap(self) -> int:
        # global maps that are also products of identical cells are counted
        # twice in the naive product
        n = 0
        for g in self.global_tables:
            if g in self.cells:
                n += 1
        return max(n, 1)


class Monomial:
    """One element of the action: w[perm[j]] = table_j(v[j])."""

    __slots__ = ("perm", "tables")

    def __init__(self, perm, tables):
        self.perm = tuple(perm)
        self.tables = tuple(tuple(t) for t in tables)

    @staticmethod
    def identity(l: int, field_k: int) -> "Monomial":
        return Monomial(perm_identity(l), [_table_id(field_k)] * l)

    def apply_vec(self, v) -> tuple:
        out = [0] * len(v)
        for j, x in enumerate(v):
            out[self.perm[j]] = self.tables[j][x]
        return tuple(out)

    def then(self, other: "Monomial") -> "Monomial":
        """self followed by other."""
        perm = perm_mul(self.perm, other.perm)
        tables = [
            tuple(other.tables[self.perm[j]][self.tables[j][x]] for x in range(len(self.tables[j])))
            for j in range(len(self.perm))
        ]
        return Monomial(perm, tables)

    def inverse(self) -> "Monomial":
        ip = perm_inv(self.perm)
        size = len(self.tables[0])
        tables = [None] * len(self.perm)
        for j in range(len(self.perm)):
            t = self.tables[j]
            tinv = [0] * size
            for x in range(size):
                tinv[t[x]] = x
            tables[self.perm[j]] = tuple(tinv)
        # tables for the inverse are indexed by the *source* coordinate
        out = [tables[j] for j in range(len(self.perm))]
        return Monomial(ip, out)

    def key(self):
        return (self.perm, self.tables)

    def __eq__(self, other):
        return isinstance(other, Monomial) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def apply_code(self, code):
        if isinstance(code, BinaryCode):
            rows = [self.apply_vec(_bits_to_vec(r, code.n)) for r in code.rows]
            return BinaryCode(code.n, [_vec_to_bits(v) for v in rows])
        return ComponentCode(code.field, code.length,
                             [self.apply_vec(r) for r in code.rows],
                             sub_k=code.sub_k, tag=code.tag)


def _bits_to_vec(r: int, n: int) -> tuple:
    return tuple((r >> i) & 1 for i in range(n))


def _vec_to_bits(v) -> int:
    return sum(x << i for i, x in enumerate(v))


# ---------------------------------------------------------------------
# column invariants


def column_signatures(rows, l: int, field: GF, sub_k: int, word_cap: int = 1 << 21):
    """Per-column invariant signatures: for the few smallest nonzero
    codeword weights, how many words of that weight touch the column."""
    dim = len(rows)
    S = GF(sub_k)
    if S.size**dim > word_cap:
        raise ActionError("too many codewords for signature computation")
    if field.k == 1:
        from . import bitops

        packed = bitops.all_words([_vec_to_bits(r) for r in rows], cap_dim=26)
        w = bitops.weights(packed)
        sigs = [[] for _ in range(l)]
        levels = sorted({int(x) for x in w if x})[:3]
        for lev in levels:
            sel = packed[w == lev]
            for j in range(l):
                word, bit = divmod(j, 64)
                cnt = int(((sel[:, word] >> np.uint64(bit)) & np.uint64(1)).sum())
                sigs[j].append(cnt)
        return [tuple(s) for s in sigs]
    # field case: straight enumeration
    code = ComponentCode(field, l, rows, sub_k=sub_k)
    counts: dict[int, list[int]] = {}
    for wvec in code.words():
        supp = [j for j, x in enumerate(wvec) if x]
        wt = len(supp)
        if wt == 0:
            continue
        per = counts.setdefault(wt, [0] * l)
        for j in supp:
            per[j] += 1
    levels = sorted(counts)[:3]
    return [tuple(counts[lev][j] for lev in levels) for j in range(l)]


# ---------------------------------------------------------------------
# the canonizer


class CanonicalResult:
    """Canonical key, transporter to the representative, stabilizer."""

    __slots__ = ("key", "transporter", "representative", "stabilizer_gens",
                 "stabilizer_order", "stabilizer_perm_group")

    def __init__(self, key, transporter, representative, stab_gens, stab_order, perm_group):
        self.key = key
        self.transporter = transporter
        self.representative = representative
        self.stabilizer_gens = stab_gens
        self.stabilizer_order = stab_order
        self.stabilizer_perm_group = perm_group

    def key_hex(self) -> str:
        return self.key.hex()


def _code_rows(code, action: ActionSpec):
    if isinstance(code, BinaryCode):
        if action.field.k != 1:
            raise ActionError("binary code under a non-binary action")
        if code.n != action.length:
            raise ActionError("length mismatch")
        return [_bits_to_vec(r, code.n) for r in code.rows]
    if code.field.k != action.field.k or code.length != action.length or code.sub_k != action.sub_k:
        raise ActionError("code does not match the action")
    return [tuple(r) for r in code.rows]


class _Search:
    """Backtracking state for one globally-transformed code."""

    def __init__(self, rows, action: ActionSpec):
        self.action = action
        self.F = action.field
        self.S = GF(action.sub_k)
        self.emb, self.coords = subfield_embedding(action.field.k, action.sub_k)
        self.d = action.field.k // action.sub_k
        self.l = action.length
        self.rows0 = rows
        self.sigs = column_signatures(rows, self.l, self.F, action.sub_k)
        order = sorted(set(self.sigs))
        self.sig_rank = {s: i for i, s in enumerate(order)}

    # -- S-arithmetic on K-vectors ------------------------------------

    def _scale(self, s_elt, vec):
        lam = self.emb[s_elt]
        F = self.F
        return tuple(F.mul(lam, x) for x in vec)

    def _addmul(self, vec, s_elt, other):
        if s_elt == 0:
            return vec
        lam = self.emb[s_elt]
        F = self.F
        return tuple(a ^ F.mul(lam, b) for a, b in zip(vec, other))

    def _block(self, vec, j, cell):
        """S-coordinates of cell(vec[j])."""
        return self.coords[cell[vec[j]]]

    def probe(self, rows, kernel, j, cell):
        """Serialized column block for candidate (column j, cell), without
        updating the state (blocks only; vectors are untouched)."""
        S = self.S
        d = self.d
        cur = [list(self._block(v, j, cell)) for v in rows]
        ker = [list(self._block(v, j, cell)) for v in kernel]
        out = []
        for s in range(d):
            piv = next((i for i, b in enumerate(ker) if b[s]), None)
            if piv is None:
                out.append(0)
                out.extend(b[s] for b in cur)
                continue
            out.append(1)
            pb = ker.pop(piv)
            sc = S.inv(pb[s])
            pb = [S.mul(sc, x) for x in pb]
            ker = [[a ^ S.mul(b[s], p) for a, p in zip(b, pb)] if b[s] else b for b in ker]
            cur = [[a ^ S.mul(b[s], p) for a, p in zip(b, pb)] if b[s] else b for b in cur]
            cur.append(pb)
        return tuple(out)

    def chunk(self, rows, kernel, j, cell):
        """Serialized column block for candidate (column j, cell), plus the
        updated (rows, kernel) if this candidate is taken."""
        S = self.S
        d = self.d
        cur = [(list(self._block(v, j, cell)), v) for v in rows]
        ker = [(list(self._block(v, j, cell)), v) for v in kernel]
        out = []
        for s in range(d):
            piv = next((i for i, (b, _v) in enumerate(ker) if b[s]), None)
            if piv is None:
                out.append(0)
                out.extend(b[s] for b, _v in cur)
                continue
            out.append(1)
            pb, pv = ker.pop(piv)
            sc = S.inv(pb[s])
            pb = [S.mul(sc, x) for x in pb]
            pv = self._scale(sc, pv)
            # keep blocks and vectors in lockstep while eliminating
            ker = [
                (
                    [a ^ S.mul(b[s], p) for a, p in zip(b, pb)],
                    self._addmul(v, b[s], pv),
                )
                if b[s]
                else (b, v)
                for b, v in ker
            ]
            cur = [
                (
                    [a ^ S.mul(b[s], p) for a, p in zip(b, pb)],
                    self._addmul(v, b[s], pv),
                )
                if b[s]
                else (b, v)
                for b, v in cur
            ]
            cur.append((pb, pv))
        new_rows = [v for _b, v in cur]
        new_kernel = [v for _b, v in ker]
        return tuple(out), new_rows, new_kernel


class _BinarySearch(_Search):
    """Bit-packed fast path: vectors are ints, S = K = GF(2), cells
    trivial."""

    def __init__(self, rows, action):
        super().__init__(rows, action)
        self.rows0 = [_vec_to_bits(r) for r in rows]

    def probe(self, rows, kernel, j, cell):
        bit = 1 << j
        if any(v & bit for v in kernel):
            return (1,)
        return (0,) + tuple(1 if v & bit else 0 for v in rows)

    def chunk(self, rows, kernel, j, cell):
        bit = 1 << j
        piv = next((i for i, v in enumerate(kernel) if v & bit), None)
        if piv is None:
            return (0,) + tuple(1 if v & bit else 0 for v in rows), rows, kernel
        pv = kernel[piv]
        new_kernel = [v ^ pv if v & bit else v for i, v in enumerate(kernel) if i != piv]
        new_rows = [v ^ pv if v & bit else v for v in rows] + [pv]
        return (1,), new_rows, new_kernel


class SearchBudgetError(RuntimeError):
    pass


def canonical_form(code, action: ActionSpec, max_nodes: int = 2_000_000) -> CanonicalResult:
    """Canonical representative, transporter and stabilizer of a code
    under the action (see module docstring for the canonical rule)."""
    if action.perm_gens is not None:
        raise ActionError("canonization requires the full symmetric column group")
    rows0 = _code_rows(code, action)
    l = action.length
    F = action.field
    if not rows0:
        ident = Monomial.identity(l, F.k)
        return CanonicalResult(b"", ident, code, [], 1, PermGroup([], l))

    binary = F.k == 1 and len(action.cells) == 1 and len(action.global_tables) == 1
    cls = _BinarySearch if binary else _Search

    champion: dict = {"key": None, "transporter": None, "trail": [], "pending_better": False}
    autos: list[Monomial] = []
    auto_keys: set = set()
    stab_cache: dict = {}
    nodes = [0]

    def path_stab_gens(pathcols):
        """Generators of the pointwise stabilizer of the path columns in
        the discovered automorphism group (permutation parts)."""
        tag = (tuple(pathcols), len(autos))
        hit = stab_cache.get(tag)
        if hit is not None:
            return hit
        perms = [a.perm for a in autos]
        gens = [g for g in perms if all(g[b] == b for b in pathcols)]
        if perms and not gens and len(pathcols) <= 3:
            # shallow levels profit from the true pointwise stabilizer,
            # which a plain generator filter can miss entirely
            G = PermGroup(perms, l, base_hint=list(pathcols))
            lev = len(pathcols)
            gens = G._strong[lev] if lev < len(G._strong) else []
        stab_cache[tag] = gens
        return gens

    def same_orbit(j, e, gens):
        if j == e:
            return True
        if not gens:
            return False
        orb = {e}
        frontier = [e]
        while frontier:
            p = frontier.pop()
            for g in gens:
                q = g[p]
                if q == j:
                    return True
                if q not in orb:
                    orb.add(q)
                    frontier.append(q)
        return False

    def make_transporter(gt, path):
        perm = [0] * l
        tables = [None] * l
        for pos, (j, cell) in enumerate(path):
            perm[j] = pos
            tables[j] = tuple(cell[gt[x]] for x in range(F.size))
        return Monomial(perm, tables)

    for gt in action.global_tables:
        rows_g = [tuple(gt[x] for x in r) for r in rows0]
        srch = cls(rows_g, action)
        kernel0 = srch.rows0 if binary else rows_g

        def dfs(level, rows, kernel, used, path):
            nodes[0] += 1
            if nodes[0] > max_nodes:
                raise SearchBudgetError(f"canonization exceeded {max_nodes} nodes")
            if level == l:
                t = make_transporter(gt, path)
                if champion["key"] is None or champion["pending_better"]:
                    champion["key"] = list(champion["trail"])
                    champion["transporter"] = t
                    champion["pending_better"] = False
                else:
                    a = t.then(champion["transporter"].inverse())
                    if a != Monomial.identity(l, F.k) and a.key() not in auto_keys:
                        auto_keys.add(a.key())
                        autos.append(a)
                        stab_cache.clear()
                return
            cand: dict = {}
            for j in range(l):
                if j in used:
                    continue
                for cell in action.cells:
                    ch = srch.probe(rows, kernel, j, cell)
                    cand.setdefault((srch.sig_rank[srch.sigs[j]], ch), []).append((j, cell))
            m = min(cand)
            ck = champion["key"]
            if ck is not None and not champion["pending_better"]:
                if m > ck[level]:
                    return
                if m < ck[level]:
                    champion["pending_better"] = True
            champion["trail"][level:] = [m]
            pathcols = [jj for jj, _ in path]
            by_col: dict = {}
            for j, cell in cand[m]:
                by_col.setdefault(j, []).append(cell)
            explored_cols: list = []
            for j, cells in by_col.items():
                gens = path_stab_gens(pathcols)
                # skip a whole column if a path-fixing automorphism maps it
                # onto an already explored column
                if any(same_orbit(j, e, gens) for e in explored_cols):
                    continue
                explored_cols.append(j)
                for cell in cells:
                    _ch, new_rows, new_kernel = srch.chunk(rows, kernel, j, cell)
                    dfs(level + 1, new_rows, new_kernel, used | {j}, path + [(j, cell)])

        # a later global table must still beat the champion to matter
        champion["pending_better"] = False
        champion["trail"] = list(champion["key"] or [])
        dfs(0, [], list(kernel0), frozenset(), [])

    key_ints = [x for entry in champion["key"] for x in (entry[0], *entry[1])]
    key_bytes = bytes()
    for x in key_ints:
        if x > 255:
            key_bytes += b"\xff" + int(x).to_bytes(4, "big")
        else:
            key_bytes += bytes([x])
    t = champion["transporter"]
    rep_code = t.apply_code(code)
    perm_group = PermGroup([a.perm for a in autos], l)
    order = perm_group.order * _diagonal_stabilizer_count(code, action)
    return CanonicalResult(key_bytes, t, rep_code, list(autos), order, perm_group)


def _diagonal_stabilizer_count(code, action: ActionSpec) -> int:
    """Number of action elements with identity column permutation that
    stabilize the code."""
    if len(action.cells) == 1 and len(action.global_tables) == 1:
        return 1
    rows = _code_rows(code, action)
    l = action.length
    sub_k = action.sub_k
    F = action.field
    seen_tables = set()

    def proj_equal(tables, j):
        trunc = [r[: j + 1] for r in rows]
        trans = [tuple(tables[c][r[c]] for c in range(j + 1)) for r in trunc]
        a = ComponentCode(F, j + 1, trunc, sub_k=sub_k)
        b = ComponentCode(F, j + 1, trans, sub_k=sub_k)
        return a == b

    count = 0
    for gt in action.global_tables:

        def rec(j, tables):
            nonlocal count
            if j == l:
                key = tuple(tables)
                if key not in seen_tables:
                    seen_tables.add(key)
                    count += 1
                return
            for cell in action.cells:
                t_j = tuple(cell[gt[x]] for x in range(F.size))
                tables.append(t_j)
                if proj_equal(tables, j):
                    rec(j + 1, tables)
                tables.pop()

        rec(0, [])
    return count


def are_equivalent(code_a, code_b, action: ActionSpec, max_nodes: int = 2_000_000):
    """A transporter mapping code_a onto code_b if they are equivalent
    under the action, else None."""
    ra = canonical_form(code_a, action, max_nodes=max_nodes)
    rb = canonical_form(code_b, action, max_nodes=max_nodes)
    if ra.key != rb.key:
        return None
    t = ra.transporter.then(rb.transporter.inverse())
    if t.apply_code(code_a) != code_b:
        raise ActionError("transporter verification failed")
    return t


def action_generators(action: ActionSpec) -> list[Monomial]:
    """Monomial generators of the action group."""
    l = action.length
    F = action.field
    out = []
    if action.perm_gens is None:
        if l >= 2:
            swap = list(range(l))
            swap[0], swap[1] = 1, 0
            out.append(Monomial(swap, [_table_id(F.k)] * l))
            out.append(Monomial(tuple(list(range(1, l)) + [0]), [_table_id(F.k)] * l))
    else:
        for p in action.perm_gens:
            out.append(Monomial(p, [_table_id(F.k)] * l))
    ident_perm = perm_identity(l)
    for cell in action.cells:
        if cell != _table_id(F.k):
            out.append(Monomial(ident_perm, [cell] + [_table_id(F.k)] * (l - 1)))
    for gt in action.global_tables:
        if gt != _table_id(F.k):
            out.append(Monomial(ident_perm, [gt] * l))
    return out


def orbit_of_code(code, action: ActionSpec, cap: int = 1_000_000):
    """The full orbit of a code under the action, deduplicated by the
    row-space normal form."""
    gens = action_generators(action)
    seen = {code}
    frontier = [code]
    while frontier:
        c = frontier.pop()
        for g in gens:
            d = g.apply_code(c)
            if d not in seen:
                if len(seen) >= cap:
                    raise ActionError(f"orbit exceeds cap {cap}")
                seen.add(d)
                frontier.append(d)
    return seen


def automorphism_group(code: BinaryCode, max_nodes: int = 2_000_000) -> PermGroup:
    """Setwise stabilizer of a binary code under coordinate permutations."""
    res = canonical_form(code, ActionSpec.binary(code.n), max_nodes=max_nodes)
    return res.stabilizer_perm_group
