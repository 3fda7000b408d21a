"""Semisimple group algebra machinery for odd-order abelian groups.

The group algebra F2[G] splits as a direct sum of binary fields.  This
module computes the central primitive idempotents (via Frobenius orbits
on the character group), pairs them under the inversion involution, and
builds the weight-preserving component isomorphisms phi_i between
GF(2^k)^l and the idempotent row spaces inside F2^n.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .fields import GF, FieldError


class GroupError(ValueError):
    pass


def _perm_mul(a: tuple, b: tuple) -> tuple:
    """(a*b)(x) = b(a(x)): apply a first, then b."""
    return tuple(b[a[i]] for i in range(len(a)))


def _perm_inv(a: tuple) -> tuple:
    out = [0] * len(a)
    for i, j in enumerate(a):
        out[j] = i
    return tuple(out)


class GroupSpec:
    """An odd-order abelian permutation group in block normal form.

    Points 0..m-1 split into l free blocks of size q; points m..n-1 are
    fixed by the whole group.  The element list g_0..g_{q-1} starts with
    the identity and satisfies g_i(k*q) = k*q + i for every block k.
    """

    def __init__(self, generators: list[tuple], n: int):
        self.n = n
        self.generators = [tuple(g) for g in generators]
        for g in self.generators:
            if sorted(g) != list(range(n)):
                raise GroupError("generator is not a permutation of the stated degree")
        self._close()
        self._block_structure()
        self._factor()

    # -- construction helpers -----------------------------------------

    @classmethod
    def regular(cls, orders: list[int]) -> "GroupSpec":
        """The direct product of cyclic groups, acting regularly (one free
        orbit, no fixed points)."""
        q = math.prod(orders)
        gens = []
        for j, o in enumerate(orders):
            perm = []
            for idx in range(q):
                digits = _mixed_digits(idx, orders)
                digits[j] = (digits[j] + 1) % o
                perm.append(_mixed_value(digits, orders))
            gens.append(tuple(perm))
        return cls(gens, q)

    def _close(self) -> None:
        ident = tuple(range(self.n))
        seen = {ident: ()}
        frontier = [ident]
        while frontier:
            nxt = []
            for p in frontier:
                for j, g in enumerate(self.generators):
                    r = _perm_mul(p, g)
                    if r not in seen:
                        seen[r] = None
                        nxt.append(r)
            frontier = nxt
        self.q = len(seen)
        if self.q % 2 == 0:
            raise GroupError(f"group order {self.q} is even")
        for a in self.generators:
            for b in self.generators:
                if _perm_mul(a, b) != _perm_mul(b, a):
                    raise GroupError("generators do not commute")
        self._element_set = set(seen)

    def _block_structure(self) -> None:
        n, q = self.n, self.q
        moved = set()
        for g in self._element_set:
            for i in range(n):
                if g[i] != i:
                    moved.add(i)
        self.f = n - len(moved)
        if len(moved) % q:
            raise GroupError("moved points are not a union of free orbits")
        self.m = len(moved)
        self.l = self.m // q
        if moved and moved != set(range(self.m)):
            raise GroupError("moved points must come first (block normal form)")
        # non-identity elements must be fixed-point-free on the moved part
        for g in self._element_set:
            if g == tuple(range(n)):
                continue
            for i in range(self.m):
                if g[i] == i:
                    raise GroupError("non-identity element fixes a moved point")
        # element order: g_i is the element with g_i(0) = i
        elems = [None] * q
        if self.l:
            for g in self._element_set:
                elems[g[0]] = g
            if any(e is None for e in elems):
                raise GroupError("block orbit does not have full length")
            for i, g in enumerate(elems):
                for k in range(self.l):
                    if g[k * q] != k * q + i:
                        raise GroupError("blocks are not aligned (Lemma-style normal form fails)")
        else:
            elems = [tuple(range(n))]
        self.elements = elems
        index = {g: i for i, g in enumerate(elems)}
        self.mul = [[index[_perm_mul(a, b)] for b in elems] for a in elems]
        self.inv = [index[_perm_inv(a)] for a in elems]
        self.gen_index = [index[g] for g in self.generators]

    def _factor(self) -> None:
        """Exponent-vector coordinates with respect to the generators.

        Requires the generators to give a direct product decomposition."""
        orders = []
        for gi in self.gen_index:
            o, x = 1, gi
            while x != 0:
                x = self.mul[x][gi]
                o += 1
            orders.append(o)
        if math.prod(orders) != self.q:
            raise GroupError("generators must decompose the group as a direct product")
        self.gen_orders = orders
        # index of each element's exponent vector
        self.exponents = [None] * self.q
        for vec in _mixed_range(orders):
            idx = 0
            for gi, a in zip(self.gen_index, vec):
                for _ in range(a):
                    idx = self.mul[idx][gi]
            self.exponents[idx] = tuple(vec)
        self.exponent = math.lcm(*orders) if orders else 1

    def element_name(self, i: int) -> str:
        names = "ghuv"
        vec = self.exponents[i]
        parts = []
        for j, a in enumerate(vec):
            if a == 1:
                parts.append(names[j])
            elif a > 1:
                parts.append(f"{names[j]}^{a}")
        return "*".join(parts) if parts else "1"


def _mixed_digits(idx: int, orders) -> list[int]:
    out = []
    for o in orders:
        out.append(idx % o)
        idx //= o
    return out


def _mixed_value(digits, orders) -> int:
    v, mult = 0, 1
    for d, o in zip(digits, orders):
        v += d * mult
        mult *= o
    return v


def _mixed_range(orders):
    if not orders:
        yield ()
        return
    total = math.prod(orders)
    for idx in range(total):
        yield tuple(_mixed_digits(idx, orders))


# -- idempotents ------------------------------------------------------


@dataclass
class Idempotent:
    coeffs: int  # bitmask over element indices
    k: int  # component degree
    tag: str = "self"  # "self" or "paired"
    partner: int | None = None  # index of the conjugate, for pairs

    def support(self) -> tuple[int, ...]:
        return tuple(i for i in range(self.coeffs.bit_length()) if (self.coeffs >> i) & 1)


def central_primitive_idempotents(G: GroupSpec) -> list[Idempotent]:
    """All central primitive idempotents of F2[G], e_0 = sum of G first.

    Computed from Frobenius (squaring) orbits on the character group;
    the coefficient of g in the orbit idempotent is the orbit sum of
    character values, evaluated among roots of unity in a binary field.
    """
    q, e = G.q, G.exponent
    if e == 1:
        return [Idempotent(coeffs=1, k=1)]
    m = 1
    while (pow(2, m) - 1) % e:
        m += 1
        if m > 4:
            raise GroupError(f"exponent {e} needs a root of unity beyond GF(2^4)")
    F = GF(m)
    zeta = F.pow(F.generator, (F.size - 1) // e)
    orders = G.gen_orders
    seen = set()
    orbits = []
    for u in _mixed_range(orders):
        if u in seen:
            continue
        orb = []
        v = u
        while v not in seen:
            seen.add(v)
            orb.append(v)
            v = tuple((2 * a) % o for a, o in zip(v, orders))
        orbits.append(orb)

    idems = []
    for orb in orbits:
        coeffs = 0
        for gi in range(q):
            vec = G.exponents[G.inv[gi]]
            acc = 0
            for u in orb:
                expo = sum(a * b * (e // o) for a, b, o in zip(u, vec, orders)) % e
                acc ^= F.pow(zeta, expo)
            if acc not in (0, 1):
                raise GroupError("idempotent coefficient did not land in GF(2)")
            if acc:
                coeffs |= 1 << gi
        idems.append(Idempotent(coeffs=coeffs, k=len(orb)))
    # sanity: dimensions add up
    if sum(i.k for i in idems) != q:
        raise GroupError("component degrees do not sum to |G|")
    return classify_involution_pairs(G, idems)


def classify_involution_pairs(G: GroupSpec, idems: list[Idempotent]) -> list[Idempotent]:
    """Order: e_0 first, then self-conjugate idempotents by support key,
    then conjugate pairs adjacent (smaller support key first)."""

    def bar(coeffs: int) -> int:
        out = 0
        for i in range(G.q):
            if (coeffs >> i) & 1:
                out |= 1 << G.inv[i]
        return out

    e0 = next(i for i in idems if i.coeffs == (1 << G.q) - 1)
    selfs, pairs, used = [], [], set()
    for idem in idems:
        if idem.coeffs in used or idem is e0:
            continue
        conj = bar(idem.coeffs)
        if conj == idem.coeffs:
            selfs.append(idem)
            used.add(idem.coeffs)
        else:
            mate = next((j for j in idems if j.coeffs == conj), None)
            if mate is None:
                raise GroupError("idempotent list not closed under the involution")
            first, second = sorted((idem, mate), key=lambda x: x.support())
            pairs.append((first, second))
            used.update((idem.coeffs, conj))
    selfs.sort(key=lambda x: x.support())
    pairs.sort(key=lambda p: p[0].support())
    out = [e0] + selfs
    e0.tag = "self"
    for i in selfs:
        i.tag = "self"
    for a, b in pairs:
        a.tag = b.tag = "paired"
        a.partner = len(out) + 1
        b.partner = len(out)
        out.extend((a, b))
    return out


def involution_r(idems: list[Idempotent]) -> int:
    """Number of nontrivial self-conjugate idempotents + 1 boundary: the
    index r such that idems[0..r] are self-conjugate and the rest are
    adjacent pairs."""
    r = 0
    while r + 1 < len(idems) and idems[r + 1].tag == "self":
        r += 1
    return r


# -- component isomorphisms ------------------------------------------


class ComponentIso:
    """The weight-preserving isomorphism phi_i : GF(2^k)^l_i -> F2^n E_i.

    ``table[a]`` is the q-bit block image of the field element a (the
    coefficients of phitilde_i(a) in F2[G]); component 0 additionally
    carries the f fixed coordinates, so l_0 = l + f.
    """

    def __init__(self, G: GroupSpec, idems: list[Idempotent], index: int):
        self.G = G
        self.index = index
        idem = idems[index]
        self.idem = idem
        self.field = GF(idem.k)
        self.l = G.l + G.f if index == 0 else G.l
        self._build(idems)

    def _build(self, idems) -> None:
        G, q = self.G, self.G.q
        e = self.idem.coeffs

        def ga_mul(x: int, y: int) -> int:
            out = 0
            for i in range(q):
                if (x >> i) & 1:
                    row = 0
                    for j in range(q):
                        if (y >> j) & 1:
                            row |= 1 << G.mul[i][j]
                    out ^= row
            return out

        def ga_bar(x: int) -> int:
            out = 0
            for i in range(q):
                if (x >> i) & 1:
                    out |= 1 << G.inv[i]
            return out

        self._ga_mul = ga_mul
        self._ga_bar = ga_bar
        if self.index == 0:
            self.table = [0, e]
        else:
            k = self.field.k
            # span of g*e over GF(2): enumerate the 2^k component elements
            basis, _ = _rref_ints([_shift_elem(G, e, gi) for gi in range(q)])
            if len(basis) != k:
                raise GroupError("component rank does not match the field degree")
            span = [0]
            for b in basis:
                span += [s ^ b for s in span]
            span_set = set(span)
            pair = idems[self.idem.partner].coeffs if self.idem.tag == "paired" else None
            # deterministic primitive element whose minimal polynomial is the
            # fixed field modulus, so gen -> p extends to a field isomorphism
            p = None
            for cand in sorted(span_set):
                if cand == 0 or cand == e:
                    continue
                if _elem_order(ga_mul, e, cand) != self.field.size - 1:
                    continue
                if _eval_modulus(ga_mul, e, cand, self.field.modulus) == 0:
                    p = cand
                    break
            if p is None:
                raise GroupError("no primitive element matches the field modulus")
            table = [0] * self.field.size
            x = e
            for j in range(self.field.size - 1):
                table[self.field.pow(self.field.generator, j)] = x
                x = ga_mul(x, p)
            if self.idem.tag == "paired" and self.idem.partner < self.index:
                # second pair members are derived from the first via the
                # involution; see build_component_isos
                raise GroupError("paired partner must be built via build_component_isos")
            self.table = table
        self.inv_table = {t: a for a, t in enumerate(self.table)}
        self.weight_table = [t.bit_count() for t in self.table]
        # images of the group generators inside the field (scalar subgroup)
        self.scalars = sorted(
            {self._field_of(ga_mul(1 << gi, e)) for gi in range(q)} - {0}
        )

    def _field_of(self, x: int) -> int | None:
        return self.inv_table.get(x)

    def replace_table(self, table: list[int]) -> None:
        self.table = table
        self.inv_table = {t: a for a, t in enumerate(table)}
        self.weight_table = [t.bit_count() for t in table]
        self.scalars = sorted(
            {self._field_of(self._ga_mul(1 << gi, self.idem.coeffs)) for gi in range(self.G.q)}
            - {None, 0}
        )

    # -- maps ---------------------------------------------------------

    def apply(self, c) -> int:
        """phi_i(c) as an n-bit vector."""
        G = self.G
        if len(c) != self.l:
            raise GroupError(f"component vector must have length {self.l}")
        v = 0
        nblocks = G.l
        for k in range(nblocks):
            v |= self.table[c[k]] << (k * G.q)
        if self.index == 0:
            for j in range(G.f):
                if c[nblocks + j]:
                    v |= 1 << (G.m + j)
        elif self.index != 0:
            pass
        return v

    def invert(self, v: int) -> list[int]:
        G = self.G
        mask = (1 << G.q) - 1
        out = []
        for k in range(G.l):
            block = (v >> (k * G.q)) & mask
            a = self.inv_table.get(block)
            if a is None:
                raise GroupError("vector is not in the component row space")
            out.append(a)
        if self.index == 0:
            for j in range(G.f):
                out.append((v >> (G.m + j)) & 1)
        elif v >> G.m:
            raise GroupError("vector has support on the fixed coordinates")
        return out

    def weight(self, c) -> int:
        """The weight function wt_i; for component 0 with fixed points the
        block part counts q per nonzero entry."""
        G = self.G
        if self.index == 0:
            blocks = sum(1 for x in c[: G.l] if x)
            tail = sum(1 for x in c[G.l :] if x)
            return G.q * blocks + tail
        return sum(self.weight_table[x] for x in c)

    def E_rows(self) -> list[int]:
        """The n x n idempotent matrix E_i as row bitmasks."""
        G = self.G
        e = self.idem.coeffs
        rows = []
        for i in range(G.n):
            if i < G.m:
                k, pos = divmod(i, G.q)
                row = 0
                for j in range(G.q):
                    if (e >> j) & 1:
                        row |= 1 << (k * G.q + G.mul[pos][j])
                rows.append(row)
            else:
                rows.append((1 << i) if self.index == 0 else 0)
        return rows

    def gram(self, other: "ComponentIso") -> list[list[int]]:
        """Binary Gram table of the duality form on one block:
        gram[a][b] = <phitilde_self(a), phitilde_other(b)> over GF(2)."""
        return [
            [(ta & tb).bit_count() & 1 for tb in other.table]
            for ta in self.table
        ]


def _shift_elem(G: GroupSpec, e: int, gi: int) -> int:
    out = 0
    for j in range(G.q):
        if (e >> j) & 1:
            out |= 1 << G.mul[gi][j]
    return out


def _elem_order(mul, one, x) -> int:
    o, y = 1, x
    while y != one:
        y = mul(y, x)
        o += 1
        if o > 70:
            raise GroupError("runaway multiplicative order")
    return o


def _eval_modulus(mul, one, x, modulus: int) -> int:
    """Evaluate the field modulus polynomial at x inside F2[G]e."""
    acc = 0
    power = one
    d = modulus.bit_length() - 1
    for j in range(d + 1):
        if (modulus >> j) & 1:
            acc ^= power
        if j < d:
            power = mul(power, x)
    return acc


def _rref_ints(rows):
    basis, pivots = [], []
    for r in rows:
        for p, b in zip(pivots, basis):
            if (r >> p) & 1:
                r ^= b
        if r:
            p = (r & -r).bit_length() - 1
            i = 0
            while i < len(pivots) and pivots[i] < p:
                i += 1
            pivots.insert(i, p)
            basis.insert(i, r)
            for j in range(len(basis)):
                if j != i and (basis[j] >> p) & 1:
                    basis[j] ^= r
    return basis, pivots


def build_component_isos(G: GroupSpec, idems: list[Idempotent]) -> list[ComponentIso]:
    """All component isomorphisms, honoring phitilde_j = bar o phitilde_i
    on conjugate pairs."""
    isos: list[ComponentIso] = []
    for i, idem in enumerate(idems):
        if idem.tag == "paired" and idem.partner is not None and idem.partner < i:
            mate = isos[idem.partner]
            iso = ComponentIso.__new__(ComponentIso)
            iso.G = G
            iso.index = i
            iso.idem = idem
            iso.field = GF(idem.k)
            iso.l = G.l
            iso._ga_mul = mate._ga_mul
            iso._ga_bar = mate._ga_bar
            iso.replace_table([mate._ga_bar(t) for t in mate.table])
            isos.append(iso)
        else:
            isos.append(ComponentIso(G, idems, i))
    # dimension bookkeeping: n = sum k_i l_i
    total = sum(iso.field.k * iso.l for iso in isos)
    if total != G.n:
        raise GroupError("component dimensions do not sum to n")
    return isos


class Decomposition:
    """Group, idempotents and component isomorphisms bundled together."""

    def __init__(self, G: GroupSpec):
        self.G = G
        self.idems = central_primitive_idempotents(G)
        self.r = involution_r(self.idems)
        self.isos = build_component_isos(G, self.idems)

    @property
    def t(self) -> int:
        return len(self.idems) - 1

    def pairs(self) -> list[tuple[int, int]]:
        out = []
        for i, idem in enumerate(self.idems):
            if idem.tag == "paired" and idem.partner > i:
                out.append((i, idem.partner))
        return out
