"""Linear and subfield-linear codes over GF(2^k) component fields.

A ComponentCode is a subspace of GF(2^k)^l that is linear over a
coefficient subfield (usually the full field; the order-5 machinery uses
GF(4)-linear codes inside GF(16)^7).  Rows are tuples of int-encoded
field elements and are kept in a reduced normal form so equal codes
compare equal.
"""

from __future__ import annotations

from functools import lru_cache

from .binary import BinaryCode, CodeError, rref_bits
from .fields import GF, FieldError, xi_subgroup
from .groupalg import ComponentIso


@lru_cache(maxsize=None)
def subfield_embedding(k: int, sub_k: int):
    """Embedding GF(2^sub_k) -> GF(2^k) plus coordinates of GF(2^k) over
    the subfield w.r.t. the basis (1, g, ..., g^(d-1)), g the generator.

    Returns (emb, coords): emb[a] is the image of subfield element a;
    coords[x] is the d-tuple of subfield coordinates of x.
    """
    if k % sub_k:
        raise FieldError(f"GF(2^{sub_k}) is not a subfield of GF(2^{k})")
    K, S = GF(k), GF(sub_k)
    d = k // sub_k
    if d == 1:
        return tuple(range(K.size)), {x: (x,) for x in range(K.size)}
    if sub_k == 1:
        # element encoding is already polynomial in the generator
        return (0, 1), {x: tuple((x >> j) & 1 for j in range(k)) for x in range(K.size)}
    # image of the subfield generator: right order and right minimal polynomial
    target = None
    for cand in range(2, K.size):
        if K.order(cand) != S.size - 1:
            continue
        acc, power = 0, 1
        deg = S.modulus.bit_length() - 1
        for j in range(deg + 1):
            if (S.modulus >> j) & 1:
                acc ^= power
            if j < deg:
                power = K.mul(power, cand)
        if acc == 0:
            target = cand
            break
    if target is None:
        raise FieldError("no subfield embedding found")
    emb = [0] * S.size
    for j in range(S.size - 1):
        emb[S.pow(S.generator, j)] = K.pow(target, j)
    basis = [K.pow(K.generator, i) for i in range(d)]
    coords = {}
    for vec in range(S.size**d):
        digits = []
        v = vec
        for _ in range(d):
            digits.append(v % S.size)
            v //= S.size
        x = 0
        for a, b in zip(digits, basis):
            x ^= K.mul(emb[a], b)
        coords[x] = tuple(digits)
    if len(coords) != K.size:
        raise FieldError("subfield coordinates are not a bijection")
    return tuple(emb), coords


def rref_field(rows, field: GF):
    """Reduced row echelon form over the full field."""
    basis: list[list[int]] = []
    pivots: list[int] = []
    for row in rows:
        r = list(row)
        for p, b in zip(pivots, basis):
            if r[p]:
                c = r[p]
                r = [x ^ field.mul(c, y) for x, y in zip(r, b)]
        piv = next((i for i, x in enumerate(r) if x), None)
        if piv is None:
            continue
        inv = field.inv(r[piv])
        r = [field.mul(inv, x) for x in r]
        idx = 0
        while idx < len(pivots) and pivots[idx] < piv:
            idx += 1
        pivots.insert(idx, piv)
        basis.insert(idx, r)
        for i in range(len(basis)):
            if i != idx and basis[i][piv]:
                c = basis[i][piv]
                basis[i] = [x ^ field.mul(c, y) for x, y in zip(basis[i], r)]
    return [tuple(b) for b in basis], pivots


class ComponentCode:
    """A code over GF(2^k) of length l, linear over GF(2^sub_k)."""

    __slots__ = ("field", "length", "sub_k", "rows", "tag")

    def __init__(self, field: GF, length: int, rows=(), sub_k: int | None = None, tag: int | None = None):
        self.field = field
        self.length = length
        self.sub_k = field.k if sub_k is None else sub_k
        if field.k % self.sub_k:
            raise CodeError("coefficient field must be a subfield")
        self.tag = tag
        for row in rows:
            if len(row) != length or any(x >> field.k for x in row):
                raise CodeError("bad component generator row")
        self.rows = self._normalize(rows)

    def _normalize(self, rows) -> tuple:
        if self.sub_k == self.field.k:
            basis, _ = rref_field(rows, self.field)
            return tuple(basis)
        # subfield-linear: reduce the expanded matrix over the subfield
        emb, coords = subfield_embedding(self.field.k, self.sub_k)
        S = GF(self.sub_k)
        d = self.field.k // self.sub_k
        expanded = [self._expand(row, coords, d) for row in rows]
        basis, _ = rref_field(expanded, S)
        return tuple(self._fold(b, emb, d) for b in basis)

    def _expand(self, row, coords, d):
        out = []
        for x in row:
            out.extend(coords[x])
        return tuple(out)

    def _fold(self, exp_row, emb, d):
        K = self.field
        basis = [K.pow(K.generator, i) for i in range(d)]
        out = []
        for j in range(self.length):
            x = 0
            for i in range(d):
                x ^= K.mul(emb[exp_row[j * d + i]], basis[i])
            out.append(x)
        return tuple(out)

    @property
    def dim(self) -> int:
        """Dimension over the coefficient field."""
        return len(self.rows)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, ComponentCode)
            and self.field.k == other.field.k
            and self.length == other.length
            and self.sub_k == other.sub_k
            and self.rows == other.rows
        )

    def __hash__(self) -> int:
        return hash((self.field.k, self.length, self.sub_k, self.rows))

    def __repr__(self) -> str:
        lin = "" if self.sub_k == self.field.k else f",F{1 << self.sub_k}-linear"
        return f"ComponentCode[GF({self.field.size})^{self.length}, dim {self.dim}{lin}]"

    def words(self):
        """All codewords (coefficient-field span)."""
        S = GF(self.sub_k)
        emb, _ = subfield_embedding(self.field.k, self.sub_k)
        K = self.field
        stack = [tuple([0] * self.length)]
        for row in self.rows:
            scaled = []
            for lam in range(1, S.size):
                lam_k = emb[lam]
                scaled.append(tuple(K.mul(lam_k, x) for x in row))
            stack = [
                tuple(a ^ b for a, b in zip(w, s))
                for w in stack
                for s in [tuple([0] * self.length)] + scaled
            ]
        return stack

    def contains(self, vec) -> bool:
        probe = ComponentCode(self.field, self.length, list(self.rows) + [tuple(vec)], sub_k=self.sub_k)
        return probe.rows == self.rows

    def as_subfield_linear(self, sub_k: int) -> "ComponentCode":
        """The same set of codewords viewed as a code over a smaller
        coefficient field (rows get scaled copies so the span is kept)."""
        if self.sub_k % sub_k:
            raise CodeError("not linear over that subfield")
        K = self.field
        emb, _ = subfield_embedding(K.k, self.sub_k)
        S_old = GF(self.sub_k)
        d = self.sub_k // sub_k
        # basis of the old coefficient field over the new one, inside K
        scalars = [emb[S_old.pow(S_old.generator, i)] for i in range(d)]
        rows = [
            tuple(K.mul(s, x) for x in row)
            for row in self.rows
            for s in scalars
        ]
        return ComponentCode(K, self.length, rows, sub_k=sub_k, tag=self.tag)

    def scaled(self, scalar: int) -> "ComponentCode":
        K = self.field
        return ComponentCode(
            self.field,
            self.length,
            [tuple(K.mul(scalar, x) for x in row) for row in self.rows],
            sub_k=self.sub_k,
            tag=self.tag,
        )


# -- weights ----------------------------------------------------------


def wt5(x: int) -> int:
    """0 on 0, 4 on the fifth roots of unity, 2 elsewhere in GF(16)*."""
    if x == 0:
        return 0
    return 4 if x in _XI else 2


_XI = xi_subgroup()


def wt5_vec(vec) -> int:
    return sum(wt5(x) for x in vec)


def wt5_min(code: ComponentCode) -> int:
    if code.dim == 0:
        raise CodeError("zero code has no nonzero word")
    best = None
    for w in code.words():
        if any(w):
            v = wt5_vec(w)
            if best is None or v < best:
                best = v
    return best


def min_weight_table(code: ComponentCode, table) -> int:
    """Minimum of a per-coordinate weight table over nonzero codewords."""
    if code.dim == 0:
        raise CodeError("zero code has no nonzero word")
    best = None
    for w in code.words():
        if any(w):
            v = sum(table[x] for x in w)
            if best is None or v < best:
                best = v
    return best


# -- duality ----------------------------------------------------------


def binary_image(code: ComponentCode, iso: ComponentIso) -> BinaryCode:
    """phi_i(code) as a binary code of length n."""
    if code.length != iso.l:
        raise CodeError("component length does not match the isomorphism")
    emb, _ = subfield_embedding(code.field.k, code.sub_k)
    S = GF(code.sub_k)
    K = code.field
    rows = []
    for row in code.rows:
        for lam in _coeff_basis(code):
            scaled = [K.mul(lam, x) for x in row]
            rows.append(iso.apply(scaled))
    return BinaryCode(iso.G.n, rows)


def _coeff_basis(code: ComponentCode):
    """An F2-basis of the coefficient subfield, embedded in the field."""
    emb, _ = subfield_embedding(code.field.k, code.sub_k)
    return [emb[1 << j] for j in range(code.sub_k)]


def _fold_binary_space(rows_bits, iso: ComponentIso, field: GF) -> ComponentCode:
    """Fold an F2-subspace of rowspace(E_i) back to a component code."""
    vecs = [iso.invert(r) for r in rows_bits]
    return ComponentCode(field, iso.l, [tuple(v) for v in vecs])


def _binary_intersection(rows_a, rows_b, n):
    """Basis of rowspace(a) & rowspace(b) over GF(2) (Zassenhaus)."""
    # Zassenhaus: a-rows occupy both halves, b-rows only the low half; after
    # reduction (low bits first) the rows with vanished low half have their
    # high half in <a> & <b>
    stacked = [(r << n) | r for r in rows_a] + [r for r in rows_b]
    basis, _pivots = rref_bits(stacked, 2 * n)
    mask = (1 << n) - 1
    return [row >> n for row in basis if (row & mask) == 0 and row]


def component_dual(code: ComponentCode, iso: ComponentIso, iso_dual: ComponentIso | None = None) -> ComponentCode:
    """Dual of a component code under the transported duality form.

    For self-conjugate components pass ``iso`` only; for a conjugate pair
    (J-1, J), ``iso`` is the component of ``code`` and ``iso_dual`` the
    component the dual lives in.  Computed generically: unfold to the
    binary image, dualize over GF(2) inside the target component
    subspace, fold back.
    """
    if code.sub_k != code.field.k:
        raise CodeError("component_dual expects a full-field-linear code")
    if iso_dual is None:
        iso_dual = iso
    img = binary_image(code, iso)
    dual = img.dual()
    comp_rows = [r for r in iso_dual.E_rows() if r]
    inter = _binary_intersection(list(dual.rows), comp_rows, iso.G.n)
    out = _fold_binary_space(inter, iso_dual, GF(iso_dual.field.k))
    if out.dim != iso_dual.l - code.dim:
        raise CodeError("component dual has unexpected dimension")
    return out


def component_dual_gram(code: ComponentCode, iso: ComponentIso, iso_dual: ComponentIso | None = None) -> ComponentCode:
    """Fast-path dual via the per-block binary Gram table; must agree with
    component_dual (property-tested)."""
    if iso_dual is None:
        iso_dual = iso
    K = GF(iso_dual.field.k)
    k = K.k
    if iso_dual.index == 0:
        # the transported form on component 0 is the standard dot product
        bc = BinaryCode(code.length, [sum(x << i for i, x in enumerate(r)) for r in code.rows])
        d = bc.dual()
        return ComponentCode(K, code.length, [tuple((r >> i) & 1 for i in range(code.length)) for r in d.rows])
    gram = iso_dual.gram(iso)  # gram[a][b] = <phit_dual(a), phit_code(b)>
    # binary unfolding: unknowns are k bits per coordinate of the dual vector
    l = iso_dual.l
    rows_bin = []
    gens = []
    for row in code.rows:
        for lam in _coeff_basis(code):
            gens.append([code.field.mul(lam, x) for x in row])
    nb = l * k
    for gen in gens:
        row = 0
        for pos in range(l):
            for s in range(k):
                if gram[1 << s][gen[pos]]:
                    row |= 1 << (pos * k + s)
        rows_bin.append(row)
    # kernel of the generator matrix over GF(2)
    kern = BinaryCode(nb, rows_bin).dual()
    vecs = []
    for r in kern.rows:
        vec = []
        for pos in range(l):
            x = (r >> (pos * k)) & ((1 << k) - 1)
            vec.append(x)
        vecs.append(tuple(vec))
    return ComponentCode(K, l, vecs)


def trace_hermitian_dual(code: ComponentCode) -> ComponentCode:
    """Dual of an F4-linear code in GF(16)^l under
    sum trace_{F16/F4}(x_i * conj(v_i)), conj = x^4."""
    if code.field.k != 4 or code.sub_k != 2:
        raise CodeError("trace-Hermitian dual needs an F4-linear code in GF(16)")
    K = GF(4)
    F4 = GF(2)
    emb, _coords = subfield_embedding(4, 2)
    l = code.length
    # expanded F4 system: the unknown v has 2l F4-coordinates
    basis16 = [1, K.generator]

    def trace164(x: int) -> int:
        t = x ^ K.frobenius(K.frobenius(x))  # x + x^4 in GF(16), lies in F4
        return _to_f4(t)

    rows = []
    for gen in code.rows:
        row = []
        for pos in range(l):
            for s in range(2):
                # coefficient of the unknown coordinate (pos, s):
                # trace(x_pos * conj(basis_s))
                conj = K.frobenius(K.frobenius(basis16[s]))
                row.append(trace164(K.mul(gen[pos], conj)))
        rows.append(tuple(row))
    # kernel over F4
    kern = _kernel_field(rows, F4, 2 * l)
    folded = []
    for v in kern:
        vec = []
        for pos in range(l):
            x = 0
            for s in range(2):
                x ^= K.mul(emb[v[2 * pos + s]], basis16[s])
            vec.append(x)
        folded.append(tuple(vec))
    return ComponentCode(K, l, folded, sub_k=2)


def _to_f4(x16: int) -> int:
    emb, coords = subfield_embedding(4, 2)
    c = coords[x16]
    if c[1] != 0:
        raise CodeError("element is not in the F4 subfield")
    return c[0]


def _kernel_field(rows, field: GF, width: int):
    """Kernel of the row system {sum_j v_j * row[j] = 0} over the field."""
    basis, pivots = rref_field(rows, field)
    free = [j for j in range(width) if j not in pivots]
    out = []
    for c in free:
        vec = [0] * width
        vec[c] = 1
        for p, b in zip(pivots, basis):
            if b[c]:
                vec[p] = b[c]
        out.append(tuple(vec))
    return out


# -- the order-5 expansion maps --------------------------------------


def galois16(x: int) -> int:
    """The nontrivial Galois automorphism of GF(16) over F4: x -> x^4."""
    K = GF(4)
    return K.frobenius(K.frobenius(x))


def h_action(vec) -> tuple:
    """(x1,y1,...,x7,y7) -> (conj(y1),conj(x1),...): the order-2 action on
    GF(16)^(2m) used in the dihedral setup."""
    out = []
    for i in range(0, len(vec), 2):
        out.extend((galois16(vec[i + 1]), galois16(vec[i])))
    return tuple(out)


def psi_expand(X: ComponentCode) -> ComponentCode:
    """F16-linear span of (x1, conj(x1), ..., xl, conj(xl)) for x in X."""
    if X.field.k != 4:
        raise CodeError("psi_expand needs a code over GF(16)")
    K = GF(4)
    rows = []
    for row in X.rows:
        out = []
        for x in row:
            out.extend((x, galois16(x)))
        rows.append(tuple(out))
    expanded = ComponentCode(K, 2 * X.length, rows)
    if expanded.dim != X.dim:
        raise CodeError("psi expansion lost dimension")
    return expanded


def pi_project(C1: ComponentCode) -> ComponentCode:
    """Inverse of psi_expand: the fixed code of the h-action, projected to
    the odd coordinates.  Requires C1 to be h-invariant."""
    if C1.field.k != 4 or C1.length % 2:
        raise CodeError("pi_project needs an even-length code over GF(16)")
    K = GF(4)
    mapped = ComponentCode(K, C1.length, [h_action(r) for r in C1.rows])
    if mapped != C1:
        raise CodeError("code is not invariant under the h-action")
    # fixed space of h on C1, as an F4-space
    f4 = C1.as_subfield_linear(2)
    # solve h(c) = c over the F4-span
    emb, coords = subfield_embedding(4, 2)
    S = GF(2)
    gens = list(f4.rows)
    # basis of the F4-span: use subfield-linear rows directly
    fixed = []
    # brute-force-free solve: expand each F4-basis vector, h acts F4-linearly
    width = C1.length
    mat = []
    for g in gens:
        diff = tuple(a ^ b for a, b in zip(h_action(g), g))
        mat.append(diff)
    # kernel of coeffs -> sum coeff_i * diff_i over F4
    exp_rows = []
    for d in mat:
        row = []
        for x in d:
            row.extend(coords[x])
        exp_rows.append(tuple(row))
    kern = _kernel_coeffs(exp_rows, S, len(gens))
    for coeff in kern:
        vec = [0] * width
        for c, g in zip(coeff, gens):
            lam = emb[c]
            vec = [v ^ K.mul(lam, x) for v, x in zip(vec, g)]
        fixed.append(tuple(vec[i] for i in range(0, width, 2)))
    return ComponentCode(K, width // 2, fixed, sub_k=2)


def _kernel_coeffs(rows, field: GF, ngens):
    """Coefficient vectors c with sum c_i rows[i] = 0 over the field."""
    width = len(rows[0]) if rows else 0
    # transpose: unknowns are the ngens coefficients
    sys_rows = []
    for j in range(width):
        sys_rows.append(tuple(rows[i][j] for i in range(ngens)))
    return _kernel_field(sys_rows, field, ngens)


# -- assemble / split -------------------------------------------------


def assemble(parts: list[ComponentCode], isos: list[ComponentIso]) -> BinaryCode:
    """The G-invariant binary code  oplus_i phi_i(C_i)."""
    if len(parts) != len(isos):
        raise CodeError("one component code per component, please")
    n = isos[0].G.n
    rows = []
    for code, iso in zip(parts, isos):
        img = binary_image(code, iso)
        rows.extend(img.rows)
    return BinaryCode(n, rows)


def split(C: BinaryCode, isos: list[ComponentIso]) -> list[ComponentCode]:
    """Decompose a G-invariant binary code into its component codes."""
    G = isos[0].G
    for gen in G.generators:
        permuted = BinaryCode(C.n, [_permute_bits(r, gen) for r in C.rows])
        if permuted != C:
            raise CodeError("code is not invariant under the group")
    out = []
    for iso in isos:
        E = iso.E_rows()
        imgs = []
        for r in C.rows:
            v = 0
            for i in range(C.n):
                if (r >> i) & 1:
                    v ^= E[i]
            imgs.append(v)
        basis, _ = rref_bits(imgs, C.n)
        vecs = [tuple(iso.invert(b)) for b in basis]
        out.append(ComponentCode(GF(iso.field.k), iso.l, vecs))
    return out


def _permute_bits(v: int, perm) -> int:
    out = 0
    for i, j in enumerate(perm):
        if (v >> i) & 1:
            out |= 1 << j
    return out


def zero_component(iso: ComponentIso) -> ComponentCode:
    return ComponentCode(GF(iso.field.k), iso.l, [])


# -- code files -------------------------------------------------------
#
# Text format: header line "n k q linearity", then k generator rows, each a
# string of base-q digits (digits 0-9a-f), most significant coordinate
# first.  linearity is "full" or "sub<q'>", q' the coefficient field size.

_DIGITS = "0123456789abcdef"


def dump_code(code) -> str:
    if isinstance(code, BinaryCode):
        lines = [f"{code.n} {code.dim} 2 full"]
        for r in code.rows:
            lines.append("".join(_DIGITS[(r >> i) & 1] for i in reversed(range(code.n))))
        return "\n".join(lines) + "\n"
    q = code.field.size
    lin = "full" if code.sub_k == code.field.k else f"sub{1 << code.sub_k}"
    lines = [f"{code.length} {code.dim} {q} {lin}"]
    for row in code.rows:
        lines.append("".join(_DIGITS[x] for x in reversed(row)))
    return "\n".join(lines) + "\n"


def parse_code(text: str):
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise CodeError("empty code file")
    head = lines[0].split()
    if len(head) != 4:
        raise CodeError("bad code file header")
    n, k, q = int(head[0]), int(head[1]), int(head[2])
    lin = head[3]
    if q & (q - 1) or q < 2 or q > 16:
        raise CodeError(f"unsupported field size {q}")
    deg = q.bit_length() - 1
    if len(lines) - 1 != k:
        raise CodeError("row count does not match header")
    rows = []
    for ln in lines[1:]:
        if len(ln) != n:
            raise CodeError("generator row has wrong length")
        digits = [_DIGITS.index(ch) for ch in reversed(ln.lower())]
        if any(d >= q for d in digits):
            raise CodeError("digit out of range for the field")
        rows.append(tuple(digits))
    if q == 2 and lin == "full":
        return BinaryCode(n, [sum(x << i for i, x in enumerate(r)) for r in rows])
    if lin == "full":
        sub_k = deg
    elif lin.startswith("sub"):
        qq = int(lin[3:])
        if qq & (qq - 1) or qq < 2:
            raise CodeError(f"bad coefficient field size {qq}")
        sub_k = qq.bit_length() - 1
    else:
        raise CodeError(f"unknown linearity tag {lin!r}")
    return ComponentCode(GF(deg), n, rows, sub_k=sub_k)


def save_code(code, path) -> None:
    with open(path, "w") as fh:
        fh.write(dump_code(code))


def load_code(path):
    with open(path) as fh:
        return parse_code(fh.read())
