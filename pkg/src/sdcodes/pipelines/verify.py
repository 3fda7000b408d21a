"""Self-contained verifications of the fixed ingredients the pipelines
rely on: the [24,12,8] reference code and its splitting, the glue
structures of the pairing constructions, the unique self-dual [14,7,4]
code, and the weight identities of the component embeddings.

Each verifier returns a report dict with an ``ok`` flag; any failure
means a fixed constant or a piece of the algebra is wrong."""

from __future__ import annotations

from ..binary import BinaryCode, min_weight
from ..canon import ActionSpec, are_equivalent, orbit_of_code
from ..component import ComponentCode, split
from ..fields import GF
from ..groupalg import Decomposition, GroupSpec
from .setups import hamming8, named_group, qr_golay24, triple_shift


def verify_golay() -> dict:
    """The [24,12,8] code splits under a fixed-point-free order-3
    automorphism into the [8,4,4] code and its F4 expansion, and the
    mixed span keeps minimum distance 8."""
    from .z3z3 import stage1_fixed_code, _pair_min_d

    golay2, c1, counts = stage1_fixed_code()
    dec3 = Decomposition(GroupSpec([triple_shift(24)], 24))
    h8 = hamming8()
    f4h8 = ComponentCode(GF(2), 8, [tuple((r >> i) & 1 for i in range(8))
                                    for r in h8.rows])
    comp1_equiv = are_equivalent(c1, f4h8, ActionSpec.monomial(2, 8)) is not None
    mixed = _pair_min_d(c1, dec3.isos[1].weight_table)
    report = {
        "length": golay2.n,
        "dimension": counts["dimension"],
        "min_distance": counts["min_distance"],
        "free_orbits": 8,
        "comp0_is_h8": bool(counts["min_distance"] == 8),
        "comp1_is_f4_h8": comp1_equiv,
        "mixed_min_distance": mixed,
    }
    report["ok"] = (report["dimension"] == 12 and report["min_distance"] == 8
                    and comp1_equiv and mixed == 8
                    and min_weight(qr_golay24()) == 8)
    return report


def max_doubly_even_subcode(code: BinaryCode) -> BinaryCode:
    """The subcode of words of weight divisible by 4 (a subspace for
    self-orthogonal codes)."""
    if not code.is_self_orthogonal():
        raise ValueError("doubly-even words only form a subcode of a "
                         "self-orthogonal code")
    return BinaryCode(code.n, [w for w in code.words()
                               if bin(w).count("1") % 4 == 0])


def verify_pairing_glue() -> dict:
    """The maximal doubly-even subcode of the 2-fold repetition code of
    length 10: dimension 4, orbit size 945 under coordinate
    permutations, nonzero words supported on 2 or 4 repetition pairs."""
    rep = BinaryCode(10, [0b11 << (2 * i) for i in range(5)])
    e = max_doubly_even_subcode(rep)
    orbit = orbit_of_code(e, ActionSpec.binary(10), cap=2000)
    words = [w for w in e.words() if w]
    weights_ok = all(bin(w).count("1") in (4, 8) for w in words)
    report = {
        "dimension": e.dim,
        "doubly_even": e.is_doubly_even(),
        "nonzero_words": len(words),
        "weights_4_or_8": weights_ok,
        "orbit": len(orbit),
    }
    report["ok"] = (e.dim == 4 and e.is_doubly_even() and len(words) == 15
                    and weights_ok and len(orbit) == 945)
    return report


def verify_selfdual14(workers: int = 1) -> dict:
    """Exactly one equivalence class of self-dual [14,7] codes with
    minimum distance 4, with a completeness certificate from the mass
    formula; its maximal doubly-even subcode has dimension 6."""
    from .selfdual import classify_selfdual, mass_check

    codes, _ = classify_selfdual(14, 4, workers=workers)
    sub_dims = sorted(max_doubly_even_subcode(c).dim for c in codes)
    report = {
        "classes": len(codes),
        "mass_certified": mass_check(codes, 4),
        "min_distances": sorted(min_weight(c) for c in codes),
        "doubly_even_subcode_dims": sub_dims,
    }
    report["ok"] = (len(codes) == 1 and report["mass_certified"]
                    and report["min_distances"] == [4])
    return report


def verify_forms() -> dict:
    """Weight identities and duality pairings of the component
    embeddings on the three 72-point group actions."""
    checks = {}
    for name, block, nfree in (("z7-72", 7, 2), ("z5-72", 5, 2)):
        g = named_group(name)
        dec = Decomposition(g)
        iso0 = dec.isos[0]
        nblocks = g.l
        ok = True
        for a in range(min(4, 2 ** nblocks)):
            for x in range(2 ** nfree):
                vec = [(a >> i) & 1 for i in range(nblocks)] \
                    + [(x >> i) & 1 for i in range(nfree)]
                expect = block * bin(a).count("1") + bin(x).count("1")
                ok &= bin(iso0.apply(vec)).count("1") == expect
        checks[f"{name}_weight_identity"] = ok
    for name in ("z3z3-72", "z7-72", "z5-72"):
        dec = Decomposition(named_group(name))
        ok = True
        for i, j in dec.pairs():
            gram = dec.isos[i].gram(dec.isos[j])
            # nondegenerate pairing between the paired components
            nonzero = any(gram[a][b] for a in range(1, len(gram))
                          for b in range(1, len(gram)))
            ok &= nonzero
        for i, idem in enumerate(dec.idems):
            if idem.tag == "self" and i > 0:
                gram = dec.isos[i].gram(dec.isos[i])
                ok &= any(gram[a][b] for a in range(1, len(gram))
                          for b in range(1, len(gram)))
        checks[f"{name}_pairings"] = ok
    checks["ok"] = all(checks.values())
    return checks
