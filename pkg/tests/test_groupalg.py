import pytest

from sdcodes.groupalg import (Decomposition, GroupError, GroupSpec,
                              central_primitive_idempotents)
from sdcodes.pipelines.setups import named_group


def test_even_order_rejected():
    with pytest.raises(GroupError):
        GroupSpec([(1, 0)], 2)


def test_regular_constructor():
    G = GroupSpec.regular([3, 3])
    assert (G.q, G.l, G.f, G.n) == (9, 1, 0, 9)


def test_block_structure_with_fixed_points():
    G = named_group("z7-72")
    assert (G.q, G.l, G.f) == (7, 10, 2)


@pytest.mark.parametrize("name,degrees", [
    ("z3z3", [1, 2, 2, 2, 2]),
    ("z7", [1, 3, 3]),
    ("z5", [1, 4]),
])
def test_component_degrees(name, degrees):
    G = named_group(name)
    idems = central_primitive_idempotents(G)
    assert [i.k for i in idems] == degrees
    assert sum(i.k for i in idems) == G.q


def test_idempotents_are_idempotent_in_the_group_algebra():
    for name in ("z3z3", "z7", "z5"):
        G = named_group(name)
        dec = Decomposition(G)
        for iso in dec.isos:
            e = iso.idem.coeffs
            assert iso._ga_mul(e, e) == e


def test_pairing_structure():
    # z7 on 7 points: e1 and e2 are swapped by g -> g^-1
    dec = Decomposition(named_group("z7"))
    assert dec.pairs() == [(1, 2)]
    assert dec.idems[1].tag == "paired"
    # z3z3: the involution fixes every component
    dec9 = Decomposition(named_group("z3z3"))
    assert dec9.pairs() == []
    assert all(i.tag == "self" for i in dec9.idems)


def test_e_matrices_partition_identity():
    dec = Decomposition(named_group("z5-10"))
    n = dec.G.n
    acc = [0] * n
    for iso in dec.isos:
        rows = iso.E_rows()
        for i in range(n):
            acc[i] ^= rows[i]
    assert acc == [1 << i for i in range(n)]


def test_apply_is_injective_linear():
    dec = Decomposition(named_group("z7"))
    iso = dec.isos[1]
    seen = set()
    for a in range(iso.field.size):
        v = iso.apply([a])
        assert v not in seen
        seen.add(v)
    a, b = 3, 5
    assert iso.apply([a ^ b]) == iso.apply([a]) ^ iso.apply([b])


def test_weight_table_matches_apply():
    dec = Decomposition(named_group("z7"))
    for iso in dec.isos:
        for a in range(iso.field.size):
            assert iso.weight_table[a] == bin(iso.table[a]).count("1")
