import random

from sdcodes.permgroup import (PermGroup, centralizer, cycles, from_cycles,
                               identity, inv, mul, perm_order,
                               symmetric_centralizer)


def test_perm_arithmetic():
    a = (1, 2, 0, 3)
    assert mul(a, inv(a)) == identity(4)
    assert perm_order(a) == 3
    assert cycles(a) == [[0, 1, 2], [3]]
    assert from_cycles(4, [(0, 1, 2)]) == a


def test_symmetric_group_order():
    g = PermGroup([(1, 0, 2, 3), (1, 2, 3, 0)], 4)
    assert g.order == 24
    assert len(list(g.elements())) == 24


def test_membership():
    g = PermGroup([(1, 2, 0, 3)], 4)
    assert (2, 0, 1, 3) in g
    assert (1, 0, 2, 3) not in g


def test_orbit():
    g = PermGroup([(1, 2, 0, 3)], 4)
    assert g.orbit(0) == {0, 1, 2}
    assert g.orbit(3) == {3}


def test_symmetric_centralizer_of_fpf_involution():
    import math

    x = tuple(i ^ 1 for i in range(6))  # (01)(23)(45)
    c = symmetric_centralizer(6, x)
    # hyperoctahedral group: 2^3 * 3!
    assert c.order == 8 * math.factorial(3)
    for g in c.elements(cap=100):
        assert mul(mul(inv(g), x), g) == x


def test_centralizer_inside_subgroup():
    full = PermGroup([(1, 0, 2, 3), (1, 2, 3, 0)], 4)
    x = (1, 0, 3, 2)
    c = centralizer(full, x)
    assert c.order == 8
    for g in c.elements(cap=20):
        assert mul(mul(inv(g), x), g) == x


def test_random_conjugates_stay_inside():
    rng = random.Random(0)
    base = PermGroup([(1, 0, 2, 3, 4), (1, 2, 3, 4, 0)], 5)
    els = list(base.elements(cap=200))
    for _ in range(20):
        g, h = rng.choice(els), rng.choice(els)
        assert mul(g, h) in base
