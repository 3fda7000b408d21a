import pickle

import pytest

from sdcodes.fields import GF, FieldError, galois_group, xi16, xi_subgroup


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_field_axioms(k):
    F = GF(k)
    els = list(F.elements())
    assert len(els) == 1 << k
    for a in els:
        assert F.mul(a, 1) == a
        assert F.add(a, a) == 0
        if a:
            assert F.mul(a, F.inv(a)) == 1
    # associativity and distributivity on a sample
    sample = els[: min(8, len(els))]
    for a in sample:
        for b in sample:
            assert F.mul(a, b) == F.mul(b, a)
            for c in sample:
                assert F.mul(a, F.mul(b, c)) == F.mul(F.mul(a, b), c)
                assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))


def test_generator_order():
    for k in (2, 3, 4):
        F = GF(k)
        assert F.order(F.generator) == F.size - 1


def test_frobenius_is_squaring():
    F = GF(4)
    for a in F.elements():
        assert F.frobenius(a) == F.mul(a, a)


def test_trace_lands_in_subfield():
    F = GF(4)
    for a in F.elements():
        t = F.trace_to(a, 2)
        assert F.pow(t, 4) == t  # fixed by the subfield Galois group


def test_galois_group_closure():
    maps = galois_group(4)
    assert len(maps) == 4
    ident = tuple(range(16))
    assert ident in maps


def test_xi_subgroup():
    F = GF(4)
    xi = xi16()
    assert F.pow(xi, 5) == 1
    assert xi_subgroup() == frozenset(F.pow(xi, i) for i in range(5))


def test_field_pickles_to_same_object():
    F = GF(3)
    assert pickle.loads(pickle.dumps(F)) is F


def test_bad_degree():
    with pytest.raises(FieldError):
        GF(0)
