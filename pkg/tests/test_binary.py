import random

import pytest

from sdcodes.binary import (BinaryCode, CodeError, extremal_bound, min_weight,
                            min_weight_at_least, rref_bits)
from sdcodes.pipelines.setups import hamming8, qr_golay24


def random_code(rng, n, k):
    rows = [rng.getrandbits(n) for _ in range(k)]
    return BinaryCode(n, rows)


def test_rref_is_canonical():
    rng = random.Random(11)
    for _ in range(50):
        n = rng.randrange(4, 20)
        code = random_code(rng, n, rng.randrange(1, n))
        shuffled = list(code.rows)
        rng.shuffle(shuffled)
        mixed = [shuffled[0]]
        for r in shuffled[1:]:
            mixed.append(r ^ mixed[-1])
        assert BinaryCode(n, mixed) == code


def test_pivots_sorted():
    rows, pivots = rref_bits([0b1110, 0b0111], 4)
    assert list(pivots) == sorted(pivots)
    assert len(rows) == len(pivots) == 2


def test_dual_dimensions_and_involution():
    rng = random.Random(5)
    for _ in range(25):
        n = rng.randrange(2, 18)
        c = random_code(rng, n, rng.randrange(1, n))
        d = c.dual()
        assert c.dim + d.dim == n
        assert d.dual() == c
        for w in c.rows:
            for v in d.rows:
                assert bin(w & v).count("1") % 2 == 0


def test_hamming8_properties():
    h8 = hamming8()
    assert (h8.n, h8.dim) == (8, 4)
    assert h8.is_self_dual()
    assert h8.is_doubly_even()
    assert min_weight(h8) == 4


def test_golay24_properties():
    g = qr_golay24()
    assert (g.n, g.dim) == (24, 12)
    assert g.is_self_dual()
    assert g.is_doubly_even()
    assert min_weight(g) == 8
    assert min_weight_at_least(g, 8)
    assert not min_weight_at_least(g, 9)


def test_weight_distribution_macwilliams_selfdual():
    h8 = hamming8()
    assert h8.weight_distribution() == [1, 0, 0, 0, 14, 0, 0, 0, 1]


def test_extremal_bound():
    assert extremal_bound(24) == 8
    assert extremal_bound(72) == 16


def test_puncture_shorten():
    g = qr_golay24()
    p = g.punctured([23])
    assert p.n == 23 and p.dim == 12
    s = g.shortened([23])
    assert s.n == 23 and s.dim == 11


def test_contains_and_words():
    h8 = hamming8()
    ws = set(h8.words())
    assert len(ws) == 16
    assert all(h8.contains(w) for w in ws)
    assert not h8.contains(1)


def test_length_errors():
    with pytest.raises(CodeError):
        BinaryCode(4, [0b10000])
    with pytest.raises(CodeError):
        BinaryCode(200, [])
