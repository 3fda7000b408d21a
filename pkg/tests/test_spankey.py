import random

import numpy as np
import pytest

from sdcodes.canon import ActionSpec, Monomial, action_generators
from sdcodes.spankey import (SpanKey, SpanKeyError, dihedral_key,
                             semilinear_monomial_key)


def _random_element(action, rng, nsteps=8):
    gens = action_generators(action)
    g = Monomial.identity(action.length, action.field.k)
    for _ in range(nsteps):
        g = g.then(rng.choice(gens))
    return g


def _random_rows(rng, length, dim, size):
    return [tuple(rng.randrange(size) for _ in range(length))
            for _ in range(dim)]


def test_semilinear_key_invariance():
    rng = random.Random(0)
    engine = semilinear_monomial_key(3, 5)
    action = ActionSpec.monomial(3, 5, with_galois=True)
    for _ in range(15):
        rows = _random_rows(rng, 5, 2, 8)
        base = engine.key(rows)
        for _ in range(6):
            g = _random_element(action, rng)
            moved = [g.apply_vec(r) for r in rows]
            assert engine.key(moved) == base


def test_dihedral_key_invariance():
    rng = random.Random(1)
    engine = dihedral_key(4)
    action = ActionSpec.semimonomial5(4)
    for _ in range(10):
        rows = _random_rows(rng, 4, 2, 16)
        base = engine.key(rows)
        for _ in range(6):
            g = _random_element(action, rng)
            moved = [g.apply_vec(r) for r in rows]
            assert engine.key(moved) == base


def test_key_separates_inequivalent_codes():
    engine = semilinear_monomial_key(2, 4)
    a = engine.key([(1, 1, 1, 1)])
    b = engine.key([(1, 1, 0, 0)])
    assert a != b


def test_key_deterministic_across_instances():
    rows = [(1, 2, 3, 0, 1), (0, 1, 1, 2, 2)]
    k1 = SpanKey(3, 5).key(rows)
    k2 = SpanKey(3, 5).key(rows)
    assert k1 == k2


def test_row_basis_change_invariance():
    # any basis of the same span keys identically: replace the second row
    # by the sum of the two rows
    engine = semilinear_monomial_key(2, 4)
    rows = [(1, 2, 3, 0), (0, 1, 1, 1)]
    summed = [rows[0], tuple(a ^ b for a, b in zip(*rows))]
    assert engine.key(summed) == engine.key(rows)


def test_rejects_mismatched_rows():
    engine = semilinear_monomial_key(2, 4)
    with pytest.raises((SpanKeyError, ValueError, IndexError)):
        engine.key([(1, 2, 3)])
