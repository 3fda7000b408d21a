import random

import pytest

from sdcodes.binary import BinaryCode
from sdcodes.canon import (ActionError, ActionSpec, Monomial, action_generators,
                           are_equivalent, automorphism_group, canonical_form,
                           orbit_of_code)
from sdcodes.component import ComponentCode
from sdcodes.fields import GF
from sdcodes.pipelines.setups import hamming8, qr_golay24


def _random_element(action, rng, nsteps=6):
    gens = action_generators(action)
    g = Monomial.identity(action.length, action.field.k)
    for _ in range(nsteps):
        g = g.then(rng.choice(gens))
    return g


def test_canonical_key_constant_on_orbit_binary():
    rng = random.Random(1)
    action = ActionSpec.binary(8)
    code = hamming8()
    base = canonical_form(code, action).key
    for _ in range(20):
        g = _random_element(action, rng)
        assert canonical_form(g.apply_code(code), action).key == base


def test_equivalence_transporter():
    rng = random.Random(2)
    action = ActionSpec.binary(10)
    code = BinaryCode(10, [0b1111, 0b111100, 0b1111000000])
    g = _random_element(action, rng, 12)
    moved = g.apply_code(code)
    t = are_equivalent(code, moved, action)
    assert t is not None
    assert t.apply_code(code) == moved


def test_inequivalent_codes():
    action = ActionSpec.binary(6)
    a = BinaryCode(6, [0b111111])
    b = BinaryCode(6, [0b001111])
    assert are_equivalent(a, b, action) is None


def test_automorphism_orders():
    assert automorphism_group(hamming8()).order == 1344
    # [24,12,8] code: automorphism group of order |M24| = 244823040
    assert automorphism_group(qr_golay24()).order == 244823040


def test_orbit_size_times_stabilizer():
    import math

    code = hamming8()
    res = canonical_form(code, ActionSpec.binary(8))
    orbit = orbit_of_code(code, ActionSpec.binary(8), cap=100)
    assert len(orbit) * res.stabilizer_order == math.factorial(8)


def test_monomial_action_on_component_codes():
    rng = random.Random(4)
    action = ActionSpec.monomial(2, 4)
    code = ComponentCode(GF(2), 4, [(1, 2, 3, 0), (0, 1, 1, 1)])
    base = canonical_form(code, action).key
    for _ in range(10):
        g = _random_element(action, rng)
        assert canonical_form(g.apply_code(code), action).key == base


def test_restricted_perm_action_rejected():
    code = hamming8()
    with pytest.raises(ActionError):
        canonical_form(code, ActionSpec.binary(8, perm_gens=[tuple(range(8))]))


def test_monomial_compose_inverse():
    rng = random.Random(7)
    action = ActionSpec.monomial(2, 5)
    for _ in range(10):
        g = _random_element(action, rng)
        gi = g.inverse()
        ident = g.then(gi)
        code = ComponentCode(GF(2), 5, [(1, 0, 2, 3, 1)])
        assert ident.apply_code(code) == code


def test_action_group_order():
    assert ActionSpec.binary(4).group_order == 24
    assert ActionSpec.monomial(2, 2).group_order == 2 * 9
