import pytest

from sdcodes.binary import min_weight
from sdcodes.canon import automorphism_group
from sdcodes.pipelines.selfdual import (classify_selfdual, mass_check,
                                        selfdual_mass, selfdual_mass_min4)


def test_mass_values():
    # closed form: prod (2^i + 1), i = 1..n/2-1
    assert selfdual_mass(2) == 1
    assert selfdual_mass(4) == 3
    assert selfdual_mass(8) == 135
    assert selfdual_mass(10) == 2295
    assert selfdual_mass(3) == 0


def test_mass_min4_small():
    # no weight-2 words is impossible below length 8 (i2^k is the only
    # option), and length 8 admits exactly the 30 codes equivalent to
    # the [8,4,4] one: 8!/|Aut| = 40320/1344
    assert selfdual_mass_min4(2) == 0
    assert selfdual_mass_min4(4) == 0
    assert selfdual_mass_min4(6) == 0
    assert selfdual_mass_min4(8) == 30


def test_classification_length_8():
    codes, counters = classify_selfdual(8, 2)
    assert len(codes) == 2  # i2^4 and the [8,4,4] code
    assert sorted(min_weight(c) for c in codes) == [2, 4]
    assert mass_check(codes, 2)


def test_classification_length_10():
    codes, _ = classify_selfdual(10, 2)
    assert len(codes) == 2
    assert mass_check(codes, 2)
    orbit_total = sum(3628800 // automorphism_group(c).order for c in codes)
    assert orbit_total == 2295


def test_min4_classification_length_8():
    codes, _ = classify_selfdual(8, 4)
    assert len(codes) == 1
    assert min_weight(codes[0]) == 4
    assert mass_check(codes, 4)
