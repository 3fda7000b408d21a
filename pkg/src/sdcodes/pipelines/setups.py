"""Named permutation groups and fixed reference codes used by the
pipelines and the CLI.

All generators are written down explicitly so runs are reproducible
bit-for-bit; nothing here depends on randomness.
"""

from __future__ import annotations

from ..binary import BinaryCode
from ..groupalg import GroupSpec
from ..permgroup import from_cycles

# [8,4,4] self-dual code (extended Hamming), rows as bit-ints
HAMMING8_ROWS = [0xFF, 0x55, 0x33, 0x0F]


def hamming8() -> BinaryCode:
    return BinaryCode(8, HAMMING8_ROWS)


def qr_golay24() -> BinaryCode:
    """[24,12,8] code: quadratic-residue [23,12] code plus a parity bit."""
    q = sorted({(x * x) % 23 for x in range(1, 23)})
    rows = [sum(1 << ((r + s) % 23) for r in q) for s in range(23)]
    c23 = BinaryCode(23, rows)
    return BinaryCode(24, [r | (bin(r).count("1") & 1) << 23 for r in c23.rows])


# Partition of the 24 coordinates of qr_golay24 into 8 triples, each an
# orbit of an order-3 automorphism (a fractional-linear map on the
# point labels 0..22 plus the parity position 23).
GOLAY_TRIPLES = [[0, 1, 23], [2, 22, 12], [3, 11, 16], [4, 15, 18],
                 [5, 17, 10], [6, 9, 20], [7, 19, 14], [8, 13, 21]]


def triple_shift(n: int) -> tuple:
    """Permutation cycling positions inside consecutive triples."""
    return tuple((i // 3) * 3 + ((i % 3) + 1) % 3 for i in range(n))


def block9_shift(n: int) -> tuple:
    """Permutation cycling the three triples inside consecutive 9-blocks."""
    return tuple((i // 9) * 9 + ((i % 9) + 3) % 9 for i in range(n))


def _regular_z3z3(n: int = 9) -> GroupSpec:
    return GroupSpec([block9_shift(9), triple_shift(9)], 9)


_REGISTRY = {
    # name: (description, factory)
    "z3z3": ("elementary abelian order 9, regular on 9 points",
             lambda: _regular_z3z3()),
    "z3z3-24": ("order 3 with eight 3-cycles on 24 points",
                lambda: GroupSpec([triple_shift(24)], 24)),
    "z3z3-72": ("elementary abelian order 9, eight regular 9-blocks",
                lambda: GroupSpec([block9_shift(72), triple_shift(72)], 72)),
    "z7": ("cyclic order 7, regular on 7 points",
           lambda: GroupSpec([from_cycles(7, [tuple(range(7))])], 7)),
    "z7-72": ("cyclic order 7, ten 7-cycles and two fixed points",
              lambda: GroupSpec([from_cycles(72, [tuple(range(7 * k, 7 * k + 7))
                                                  for k in range(10)])], 72)),
    "z5": ("cyclic order 5, regular on 5 points",
           lambda: GroupSpec([from_cycles(5, [tuple(range(5))])], 5)),
    "z5-10": ("cyclic order 5, two 5-cycles on 10 points",
              lambda: GroupSpec([from_cycles(10, [(0, 1, 2, 3, 4), (5, 6, 7, 8, 9)])], 10)),
    "z5-72": ("cyclic order 5, fourteen 5-cycles and two fixed points",
              lambda: GroupSpec([from_cycles(72, [tuple(range(5 * k, 5 * k + 5))
                                                  for k in range(14)])], 72)),
}


def group_names() -> list[str]:
    return sorted(_REGISTRY)


def named_group(name: str) -> GroupSpec:
    try:
        return _REGISTRY[name][1]()
    except KeyError:
        raise KeyError(f"unknown group {name!r}; known: {', '.join(group_names())}")


def group_description(name: str) -> str:
    return _REGISTRY[name][0]
