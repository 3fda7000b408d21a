"""Arithmetic in the small binary fields GF(2^k), k = 1..4.

Field elements are plain ints in [0, 2^k); the binary digits are the
coefficients of the polynomial residue (bit 0 = constant term).  Each
extension degree uses one fixed irreducible modulus so that element
encodings are reproducible across runs and machines:

    k=2 : x^2 + x + 1
    k=3 : x^3 + x + 1
    k=4 : x^4 + x + 1

For k >= 2 the residue class of x (encoded as 2) is primitive for these
moduli and is used as the canonical generator.
"""

from __future__ import annotations

import math
from functools import lru_cache

_MODULUS = {1: 0b11, 2: 0b111, 3: 0b1011, 4: 0b10011}


class FieldError(ValueError):
    pass


class GF:
    """The field GF(2^k) with log/antilog tables.

    Instances are immutable and cached: ``GF(3) is GF(3)``.
    """

    _instances: dict[int, "GF"] = {}

    def __new__(cls, k: int) -> "GF":
        if k in cls._instances:
            return cls._instances[k]
        if k not in _MODULUS:
            raise FieldError(f"unsupported extension degree k={k}; need k in 1..4")
        self = super().__new__(cls)
        self.k = k
        self.modulus = _MODULUS[k]
        self.size = 1 << k
        self.generator = 2 if k > 1 else 1
        self._build_tables()
        cls._instances[k] = self
        return self

    def __reduce__(self):
        # pickling resolves back through the instance cache
        return (GF, (self.k,))

    def _build_tables(self) -> None:
        size = self.size
        exp = [0] * (2 * size)
        log = [0] * size
        val = 1
        for i in range(size - 1):
            exp[i] = val
            log[val] = i
            val = self._mul_slow(val, self.generator)
        if val != 1:
            raise FieldError(f"generator {self.generator} is not primitive mod {self.modulus:#b}")
        for i in range(size - 1, 2 * size):
            exp[i] = exp[i - (size - 1)]
        self._exp = exp
        self._log = log
        # full multiplication table; the fields are tiny so this is cheap
        self.mul_table = [[self._mul_slow(a, b) for b in range(size)] for a in range(size)]

    def _mul_slow(self, a: int, b: int) -> int:
        p = 0
        while b:
            if b & 1:
                p ^= a
            b >>= 1
            a <<= 1
            if a & self.size:
                a ^= self.modulus
        return p

    # -- arithmetic ---------------------------------------------------

    def add(self, a: int, b: int) -> int:
        return a ^ b

    def mul(self, a: int, b: int) -> int:
        return self.mul_table[a][b]

    def inv(self, a: int) -> int:
        if a == 0:
            raise FieldError("inversion of zero")
        return self._exp[(self.size - 1) - self._log[a]]

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            if e < 0:
                raise FieldError("inversion of zero")
            return 0 if e else 1
        e %= self.size - 1
        return self._exp[(self._log[a] * e) % (self.size - 1)]

    def frobenius(self, a: int) -> int:
        """x -> x^2, the generating Galois automorphism over GF(2)."""
        return self.mul_table[a][a]

    def trace_to(self, a: int, sub_k: int) -> int:
        """Trace into the subfield GF(2^sub_k); sub_k must divide k."""
        if self.k % sub_k != 0:
            raise FieldError(f"GF(2^{sub_k}) is not a subfield of GF(2^{self.k})")
        t = 0
        x = a
        for _ in range(self.k // sub_k):
            t ^= x
            for _ in range(sub_k):
                x = self.frobenius(x)
        return t

    def order(self, a: int) -> int:
        """Multiplicative order of a nonzero element."""
        if a == 0:
            raise FieldError("zero has no multiplicative order")
        n = self.size - 1
        return n // math.gcd(n, self._log[a]) if self._log[a] else 1

    def elements(self) -> range:
        return range(self.size)

    def __repr__(self) -> str:
        return f"GF(2^{self.k})"


def field_arith(field: GF, op: str, a: int, b: int | None = None) -> int:
    """Uniform dispatcher used by the CLI; op in {add, mul, inv, pow,
    frobenius, trace_to}.  For pow/trace_to, ``b`` is the exponent or
    subfield degree."""
    if op == "add":
        return field.add(a, b)
    if op == "mul":
        return field.mul(a, b)
    if op == "inv":
        return field.inv(a)
    if op == "pow":
        return field.pow(a, b)
    if op == "frobenius":
        return field.frobenius(a)
    if op == "trace_to":
        return field.trace_to(a, b)
    raise FieldError(f"unknown field operation {op!r}")


@lru_cache(maxsize=None)
def galois_group(k: int) -> tuple[tuple[int, ...], ...]:
    """All automorphisms of GF(2^k) as value tables (powers of Frobenius)."""
    f = GF(k)
    auts = []
    table = tuple(range(f.size))
    for _ in range(k):
        auts.append(table)
        table = tuple(f.frobenius(x) for x in table)
    return tuple(auts)


# The primitive 5th root of unity used throughout the order-5 machinery:
# generator^3 has order 5 in GF(16)^*.
def xi16() -> int:
    return GF(4).pow(GF(4).generator, 3)


def xi_subgroup() -> frozenset[int]:
    """The order-5 subgroup of GF(16)^* generated by xi16()."""
    f = GF(4)
    xi = xi16()
    out, x = set(), 1
    for _ in range(5):
        out.add(x)
        x = f.mul(x, xi)
    return frozenset(out)
