"""Permutation groups via stabilizer chains (Schreier-Sims).

Permutations on {0..n-1} are tuples; ``mul(a, b)`` applies a first, then
b.  The chain stores, per base point, the fundamental orbit with a
transversal of coset representatives, so membership tests and the group
order fall out of sifting.
"""

from __future__ import annotations

import itertools


class GroupError(ValueError):
    pass


def identity(n: int) -> tuple:
    return tuple(range(n))


def mul(a, b) -> tuple:
    """a followed by b."""
    return tuple(b[a[i]] for i in range(len(a)))


def inv(a) -> tuple:
    out = [0] * len(a)
    for i, j in enumerate(a):
        out[j] = i
    return tuple(out)


def perm_order(a) -> int:
    o, x = 1, a
    e = identity(len(a))
    while x != e:
        x = mul(x, a)
        o += 1
    return o


def cycles(a) -> list[list[int]]:
    seen, out = set(), []
    for i in range(len(a)):
        if i in seen:
            continue
        c, j = [], i
        while j not in seen:
            seen.add(j)
            c.append(j)
            j = a[j]
        out.append(c)
    return out


def from_cycles(n: int, cycs) -> tuple:
    out = list(range(n))
    for c in cycs:
        for i, j in zip(c, c[1:] + c[:1]):
            out[i] = j
    return tuple(out)


class PermGroup:
    """A permutation group with a base and strong generating set."""

    def __init__(self, generators, degree: int, base_hint=()):
        self.degree = degree
        gens = []
        for g in generators:
            g = tuple(g)
            if sorted(g) != list(range(degree)):
                raise GroupError("generator is not a permutation of the degree")
            if g != identity(degree) and g not in gens:
                gens.append(g)
        self.generators = gens
        self._base: list[int] = []
        self._strong: list[list[tuple]] = []  # strong generators per level
        self._orbits: list[dict[int, tuple]] = []  # point -> transversal rep
        self._build(base_hint)

    # -- construction -------------------------------------------------

    def _build(self, base_hint) -> None:
        ident = identity(self.degree)
        self._base = [b for b in base_hint]
        strong = list(self.generators)
        while True:
            # base must be long enough that no strong generator fixes it all
            for g in strong:
                if all(g[b] == b for b in self._base):
                    self._base.append(next(i for i in range(self.degree) if g[i] != i))
            # orbits/transversals: level i uses the strong generators fixing
            # the first i base points
            self._strong = []
            self._orbits = []
            for i, b in enumerate(self._base):
                s_i = [g for g in strong if all(g[x] == x for x in self._base[:i])]
                orbit = {b: ident}
                frontier = [b]
                while frontier:
                    p = frontier.pop()
                    rep = orbit[p]
                    for s in s_i:
                        q = s[p]
                        if q not in orbit:
                            orbit[q] = mul(rep, s)
                            frontier.append(q)
                self._strong.append(s_i)
                self._orbits.append(orbit)
            # verify the Schreier condition; collect at most one new
            # generator, then rebuild
            new_gen = None
            for i in range(len(self._base)):
                for p, rep in self._orbits[i].items():
                    for s in self._strong[i]:
                        schreier = mul(mul(rep, s), inv(self._orbits[i][s[p]]))
                        resid, _ = self._sift(schreier, i + 1)
                        if resid != ident:
                            new_gen = resid
                            break
                    if new_gen:
                        break
                if new_gen:
                    break
            if new_gen is None:
                break
            strong.append(new_gen)

    def _sift(self, g, start: int = 0):
        """Reduce g through the chain; returns (residue, level reached)."""
        for level in range(start, len(self._base)):
            b = self._base[level]
            p = g[b]
            rep = self._orbits[level].get(p)
            if rep is None:
                return g, level
            g = mul(g, inv(rep))
        return g, len(self._base)

    # -- queries ------------------------------------------------------

    @property
    def order(self) -> int:
        n = 1
        for orbit in self._orbits:
            n *= len(orbit)
        return n

    def __contains__(self, g) -> bool:
        g = tuple(g)
        if len(g) != self.degree:
            return False
        resid, _ = self._sift(g)
        return resid == identity(self.degree)

    def __repr__(self) -> str:
        return f"PermGroup(degree={self.degree}, order={self.order})"

    @property
    def base(self) -> tuple:
        return tuple(self._base)

    def orbit(self, point: int) -> set:
        out, frontier = {point}, [point]
        while frontier:
            p = frontier.pop()
            for g in self.generators:
                q = g[p]
                if q not in out:
                    out.add(q)
                    frontier.append(q)
        return out

    def elements(self, cap: int = 10**6):
        """All group elements (order must stay under the cap)."""
        if self.order > cap:
            raise GroupError(f"group order {self.order} exceeds cap {cap}")
        levels = [list(orbit.values()) for orbit in self._orbits]
        if not levels:
            yield identity(self.degree)
            return
        for picks in itertools.product(*levels[::-1]):
            g = identity(self.degree)
            for rep in picks:
                g = mul(g, rep)
            yield g

    def coset_rep(self, level: int, point: int):
        return self._orbits[level].get(point)

    # -- subgroup search ----------------------------------------------

    def subgroup_search(self, test_full, prune=None, base_hint=()) -> "PermGroup":
        """Subgroup {g in G : test_full(g)} by depth-first search over the
        stabilizer chain.

        ``prune(level, g)`` may reject partial products whose images of
        base[0..level] already violate the property (g's other values are
        provisional).
        """
        searcher = self if not base_hint else PermGroup(self.generators, self.degree, base_hint=base_hint)
        base = searcher._base
        found: list[tuple] = []
        sub_holder = [PermGroup([], self.degree)]

        def dfs(level: int, g):
            if level == len(base):
                if g != identity(self.degree) and test_full(g) and g not in sub_holder[0]:
                    found.append(g)
                    sub_holder[0] = PermGroup(found, self.degree)
                return
            for p, rep in searcher._orbits[level].items():
                g2 = mul(rep, g)
                if prune is not None and not prune(level, g2, base):
                    continue
                dfs(level + 1, g2)

        dfs(0, identity(self.degree))
        return sub_holder[0]


def centralizer(group: PermGroup, x) -> PermGroup:
    """Centralizer of a permutation in the group, by backtracking with
    conjugation-forced image propagation."""
    x = tuple(x)
    n = group.degree

    def prune(level, g, base):
        # g is exact on base[0..level]; conjugation forces g(x^j(b)) =
        # x^j(g(b)) along the x-cycle through each settled base point
        img = {}
        for b in base[: level + 1]:
            a, t = b, g[b]
            while True:
                if img.get(a, t) != t:
                    return False
                img[a] = t
                a, t = x[a], x[t]
                if a == b:
                    if t != g[b]:
                        return False
                    break
        return True

    def test(g):
        return mul(x, g) == mul(g, x)

    # base along x-cycle representatives makes the propagation bite early
    hint = [c[0] for c in sorted(cycles(x), key=len, reverse=True)]
    return group.subgroup_search(test, prune=prune, base_hint=hint)


def symmetric_centralizer(n: int, x) -> PermGroup:
    """Centralizer of x in the full symmetric group S_n, constructed
    directly from the cycle structure (direct product of Z_d wr S_m)."""
    x = tuple(x)
    by_len: dict[int, list[list[int]]] = {}
    for c in cycles(x):
        by_len.setdefault(len(c), []).append(c)
    gens = []
    for d, cycs in by_len.items():
        c0 = cycs[0]
        if d > 1:
            gens.append(from_cycles(n, [c0]))
        if len(cycs) >= 2:
            # aligned swap of the first two cycles
            gens.append(from_cycles(n, [[a, b] for a, b in zip(c0, cycs[1])]))
        if len(cycs) >= 3:
            # aligned rotation of all cycles of this length
            out = list(range(n))
            for i in range(len(cycs)):
                nxt = cycs[(i + 1) % len(cycs)]
                for a, b in zip(cycs[i], nxt):
                    out[a] = b
            gens.append(tuple(out))
    G = PermGroup(gens, n)
    # sanity: |C| = prod d^m * m!
    import math

    expect = 1
    for d, cycs in by_len.items():
        m = len(cycs)
        expect *= d**m * math.factorial(m)
    if G.order != expect:
        raise GroupError("symmetric centralizer has wrong order")
    return G
