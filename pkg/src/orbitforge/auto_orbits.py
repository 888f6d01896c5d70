"""Automorphism groups of small finite groups by generator-image backtracking,
and the induced orbit partition.

The search picks a small generating set greedily, then backtracks over
candidate images constrained by element order and by consistency of the
partial homomorphism closure. Every consistent full assignment is a
bijective homomorphism by construction, and the whole automorphism group is
materialized explicitly so orbit certificates can carry concrete witnesses.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .group_core import GroupTable

#: Full enumeration is only attempted up to this order.
MAX_AUT_ORDER = 512


@dataclass(frozen=True)
class Automorphism:
    """A bijection of element indices satisfying the homomorphism law."""

    perm: tuple[int, ...]

    def __call__(self, i: int) -> int:
        return self.perm[i]

    def compose(self, other: "Automorphism") -> "Automorphism":
        """self after other: (self.compose(other))(x) = self(other(x))."""
        return Automorphism(tuple(self.perm[j] for j in other.perm))

    def inverse(self) -> "Automorphism":
        out = [0] * len(self.perm)
        for i, j in enumerate(self.perm):
            out[j] = i
        return Automorphism(tuple(out))


def is_automorphism(g: GroupTable, perm) -> bool:
    """Exhaustive check of the homomorphism law on all pairs, plus bijectivity
    and fixing the identity. Deliberately independent of the search."""
    n = g.order
    if len(perm) != n or sorted(perm) != list(range(n)) or perm[0] != 0:
        return False
    t = g.table
    return all(perm[t[i][j]] == t[perm[i]][perm[j]] for i in range(n) for j in range(n))


def _closure(table, gens) -> set[int]:
    seen = {0}
    frontier = [0]
    while frontier:
        nxt = []
        for x in frontier:
            row = table[x]
            for s in gens:
                y = row[s]
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return seen


def _greedy_generators(g: GroupTable) -> list[int]:
    # repeatedly add the element whose addition generates the largest
    # subgroup; ties go to the lowest element index
    t = g.table
    gens: list[int] = []
    sub: set[int] = {0}
    while len(sub) < g.order:
        best_size, best_e, best_sub = 0, -1, sub
        for e in range(1, g.order):
            if e in sub:
                continue
            cl = _closure(t, gens + [e])
            if len(cl) > best_size:
                best_size, best_e, best_sub = len(cl), e, cl
                if best_size == g.order:
                    break
        gens.append(best_e)
        sub = best_sub
    return gens


def automorphism_group(g: GroupTable) -> list[Automorphism]:
    """All automorphisms of g, as explicit permutations sorted for determinism."""
    if g.order > MAX_AUT_ORDER:
        raise ValueError(f"order {g.order} exceeds automorphism search cap {MAX_AUT_ORDER}")
    if g._aut_cache is not None:
        return list(g._aut_cache)

    t = g.table
    n = g.order
    orders = g.element_orders()
    gens = _greedy_generators(g)

    by_order: dict[int, list[int]] = {}
    for i, o in enumerate(orders):
        by_order.setdefault(o, []).append(i)

    img = [-1] * n
    rev = [-1] * n
    img[0] = 0
    rev[0] = 0
    known: list[int] = [0]
    trail: list[int] = []
    found: list[tuple[int, ...]] = []

    def undo(mark: int) -> None:
        while len(trail) > mark:
            x = trail.pop()
            rev[img[x]] = -1
            img[x] = -1
            known.pop()

    def assign(x0: int, y0: int) -> bool:
        # extend the partial map with x0 -> y0 and close it under products;
        # every ordered pair inside the closure gets its product checked when
        # the later of the two elements is processed
        if img[x0] != -1:
            return img[x0] == y0
        if rev[y0] != -1:
            return False
        img[x0] = y0
        rev[y0] = x0
        trail.append(x0)
        known.append(x0)
        queue = [x0]
        while queue:
            a = queue.pop()
            fa = img[a]
            i = 0
            while i < len(known):
                b = known[i]
                i += 1
                fb = img[b]
                for u, fu in ((t[a][b], t[fa][fb]), (t[b][a], t[fb][fa])):
                    known_img = img[u]
                    if known_img == -1:
                        if rev[fu] != -1:
                            return False
                        img[u] = fu
                        rev[fu] = u
                        trail.append(u)
                        known.append(u)
                        queue.append(u)
                    elif known_img != fu:
                        return False
        return True

    def backtrack(depth: int) -> None:
        if depth == len(gens):
            found.append(tuple(img))
            return
        x = gens[depth]
        mark = len(trail)
        for y in by_order[orders[x]]:
            if assign(x, y):
                backtrack(depth + 1)
            undo(mark)

    backtrack(0)
    autos = [Automorphism(p) for p in sorted(found)]
    object.__setattr__(g, "_aut_cache", tuple(autos))
    return autos


def _reduce_generators(autos: list[Automorphism], n: int) -> list[Automorphism]:
    # thin the full list down to a generating subset (greedy sweep)
    ident = tuple(range(n))
    generated = {ident}
    kept: list[Automorphism] = []
    for phi in autos:
        if phi.perm in generated:
            continue
        kept.append(phi)
        frontier = list(generated)
        while frontier:
            nxt = []
            for a in frontier:
                for k in kept:
                    c = tuple(k.perm[x] for x in a)
                    if c not in generated:
                        generated.add(c)
                        nxt.append(c)
            frontier = nxt
    return kept


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x: int, y: int) -> None:
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            self.parent[max(rx, ry)] = min(rx, ry)


@dataclass
class OrbitPartition:
    """Partition of the elements into automorphism orbits.

    classes are sorted by (element order, class size, least index) and each
    class is internally sorted, so output is deterministic. witnesses maps
    (representative, member) to an automorphism carrying one to the other.
    """

    classes: tuple[tuple[int, ...], ...]
    generators: tuple[Automorphism, ...]
    witnesses: dict[tuple[int, int], Automorphism] = field(repr=False)

    @property
    def omega(self) -> int:
        return len(self.classes)

    def class_of(self, i: int) -> tuple[int, ...]:
        for cls in self.classes:
            if i in cls:
                return cls
        raise ValueError(f"element index {i} out of range")

    def to_json(self) -> dict:
        return {
            "omega": self.omega,
            "classes": [list(c) for c in self.classes],
            "generators": [list(a.perm) for a in self.generators],
        }


def orbit_partition(g: GroupTable) -> OrbitPartition:
    """Aut(G)-orbits via union-find over the generating automorphisms."""
    if g._orbit_cache is not None:
        return g._orbit_cache

    autos = automorphism_group(g)
    gens = _reduce_generators(autos, g.order)
    uf = _UnionFind(g.order)
    for phi in gens:
        for i in range(g.order):
            uf.union(i, phi.perm[i])

    buckets: dict[int, list[int]] = {}
    for i in range(g.order):
        buckets.setdefault(uf.find(i), []).append(i)
    orders = g.element_orders()
    classes = tuple(
        tuple(sorted(c))
        for c in sorted(buckets.values(), key=lambda c: (orders[c[0]], len(c), min(c)))
    )

    witnesses: dict[tuple[int, int], Automorphism] = {}
    for cls in classes:
        rep = cls[0]
        for x in cls[1:]:
            witnesses[(rep, x)] = next(a for a in autos if a.perm[rep] == x)

    part = OrbitPartition(classes=classes, generators=tuple(gens), witnesses=witnesses)
    object.__setattr__(g, "_orbit_cache", part)
    return part


def omega(g: GroupTable) -> int:
    """The number of automorphism orbits."""
    return orbit_partition(g).omega
