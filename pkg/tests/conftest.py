"""Shared oracles and fixtures.

The oracles here recompute expected values by routes independent of the
implementation under test (full permutation search, direct table walks),
so the frozen constants in the test modules stay honest.
"""

from __future__ import annotations

from itertools import permutations

import pytest

from orbitforge import catalog


def brute_force_automorphisms(g) -> set[tuple[int, ...]]:
    """Every automorphism of a tiny group, found by filtering all permutations
    that fix the identity. Exponential; keep the order at 8 or below."""
    assert g.order <= 8, "oracle is factorial; use small groups only"
    t = g.table
    n = g.order
    found = set()
    for rest in permutations(range(1, n)):
        perm = (0,) + rest
        if all(perm[t[i][j]] == t[perm[i]][perm[j]] for i in range(n) for j in range(n)):
            found.add(perm)
    return found


def independent_element_order(g, i: int) -> int:
    """Order of an element by walking the table, written separately from the
    packaged implementation."""
    k, x = 1, i
    while x != 0:
        x = g.table[x][i]
        k += 1
    return k


def independent_order_profile(g) -> dict[int, int]:
    profile: dict[int, int] = {}
    for i in range(g.order):
        o = independent_element_order(g, i)
        profile[o] = profile.get(o, 0) + 1
    return profile


@pytest.fixture(scope="session")
def catalog_groups():
    """One shared instance per catalog entry so orbit caches are reused."""
    return {e.name: e.build() for e in catalog.entries()}
