"""Permutations of the vertex set and the update graph.

Two permutations are adjacent in the update graph when they differ by
swapping two consecutive entries that are *not* joined by an edge.  Its
components are in bijection with the acyclic orientations.
"""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass
from itertools import permutations
from math import factorial
from typing import Sequence

from .equivalence import UnionFind
from .graph import Graph, GraphError, is_connected
from .orientation import Orientation, click, orientation_from_permutation

MAX_N = 8

Permutation = tuple[int, ...]


@dataclass(frozen=True)
class PermClass:
    id: int
    members: tuple[Permutation, ...]


def rank(perm: Sequence[int]) -> int:
    """Lehmer-code rank of a permutation of ``0..n-1``."""
    n = len(perm)
    r = 0
    used = 0
    for i, x in enumerate(perm):
        smaller = bin(((1 << x) - 1) & ~used).count("1")
        r += smaller * factorial(n - 1 - i)
        used |= 1 << x
    return r


def shift(perm: Sequence[int], s: int = 1) -> Permutation:
    """Left cyclic shift: ``shift((a, b, c), 1) == (b, c, a)``."""
    perm = tuple(perm)
    if not perm:
        return perm
    s %= len(perm)
    return perm[s:] + perm[:s]


def reflect_perm(perm: Sequence[int]) -> Permutation:
    return tuple(reversed(perm))


def neighbours(g: Graph, perm: Permutation) -> list[Permutation]:
    out = []
    for k in range(len(perm) - 1):
        a, b = perm[k], perm[k + 1]
        if not g.has_edge(a, b):
            out.append(perm[:k] + (b, a) + perm[k + 2 :])
    return out


def update_graph_components(g: Graph, max_n: int = MAX_N) -> list[PermClass]:
    """Partition of all ``n!`` permutations into update-graph components.

    Seeds are taken in lexicographic order, so class ids and member lists are
    canonical.  The graph itself is never stored; a visited bitmap indexed by
    Lehmer rank drives the BFS.
    """
    if g.n > max_n:
        raise GraphError(f"{g.n} vertices exceeds the permutation cap of {max_n}")
    seen = bytearray(factorial(g.n))
    classes = []
    for seed in permutations(range(g.n)):
        r = rank(seed)
        if seen[r]:
            continue
        seen[r] = 1
        members = [seed]
        queue = deque([seed])
        while queue:
            p = queue.popleft()
            for q in neighbours(g, p):
                rq = rank(q)
                if not seen[rq]:
                    seen[rq] = 1
                    members.append(q)
                    queue.append(q)
        classes.append(PermClass(len(classes), tuple(sorted(members))))
    return classes


def f_Y(g: Graph, cls: PermClass) -> Orientation:
    """The acyclic orientation shared by every member of ``cls``."""
    if not cls.members:
        raise GraphError("empty permutation class")
    o = orientation_from_permutation(g, cls.members[0])
    for p in cls.members[1:]:
        if orientation_from_permutation(g, p) != o:
            raise AssertionError(f"members of class {cls.id} induce different orientations")
    return o


def census(g: Graph) -> dict[int, int]:
    """Histogram ``{component size: number of components}`` of the update graph."""
    sizes = Counter(len(c.members) for c in update_graph_components(g))
    return dict(sorted(sizes.items()))


def check_shift_click_correspondence(g: Graph, perm: Sequence[int]) -> bool:
    """Shifting ``perm`` left by one is the same as clicking its first entry."""
    perm = tuple(perm)
    if not perm:
        return True
    before = orientation_from_permutation(g, perm)
    after = orientation_from_permutation(g, shift(perm, 1))
    return after == click(before, perm[0])


def kappa_via_permutations(g: Graph) -> int:
    """Components of the class graph whose edges join ``[p]`` and ``[shift(p)]``."""
    classes = update_graph_components(g)
    owner = {}
    for c in classes:
        for p in c.members:
            owner[p] = c.id
    uf = UnionFind(len(classes))
    for p, c in owner.items():
        uf.union(c, owner[shift(p, 1)])
    return uf.count


def delta_via_permutations(g: Graph) -> int:
    classes = update_graph_components(g)
    owner = {p: c.id for c in classes for p in c.members}
    uf = UnionFind(len(classes))
    for p, c in owner.items():
        uf.union(c, owner[shift(p, 1)])
        uf.union(c, owner[reflect_perm(p)])
    return uf.count


def dihedral_orbit(perm: Sequence[int]) -> list[Permutation]:
    """The ``2n`` images of ``perm`` under cyclic shifts and reversal."""
    out = []
    for s in range(len(perm)):
        p = shift(perm, s)
        out.append(p)
        out.append(reflect_perm(p))
    return out


def dihedral_class_count(g: Graph, perm: Sequence[int]) -> int:
    """Number of distinct update-graph classes met by the dihedral orbit of ``perm``."""
    return len({orientation_from_permutation(g, p).bits for p in dihedral_orbit(perm)})


def splits_into_two_independent_arcs(g: Graph, perm: Sequence[int]) -> bool:
    """Whether the cyclic order ``perm`` cuts into two arcs that are both independent sets."""
    n = len(perm)
    for s in range(n):
        p = shift(perm, s)
        for m in range(1, n):
            left, right = p[:m], p[m:]
            if _independent(g, left) and _independent(g, right):
                return True
    return False


def _independent(g: Graph, vs: Sequence[int]) -> bool:
    return all(not g.has_edge(a, b) for i, a in enumerate(vs) for b in vs[i + 1 :])


def check_dihedral_orbit(g: Graph, perm: Sequence[int]) -> bool:
    """On a connected graph with ``n >= 3`` the dihedral orbit of ``perm`` meets
    ``2n`` classes, or ``2n - 2`` when ``perm`` cuts cyclically into two
    independent arcs (possible only for bipartite graphs).  The coincidences
    come in pairs: ``shift(p, s) ~ reflect(shift(p, t))`` forces the same for
    ``s`` and ``t`` exchanged."""
    if not is_connected(g):
        raise GraphError("dihedral orbit check needs a connected graph")
    n = g.n
    if n == 1:
        return dihedral_class_count(g, perm) == 1
    if n == 2:
        return dihedral_class_count(g, perm) == 2 - (g.m == 0)
    expected = 2 * n - 2 if splits_into_two_independent_arcs(g, perm) else 2 * n
    return dihedral_class_count(g, perm) == expected
