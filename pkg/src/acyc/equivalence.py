"""Click-equivalence (kappa) and click-plus-reflection (delta) classes.

The click graph has the acyclic orientations as vertices and joins ``o`` to
``click(o, v)`` for every source ``v``; its components are the kappa-classes.
Adding the edges ``o -- reflect(o)`` gives the delta-classes.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .graph import Graph, GraphError, is_bipartite, is_connected
from .orientation import (
    Orientation,
    OrientationSet,
    apply_click_sequence,
    enumerate_acyclic,
    tables,
)

KAPPA = "kappa"
DELTA = "delta"


class UnionFind:
    def __init__(self, size: int):
        self.parent = list(range(size))
        self.count = size

    def find(self, x: int) -> int:
        parent = self.parent
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        # smaller root wins so labels come out in canonical order
        if rb < ra:
            ra, rb = rb, ra
        self.parent[rb] = ra
        self.count -= 1
        return True


@dataclass
class ClassPartition:
    graph: Graph
    kind: str
    orientations: OrientationSet
    labels: np.ndarray  # class id of each orientation
    classes: list[list[int]] = field(repr=False)

    def __len__(self) -> int:
        return len(self.classes)

    @property
    def count(self) -> int:
        return len(self.classes)

    def representative(self, c: int) -> Orientation:
        return self.orientations[self.classes[c][0]]

    def members(self, c: int) -> list[Orientation]:
        return [self.orientations[i] for i in self.classes[c]]

    def class_of(self, o: Orientation | int) -> int:
        bits = o.bits if isinstance(o, Orientation) else o
        i = self.orientations.index(bits)
        if i is None:
            raise GraphError("orientation is not acyclic for this graph")
        return int(self.labels[i])

    def sizes(self) -> list[int]:
        return [len(c) for c in self.classes]

    def to_dict(self) -> dict:
        return {"kind": self.kind, "classes": [[self.orientations[i].hex() for i in c] for c in self.classes]}


def click_pairs(g: Graph, acyc: OrientationSet) -> tuple[np.ndarray, np.ndarray]:
    """Index pairs ``(i, j)`` with ``acyc[j] = click(acyc[i], v)``, ascending ``v`` then ``i``."""
    t = tables(g)
    masks = acyc.masks
    left, right = [], []
    for v in range(g.n):
        if not t.inc[v]:
            continue
        src = np.flatnonzero((masks & t.inc[v]) == t.hi[v])
        left.append(src)
        right.append(acyc.indices(masks[src] ^ t.inc[v]))
    if not left:
        empty = np.zeros(0, dtype=np.int64)
        return empty, empty
    return np.concatenate(left), np.concatenate(right)


def reflection_pairs(g: Graph, acyc: OrientationSet) -> tuple[np.ndarray, np.ndarray]:
    full = (1 << g.m) - 1
    idx = np.arange(len(acyc))
    return idx, acyc.indices(acyc.masks ^ full)


def _partition(g: Graph, kind: str, acyc: OrientationSet, pairs) -> ClassPartition:
    uf = UnionFind(len(acyc))
    for a, b in pairs:
        for i, j in zip(a.tolist(), b.tolist()):
            uf.union(i, j)
    roots = [uf.find(i) for i in range(len(acyc))]
    order: dict[int, int] = {}
    labels = np.empty(len(acyc), dtype=np.int64)
    classes: list[list[int]] = []
    for i, r in enumerate(roots):
        c = order.get(r)
        if c is None:
            c = order[r] = len(classes)
            classes.append([])
        classes[c].append(i)
        labels[i] = c
    return ClassPartition(g, kind, acyc, labels, classes)


def kappa_partition(g: Graph, cap: int | None = None) -> ClassPartition:
    """Classes are numbered by their minimum orientation, which is also the representative."""
    acyc = enumerate_acyclic(g, cap)
    return _partition(g, KAPPA, acyc, [click_pairs(g, acyc)])


def delta_partition(g: Graph, cap: int | None = None) -> ClassPartition:
    acyc = enumerate_acyclic(g, cap)
    return _partition(g, DELTA, acyc, [click_pairs(g, acyc), reflection_pairs(g, acyc)])


def partition(g: Graph, kind: str) -> ClassPartition:
    if kind == KAPPA:
        return kappa_partition(g)
    if kind == DELTA:
        return delta_partition(g)
    raise ValueError(f"unknown partition kind {kind!r}")


def kappa(g: Graph) -> int:
    return kappa_partition(g).count


def delta(g: Graph) -> int:
    return delta_partition(g).count


def rho_star(part: ClassPartition) -> list[int]:
    """Image of each kappa-class under reflection."""
    full = (1 << part.graph.m) - 1
    return [part.class_of(part.representative(c).bits ^ full) for c in range(part.count)]


# -- structural checks -----------------------------------------------------


def _require_connected(g: Graph) -> None:
    if not is_connected(g):
        raise GraphError("this check is only defined for connected graphs")


@dataclass
class DeltaReport:
    kappa: int
    delta: int
    bipartite: bool
    fixed_classes: list[int]
    ok: bool


def check_delta_formula(g: Graph) -> DeltaReport:
    """delta is kappa/2 off bipartite graphs and (kappa+1)/2 on them.

    The reflection involution on kappa-classes must have exactly one fixed
    class when ``g`` is bipartite and none otherwise.
    """
    _require_connected(g)
    kp = kappa_partition(g)
    d = delta_partition(g).count
    k = kp.count
    bip = is_bipartite(g) is not None
    image = rho_star(kp)
    fixed = [c for c, r in enumerate(image) if r == c]
    involution = all(image[image[c]] == c for c in range(k))
    if bip:
        ok = 2 * d == k + 1 and len(fixed) == 1
    else:
        ok = 2 * d == k and not fixed
    return DeltaReport(k, d, bip, fixed, ok and involution and d == -(-k // 2))


def check_bipartite_parity(g: Graph) -> bool:
    _require_connected(g)
    return (is_bipartite(g) is not None) == (kappa(g) % 2 == 1)


@dataclass
class BoundReport:
    n: int
    kappa: int
    alpha: int
    holds: bool
    sharp: bool


def check_one_over_n_bound(g: Graph) -> BoundReport:
    _require_connected(g)
    kp = kappa_partition(g)
    a = len(kp.orientations)
    return BoundReport(g.n, kp.count, a, g.n * kp.count <= a, g.n * kp.count == a)


def shift_orbit(g: Graph, perm: Sequence[int]) -> list[Orientation]:
    """Orientations reached by clicking the first ``s`` entries of ``perm``, ``s = 1..n``."""
    from .orientation import orientation_from_permutation

    o = orientation_from_permutation(g, perm)
    return [apply_click_sequence(o, perm[:s]) for s in range(1, g.n + 1)]


def check_shift_orbit(g: Graph, perm: Sequence[int]) -> bool:
    """On a connected graph the ``n`` cyclic shifts of ``perm`` give ``n`` distinct orientations."""
    _require_connected(g)
    orbit = shift_orbit(g, perm)
    return len({o.bits for o in orbit}) == g.n


# -- output ----------------------------------------------------------------


def report(g: Graph) -> dict:
    kp = kappa_partition(g)
    connected = is_connected(g)
    return {
        "alpha": len(kp.orientations),
        "kappa": kp.count,
        "delta": delta_partition(g).count if connected else None,
        "bipartite": is_bipartite(g) is not None,
        "classes": kp.to_dict()["classes"],
    }


def report_json(g: Graph) -> str:
    return json.dumps(report(g), sort_keys=False)


_PALETTE = 12


def export_class_graph(g: Graph, kind: str = KAPPA) -> str:
    """Undirected DOT rendering of the click graph (kind kappa) or with reflection edges too (delta).

    Nodes are the orientations in ascending bit order, filled by class;
    reflection edges are dashed.
    """
    part = partition(g, kind)
    acyc = part.orientations
    lines = [f"graph {kind.upper()} {{", "  node [style=filled, colorscheme=set312];"]
    for i, o in enumerate(acyc):
        c = int(part.labels[i])
        lines.append(f'  o{o.hex()} [label="{o.hex()}", fillcolor={c % _PALETTE + 1}, class={c}];')
    edges: set[tuple[int, int, str]] = set()
    a, b = click_pairs(g, acyc)
    for i, j in zip(a.tolist(), b.tolist()):
        edges.add((min(i, j), max(i, j), "solid"))
    if kind == DELTA:
        a, b = reflection_pairs(g, acyc)
        for i, j in zip(a.tolist(), b.tolist()):
            if i != j and (min(i, j), max(i, j), "solid") not in edges:
                edges.add((min(i, j), max(i, j), "dashed"))
    for i, j, style in sorted(edges):
        attr = " [style=dashed]" if style == "dashed" else ""
        lines.append(f"  o{acyc[i].hex()} -- o{acyc[j].hex()}{attr};")
    lines.append("}")
    return "\n".join(lines) + "\n"
