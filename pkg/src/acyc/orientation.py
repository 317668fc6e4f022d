"""Acyclic orientations packed as bit vectors.

Bit ``i`` of an orientation describes canonical edge ``i = {u, v}`` with
``u < v``: 0 means ``u -> v`` and 1 means ``v -> u``.  Orientations of one
graph are ordered by the unsigned value of that bit vector.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

import numpy as np

from .graph import Graph, GraphError, contract_edge, delete_edge

DEFAULT_MAX_EDGES = 24
_CHUNK = 1 << 18


class OrientationError(ValueError):
    pass


def max_edges() -> int:
    return int(os.environ.get("ACYC_MAX_EDGES", DEFAULT_MAX_EDGES))


@dataclass(frozen=True)
class _Tables:
    inc: tuple[int, ...]  # edges touching v
    hi: tuple[int, ...]  # edges whose larger endpoint is v


@lru_cache(maxsize=4096)
def tables(g: Graph) -> _Tables:
    inc = [0] * g.n
    hi = [0] * g.n
    for i, (u, v) in enumerate(g.edges):
        inc[u] |= 1 << i
        inc[v] |= 1 << i
        hi[v] |= 1 << i
    return _Tables(tuple(inc), tuple(hi))


@dataclass(frozen=True, order=True)
class Orientation:
    bits: int
    graph: Graph

    def __post_init__(self) -> None:
        if not 0 <= self.bits < (1 << self.graph.m):
            raise OrientationError(f"bit vector {self.bits:#x} does not fit {self.graph.m} edges")

    def direction(self, e: int) -> tuple[int, int]:
        u, v = self.graph.edges[e]
        return (v, u) if self.bits >> e & 1 else (u, v)

    def arcs(self) -> list[tuple[int, int]]:
        return [self.direction(e) for e in range(self.graph.m)]

    def hex(self) -> str:
        width = max(1, (self.graph.m + 3) // 4)
        return format(self.bits, f"0{width}x")

    def serialize(self) -> str:
        return f"{self.graph.digest()}:{self.hex()}"

    def to_json(self) -> list[list[int]]:
        return [[a + 1, b + 1] for a, b in self.arcs()]

    def is_acyclic(self) -> bool:
        return is_acyclic(self.graph, self.bits)


def deserialize(g: Graph, text: str) -> Orientation:
    digest, _, hexbits = text.partition(":")
    if digest != g.digest():
        raise OrientationError("orientation was serialized for a different graph")
    return Orientation(int(hexbits, 16), g)


def from_arcs(g: Graph, arcs: Iterable[Sequence[int]]) -> Orientation:
    """Build an orientation from directed pairs (0-indexed), one per edge, in any order."""
    wanted = {}
    for a, b in arcs:
        wanted[(min(a, b), max(a, b))] = (a, b)
    bits = 0
    for i, (u, v) in enumerate(g.edges):
        if (u, v) not in wanted:
            raise OrientationError(f"no direction given for edge {(u, v)}")
        if wanted[(u, v)] == (v, u):
            bits |= 1 << i
    return Orientation(bits, g)


# -- acyclicity ------------------------------------------------------------


def out_masks(g: Graph, bits: int) -> list[int]:
    out = [0] * g.n
    for i, (u, v) in enumerate(g.edges):
        if bits >> i & 1:
            out[v] |= 1 << u
        else:
            out[u] |= 1 << v
    return out


def topological_order(g: Graph, bits: int) -> list[int] | None:
    """Sources-first order (smallest available vertex first), or ``None`` on a cycle."""
    out = out_masks(g, bits)
    indeg = [0] * g.n
    for x in range(g.n):
        m = out[x]
        while m:
            low = m & -m
            indeg[low.bit_length() - 1] += 1
            m ^= low
    ready = [x for x in range(g.n) if indeg[x] == 0]
    order = []
    while ready:
        ready.sort()
        x = ready.pop(0)
        order.append(x)
        m = out[x]
        while m:
            low = m & -m
            y = low.bit_length() - 1
            indeg[y] -= 1
            if indeg[y] == 0:
                ready.append(y)
            m ^= low
    return order if len(order) == g.n else None


def is_acyclic(g: Graph, bits: int) -> bool:
    if any(u == v for u, v in g.edges):
        return False
    out = out_masks(g, bits)
    alive = (1 << g.n) - 1
    while alive:
        sinks = 0
        m = alive
        while m:
            low = m & -m
            if not out[low.bit_length() - 1] & alive:
                sinks |= low
            m ^= low
        if not sinks:
            return False
        alive &= ~sinks
    return True


def acyclic_mask(g: Graph, bits: np.ndarray) -> np.ndarray:
    """Vectorised acyclicity test over an array of bit vectors.

    Repeatedly strips every vertex with no out-arc into the surviving set; a
    directed cycle is exactly what survives ``n`` rounds.
    """
    bits = np.asarray(bits, dtype=np.int64)
    if any(u == v for u, v in g.edges):
        return np.zeros(bits.shape, dtype=bool)
    out = [np.zeros(bits.shape, dtype=np.int64) for _ in range(g.n)]
    for i, (u, v) in enumerate(g.edges):
        b = (bits >> i) & 1
        out[u] |= (1 - b) << v
        out[v] |= b << u
    alive = np.full(bits.shape, (1 << g.n) - 1, dtype=np.int64)
    for _ in range(g.n):
        gone = np.zeros(bits.shape, dtype=np.int64)
        for x in range(g.n):
            gone |= ((out[x] & alive) == 0).astype(np.int64) << x
        alive &= ~gone
    return alive == 0


def _require_cap(g: Graph, cap: int | None) -> None:
    cap = max_edges() if cap is None else cap
    if g.m > cap:
        raise OrientationError(f"{g.m} edges exceeds the enumeration cap of {cap} (set ACYC_MAX_EDGES)")


class OrientationSet:
    """All acyclic orientations of a simple graph, sorted by bit value."""

    def __init__(self, graph: Graph, masks: np.ndarray):
        self.graph = graph
        self.masks = masks

    def __len__(self) -> int:
        return len(self.masks)

    def __iter__(self) -> Iterator[Orientation]:
        for b in self.masks.tolist():
            yield Orientation(b, self.graph)

    def __getitem__(self, i: int) -> Orientation:
        return Orientation(int(self.masks[i]), self.graph)

    def __contains__(self, o: object) -> bool:
        if isinstance(o, Orientation):
            return o.graph == self.graph and self.index(o.bits) is not None
        return False

    def index(self, bits: int) -> int | None:
        i = int(np.searchsorted(self.masks, bits))
        if i < len(self.masks) and self.masks[i] == bits:
            return i
        return None

    def indices(self, bits: np.ndarray) -> np.ndarray:
        """Positions of each bit vector; raises if any is missing."""
        idx = np.searchsorted(self.masks, bits)
        idx = np.minimum(idx, len(self.masks) - 1)
        if len(bits) and not np.array_equal(self.masks[idx], bits):
            raise OrientationError("bit vector is not an acyclic orientation of this graph")
        return idx


@lru_cache(maxsize=512)
def _enumerate(g: Graph) -> np.ndarray:
    total = 1 << g.m
    found = []
    for start in range(0, total, _CHUNK):
        block = np.arange(start, min(total, start + _CHUNK), dtype=np.int64)
        found.append(block[acyclic_mask(g, block)])
    masks = np.concatenate(found)
    masks.setflags(write=False)
    return masks


def enumerate_acyclic(g: Graph, cap: int | None = None) -> OrientationSet:
    if g.multi:
        raise GraphError("enumeration needs a simple graph")
    _require_cap(g, cap)
    return OrientationSet(g, _enumerate(g))


def alpha(g: Graph) -> int:
    return len(enumerate_acyclic(g))


# -- permutations ----------------------------------------------------------


def check_permutation(g: Graph, perm: Sequence[int]) -> None:
    if sorted(perm) != list(range(g.n)):
        raise OrientationError(f"{list(perm)} is not a permutation of 0..{g.n - 1}")


def orientation_from_permutation(g: Graph, perm: Sequence[int]) -> Orientation:
    check_permutation(g, perm)
    pos = [0] * g.n
    for i, x in enumerate(perm):
        pos[x] = i
    bits = 0
    for i, (u, v) in enumerate(g.edges):
        if pos[v] < pos[u]:
            bits |= 1 << i
    return Orientation(bits, g)


# -- sources, sinks and clicks ---------------------------------------------


def is_source(o: Orientation, v: int) -> bool:
    t = tables(o.graph)
    return o.bits & t.inc[v] == t.hi[v]


def is_sink(o: Orientation, v: int) -> bool:
    t = tables(o.graph)
    return o.bits & t.inc[v] == t.inc[v] ^ t.hi[v]


def sources(o: Orientation) -> frozenset[int]:
    """Vertices with no incoming arc; isolated vertices count."""
    return frozenset(v for v in range(o.graph.n) if is_source(o, v))


def sinks(o: Orientation) -> frozenset[int]:
    return frozenset(v for v in range(o.graph.n) if is_sink(o, v))


def click(o: Orientation, v: int) -> Orientation:
    """Turn the source ``v`` into a sink.  Clicking an isolated vertex changes nothing."""
    if not 0 <= v < o.graph.n:
        raise OrientationError(f"vertex {v} out of range")
    if not is_source(o, v):
        raise OrientationError(f"vertex {v} is not a source")
    return Orientation(o.bits ^ tables(o.graph).inc[v], o.graph)


def apply_click_sequence(o: Orientation, seq: Iterable[int]) -> Orientation:
    for step, v in enumerate(seq):
        try:
            o = click(o, v)
        except OrientationError as exc:
            raise OrientationError(f"step {step}: {exc}") from None
    return o


def is_valid_click_sequence(o: Orientation, seq: Iterable[int]) -> bool:
    t = tables(o.graph)
    bits = o.bits
    for v in seq:
        if bits & t.inc[v] != t.hi[v]:
            return False
        bits ^= t.inc[v]
    return True


def reflect(o: Orientation) -> Orientation:
    return Orientation(o.bits ^ ((1 << o.graph.m) - 1), o.graph)


def reverse_edge(o: Orientation, e: int) -> Orientation:
    o.graph._check_edge(e)
    return Orientation(o.bits ^ (1 << e), o.graph)


def reverse_edge_ok(o: Orientation, e: int) -> bool:
    return reverse_edge(o, e).is_acyclic()


# -- deletion / contraction images -----------------------------------------


def restrict_bits(bits, e: int):
    """Drop bit ``e``; works on ints and on int64 arrays."""
    low = (1 << e) - 1
    return ((bits >> (e + 1)) << e) | (bits & low)


def restrict_to_deletion(g: Graph, e: int, o: Orientation) -> Orientation:
    if o.graph != g:
        raise OrientationError("orientation belongs to a different graph")
    return Orientation(restrict_bits(o.bits, e), delete_edge(g, e))


@dataclass(frozen=True)
class EdgeImage:
    """How each edge of a graph lands in a quotient graph.

    ``target[i]`` is the quotient edge id (or -1 when edge ``i`` collapsed to a
    loop) and ``flip[i]`` records whether the canonical direction reverses.
    """

    quotient: Graph
    target: tuple[int, ...]
    flip: tuple[bool, ...]

    def transport(self, bits: int) -> int:
        """Induced bit vector; raises when coalesced edges disagree."""
        out = 0
        set_ = {}
        for i, j in enumerate(self.target):
            if j < 0:
                continue
            b = (bits >> i & 1) ^ self.flip[i]
            if set_.setdefault(j, b) != b:
                raise OrientationError("parallel edges of the quotient receive opposite directions")
            out |= b << j
        return out

    def transport_many(self, bits: np.ndarray) -> np.ndarray:
        """Vectorised transport using the first preimage of each quotient edge."""
        out = np.zeros(len(bits), dtype=np.int64)
        done = set()
        for i, j in enumerate(self.target):
            if j < 0 or j in done:
                continue
            done.add(j)
            out |= (((bits >> i) & 1) ^ int(self.flip[i])) << j
        return out


def edge_image(g: Graph, mapping: Sequence[int], quotient: Graph) -> EdgeImage:
    lookup = {}
    for j, pair in enumerate(quotient.edges):
        lookup.setdefault(pair, j)
    target = []
    flip = []
    for u, v in g.edges:
        a, b = mapping[u], mapping[v]
        if a == b:
            target.append(-1)
            flip.append(False)
            continue
        target.append(lookup[(min(a, b), max(a, b))])
        flip.append(a > b)
    return EdgeImage(quotient, tuple(target), tuple(flip))


@lru_cache(maxsize=4096)
def contraction_image(g: Graph, e: int) -> EdgeImage:
    u, v = g.edges[e]
    mapping = [u if x == v else (x - 1 if x > v else x) for x in range(g.n)]
    return edge_image(g, mapping, contract_edge(g, e, multi=False))


def contract_orientation(g: Graph, e: int, o: Orientation) -> Orientation:
    """Induced orientation on the simple contraction; may be cyclic."""
    img = contraction_image(g, e)
    return Orientation(img.transport(o.bits), img.quotient)


@dataclass(frozen=True)
class BetaImage:
    tag: str  # "deleted" or "contracted"
    orientation: Orientation


def beta(g: Graph, e: int, o: Orientation) -> BetaImage:
    """The classical deletion/contraction bijection on acyclic orientations.

    With ``e = {v, w}``, ``v < w``: the restriction to the deletion unless
    reversing ``e`` stays acyclic and ``e`` currently points ``w -> v``, in
    which case the orientation induced on the contraction.
    """
    g._check_edge(e)
    if not o.is_acyclic():
        raise OrientationError("beta needs an acyclic orientation")
    if reverse_edge_ok(o, e) and o.bits >> e & 1:
        return BetaImage("contracted", contract_orientation(g, e, o))
    return BetaImage("deleted", restrict_to_deletion(g, e, o))


def beta_many(g: Graph, e: int, masks: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Vectorised beta: returns (is_contracted, image bits)."""
    flipped_ok = acyclic_mask(g, masks ^ (1 << e))
    to_con = flipped_ok & (((masks >> e) & 1) == 1)
    img = restrict_bits(masks, e)
    con = contraction_image(g, e).transport_many(masks)
    return to_con, np.where(to_con, con, img)


# -- walks -----------------------------------------------------------------


def nu_path(o: Orientation, walk: Sequence[int]) -> int:
    """Forward arcs minus backward arcs along a walk of adjacent vertices."""
    g = o.graph
    total = 0
    for a, b in zip(walk, walk[1:]):
        if not g.has_edge(a, b):
            raise OrientationError(f"walk steps between non-adjacent vertices {a} and {b}")
        d = o.direction(g.edge_id(a, b))
        total += 1 if d == (a, b) else -1
    return total
