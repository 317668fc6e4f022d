"""The vw-interval of a fixed edge and the class-level deletion/contraction map.

Throughout, ``e = {v, w}`` is an edge with ``v < w``.  For an acyclic
orientation in which ``e`` points ``v -> w``, the interval is the set of
vertices lying on some directed path from ``v`` to ``w``; otherwise it is
empty.  The interval is constant on the members of a click class that
orient ``e`` as ``v -> w``, and that constancy drives ``theta``: a class
goes to the contraction when its interval is just ``{v, w}`` and to the
deletion otherwise.
"""

from __future__ import annotations

import heapq
from collections import deque
from dataclasses import dataclass
from typing import Sequence

from .equivalence import ClassPartition, kappa_partition
from .graph import Graph, GraphError, contract_vertex_set, delete_edge, is_bridge
from .orientation import (
    Orientation,
    OrientationError,
    apply_click_sequence,
    beta,
    click,
    contract_orientation,
    contraction_image,
    edge_image,
    is_source,
    is_valid_click_sequence,
    out_masks,
    restrict_to_deletion,
    sources,
    topological_order,
)

DELETED = "deleted"
CONTRACTED = "contracted"


@dataclass(frozen=True)
class Interval:
    vertices: frozenset[int]
    arcs: frozenset[tuple[int, int]]

    @property
    def empty(self) -> bool:
        return not self.vertices

    def __len__(self) -> int:
        return len(self.vertices)


EMPTY = Interval(frozenset(), frozenset())


def _reach(out: list[int], start: int) -> int:
    seen = frontier = 1 << start
    while frontier:
        nxt = 0
        f = frontier
        while f:
            low = f & -f
            nxt |= out[low.bit_length() - 1]
            f ^= low
        frontier = nxt & ~seen
        seen |= nxt
    return seen


def _induced(o: Orientation, members: frozenset[int]) -> Interval:
    arcs = frozenset(a for a in o.arcs() if a[0] in members and a[1] in members)
    return Interval(members, arcs)


def vw_interval(o: Orientation, e: int) -> Interval:
    g = o.graph
    g._check_edge(e)
    v, w = g.edges[e]
    if o.bits >> e & 1:
        return EMPTY
    out = out_masks(g, o.bits)
    inn = [0] * g.n
    for a in range(g.n):
        m = out[a]
        while m:
            low = m & -m
            inn[low.bit_length() - 1] |= 1 << a
            m ^= low
    both = _reach(out, v) & _reach(inn, w)
    return _induced(o, frozenset(x for x in range(g.n) if both >> x & 1))


def edge_interval(g: Graph, e: int) -> Interval:
    v, w = g.edges[e]
    return Interval(frozenset((v, w)), frozenset({(v, w)}))


# -- class-level intervals -------------------------------------------------


def interval_of_class(part: ClassPartition, e: int, c: int) -> Interval:
    """Common interval of the members orienting ``e`` forwards; raises if they disagree."""
    found = None
    for o in part.members(c):
        if o.bits >> e & 1:
            continue
        iv = vw_interval(o, e)
        if found is None:
            found = iv
        elif iv != found:
            raise AssertionError(f"class {c}: members orienting edge {e} forwards have different intervals")
    if found is None:
        raise AssertionError(f"class {c} has no member orienting edge {e} forwards")
    return found


def check_interval_agreement(g: Graph, e: int, part: ClassPartition | None = None) -> bool:
    part = part or kappa_partition(g)
    try:
        for c in range(part.count):
            interval_of_class(part, e, c)
    except AssertionError:
        return False
    return True


def _insert_bit(bits: int, e: int, b: int) -> int:
    low = bits & ((1 << e) - 1)
    return ((bits >> e) << (e + 1)) | (b << e) | low


def preimages(g: Graph, e: int, o_del: Orientation) -> list[Orientation]:
    """Acyclic orientations of ``g`` restricting to ``o_del`` on the deletion."""
    out = []
    for b in (0, 1):
        o = Orientation(_insert_bit(o_del.bits, e, b), g)
        if o.is_acyclic():
            out.append(o)
    return out


def interval_of_deleted_class(g: Graph, e: int, part_del: ClassPartition, c: int) -> Interval:
    """Interval of any orientation of ``g`` over class ``c`` of the deletion whose
    interval has at least three vertices, else ``{v, w}``."""
    found = None
    for o_del in part_del.members(c):
        for o in preimages(g, e, o_del):
            iv = vw_interval(o, e)
            if len(iv) < 3:
                continue
            if found is None:
                found = iv
            elif iv != found:
                raise AssertionError(f"deleted class {c}: preimages carry different intervals")
    return found if found is not None else edge_interval(g, e)


def check_diagram(g: Graph, e: int, part: ClassPartition | None = None, part_del: ClassPartition | None = None) -> bool:
    """Restricting a class to the deletion and then taking the deleted-class interval
    gives back the class's own interval, for every class whose interval has at
    least three vertices.

    Classes with interval ``{v, w}`` are excluded: in K3 such a class shares its
    deletion class with a class whose interval is the whole triangle.
    """
    part = part or kappa_partition(g)
    part_del = part_del or kappa_partition(delete_edge(g, e))
    try:
        for c in range(part.count):
            iv = interval_of_class(part, e, c)
            rep = part.representative(c)
            c_del = part_del.class_of(restrict_to_deletion(g, e, rep))
            image = interval_of_deleted_class(g, e, part_del, c_del)
            if len(iv) >= 3 and image != iv:
                return False
    except AssertionError:
        return False
    return True


# -- click sequences -------------------------------------------------------


def check_alternation(o: Orientation, seq: Sequence[int]) -> bool:
    """Along every arc ``a -> b`` the clicks of ``a`` and ``b`` alternate, ``a`` first."""
    for a, b in o.arcs():
        expect = a
        for x in seq:
            if x == a or x == b:
                if x != expect:
                    return False
                expect = b if x == a else a
    return True


def check_first_pass(o: Orientation, e: int, seq: Sequence[int]) -> bool:
    """When ``seq`` starts at ``v`` and covers the interval, every interval vertex
    shows up once before any shows up twice."""
    members = vw_interval(o, e).vertices
    v = o.graph.edges[e][0]
    if not members or not seq or seq[0] != v or not members <= set(seq):
        return True
    seen: set[int] = set()
    for x in seq:
        if x not in members:
            continue
        if x in seen:
            return members <= seen
        seen.add(x)
    return True


def normalize_click_sequence(o: Orientation, e: int, seq: Sequence[int]) -> list[int]:
    """Reorder a valid click sequence so the interval vertices come in blocks.

    The r-th clicks of the interval vertices form the r-th block.  Any
    reordering that keeps the relative order of every pair of clicks on equal
    or adjacent vertices is valid and has the same image, so the result is a
    topological sort of that precedence order with each block collapsed to a
    single node.  Ties go to the earliest original position, which leaves an
    already blocked sequence untouched.
    """
    seq = list(seq)
    if not is_valid_click_sequence(o, seq):
        raise OrientationError("not a valid click sequence from this orientation")
    iv = vw_interval(o, e).vertices
    if not iv:
        return seq
    members = 0
    for x in iv:
        members |= 1 << x
    return block_sort(_adjacency(o.graph), members, seq)


def _adjacency(g: Graph) -> list[int]:
    adj = [0] * g.n
    for a, b in g.edges:
        adj[a] |= 1 << b
        adj[b] |= 1 << a
    return adj


def block_sort(adj: Sequence[int], members: int, seq: Sequence[int]) -> list[int]:
    """Core of :func:`normalize_click_sequence` on bitmasks, without validation.

    ``adj[x]`` is the neighbour mask of ``x`` and ``members`` the interval mask.
    Raises ``AssertionError`` when the collapsed precedence order has a cycle.
    """
    size_seq = len(seq)
    count = [0] * len(adj)
    node = [0] * size_seq
    ids: dict[int, int] = {}
    for i, x in enumerate(seq):
        if members >> x & 1:
            key = -1 - count[x]
            count[x] += 1
        else:
            key = i
        k = ids.get(key)
        if k is None:
            k = ids[key] = len(ids)
        node[i] = k
    size = len(ids)
    succ = [0] * size
    for i in range(size_seq):
        a = seq[i]
        near = adj[a] | 1 << a
        ni = node[i]
        for j in range(i + 1, size_seq):
            nj = node[j]
            if near >> seq[j] & 1 and ni != nj:
                succ[ni] |= 1 << nj
    indeg = [0] * size
    for s in succ:
        while s:
            low = s & -s
            indeg[low.bit_length() - 1] += 1
            s ^= low
    # node ids are assigned in order of first appearance, so the id is the tie-break
    ready = [k for k in range(size) if indeg[k] == 0]
    heapq.heapify(ready)
    out: list[int] = []
    while ready:
        k = heapq.heappop(ready)
        out.extend(seq[i] for i in range(size_seq) if node[i] == k)
        s = succ[k]
        while s:
            low = s & -s
            t = low.bit_length() - 1
            s ^= low
            indeg[t] -= 1
            if indeg[t] == 0:
                heapq.heappush(ready, t)
    if len(out) != size_seq:
        raise AssertionError("interval blocks cannot be made contiguous for this sequence")
    return out


def interval_blocks(o: Orientation, e: int, seq: Sequence[int]) -> list[list[int]]:
    """Positions of the r-th clicks of the interval vertices, for each round r."""
    members = vw_interval(o, e).vertices
    count: dict[int, int] = {}
    rounds: dict[int, list[int]] = {}
    for i, x in enumerate(seq):
        if x in members:
            k = count.get(x, 0)
            count[x] = k + 1
            rounds.setdefault(k, []).append(i)
    return [rounds[k] for k in sorted(rounds)]


def is_blocked(o: Orientation, e: int, seq: Sequence[int]) -> bool:
    """Each round of interval clicks is contiguous; complete rounds run from ``v`` to ``w``."""
    members = vw_interval(o, e).vertices
    v, w = o.graph.edges[e]
    for pos in interval_blocks(o, e, seq):
        if pos != list(range(pos[0], pos[0] + len(pos))):
            return False
        if len(pos) == len(members) and (seq[pos[0]] != v or seq[pos[-1]] != w):
            return False
    return True


def click_sequence_between(a: Orientation, b: Orientation) -> list[int] | None:
    """Some click sequence taking ``a`` to ``b`` (BFS, ascending vertex order), or ``None``."""
    if a == b:
        return []
    prev: dict[int, tuple[int, int]] = {a.bits: (-1, -1)}
    queue = deque([a])
    while queue:
        o = queue.popleft()
        for v in sorted(sources(o)):
            nxt = click(o, v)
            if nxt.bits in prev:
                continue
            prev[nxt.bits] = (o.bits, v)
            if nxt == b:
                seq = []
                cur = nxt.bits
                while cur != a.bits:
                    cur, x = prev[cur]
                    seq.append(x)
                return seq[::-1]
            queue.append(nxt)
    return None


# -- contraction of an interval --------------------------------------------


def contract_interval(g: Graph, o: Orientation, iv: Interval) -> tuple[Graph, Orientation, list[int]]:
    """Collapse the interval to one vertex; returns the graph, the induced
    (acyclic) orientation and the old-to-new vertex map."""
    if len(iv) < 2:
        raise GraphError("interval contraction needs at least two vertices")
    quotient, mapping = contract_vertex_set(g, iv.vertices)
    img = edge_image(g, mapping, quotient)
    oq = Orientation(img.transport(o.bits), quotient)
    if not oq.is_acyclic():
        raise AssertionError("contracting an interval produced a directed cycle")
    return quotient, oq, mapping


def expand_click_sequence(iv: Interval, mapping: Sequence[int], seq: Sequence[int]) -> list[int]:
    """Lift a click sequence on the contracted graph: the merged vertex becomes a
    linear extension of the interval, every other vertex its preimage."""
    merged = mapping[next(iter(iv.vertices))]
    back = {mapping[x]: x for x in range(len(mapping)) if x not in iv.vertices}
    sub = Graph(max(iv.vertices) + 1, tuple(sorted((min(a, b), max(a, b)) for a, b in iv.arcs)))
    bits = 0
    for i, (a, b) in enumerate(sub.edges):
        if (b, a) in iv.arcs:
            bits |= 1 << i
    order = [x for x in topological_order(sub, bits) if x in iv.vertices]
    out: list[int] = []
    for x in seq:
        out.extend(order if x == merged else [back[x]])
    return out


# -- theta -----------------------------------------------------------------


@dataclass(frozen=True)
class ThetaImage:
    tag: str
    target_class: int
    representative: Orientation


@dataclass
class ThetaContext:
    graph: Graph
    edge: int
    part: ClassPartition
    part_del: ClassPartition
    part_con: ClassPartition

    @classmethod
    def build(cls, g: Graph, e: int) -> "ThetaContext":
        g._check_edge(e)
        if is_bridge(g, e):
            raise GraphError(f"edge {e} is a bridge; theta needs a cycle-edge")
        con = contraction_image(g, e).quotient
        return cls(g, e, kappa_partition(g), kappa_partition(delete_edge(g, e)), kappa_partition(con))


def theta(ctx: ThetaContext, c: int) -> ThetaImage:
    """Image of kappa-class ``c``: the contraction's class when the class interval is
    ``{v, w}``, otherwise the deletion's class of its restriction."""
    g, e = ctx.graph, ctx.edge
    iv = interval_of_class(ctx.part, e, c)
    members = ctx.part.members(c)
    if len(iv) == 2:
        targets = set()
        for o in members:
            if o.bits >> e & 1:
                continue
            oc = contract_orientation(g, e, o)
            if not oc.is_acyclic():
                raise AssertionError("contraction of a {v, w}-interval orientation is cyclic")
            targets.add(ctx.part_con.class_of(oc))
        tag, part = CONTRACTED, ctx.part_con
    else:
        targets = {ctx.part_del.class_of(restrict_to_deletion(g, e, o)) for o in members}
        tag, part = DELETED, ctx.part_del
    if len(targets) != 1:
        raise AssertionError(f"class {c} does not have a well-defined image")
    t = targets.pop()
    return ThetaImage(tag, t, part.representative(t))


def theta_by_permutation(ctx: ThetaContext, c: int) -> ThetaImage:
    """Alternate route: contract exactly when some member has a linear extension
    starting ``v, w`` (``v`` a source and ``v`` the only in-neighbour of ``w``)."""
    g, e = ctx.graph, ctx.edge
    v, w = g.edges[e]
    members = ctx.part.members(c)
    starters = [o for o in members if is_source(o, v) and is_source(click(o, v), w)]
    if starters:
        o = starters[0]
        t = ctx.part_con.class_of(contract_orientation(g, e, o))
        return ThetaImage(CONTRACTED, t, ctx.part_con.representative(t))
    t = ctx.part_del.class_of(restrict_to_deletion(g, e, members[0]))
    return ThetaImage(DELETED, t, ctx.part_del.representative(t))


@dataclass
class ThetaReport:
    edge: tuple[int, int]
    kappa_Y: int
    kappa_Ydel: int
    kappa_Ycon: int
    injective: bool
    surjective: bool

    @property
    def bijective(self) -> bool:
        return self.injective and self.surjective

    def to_dict(self) -> dict:
        return {
            "edge": [self.edge[0] + 1, self.edge[1] + 1],
            "kappa_Y": self.kappa_Y,
            "kappa_Ydel": self.kappa_Ydel,
            "kappa_Ycon": self.kappa_Ycon,
            "bijective": self.bijective,
        }


def verify_theta_bijection(g: Graph, e: int) -> ThetaReport:
    ctx = ThetaContext.build(g, e)
    images = [theta(ctx, c) for c in range(ctx.part.count)]
    hit = {(im.tag, im.target_class) for im in images}
    targets = {(DELETED, t) for t in range(ctx.part_del.count)} | {(CONTRACTED, t) for t in range(ctx.part_con.count)}
    return ThetaReport(
        g.edges[e],
        ctx.part.count,
        ctx.part_del.count,
        ctx.part_con.count,
        injective=len(hit) == len(images),
        surjective=hit == targets,
    )


# -- beta on classes -------------------------------------------------------


@dataclass(frozen=True)
class BetaWitness:
    graph: Graph
    edge: int
    first: Orientation
    second: Orientation
    first_image: tuple[str, int]
    second_image: tuple[str, int]


def _beta_class(g: Graph, e: int, o: Orientation, part_del: ClassPartition, part_con: ClassPartition) -> tuple[str, int]:
    img = beta(g, e, o)
    part = part_con if img.tag == CONTRACTED else part_del
    return img.tag, part.class_of(img.orientation)


def find_beta_witness(graphs, same_side: bool = True) -> BetaWitness | None:
    """First kappa-equivalent pair whose beta images lie in different classes.

    With ``same_side`` the two images must land on the same graph (deletion or
    contraction), which rules out the trivial cross-side mismatch.
    """
    for g in graphs:
        part = None
        for e in range(g.m):
            if is_bridge(g, e):
                continue
            part = part or kappa_partition(g)
            part_del = kappa_partition(delete_edge(g, e))
            part_con = kappa_partition(contraction_image(g, e).quotient)
            for c in range(part.count):
                members = part.members(c)
                seen: dict[tuple[str, int], Orientation] = {}
                for o in members:
                    key = _beta_class(g, e, o, part_del, part_con)
                    for other_key, other in seen.items():
                        if other_key != key and (not same_side or other_key[0] == key[0]):
                            return BetaWitness(g, e, other, o, other_key, key)
                    seen.setdefault(key, o)
    return None
