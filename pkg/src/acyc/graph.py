"""Undirected graphs with a canonical edge order.

Vertices are ``0..n-1`` internally.  The text and JSON formats use 1-indexed
labels so that output lines up with hand-drawn examples.
"""

from __future__ import annotations

import hashlib
import json
from collections import deque
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Iterator, Sequence


class GraphError(ValueError):
    pass


@dataclass(frozen=True)
class Graph:
    n: int
    edges: tuple[tuple[int, int], ...]
    multi: bool = False
    _adj: tuple[frozenset[int], ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if self.n < 0:
            raise GraphError("negative vertex count")
        norm = []
        for e in self.edges:
            u, v = e
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise GraphError(f"edge {e} has an endpoint outside 0..{self.n - 1}")
            if u > v:
                u, v = v, u
            norm.append((u, v))
        if not self.multi:
            if any(u == v for u, v in norm):
                raise GraphError("loops require multi=True")
            if len(set(norm)) != len(norm):
                raise GraphError("parallel edges require multi=True")
        object.__setattr__(self, "edges", tuple(norm))
        adj: list[set[int]] = [set() for _ in range(self.n)]
        for u, v in norm:
            if u != v:
                adj[u].add(v)
                adj[v].add(u)
        object.__setattr__(self, "_adj", tuple(frozenset(a) for a in adj))

    @property
    def m(self) -> int:
        return len(self.edges)

    def neighbors(self, v: int) -> frozenset[int]:
        return self._adj[v]

    def degree(self, v: int) -> int:
        return sum((a == v) + (b == v) for a, b in self.edges)

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._adj[u]

    def edge_id(self, u: int, v: int) -> int:
        """Id of the first edge joining ``u`` and ``v``."""
        key = (min(u, v), max(u, v))
        for i, e in enumerate(self.edges):
            if e == key:
                return i
        raise GraphError(f"no edge between {u} and {v}")

    def _check_edge(self, e: int) -> None:
        if not 0 <= e < len(self.edges):
            raise GraphError(f"invalid edge id {e} (graph has {len(self.edges)} edges)")

    def simple(self) -> "Graph":
        """Underlying simple graph: loops dropped, parallel edges coalesced (first occurrence kept)."""
        seen: dict[tuple[int, int], None] = {}
        for u, v in self.edges:
            if u != v:
                seen.setdefault((u, v), None)
        return Graph(self.n, tuple(seen), multi=False)

    def key(self) -> tuple:
        return (self.n, self.edges, self.multi)

    def digest(self) -> str:
        """Short stable hash of the labeled graph, used to tag serialized orientations."""
        return hashlib.sha256(to_json(self).encode()).hexdigest()[:12]


# -- construction ----------------------------------------------------------


def from_edges(n: int, edges: Iterable[Sequence[int]], multi: bool = False) -> Graph:
    return Graph(n, tuple((int(u), int(v)) for u, v in edges), multi=multi)


def complete(n: int) -> Graph:
    return Graph(n, tuple(combinations(range(n), 2)))


def cycle(n: int) -> Graph:
    if n < 3:
        raise GraphError("a cycle needs at least 3 vertices")
    return Graph(n, tuple((i, (i + 1) % n) for i in range(n)))


def path(n: int) -> Graph:
    return Graph(n, tuple((i, i + 1) for i in range(n - 1)))


def empty(n: int) -> Graph:
    return Graph(n, ())


def complete_bipartite(a: int, b: int) -> Graph:
    """K_{a,b} with parts {0..a-1} and {a..a+b-1}."""
    return Graph(a + b, tuple((i, a + j) for i in range(a) for j in range(b)))


def k23() -> Graph:
    """K_{2,3} labeled with parts {1,3,5} and {2,4} (1-indexed), i.e. {0,2,4}/{1,3} here."""
    return Graph(5, tuple((u, v) for u in (0, 2, 4) for v in (1, 3)))


def named(spec: str) -> Graph:
    """Parse names such as ``K4``, ``C5``, ``P3``, ``E3`` (edgeless) or ``K2,3``."""
    s = spec.strip().upper()
    try:
        if s.startswith("K") and "," in s:
            a, b = s[1:].split(",")
            if (int(a), int(b)) == (2, 3):
                return k23()
            return complete_bipartite(int(a), int(b))
        kind, size = s[0], int(s[1:])
    except ValueError:
        raise GraphError(f"unrecognised graph name {spec!r}") from None
    builders = {"K": complete, "C": cycle, "P": path, "E": empty}
    if kind not in builders:
        raise GraphError(f"unrecognised graph name {spec!r}")
    return builders[kind](size)


# -- edge operations -------------------------------------------------------


def delete_edge(g: Graph, e: int) -> Graph:
    g._check_edge(e)
    return Graph(g.n, g.edges[:e] + g.edges[e + 1 :], multi=g.multi)


def add_edge(g: Graph, u: int, v: int) -> Graph:
    return Graph(g.n, g.edges + ((u, v),), multi=g.multi)


def _merge_map(n: int, keep: int, gone: int) -> list[int]:
    return [keep if x == gone else (x - 1 if x > gone else x) for x in range(n)]


def contract_edge(g: Graph, e: int, multi: bool | None = None) -> Graph:
    """Merge the endpoints of edge ``e``.

    The smaller endpoint survives and vertices above the larger one shift down
    by one.  In simple mode parallel edges are coalesced (first occurrence
    keeps its place in the order) and loops are dropped; in multi mode every
    other edge survives, loops included.  Edge ``e`` itself always disappears.
    """
    g._check_edge(e)
    multi = g.multi if multi is None else multi
    u, v = g.edges[e]
    if u == v:
        return Graph(g.n, g.edges[:e] + g.edges[e + 1 :], multi=True)
    relabel = _merge_map(g.n, u, v)
    rest = [(relabel[a], relabel[b]) for i, (a, b) in enumerate(g.edges) if i != e]
    if multi:
        return Graph(g.n - 1, tuple(rest), multi=True)
    return Graph(g.n - 1, tuple(rest), multi=True).simple()


def contract_vertex_set(g: Graph, s: Iterable[int]) -> tuple[Graph, list[int]]:
    """Merge every vertex of ``s`` into one (simple mode).

    The merged vertex takes the smallest label of ``s``; the remaining labels
    are compacted in increasing order.  Returns the contracted graph and the
    old-to-new vertex map.
    """
    s = sorted(set(s))
    if not s:
        raise GraphError("cannot contract an empty vertex set")
    for x in s:
        if not 0 <= x < g.n:
            raise GraphError(f"vertex {x} out of range")
    members = set(s)
    target = s[0]
    mapping = []
    nxt = 0
    for x in range(g.n):
        if x in members and x != target:
            mapping.append(-1)
        else:
            mapping.append(nxt)
            nxt += 1
    head = mapping[target]
    mapping = [head if x in members else mapping[x] for x in range(g.n)]
    edges = [(mapping[a], mapping[b]) for a, b in g.edges]
    return Graph(nxt, tuple(edges), multi=True).simple(), mapping


# -- structure -------------------------------------------------------------


def connected_components(g: Graph) -> list[list[int]]:
    seen = [False] * g.n
    comps = []
    for s in range(g.n):
        if seen[s]:
            continue
        seen[s] = True
        comp = [s]
        queue = deque([s])
        while queue:
            x = queue.popleft()
            for y in g.neighbors(x):
                if not seen[y]:
                    seen[y] = True
                    comp.append(y)
                    queue.append(y)
        comps.append(sorted(comp))
    return comps


def is_connected(g: Graph) -> bool:
    return len(connected_components(g)) <= 1


def is_bridge(g: Graph, e: int) -> bool:
    """True iff deleting ``e`` disconnects its endpoints (loops and repeated edges never are)."""
    g._check_edge(e)
    u, v = g.edges[e]
    if u == v:
        return False
    # BFS from u in g minus e; parallel copies still connect u and v.
    seen = {u}
    queue = deque([u])
    while queue:
        x = queue.popleft()
        for i, (a, b) in enumerate(g.edges):
            if i == e or (a != x and b != x):
                continue
            y = b if a == x else a
            if y == v:
                return False
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return True


def bridges(g: Graph) -> list[int]:
    return [e for e in range(g.m) if is_bridge(g, e)]


def cycle_edges(g: Graph) -> list[int]:
    return [e for e in range(g.m) if not is_bridge(g, e)]


def is_bipartite(g: Graph) -> tuple[frozenset[int], frozenset[int]] | None:
    """BFS 2-colouring; returns the two colour classes or ``None`` on an odd cycle.

    Each component's smallest vertex gets colour 0.
    """
    colour = [-1] * g.n
    for s in range(g.n):
        if colour[s] >= 0:
            continue
        colour[s] = 0
        queue = deque([s])
        while queue:
            x = queue.popleft()
            for a, b in g.edges:
                if a == b == x:
                    return None
                if x not in (a, b):
                    continue
                y = b if a == x else a
                if colour[y] < 0:
                    colour[y] = 1 - colour[x]
                    queue.append(y)
                elif colour[y] == colour[x]:
                    return None
    return (
        frozenset(i for i in range(g.n) if colour[i] == 0),
        frozenset(i for i in range(g.n) if colour[i] == 1),
    )


# -- corpus ----------------------------------------------------------------


def connected_graphs(n: int) -> Iterator[Graph]:
    """Every connected labeled simple graph on exactly ``n`` vertices.

    Edge subsets of K_n in increasing mask order, filtered by connectivity;
    no isomorphism reduction.
    """
    pairs = list(combinations(range(n), 2))
    full = (1 << n) - 1
    for mask in range(1 << len(pairs)):
        chosen = [pairs[i] for i in range(len(pairs)) if mask >> i & 1]
        if n <= 1 or _reach(n, chosen) == full:
            yield Graph(n, tuple(chosen))


def _reach(n: int, edges: Sequence[tuple[int, int]]) -> int:
    adj = [0] * n
    for u, v in edges:
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    seen = frontier = 1
    while frontier:
        nxt = 0
        f = frontier
        while f:
            low = f & -f
            nxt |= adj[low.bit_length() - 1]
            f ^= low
        frontier = nxt & ~seen
        seen |= nxt
    return seen


def corpus(max_n: int, min_n: int = 1) -> Iterator[Graph]:
    for n in range(min_n, max_n + 1):
        yield from connected_graphs(n)


# -- serialization ---------------------------------------------------------


def to_text(g: Graph) -> str:
    lines = [f"{g.n} {g.m}"]
    lines += [f"{u + 1} {v + 1}" for u, v in g.edges]
    return "\n".join(lines) + "\n"


def from_text(text: str, multi: bool = False) -> Graph:
    rows = [ln.split() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not rows or len(rows[0]) != 2:
        raise GraphError("expected a header line 'n m'")
    n, m = (int(x) for x in rows[0])
    body = rows[1:]
    if len(body) != m:
        raise GraphError(f"header announces {m} edges, found {len(body)}")
    edges = []
    for row in body:
        if len(row) != 2:
            raise GraphError(f"bad edge line {' '.join(row)!r}")
        edges.append((int(row[0]) - 1, int(row[1]) - 1))
    return from_edges(n, edges, multi=multi)


def to_json(g: Graph) -> str:
    return json.dumps({"n": g.n, "edges": [[u + 1, v + 1] for u, v in g.edges]}, separators=(",", ":"))


def from_json(text: str, multi: bool = False) -> Graph:
    data = json.loads(text)
    return from_edges(data["n"], ((u - 1, v - 1) for u, v in data["edges"]), multi=multi)


def parse_edge_string(spec: str, n: int | None = None) -> Graph:
    """Parse ``"1-2,2-3"``; ``n`` defaults to the largest label."""
    edges = []
    for tok in spec.replace(" ", "").split(","):
        if not tok:
            continue
        try:
            a, b = tok.split("-")
            edges.append((int(a) - 1, int(b) - 1))
        except ValueError:
            raise GraphError(f"bad edge token {tok!r}") from None
    top = max((max(e) + 1 for e in edges), default=0)
    return from_edges(top if n is None else n, edges)


def load(path: str) -> Graph:
    with open(path) as fh:
        text = fh.read()
    if text.lstrip().startswith("{"):
        return from_json(text)
    return from_text(text)
