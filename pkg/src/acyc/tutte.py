"""Tutte polynomial and the deletion/contraction recursions for alpha and kappa."""

from __future__ import annotations

import json
import os
import random
from dataclasses import dataclass, field
from typing import Callable, Mapping

from .graph import Graph, GraphError

DEFAULT_MAX_EDGES = 18

# A pivot policy picks the edge to branch on from the current edge tuple.
PivotPolicy = Callable[[tuple], int]


def lowest_edge(edges: tuple) -> int:
    return 0


def random_pivot(seed: int | None = None) -> PivotPolicy:
    rng = random.Random(seed)
    return lambda edges: rng.randrange(len(edges))


@dataclass(frozen=True)
class TuttePolynomial:
    coeffs: Mapping[tuple[int, int], int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        object.__setattr__(self, "coeffs", {k: c for k, c in sorted(self.coeffs.items()) if c})

    @classmethod
    def one(cls) -> "TuttePolynomial":
        return cls({(0, 0): 1})

    def __add__(self, other: "TuttePolynomial") -> "TuttePolynomial":
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            out[k] = out.get(k, 0) + c
        return TuttePolynomial(out)

    def shift(self, dx: int = 0, dy: int = 0) -> "TuttePolynomial":
        """Multiply by ``x**dx * y**dy``."""
        return TuttePolynomial({(i + dx, j + dy): c for (i, j), c in self.coeffs.items()})

    def __mul__(self, other: "TuttePolynomial") -> "TuttePolynomial":
        out: dict[tuple[int, int], int] = {}
        for (i, j), c in self.coeffs.items():
            for (k, l), d in other.coeffs.items():
                out[(i + k, j + l)] = out.get((i + k, j + l), 0) + c * d
        return TuttePolynomial(out)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, TuttePolynomial) and dict(self.coeffs) == dict(other.coeffs)

    def __hash__(self) -> int:
        return hash(tuple(self.coeffs.items()))

    def evaluate(self, x: int, y: int) -> int:
        return sum(c * x**i * y**j for (i, j), c in self.coeffs.items())

    def terms(self) -> list[tuple[int, int, int]]:
        """(coefficient, i, j) by descending total degree, then descending x-degree."""
        keys = sorted(self.coeffs, key=lambda k: (-(k[0] + k[1]), -k[0], -k[1]))
        return [(self.coeffs[k], k[0], k[1]) for k in keys]

    def to_text(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for c, i, j in self.terms():
            factors = [str(c)]
            if i:
                factors.append("x" if i == 1 else f"x^{i}")
            if j:
                factors.append("y" if j == 1 else f"y^{j}")
            parts.append("·".join(factors))
        return " + ".join(parts)

    def to_json(self) -> str:
        return json.dumps({f"{i},{j}": c for c, i, j in self.terms()})

    def __str__(self) -> str:
        return self.to_text()


def evaluate(p: TuttePolynomial, x: int, y: int) -> int:
    return p.evaluate(x, y)


def _cap() -> int:
    return int(os.environ.get("ACYC_TUTTE_MAX_EDGES", DEFAULT_MAX_EDGES))


def tutte(g: Graph, pivot: PivotPolicy = lowest_edge, memo: bool = False, cap: int | None = None) -> TuttePolynomial:
    """Tutte polynomial by deletion/contraction on the multigraph.

    A loop contributes ``y`` and is deleted, a bridge contributes ``x`` and is
    contracted, any other edge splits into deletion plus contraction.  With
    ``memo`` the recursion caches labeled subproblems (no isomorphism folding).
    """
    cap = _cap() if cap is None else cap
    if g.m > cap and not memo:
        raise GraphError(f"{g.m} edges exceeds the Tutte cap of {cap}; pass memo=True or raise the cap")
    cache: dict | None = {} if memo else None
    return TuttePolynomial(_tutte(g.n, g.edges, pivot, cache))


# The recursions below run on bare (n, edge tuple) pairs; building Graph
# objects at every node costs more than the arithmetic.


def _contract(n: int, edges: tuple, e: int) -> tuple:
    u, v = edges[e]
    out = []
    for i, (a, b) in enumerate(edges):
        if i == e:
            continue
        a = u if a == v else (a - 1 if a > v else a)
        b = u if b == v else (b - 1 if b > v else b)
        out.append((a, b) if a <= b else (b, a))
    return tuple(out)


def _coalesce(edges: tuple) -> tuple:
    return tuple(dict.fromkeys(e for e in edges if e[0] != e[1]))


def _bridge(n: int, edges: tuple, e: int) -> bool:
    u, v = edges[e]
    adj = [0] * n
    for i, (a, b) in enumerate(edges):
        if i != e:
            adj[a] |= 1 << b
            adj[b] |= 1 << a
    seen = frontier = 1 << u
    target = 1 << v
    while frontier:
        nxt = 0
        f = frontier
        while f:
            low = f & -f
            nxt |= adj[low.bit_length() - 1]
            f ^= low
        if nxt & target:
            return False
        frontier = nxt & ~seen
        seen |= nxt
    return True


def _add(p: dict, q: dict) -> dict:
    out = dict(p)
    for k, c in q.items():
        out[k] = out.get(k, 0) + c
    return out


def _shift(p: dict, dx: int, dy: int) -> dict:
    return {(i + dx, j + dy): c for (i, j), c in p.items()}


def _tutte(n: int, edges: tuple, pivot: PivotPolicy, cache: dict | None) -> dict:
    if not edges:
        return {(0, 0): 1}
    if cache is not None:
        key = (n, edges)
        hit = cache.get(key)
        if hit is not None:
            return hit
    e = pivot(edges)
    u, v = edges[e]
    rest = edges[:e] + edges[e + 1 :]
    if u == v:
        result = _shift(_tutte(n, rest, pivot, cache), 0, 1)
    elif _bridge(n, edges, e):
        result = _shift(_tutte(n - 1, _contract(n, edges, e), pivot, cache), 1, 0)
    else:
        result = _add(_tutte(n, rest, pivot, cache), _tutte(n - 1, _contract(n, edges, e), pivot, cache))
    if cache is not None:
        cache[key] = result
    return result


def kappa_by_recursion(g: Graph, pivot: PivotPolicy = lowest_edge) -> int:
    """Number of click classes from the bridge/cycle-edge recursion alone.

    A bridge can be deleted without changing the count (the two sides
    multiply); a cycle-edge splits into the simple deletion plus the simple
    contraction.
    """
    return _kappa(g.n, _coalesce(g.edges), pivot)


def _kappa(n: int, edges: tuple, pivot: PivotPolicy) -> int:
    if not edges:
        return 1
    e = pivot(edges)
    rest = edges[:e] + edges[e + 1 :]
    if _bridge(n, edges, e):
        return _kappa(n, rest, pivot)
    return _kappa(n, rest, pivot) + _kappa(n - 1, _coalesce(_contract(n, edges, e)), pivot)


def alpha_by_recursion(g: Graph, pivot: PivotPolicy = lowest_edge) -> int:
    return _alpha(g.n, _coalesce(g.edges), pivot)


def _alpha(n: int, edges: tuple, pivot: PivotPolicy) -> int:
    if not edges:
        return 1
    e = pivot(edges)
    rest = edges[:e] + edges[e + 1 :]
    return _alpha(n, rest, pivot) + _alpha(n - 1, _coalesce(_contract(n, edges, e)), pivot)
