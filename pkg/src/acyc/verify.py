"""Per-graph invariant suite and the corpus runner behind ``acyc verify``."""

from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from .equivalence import check_delta_formula, kappa_partition, delta_partition
from .graph import Graph, corpus, delete_edge, is_bipartite, is_bridge, is_connected, to_json
from .interval import check_diagram, check_interval_agreement, verify_theta_bijection
from .orientation import beta_many, contraction_image, enumerate_acyclic
from .tutte import kappa_by_recursion, lowest_edge, random_pivot, tutte

CHECKS = (
    "tutte_alpha",
    "tutte_kappa",
    "kappa_recursion",
    "delta_formula",
    "bipartite_parity",
    "one_over_n",
    "beta_bijection",
    "interval_agreement",
    "diagram",
    "theta_bijection",
)

INTERVAL_CHECKS = ("interval_agreement", "diagram", "theta_bijection")


def check_beta_bijection(g: Graph, e: int) -> bool:
    """beta maps Acyc(g) one-to-one onto the disjoint union of Acyc(g - e) and Acyc(g / e)."""
    masks = enumerate_acyclic(g).masks
    to_con, img = beta_many(g, e, masks)
    dele = enumerate_acyclic(delete_edge(g, e)).masks
    con = enumerate_acyclic(contraction_image(g, e).quotient).masks
    d = np.unique(img[~to_con])
    c = np.unique(img[to_con])
    return (
        len(d) == int((~to_con).sum())
        and len(c) == int(to_con.sum())
        and np.array_equal(d, dele)
        and np.array_equal(c, con)
    )


@dataclass
class GraphResult:
    graph: Graph
    alpha: int
    kappa: int
    delta: int
    bipartite: bool
    tutte_10: int
    tutte_20: int
    checks: dict[str, bool] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    def failed(self) -> list[str]:
        return [k for k, v in self.checks.items() if not v]


def verify_graph(g: Graph, interval_max_n: int = 5, corrupt: bool = False, seed: int | None = None) -> GraphResult:
    """Run every invariant on a connected graph.

    The interval checks (agreement, diagram, theta) only run for
    ``g.n <= interval_max_n``.  ``seed`` switches the kappa recursion to
    random pivot edges.  ``corrupt`` perturbs the Tutte oracle so the failure
    path can be exercised.
    """
    if not is_connected(g):
        raise ValueError("verify_graph needs a connected graph")
    kp = kappa_partition(g)
    a = len(kp.orientations)
    k = kp.count
    d = delta_partition(g).count
    bip = is_bipartite(g) is not None
    t = tutte(g, memo=True)
    t10, t20 = t.evaluate(1, 0) + int(corrupt), t.evaluate(2, 0)
    r = GraphResult(g, a, k, d, bip, t10, t20)
    c = r.checks
    c["tutte_alpha"] = t20 == a
    c["tutte_kappa"] = t10 == k
    pivot = lowest_edge if seed is None else random_pivot(seed)
    c["kappa_recursion"] = kappa_by_recursion(g, pivot) == k
    c["delta_formula"] = check_delta_formula(g).ok
    c["bipartite_parity"] = bip == (k % 2 == 1)
    c["one_over_n"] = g.n * k <= a
    c["beta_bijection"] = all(check_beta_bijection(g, e) for e in range(g.m))
    if g.n <= interval_max_n:
        cyc = [e for e in range(g.m) if not is_bridge(g, e)]
        c["interval_agreement"] = all(check_interval_agreement(g, e, kp) for e in cyc)
        c["diagram"] = all(check_diagram(g, e, kp) for e in cyc)
        c["theta_bijection"] = all(verify_theta_bijection(g, e).bijective for e in cyc)
    return r


def _verify_task(args) -> GraphResult:
    return verify_graph(*args)


def run_corpus(
    graphs: Iterable[Graph],
    threads: int = 1,
    interval_max_n: int = 5,
    corrupt: bool = False,
    seed: int | None = None,
) -> list[GraphResult]:
    """Verify each graph; results come back in input order whatever ``threads`` is.

    With a seed, graph ``i`` gets ``seed + i`` so the outcome does not depend
    on how work is spread over processes.
    """
    tasks = [(g, interval_max_n, corrupt, None if seed is None else seed + i) for i, g in enumerate(graphs)]
    if threads <= 1:
        return [_verify_task(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(_verify_task, tasks, chunksize=max(1, len(tasks) // (threads * 8))))


def corpus_results(max_n: int, threads: int = 1, interval_max_n: int = 5, **kw) -> list[GraphResult]:
    return run_corpus(corpus(max_n), threads, interval_max_n, **kw)


def summarize(results: list[GraphResult]) -> dict:
    summary = {}
    for name in CHECKS:
        ran = [r.checks[name] for r in results if name in r.checks]
        summary[name] = {"passed": sum(ran), "total": len(ran)}
    failures = [
        {"graph": json.loads(to_json(r.graph)), "failed": r.failed()} for r in results if not r.ok
    ]
    by_n: dict[int, int] = {}
    for r in results:
        by_n[r.graph.n] = by_n.get(r.graph.n, 0) + 1
    return {
        "graphs": len(results),
        "graphs_by_n": {str(n): by_n[n] for n in sorted(by_n)},
        "checks": summary,
        "failures": failures,
        "ok": not failures,
    }


def render_text(summary: dict) -> str:
    lines = [f"graphs: {summary['graphs']} " + " ".join(f"n={n}:{c}" for n, c in summary["graphs_by_n"].items())]
    for name, s in summary["checks"].items():
        status = "PASS" if s["passed"] == s["total"] else "FAIL"
        lines.append(f"{status} {name}: {s['passed']}/{s['total']}")
    for f in summary["failures"]:
        lines.append(f"failed on {json.dumps(f['graph'])}: {', '.join(f['failed'])}")
    lines.append("OK" if summary["ok"] else "FAILED")
    return "\n".join(lines) + "\n"
