"""Command line front end.

    acyc count --graph K2,3
    acyc classes --edges "1-2,2-3,3-1" --kind delta --dot
    acyc verify --max-n 5 --threads 4
    acyc update-graph --input k23.txt
    acyc tutte --graph C4 --json
    acyc theta --graph C4 --edge 1-2
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import graph as gr
from .equivalence import DELTA, KAPPA, export_class_graph, kappa_partition, delta_partition, partition
from .interval import verify_theta_bijection
from .tutte import tutte
from .update_graph import census
from .verify import render_text, run_corpus, summarize


def _load_graph(args) -> gr.Graph | None:
    if args.input:
        return gr.load(args.input)
    if args.edges is not None:
        return gr.parse_edge_string(args.edges, args.n)
    if args.graph:
        return gr.named(args.graph)
    return None


def _need_graph(args) -> gr.Graph:
    g = _load_graph(args)
    if g is None:
        raise SystemExit("error: give a graph with --input, --edges or --graph")
    return g


def _emit(obj, as_json: bool, text: str) -> None:
    sys.stdout.write(json.dumps(obj) + "\n" if as_json else text)


def cmd_count(args) -> int:
    g = _need_graph(args)
    kp = kappa_partition(g)
    alpha, kappa = len(kp.orientations), kp.count
    connected = gr.is_connected(g)
    delta = delta_partition(g).count if connected else None
    t = tutte(g, memo=True)
    t10, t20 = t.evaluate(1, 0), t.evaluate(2, 0)
    out = {
        "n": g.n,
        "m": g.m,
        "alpha": alpha,
        "kappa": kappa,
        "delta": delta,
        "bipartite": gr.is_bipartite(g) is not None,
        "T(1,0)": t10,
        "T(2,0)": t20,
        "kappa_is_T10": kappa == t10,
        "alpha_is_T20": alpha == t20,
    }
    text = "".join(f"{k}={json.dumps(v)}\n" for k, v in out.items())
    _emit(out, args.json, text)
    return 0


def cmd_classes(args) -> int:
    g = _need_graph(args)
    if args.dot:
        sys.stdout.write(export_class_graph(g, args.kind))
        return 0
    part = partition(g, args.kind)
    out = {
        "alpha": len(part.orientations),
        "kappa": part.count if args.kind == KAPPA else kappa_partition(g).count,
        "delta": (part.count if args.kind == DELTA else delta_partition(g).count) if gr.is_connected(g) else None,
        "bipartite": gr.is_bipartite(g) is not None,
        "classes": part.to_dict()["classes"],
    }
    sys.stdout.write(json.dumps(out) + "\n")
    return 0


def cmd_verify(args) -> int:
    g = _load_graph(args)
    graphs = [g] if g is not None else list(gr.corpus(args.max_n))
    results = run_corpus(graphs, args.threads, args.interval_max_n, corrupt=args.corrupt_oracle, seed=args.seed)
    summary = summarize(results)
    _emit(summary, args.json, render_text(summary))
    return 0 if summary["ok"] else 1


def cmd_update_graph(args) -> int:
    g = _need_graph(args)
    hist = census(g)
    text = "".join(f"size {s}: {c}\n" for s, c in hist.items())
    text += f"components: {sum(hist.values())}\n"
    _emit({str(s): c for s, c in hist.items()}, args.json, text)
    return 0


def cmd_tutte(args) -> int:
    g = _need_graph(args)
    t = tutte(g, memo=True)
    if args.json:
        sys.stdout.write(t.to_json() + "\n")
    else:
        sys.stdout.write(f"T = {t.to_text()}\nT(1,0) = {t.evaluate(1, 0)}\nT(2,0) = {t.evaluate(2, 0)}\n")
    return 0


def cmd_theta(args) -> int:
    g = _need_graph(args)
    if args.edge:
        a, b = (int(x) - 1 for x in args.edge.split("-"))
        edges = [g.edge_id(a, b)]
    else:
        edges = gr.cycle_edges(g)
    reports = [verify_theta_bijection(g, e).to_dict() for e in edges]
    if args.json:
        sys.stdout.write(json.dumps(reports) + "\n")
    else:
        for r in reports:
            u, v = r["edge"]
            sys.stdout.write(
                f"edge {u}-{v}: kappa(Y)={r['kappa_Y']} kappa(Y')={r['kappa_Ydel']} "
                f"kappa(Y'')={r['kappa_Ycon']} bijective={json.dumps(r['bijective'])}\n"
            )
    return 0 if all(r["bijective"] for r in reports) else 1


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    src = common.add_argument_group("graph input")
    src.add_argument("--input", metavar="FILE", help="edge-list text ('n m' header) or JSON file")
    src.add_argument("--edges", help='inline 1-indexed edge list, e.g. "1-2,2-3"')
    src.add_argument("--n", type=int, help="vertex count for --edges (default: largest label)")
    src.add_argument("--graph", help="named graph: Kn, Cn, Pn, En, Ka,b")
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--max-edges", type=int, help="enumeration cap (same as ACYC_MAX_EDGES)")

    p = argparse.ArgumentParser(prog="acyc", description="Equivalence classes of acyclic orientations.")
    sub = p.add_subparsers(dest="command", required=True)

    sub.add_parser("count", parents=[common], help="alpha, kappa, delta and the Tutte evaluations").set_defaults(
        func=cmd_count
    )

    c = sub.add_parser("classes", parents=[common], help="dump kappa- or delta-classes")
    c.add_argument("--kind", choices=[KAPPA, DELTA], default=KAPPA)
    c.add_argument("--dot", action="store_true", help="emit the class graph in DOT")
    c.set_defaults(func=cmd_classes)

    v = sub.add_parser("verify", parents=[common], help="run the invariant suite on a graph or a corpus")
    v.add_argument("--max-n", type=int, default=5, help="corpus: all connected graphs up to this many vertices")
    v.add_argument("--interval-max-n", type=int, default=5, help="largest n for the interval and theta checks")
    v.add_argument("--threads", type=int, default=1)
    v.add_argument("--seed", type=int, help="randomise recursion pivots")
    v.add_argument("--corrupt-oracle", action="store_true", help=argparse.SUPPRESS)
    v.set_defaults(func=cmd_verify)

    sub.add_parser("update-graph", parents=[common], help="component-size census of the update graph").set_defaults(
        func=cmd_update_graph
    )
    sub.add_parser("tutte", parents=[common], help="Tutte polynomial").set_defaults(func=cmd_tutte)

    t = sub.add_parser("theta", parents=[common], help="check the class bijection for cycle-edges")
    t.add_argument("--edge", help="single edge u-v (1-indexed); default all cycle-edges")
    t.set_defaults(func=cmd_theta)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    saved = os.environ.get("ACYC_MAX_EDGES")
    if args.max_edges is not None:
        os.environ["ACYC_MAX_EDGES"] = str(args.max_edges)
    try:
        return args.func(args)
    except (gr.GraphError, ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    finally:
        # worker processes inherit the override; the caller's environment does not keep it
        if saved is None:
            os.environ.pop("ACYC_MAX_EDGES", None)
        else:
            os.environ["ACYC_MAX_EDGES"] = saved


if __name__ == "__main__":
    raise SystemExit(main())
