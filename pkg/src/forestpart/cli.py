"""Command-line front end.

Exit codes: 0 positive verdict, 1 negative verdict, 2 input or usage
error, 3 search budget exceeded. ``--json`` switches to a machine-readable
result object (schema 1). Output is byte-identical across runs for
identical inputs and flags; wall-clock timings appear only under
``--timings``.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass, field

from . import hardness, ipp, orchard, partition, twosat, unrooted
from .dag import Dag, UndirectedGraph, format_dag, parse_dag, parse_undirected, to_dot
from .errors import DEFAULT_BUDGET, BudgetExceededError, NotSemiBinaryError
from .partition import PathPartition, certify


@dataclass
class CommandResult:
    verdict: str
    exit_code: int
    text: list[str] = field(default_factory=list)
    witness: object | None = None
    stats: dict = field(default_factory=dict)


def _read(path):
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _load_dag(path) -> Dag:
    return parse_dag(_read(path))


def _graph_stats(g, extra=None):
    stats = {"vertices": g.vertex_count}
    stats["arcs"] = len(g.arcs) if isinstance(g, Dag) else len(g.edges)
    stats["nodes_expanded"] = (extra or {}).get("nodes_expanded", 0)
    return stats


def _partition_witness(g: Dag, pp: PathPartition):
    cert = certify(g, pp.paths)
    if cert.kind is None or cert.kind != pp.kind:
        raise AssertionError(f"witness failed re-certification: {cert.reason}")
    return {"kind": pp.kind.label, "paths": [list(p) for p in pp.paths]}


def _emit_partition(result: CommandResult, g: Dag, pp: PathPartition):
    result.witness = _partition_witness(g, pp)
    result.text.extend(pp.serialize().rstrip("\n").split("\n"))


def _cmd_classify(args) -> CommandResult:
    g = _load_dag(args.graph)
    rep = g.classify()
    flags = [
        ("connected", rep.is_connected),
        ("binary", rep.is_binary),
        ("semi-binary", rep.is_semi_binary),
        ("network", rep.is_network),
        ("phylogenetic-network", rep.is_phylogenetic_network),
        ("has-subdivision-vertex", rep.has_subdivision_vertex),
    ]
    res = CommandResult("report", 0, stats=_graph_stats(g))
    res.text.append(f"vertices {g.vertex_count}")
    res.text.append(f"arcs {len(g.arcs)}")
    for name, value in flags:
        res.text.append(f"{name} {'yes' if value else 'no'}")
    res.text.append("reticulations " + " ".join(map(str, sorted(rep.reticulations))))
    res.text.append(
        "subdivision-vertices " + " ".join(map(str, sorted(rep.subdivision_vertices)))
    )
    for v in rep.network_violations:
        res.text.append(f"violation: {v}")
    res.witness = {
        "flags": {name.replace("-", "_"): value for name, value in flags},
        "reticulations": sorted(rep.reticulations),
        "subdivision_vertices": sorted(rep.subdivision_vertices),
        "network_violations": list(rep.network_violations),
    }
    return res


def _cmd_weak_fb(args) -> CommandResult:
    g = _load_dag(args.graph)
    ok, pp = partition.is_weakly_forest_based(g)
    if not ok:
        return CommandResult("no", 1, text=["weakly-forest-based no"], stats=_graph_stats(g))
    res = CommandResult("yes", 0, text=["weakly-forest-based yes"], stats=_graph_stats(g))
    _emit_partition(res, g, pp)
    return res


def _cmd_leaf_ipp(args) -> CommandResult:
    g = _load_dag(args.graph)
    stats = {}
    pp = ipp.leaf_ipp_exact(g, budget=args.budget, stats=stats)
    if pp is None:
        return CommandResult("no", 1, text=["leaf-ipp no"], stats=_graph_stats(g, stats))
    res = CommandResult("yes", 0, text=["leaf-ipp yes"], stats=_graph_stats(g, stats))
    _emit_partition(res, g, pp)
    return res


def _cmd_2ipp(args) -> CommandResult:
    g = _load_dag(args.graph)
    pp = ipp.two_ipp(g, threads=args.threads)
    if pp is None:
        return CommandResult("no", 1, text=["2ipp no"], stats=_graph_stats(g))
    res = CommandResult("yes", 0, text=["2ipp yes"], stats=_graph_stats(g))
    _emit_partition(res, g, pp)
    return res


def _cmd_restricted_2ipp(args) -> CommandResult:
    g = _load_dag(args.graph)
    ep = ipp.EndpointSpec(args.s1, args.s2, args.t1, args.t2)
    pp = ipp.restricted_2ipp(g, ep)
    if pp is None:
        return CommandResult("no", 1, text=["restricted-2ipp no"], stats=_graph_stats(g))
    res = CommandResult("yes", 0, text=["restricted-2ipp yes"], stats=_graph_stats(g))
    _emit_partition(res, g, pp)
    return res


def _cmd_orchard_reduce(args) -> CommandResult:
    g = _load_dag(args.graph)
    stats = {}
    seq = orchard.reduce(g, budget=args.budget, stats=stats)
    if seq is None:
        return CommandResult(
            "no", 1, text=["reducible no"], stats=_graph_stats(g, stats)
        )
    final = orchard.apply_sequence(g, seq)  # re-validates the sequence
    assert all(final.in_degree(v) + final.out_degree(v) == 1 for v in range(final.vertex_count))
    res = CommandResult("yes", 0, text=["reducible yes"], stats=_graph_stats(g, stats))
    res.text.extend(seq.serialize().rstrip("\n").split("\n") if len(seq) else [])
    res.witness = {"picks": [[c.kind.value, c.x, c.y] for c, _ in seq.steps]}
    return res


def _cmd_orchard_ipp(args) -> CommandResult:
    g = _load_dag(args.graph)
    stats = {}
    seq = orchard.reduce(g, budget=args.budget, stats=stats)
    if seq is None:
        return CommandResult(
            "no", 1, text=["reducible no"], stats=_graph_stats(g, stats)
        )
    pp = orchard.orchard_leaf_ipp(g, seq)
    res = CommandResult("yes", 0, text=["orchard-ipp yes"], stats=_graph_stats(g, stats))
    _emit_partition(res, g, pp)
    return res


def _emit_graph(res: CommandResult, g: Dag, fmt: str):
    text = to_dot(g) if fmt == "dot" else format_dag(g)
    res.text.extend(text.rstrip("\n").split("\n"))
    res.witness = {"edge_list": format_dag(g)}


def _cmd_gen_hard(args) -> CommandResult:
    formula = hardness.parse_cnf(_read(args.cnf))
    dag, gm = hardness.build(formula)
    res = CommandResult("ok", 0, stats=_graph_stats(dag))
    _emit_graph(res, dag, args.format)
    if args.map:
        with open(args.map, "w", encoding="utf-8") as fh:
            fh.write(gm.to_jsonl())
    return res


def _cmd_networkize(args) -> CommandResult:
    g = _load_dag(args.graph)
    g2, _ = hardness.networkize(g, None)
    res = CommandResult("ok", 0, stats=_graph_stats(g2))
    _emit_graph(res, g2, args.format)
    return res


def _cmd_single_root(args) -> CommandResult:
    g = _load_dag(args.graph)
    g2 = hardness.single_root(g)
    res = CommandResult("ok", 0, stats=_graph_stats(g2))
    _emit_graph(res, g2, args.format)
    return res


def _cmd_unrooted_fb(args) -> CommandResult:
    net = unrooted.UnrootedNetwork(parse_undirected(_read(args.graph)))
    stats = {}
    fb, components = unrooted.is_forest_based_unrooted_exact(
        net, budget=args.budget, stats=stats
    )
    g = net.graph
    if not fb:
        return CommandResult(
            "no", 1, text=["forest-based no"], stats=_graph_stats(g, stats)
        )
    res = CommandResult("yes", 0, text=["forest-based yes"], stats=_graph_stats(g, stats))
    for comp in components:
        res.text.append("component " + " ".join(map(str, comp)))
    res.witness = {"components": [list(c) for c in components]}
    return res


def _cmd_turing_2ipp(args) -> CommandResult:
    g = parse_undirected(_read(args.graph))
    found = unrooted.turing_driver(g, budget=args.budget, threads=args.threads)
    if not found:
        return CommandResult("no", 1, text=["two-induced-paths no"], stats=_graph_stats(g))
    return CommandResult("yes", 0, text=["two-induced-paths yes"], stats=_graph_stats(g))


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="forestpart",
        description="Leaf (induced) path partitions of DAGs and forest-based network recognition",
    )
    parser.add_argument("--json", action="store_true", help="machine-readable output")
    parser.add_argument("--timings", action="store_true", help="include elapsed seconds in stats")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, **kwargs):
        p = sub.add_parser(name, **kwargs)
        p.set_defaults(func=func)
        return p

    p = add("classify", _cmd_classify, help="structural report for a DAG")
    p.add_argument("graph")

    p = add("weak-fb", _cmd_weak_fb, help="weakly forest-based test with witness")
    p.add_argument("graph")

    p = add("leaf-ipp", _cmd_leaf_ipp, help="exact leaf induced path partition search")
    p.add_argument("graph")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)

    p = add("2ipp", _cmd_2ipp, help="partition into two induced paths")
    p.add_argument("graph")
    p.add_argument("--threads", type=int, default=None)

    p = add("restricted-2ipp", _cmd_restricted_2ipp, help="two induced paths with fixed endpoints")
    p.add_argument("graph")
    p.add_argument("--s1", type=int, required=True)
    p.add_argument("--s2", type=int, required=True)
    p.add_argument("--t1", type=int, required=True)
    p.add_argument("--t2", type=int, required=True)

    p = add("orchard-reduce", _cmd_orchard_reduce, help="find a reducing cherry sequence")
    p.add_argument("graph")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)

    p = add("orchard-ipp", _cmd_orchard_ipp, help="leaf IPP from a cherry reduction")
    p.add_argument("graph")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)

    p = add("gen-hard", _cmd_gen_hard, help="hard instance from a monotone NAE-3-SAT formula")
    p.add_argument("cnf")
    p.add_argument("--format", choices=["edgelist", "dot"], default="edgelist")
    p.add_argument("--map", help="write the gadget map (JSON lines) to this file")

    p = add("networkize", _cmd_networkize, help="pendant leaves under indegree-2 sinks")
    p.add_argument("graph")
    p.add_argument("--format", choices=["edgelist", "dot"], default="edgelist")

    p = add("single-root", _cmd_single_root, help="join exactly three roots under a new root")
    p.add_argument("graph")
    p.add_argument("--format", choices=["edgelist", "dot"], default="edgelist")

    p = add("unrooted-fb", _cmd_unrooted_fb, help="exact unrooted forest-based test")
    p.add_argument("graph")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)

    p = add("turing-2ipp", _cmd_turing_2ipp, help="two-induced-path split via leaf attachment")
    p.add_argument("graph")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.add_argument("--threads", type=int, default=None)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    start = time.perf_counter()
    try:
        result = args.func(args)
    except BudgetExceededError as exc:
        result = CommandResult(
            "budget-exceeded",
            3,
            text=[f"budget exceeded after {exc.nodes_expanded} nodes"],
            stats={"nodes_expanded": exc.nodes_expanded},
        )
    except (OSError, ValueError, NotSemiBinaryError) as exc:
        if args.json:
            payload = {"schema": 1, "command": args.command, "verdict": "error", "error": str(exc)}
            print(json.dumps(payload, sort_keys=True))
        else:
            print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.timings:
        result.stats["elapsed"] = round(time.perf_counter() - start, 6)
    if args.json:
        payload = {
            "schema": 1,
            "command": args.command,
            "verdict": result.verdict,
            "witness": result.witness,
            "stats": result.stats,
        }
        print(json.dumps(payload, sort_keys=True))
    else:
        for line in result.text:
            print(line)
    return result.exit_code


if __name__ == "__main__":
    sys.exit(main())
