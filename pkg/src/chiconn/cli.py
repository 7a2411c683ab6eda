"""Command-line front end.

Exit status: 0 when every assertion passes, 1 on a verified failure (the
report is still written), 2 on bad input, 3 when a search budget ran out
before a verdict.
"""

from __future__ import annotations

import argparse
import json
import logging
import random
import sys
import time
from pathlib import Path

from .catalog import catalog
from .coloring import BudgetExhausted, chromatic_number, find_respecting_coloring, respects
from .extremal import (
    empirical_g,
    g_lower_bound,
    h_construction,
    qualifying_subgraph,
    star_witness,
    theorem_oracle,
    upper_bound,
)
from .errors import InvariantViolation
from .formats import read_graphs, to_graph6, write_graph6
from .graph import Graph, GraphInputError, random_graph
from .proof import HypothesisError, colour_classes, extend_316k, extend_4k, extract_subgraph
from .report import RunReport
from .template import EMPTY, Template, TemplateError
from .witness import WitnessInputError, minimal_inextensible_subgraph, verify_witness

log = logging.getLogger("chiconn")

INPUT_ERRORS = (GraphInputError, TemplateError, HypothesisError, WitnessInputError, OSError, json.JSONDecodeError)


class CliInputError(ValueError):
    pass


def parse_template(path: str | Path, g: Graph | None = None, ncolors: int | None = None) -> Template:
    """Read a template JSON file; validate against ``g`` when given."""
    data = json.loads(Path(path).read_text())
    t = Template.from_json(data)
    if g is not None:
        t.validate(g, ncolors if ncolors is not None else max([0, *t.used_colors()]))
    return t


def _one_graph(path: str) -> Graph:
    graphs = read_graphs(path)
    if len(graphs) != 1:
        raise CliInputError(f"{path}: expected one graph, found {len(graphs)}")
    return graphs[0]


# --- subcommands -----------------------------------------------------------------


def cmd_verify_theorem(args, report: RunReport) -> None:
    if args.exhaustive:
        graphs = catalog(args.nmax, connected=True, n_min=1)
    else:
        rng = random.Random(args.seed)
        graphs = (random_graph(rng.randint(1, args.nmax), rng.random(), rng.randrange(2**32)) for _ in range(args.samples))
    label = "theorem-1.2" if args.variant == "thm_main" else "proposition-4.4"
    scanned = failures = 0
    for g in graphs:
        scanned += 1
        try:
            ok = theorem_oracle(g, args.k, args.variant, max_n=args.max_oracle_n, budget=args.budget_subsets)
        except BudgetExhausted:
            report.indeterminate.append(to_graph6(g))
            continue
        report.record(f"{label}:oracle", ok)
        if not ok:
            failures += 1
            report.results.append({"graph6": to_graph6(g), "verdict": "counterexample"})
    report.results.insert(0, {"scanned": scanned, "failures": failures})


def cmd_extract(args, report: RunReport) -> None:
    for g in read_graphs(args.graph):
        try:
            vertices, info = extract_subgraph(g, args.k, args.variant, args.mode,
                                              args.budget_templates, args.budget_nodes)
        except BudgetExhausted as exc:
            report.indeterminate.append(f"{to_graph6(g)}: {exc}")
            continue
        for name, ok in info["assertions"].items():
            report.record(name, ok)
        info["graph6"] = to_graph6(g)
        report.results.append(info)


def cmd_extend(args, report: RunReport) -> None:
    g = _one_graph(args.graph)
    t = parse_template(args.template, g, args.colors) if args.template else EMPTY
    partition = colour_classes(g, args.budget_nodes)
    run = extend_4k if args.variant == "4k" else extend_316k
    states: list = []
    f = run(g, t, partition, args.k, args.colors, states)
    state = states[0]
    report.record("respects", respects(g, f, t, args.colors))
    report.record("solver-agreement", find_respecting_coloring(g, t, args.colors, args.budget_nodes) is not None)
    report.record("no-fallback", not state.fallbacks)
    for label in state.checks:
        report.record(label, True)
    report.results.append({
        "coloring": f,
        "partition": partition,
        "branch": state.branch,
        "fallbacks": state.fallbacks,
        "trace": state.trace if args.trace else [],
    })


def cmd_minimalize(args, report: RunReport) -> None:
    g = _one_graph(args.graph)
    t = parse_template(args.template, g, args.colors) if args.template else None
    try:
        result = minimal_inextensible_subgraph(g, args.k, args.colors, args.mode, t,
                                               args.budget_templates, args.budget_nodes)
    except BudgetExhausted as exc:
        report.indeterminate.append(str(exc))
        return
    for name, ok in result.checks.items():
        report.record(name, ok)
    report.results.append({
        "vertices": result.vertices,
        "witness": result.witness.to_json(),
        "certified_minimal": result.certified,
        "notes": result.notes,
    })


def cmd_demo_star(args, report: RunReport) -> None:
    inst = star_witness(args.k)
    g, t = inst.graph, inst.template
    unsat = find_respecting_coloring(g, t, inst.ncolors) is None
    report.record("star:witness", verify_witness(g, t, inst.k, inst.ncolors))
    report.record("star:colors", inst.ncolors == 3 * args.k - 2)
    report.record("star:no-2-connected-subgraph", qualifying_subgraph(g, 2, 1, 1) is None)
    report.results.append({
        "graph6": to_graph6(g), "template": t.to_json(), "colors": inst.ncolors,
        "cost": t.cost(args.k), "verdict": "UNSAT" if unsat else "SAT",
    })


def cmd_demo_h(args, report: RunReport) -> None:
    inst = h_construction(args.k, args.colors)
    chi = chromatic_number(inst.graph)
    report.record("h:chromatic", chi == args.colors - 2 * args.k + 3)
    report.record("h:witness", verify_witness(inst.graph, inst.template, args.k, args.colors))
    report.results.append({
        "graph6": to_graph6(inst.graph), "template": inst.template.to_json(), "colors": args.colors,
        "m": args.colors - 2 * args.k + 4, "chi": chi, "cost": inst.template.cost(args.k),
    })


def cmd_search_g(args, report: RunReport) -> None:
    graphs = read_graphs(args.graphs) if args.graphs else None
    records = empirical_g(args.k, args.m, args.nmax, graphs, args.budget_subsets)
    for rec in records:
        report.record("g-bound:no-violation", not rec.violation)
        if rec.partial:
            report.indeterminate.extend(rec.notes)
        report.results.append(rec.to_json())
    report.parameters["lower_bound_found"] = g_lower_bound(records)
    report.parameters["upper_bound"] = upper_bound(args.k, args.m)


def cmd_catalog(args, report: RunReport) -> None:
    graphs = list(catalog(args.nmax, connected=args.connected))
    if args.graph_out:
        write_graph6(graphs, args.graph_out)
    report.results.append({"count": len(graphs), "graph6": [to_graph6(g) for g in graphs]})
    report.record("catalog:nonempty", bool(graphs))


COMMANDS = {
    "verify-theorem": cmd_verify_theorem,
    "extract": cmd_extract,
    "extend": cmd_extend,
    "minimalize": cmd_minimalize,
    "demo-star": cmd_demo_star,
    "demo-h": cmd_demo_h,
    "search-g": cmd_search_g,
    "catalog": cmd_catalog,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--budget-nodes", type=int, default=None, help="colouring search nodes")
    common.add_argument("--budget-templates", type=int, default=None, help="templates tried per witness search")
    common.add_argument("--budget-subsets", type=int, default=None, help="vertex subsets tried per oracle call")
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--out", default=None, help="report path (default: stdout)")
    common.add_argument("--no-timings", action="store_true", help="omit timings from the report")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="chiconn", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify-theorem", parents=[common], help="check the subgraph guarantee over many graphs")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--nmax", type=int, required=True)
    p.add_argument("--variant", choices=("thm_main", "prop_4k"), default="thm_main")
    p.add_argument("--exhaustive", action="store_true", help="scan every connected graph up to nmax")
    p.add_argument("--samples", type=int, default=200, help="random graphs when not exhaustive")
    p.add_argument("--max-oracle-n", type=int, default=12)

    p = sub.add_parser("extract", parents=[common], help="find a highly connected subgraph of large chi")
    p.add_argument("--graph", required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--variant", choices=("thm_main", "prop_4k"), default="thm_main")
    p.add_argument("--mode", choices=("exact", "heuristic"), default="exact")

    p = sub.add_parser("extend", parents=[common], help="colour a graph respecting a template")
    p.add_argument("--variant", choices=("4k", "316k"), required=True)
    p.add_argument("--graph", required=True)
    p.add_argument("--template", default=None)
    p.add_argument("--colors", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--trace", action="store_true", help="include stage snapshots")

    p = sub.add_parser("minimalize", parents=[common], help="shrink to a minimally inextensible subgraph")
    p.add_argument("--graph", required=True)
    p.add_argument("--template", default=None)
    p.add_argument("--colors", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--mode", choices=("exact", "heuristic"), default="exact")

    p = sub.add_parser("demo-star", parents=[common], help="the star witness on 3k-2 colours")
    p.add_argument("--k", type=int, required=True)

    p = sub.add_parser("demo-h", parents=[common], help="the stable set joined to a clique")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--colors", type=int, required=True)

    p = sub.add_parser("search-g", parents=[common], help="look for small lower-bound witnesses of g(k, m)")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--nmax", type=int, required=True)
    p.add_argument("--graphs", default=None, help="graph file instead of the built-in catalog")

    p = sub.add_parser("catalog", parents=[common], help="list non-isomorphic graphs as graph6")
    p.add_argument("--nmax", type=int, required=True)
    p.add_argument("--connected", action="store_true")
    p.add_argument("--graph-out", default=None, help="write the graphs here")
    return parser


def _parameters(args) -> dict:
    skip = {"command", "out", "format", "verbose", "no_timings"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip}


def run(argv: list[str] | None = None) -> tuple[int, RunReport | None]:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0), None
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING)
    report = RunReport(args.command, _parameters(args), seed=args.seed)
    start = time.perf_counter()
    try:
        if getattr(args, "k", 1) < 1:
            raise CliInputError("--k must be positive")
        COMMANDS[args.command](args, report)
    except (CliInputError, *INPUT_ERRORS) as exc:
        print(f"chiconn: error: {exc}", file=sys.stderr)
        return 2, None
    except BudgetExhausted as exc:
        report.indeterminate.append(str(exc))
    except InvariantViolation as exc:
        report.record(exc.label, False)
        report.results.append({"violation": exc.label, "message": str(exc)})
    report.timings["total_seconds"] = round(time.perf_counter() - start, 6)
    text = report.dumps(args.format, timings=not args.no_timings)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return report.exit_code(), report


def main(argv: list[str] | None = None) -> int:
    return run(argv)[0]


if __name__ == "__main__":
    sys.exit(main())
