"""Command-line interface: ``burnoff analyze|simulate|verify|bijection``.

Exit codes: 0 success, 1 verification failure, 2 input error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import graph as gr
from .bijection import SpanningTree, config_to_tree, format_tree, tree_to_config
from .chips import ConfigurationError, burn
from .enumeration import (
    count_R,
    distribution_analytic,
    distribution_oracle,
    enumerate_R_bruteforce,
)
from .graph import GraphError, ScaleError
from .io import ParseError, parse_configuration, parse_graph, parse_tree

FAMILIES = {
    "path": gr.path,
    "cycle": gr.cycle,
    "complete": gr.complete,
    "star": gr.star,
    "k3_pendant": gr.k3_pendant,
}


class InputError(Exception):
    pass


def load_graph(args) -> gr.Graph:
    if args.graph is not None:
        try:
            text = Path(args.graph).read_text()
        except OSError as exc:
            raise InputError(f"cannot read {args.graph}: {exc.strerror}") from None
        return parse_graph(text)
    name, *params = args.family
    if name not in FAMILIES:
        raise InputError(f"unknown family {name!r}; choose from {', '.join(FAMILIES)}")
    if name == "k3_pendant":
        if params:
            raise InputError("k3_pendant takes no parameter")
        return gr.k3_pendant()
    if len(params) != 1:
        raise InputError(f"family {name} takes one integer parameter")
    try:
        k = int(params[0])
    except ValueError:
        raise InputError(f"bad parameter {params[0]!r}") from None
    if k < 1:
        raise InputError("family parameter must be >= 1")
    return FAMILIES[name](k)


def _threads(args) -> int:
    if args.threads is not None:
        return max(1, args.threads)
    env = os.environ.get("BURNOFF_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise InputError(f"BURNOFF_THREADS must be an integer, got {env!r}") from None
    return os.cpu_count() or 1


def _require_connected(g: gr.Graph):
    if g.n == 0 or not g.is_connected():
        comps = g.components()
        raise InputError(f"graph is not connected ({len(comps)} components); analysis needs a connected graph")


def _write(path: str | None, text: str):
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def cmd_analyze(args) -> int:
    g = load_graph(args)
    _require_connected(g)
    dist = distribution_analytic(g, workers=_threads(args))
    r = count_R(g)
    if args.format == "json":
        payload = {"n": g.n, "edges": g.m, "R": r, "tau_cone": r, "pairs": dist.total}
        payload["distribution"] = dist.rows()
        _write(args.output, json.dumps(payload, indent=2, sort_keys=True) + "\n")
        return 0
    header = f"# n = {g.n}, edges = {g.m}\n# |R| = {r}\n# tau(G*) = {r}\n# pairs = {dist.total}\n"
    if args.format == "svg":
        from .plotting import plot_distribution

        chart = args.chart or "distribution.svg"
        plot_distribution(dist, chart)
        header += f"# chart = {chart}\n"
        _write(None, header + dist.to_csv())
        return 0
    _write(args.output, header + dist.to_csv())
    return 0


def cmd_simulate(args) -> int:
    from .markov import run_simulation, visitation_uniformity

    g = load_graph(args)
    if g.n == 0:
        raise InputError("cannot simulate on an empty graph")
    report = run_simulation(g, args.m, args.seed, args.alpha)
    if args.format == "csv":
        text = report.to_csv()
    else:
        d = report.to_dict()
        if args.visitation:
            d["visitation"] = visitation_uniformity(g, args.m, args.seed).to_dict()
        text = json.dumps(d, indent=2, sort_keys=True) + "\n"
    _write(args.output, text)
    if args.chart:
        from .plotting import plot_comparison

        plot_comparison(report, args.chart)
    return 0


def cmd_verify(args) -> int:
    g = load_graph(args)
    if g.n > args.max_n:
        raise ScaleError(f"graph has {g.n} vertices; --max-n is {args.max_n}")
    _require_connected(g)
    workers = _threads(args)
    ok = True

    def report(name: str, passed: bool, detail: str):
        nonlocal ok
        ok &= passed
        print(f"{'PASS' if passed else 'FAIL'}  {name}: {detail}")

    configs = enumerate_R_bruteforce(g)
    r = count_R(g)
    report("count", len(configs) == r, f"{len(configs)} configs by brute force, tau(G*) = {r}")

    trees = [SpanningTree.of(g, e) for e in gr.enumerate_spanning_trees(gr.cone(g))]
    report("trees", len(trees) == r, f"{len(trees)} trees enumerated")

    images = [config_to_tree(c) for c in configs]
    back_ok = all(tree_to_config(t) == c for t, c in zip(images, configs))
    report("config->tree->config", back_ok, f"{len(configs)} configs")
    fwd_ok = all(config_to_tree(tree_to_config(t)) == t for t in trees)
    report("tree->config->tree", fwd_ok, f"{len(trees)} trees")
    report("image", set(images) == set(trees), f"{len(set(images))} distinct images")

    exact = distribution_analytic(g, workers=workers)
    brute = distribution_oracle(g, workers=workers)
    report("distribution", exact == brute, f"{exact.total} pairs, counts {list(exact.counts)}")
    print("PASS" if ok else "FAIL")
    return 0 if ok else 1


def cmd_bijection(args) -> int:
    g = load_graph(args)
    _require_connected(g)
    try:
        text = sys.stdin.read() if args.input == "-" else Path(args.input).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {args.input}: {exc.strerror}") from None
    trace: list | None = [] if args.trace else None
    if args.direction == "to-tree":
        c = parse_configuration(text, g)
        if not c.is_relaxed():
            bad = [v for v in range(g.n) if c.is_supercritical(v)]
            raise ConfigurationError(f"configuration is not relaxed: supercritical vertices {bad}")
        b = burn(c)
        if not b.legal:
            raise ConfigurationError(
                f"configuration is not legal: burning algorithm halts after deleting {list(b.order)} "
                f"with vertices {list(b.remaining)} each holding fewer chips than their remaining degree"
            )
        out = format_tree(config_to_tree(c, trace))
    else:
        out = str(tree_to_config(parse_tree(text, g), trace)) + "\n"
    if trace is not None:
        for step in trace:
            print(json.dumps(step, sort_keys=True), file=sys.stderr)
    _write(args.output, out)
    return 0


def _positive_int(s: str) -> int:
    try:
        k = int(s)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {s!r}") from None
    if k < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return k


def _alpha(s: str) -> float:
    a = float(s)
    if not 0 < a < 1:
        raise argparse.ArgumentTypeError("alpha must lie in (0, 1)")
    return a


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="burnoff", description="Burn-off chip-firing game lengths.")
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    src = common.add_mutually_exclusive_group(required=True)
    src.add_argument("--graph", metavar="FILE", help="edge-list file: 'n m' then m lines 'u v'")
    src.add_argument("--family", nargs="+", metavar="NAME",
                     help="built-in family: path N, cycle N, complete N, star N, k3_pendant")
    common.add_argument("--threads", type=int, default=None,
                        help="worker processes (default: $BURNOFF_THREADS or CPU count)")
    common.add_argument("-o", "--output", default=None, help="write the main output here instead of stdout")

    p = sub.add_parser("analyze", parents=[common], help="exact game-length distribution")
    p.add_argument("--format", choices=["csv", "json", "svg"], default="csv")
    p.add_argument("--chart", default=None, help="SVG path for --format svg (default distribution.svg)")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("simulate", parents=[common], help="run the random-seed Markov chain")
    p.add_argument("-m", type=_positive_int, default=10000, help="number of games")
    p.add_argument("--seed", type=int, default=1, help="64-bit seed for the SplitMix64 generator")
    p.add_argument("--alpha", type=_alpha, default=0.1, help="significance level of the chi-square test")
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.add_argument("--chart", default=None, help="write a simulated-vs-exact SVG bar chart")
    p.add_argument("--visitation", action="store_true", help="also report state visitation counts")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("verify", parents=[common], help="cross-check exact results against brute force")
    p.add_argument("--max-n", type=int, default=8)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bijection", parents=[common], help="map a configuration to a tree or back")
    p.add_argument("--direction", choices=["to-tree", "to-config"], required=True)
    p.add_argument("--input", default="-", help="configuration or tree file ('-' for stdin)")
    p.add_argument("--trace", action="store_true", help="print per-vertex steps to stderr")
    p.set_defaults(func=cmd_bijection)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (InputError, ParseError, GraphError, ConfigurationError, ScaleError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
