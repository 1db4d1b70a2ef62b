"""Command-line front end.

Exit codes: 0 success (or comparison pass), 1 usage error, 2 data
error, 3 comparison failure. The JELLYTOPO_SEED environment variable
supplies the default seed for randomized commands.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import fileio, metrics
from .decompose import BRIDGE, HANGER, RING, decompose
from .errors import JellyTopoError, UsageError
from .generate import GeneratorConfig, generate
from .graph import RelType
from .profile import extract_profile, reference_profile
from .metrics import ToleranceRule

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_COMPARE = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse defaults to exit code 2
        raise UsageError(message)


def _build_parser() -> _Parser:
    p = _Parser(prog="jellytopo", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    d = sub.add_parser("decompose", help="core/ring/hanger summary of a graph")
    d.add_argument("graph")
    d.add_argument("-o", "--output", help="write the summary to a file")

    pr = sub.add_parser("profile", help="extract a generation profile")
    pr.add_argument("graph")
    pr.add_argument("-o", "--output", required=True)

    ge = sub.add_parser("generate", help="build a synthetic graph from a profile")
    ge.add_argument("--profile", help="profile file (defaults to the bundled reference)")
    ge.add_argument("--nodes", type=int, help="target node count (defaults to full scale)")
    ge.add_argument("--seed", type=int, default=None)
    ge.add_argument("--bias", type=float, default=0.5, help="2-provider bias strength")
    ge.add_argument("--hanger-edges", choices=("cp", "p2p"), default="cp")
    ge.add_argument("--quiet", action="store_true", help="suppress the generation report")
    ge.add_argument("-o", "--output", required=True)

    me = sub.add_parser("metrics", help="metric suite for a graph")
    me.add_argument("graph")
    me.add_argument("-o", "--output", help="write the report as JSON")

    co = sub.add_parser("compare", help="metric comparison of two graphs")
    co.add_argument("graph_a")
    co.add_argument("graph_b")
    co.add_argument("--tolerances", help="JSON file of {metric: {kind, value}}")

    pl = sub.add_parser("plot-data", help="two-column series for plotting")
    pl.add_argument("graph")
    pl.add_argument("--metric", choices=("degree-dist", "degree-ccdf"), required=True)
    pl.add_argument("-o", "--output", required=True)

    return p


def _cmd_decompose(args) -> int:
    g, _ = fileio.load_graph(args.graph)
    d = decompose(g)
    prof = extract_profile(g, d)
    lines = ["ring  nodes  fraction  p2p_intra  cp_intra"]
    for r in prof.rings:
        members = sum(1 for v in d.ring_of.values() if v == r.ring)
        lines.append(
            f"{r.ring:>4}  {members:>5}  {r.node_fraction:>8.4%}  "
            f"{r.p2p_intra:>9}  {r.cp_intra:>8}"
        )
    lines.append("")
    lines.append("hanger origin  nodes  fraction")
    for h in prof.hangers:
        count = sum(1 for v in d.hanger_origin.values() if v == h.origin_ring)
        lines.append(f"{h.origin_ring:>13}  {count:>5}  {h.node_fraction:>8.4%}")
    lines.append("")
    lines.append("bridge  p2p  cp")
    for b in prof.bridges:
        lines.append(f"{b.low}-{b.high:<5} {b.p2p_count:>4}  {b.cp_count}")
    for w in d.warnings:
        lines.append(f"warning: {w}")
    text = "\n".join(lines) + "\n"
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _cmd_profile(args) -> int:
    g, _ = fileio.load_graph(args.graph)
    prof = extract_profile(g, decompose(g))
    fileio.save_profile(prof, args.output)
    return EXIT_OK


def _cmd_generate(args) -> int:
    prof = fileio.load_profile(args.profile) if args.profile else reference_profile()
    seed = args.seed
    if seed is None:
        seed = int(os.environ.get("JELLYTOPO_SEED", "0"))
    min_nodes = prof.core_size + prof.ring_count
    if args.nodes is not None and args.nodes < min_nodes:
        raise UsageError(
            f"--nodes must be at least core + rings = {min_nodes} for this profile"
        )
    cfg = GeneratorConfig(
        target_nodes=args.nodes,
        seed=seed,
        bias_strength=args.bias,
        hanger_rel=RelType.CP if args.hanger_edges == "cp" else RelType.P2P,
    )
    g, _, report = generate(prof, cfg)
    fileio.save_graph(g, args.output, comment=f"generated seed={seed} nodes={g.node_count}")
    if not args.quiet:
        print(report.render(), file=sys.stderr)
    return EXIT_OK


def _cmd_metrics(args) -> int:
    g, _ = fileio.load_graph(args.graph)
    report = metrics.compute_report(g)
    print(report.render())
    if args.output:
        fileio.save_report(report, args.output)
    return EXIT_OK


def _cmd_compare(args) -> int:
    ga, _ = fileio.load_graph(args.graph_a)
    gb, _ = fileio.load_graph(args.graph_b)
    tol = None
    if args.tolerances:
        with open(args.tolerances) as fh:
            raw = json.load(fh)
        tol = {
            name: ToleranceRule(spec["kind"], float(spec.get("value", 0.0)))
            for name, spec in raw.items()
        }
    cmp = metrics.compare(metrics.compute_report(ga), metrics.compute_report(gb), tol)
    print(cmp.render())
    return EXIT_OK if cmp.all_passed else EXIT_COMPARE


def _cmd_plot_data(args) -> int:
    g, _ = fileio.load_graph(args.graph)
    series = metrics.plot_series(g, args.metric)
    metrics.write_plot_data(args.output, series, args.metric, args.graph)
    return EXIT_OK


_COMMANDS = {
    "decompose": _cmd_decompose,
    "profile": _cmd_profile,
    "generate": _cmd_generate,
    "metrics": _cmd_metrics,
    "compare": _cmd_compare,
    "plot-data": _cmd_plot_data,
}


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        return _COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (JellyTopoError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
