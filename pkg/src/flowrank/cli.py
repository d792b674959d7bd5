"""Command-line front end.

Exit codes: 0 success, 1 a property counterexample (or an oracle mismatch),
2 a usage, input or parameter error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Any, Sequence

from flowrank import io
from flowrank.errors import FlowRankError, OracleTooLargeError
from flowrank.maxflow import ORACLE_MAX_N, ORACLE_MAX_TOTAL, flow_matrix, lambda_oracle
from flowrank.methods import (
    MethodId,
    compare_methods,
    count_rule,
    iter_rule,
    method_relation,
    schulze_strength,
    solution,
)
from flowrank.network import Network
from flowrank.relation import Relation, sorted_labels
from flowrank.verify.generators import GeneratorSpec, generate
from flowrank.verify.runner import run_suite, suite_passed

EXIT_OK, EXIT_COUNTEREXAMPLE, EXIT_USAGE = 0, 1, 2

GEN_CLASSES = {
    "arbitrary": "arbitrary",
    "balanced": "k_balanced",
    "class-o": "class_O",
    "class-i": "class_I",
    "constant": "constant",
    "pseudo-symmetric": "pseudo_symmetric",
    "parametric": "parametric",
}
METHOD_NAMES = [m.cli_name for m in MethodId]


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse exits 2 already; keep one error path
        raise UsageError(f"{self.prog}: {message}")


def _nonneg(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {text}")
    return value


# --- output helpers ---------------------------------------------------------


class Output:
    """Collects either tab-separated rows or one tree document."""

    def __init__(self, fmt: str):
        self.fmt = fmt
        self.rows: list[str] = []
        self.doc: dict[str, Any] = {}

    def row(self, *fields: object) -> None:
        self.rows.append("\t".join(str(f) for f in fields))

    def render(self) -> str:
        if self.fmt == "tree":
            return io.dumps(self.doc)
        return "".join(r + "\n" for r in self.rows)


def fmt_set(subset, vertices) -> str:
    return "{" + ",".join(sorted_labels(subset, vertices)) + "}"


def _relation_rows(out: Output, rel: Relation) -> None:
    m = rel.matrix
    for i, x in enumerate(rel.labels):
        for j, y in enumerate(rel.labels):
            if i == j:
                continue
            if m[i, j] and not m[j, i]:
                out.row("strict", x, y)
            elif m[i, j] and i < j:
                out.row("tie", x, y)
            elif not m[i, j] and not m[j, i] and i < j:
                out.row("incomparable", x, y)


# --- commands ---------------------------------------------------------------


def _read_network(args) -> Network:
    if args.input == "-":
        text = sys.stdin.read()
    else:
        try:
            text = Path(args.input).read_text(encoding="utf-8")
        except OSError as exc:
            raise UsageError(f"cannot read {args.input}: {exc.strerror}") from exc
    return io.parse_network(text, args.input_format, sort_labels=args.sort_labels)


def cmd_matrix(args, out: Output) -> int:
    net = _read_network(args)
    phi = flow_matrix(net)
    strength = schulze_strength(net) if args.schulze else None
    oracle = None
    if args.oracle:
        try:
            oracle = {
                (x, y): lambda_oracle(net, x, y, max_n=args.oracle_max_n, max_total=args.oracle_max_total)
                for x, y, _ in phi.items()
            }
        except OracleTooLargeError as exc:
            raise OracleTooLargeError(f"{exc}; raise --oracle-max-n/--oracle-max-total to allow it") from exc
    header = ["source", "sink", "flow"]
    header += ["schulze"] if strength is not None else []
    header += ["oracle"] if oracle is not None else []
    out.row(*header)
    entries = []
    for x, y, value in phi.items():
        fields: list[object] = [x, y, value]
        entry: dict[str, Any] = {"source": x, "sink": y, "flow": value}
        if strength is not None:
            fields.append(strength[(x, y)])
            entry["schulze"] = strength[(x, y)]
        if oracle is not None:
            fields.append(oracle[(x, y)])
            entry["oracle"] = oracle[(x, y)]
        out.row(*fields)
        entries.append(entry)
    out.doc = {"command": "matrix", "vertices": list(net.labels), "pairs": entries}
    if oracle is None:
        return EXIT_OK
    mismatches = [f"{x}->{y}" for x, y, v in phi.items() if oracle[(x, y)] != v]
    verdict = "equality confirmed" if not mismatches else "MISMATCH " + " ".join(mismatches)
    out.row("# oracle", verdict)
    out.doc["oracle_agrees"] = not mismatches
    return EXIT_OK if not mismatches else EXIT_COUNTEREXAMPLE


def cmd_rank(args, out: Output) -> int:
    net = _read_network(args)
    method = MethodId.parse(args.method)
    rel = method_relation(method, net)
    total = count_rule(method, net)
    flat = not any(rel.strictly_prefers(x, y) for x in rel.labels for y in rel.labels)
    orders = []
    for order in iter_rule(method, net):
        if len(orders) == args.limit:
            break
        orders.append(order)
    truncated = len(orders) < total

    out.row("method", method.cli_name)
    _relation_rows(out, rel)
    out.row("refinements", f"{net.n}! = {total}" if flat else total)
    for order in orders:
        out.row("order", order)
    if truncated:
        out.row("truncated", f"showing {len(orders)} of {total}")
    out.doc = {
        "command": "rank",
        "method": method.cli_name,
        "relation": io.relation_to_tree(rel),
        "refinement_count": total,
        "flat": flat,
        "refinements": [io.order_to_tree(o) for o in orders],
        "truncated": truncated,
    }
    return EXIT_OK


def cmd_winners(args, out: Output) -> int:
    net = _read_network(args)
    method = MethodId.parse(args.method)
    sets = solution(method, net, args.k)
    out.row("method", method.cli_name)
    out.row("k", args.k)
    for s in sets:
        out.row(fmt_set(s, net.vertices))
    out.doc = {
        "command": "winners",
        "method": method.cli_name,
        "k": args.k,
        "sets": [sorted_labels(s, net.vertices) for s in sets],
    }
    return EXIT_OK


def _verdict_symbol(forward: bool, backward: bool) -> str:
    if forward and backward:
        return "="
    if forward:
        return ">"
    if backward:
        return "<"
    return "?"


def cmd_compare(args, out: Output) -> int:
    net = _read_network(args)
    report = compare_methods(net, args.methods.split(","))
    names = [m.cli_name for m in report.methods]
    out.row("pair", *names)
    rows = []
    for i, x in enumerate(net.labels):
        for y in net.labels[i + 1 :]:
            fwd, bwd = report.verdicts[(x, y)], report.verdicts[(y, x)]
            symbols = [_verdict_symbol(f, b) for f, b in zip(fwd, bwd)]
            out.row(f"{x} {y}", *symbols)
            rows.append({"pair": [x, y], "verdicts": dict(zip(names, symbols))})
    out.row("agreeing", len(report.agreeing))
    out.row("disagreeing", len(report.disagreeing))
    out.row("relations", "equal" if report.relations_equal else "differ")
    for m in report.methods:
        out.row("maxima", m.cli_name, fmt_set(report.maxima[m], net.vertices))
    out.doc = {
        "command": "compare",
        "methods": names,
        "pairs": rows,
        "agreeing": len(report.agreeing),
        "disagreeing": [list(p) for p in report.disagreeing],
        "relations_equal": report.relations_equal,
        "maxima": {m.cli_name: sorted_labels(report.maxima[m], net.vertices) for m in report.methods},
    }
    return EXIT_OK


def cmd_check(args, out: Output) -> int:
    reports = run_suite(
        args.props, count=args.count, seed=args.seed, max_n=args.max_n, max_cap=args.max_cap
    )
    out.row("property", "instances", "failures", "status")
    docs = []
    for r in reports:
        status = "pass" if r.passed else ("exploratory" if r.exploratory else "FAIL")
        out.row(r.name, r.instances, len(r.failures), status)
        docs.append(
            {
                "property": r.name,
                "instances": r.instances,
                "exploratory": r.exploratory,
                "failures": [
                    {"seed": f.seed, "messages": list(f.messages), "instance": f.instance}
                    for f in r.failures[: args.show]
                ],
                "failure_count": len(r.failures),
            }
        )
    ok = suite_passed(reports)
    for r in reports:
        if r.exploratory:
            continue
        for f in r.failures[: args.show]:
            out.rows.append("")
            out.rows.extend("# " + line for line in f.render().splitlines())
    out.row("result", "pass" if ok else "counterexample found")
    out.doc = {"command": "check", "seed": args.seed, "passed": ok, "properties": docs}
    return EXIT_OK if ok else EXIT_COUNTEREXAMPLE


def cmd_gen(args, out: Output) -> int:
    spec = GeneratorSpec(
        kind=GEN_CLASSES[args.gen_class],
        n=args.n,
        max_capacity=args.max_cap,
        seed=args.seed,
        k=args.k,
        value=args.value,
        a=args.a,
        b=args.b,
        l=args.l,
    )
    net = generate(spec)
    note = f"gen class={args.gen_class} n={args.n} seed={args.seed} max-cap={args.max_cap}"
    # gen always writes edges text so its output can be piped into other commands
    out.fmt = "tsv"
    out.rows = [io.network_to_edges(net, comments=(note,)).rstrip("\n")]
    return EXIT_OK


# --- parser -----------------------------------------------------------------


def _global_flags(parser: argparse.ArgumentParser, suppress: bool) -> None:
    default = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    parser.add_argument("--format", dest="output_format", choices=("tsv", "tree"),
                        default=default("tsv"), help="output layout (default tsv)")
    parser.add_argument("--sort-labels", action="store_true", default=default(False),
                        help="order vertices alphabetically instead of by first appearance")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="flowrank", description="Flow-based rankings of competition networks.")
    _global_flags(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def command(name: str, help_text: str, with_input: bool = True) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_text, description=help_text)
        _global_flags(p, suppress=True)
        if with_input:
            p.add_argument("input", help="network file, or - for standard input")
            p.add_argument("--input-format", choices=io.FORMATS, default=None,
                           help="override the '#format:' header (default edges)")
        return p

    p = command("matrix", "print the maximum flow value of every ordered pair")
    p.add_argument("--schulze", action="store_true", help="add the widest-path strengths")
    p.add_argument("--oracle", action="store_true", help="cross-check against path counting")
    p.add_argument("--oracle-max-n", type=_nonneg, default=ORACLE_MAX_N)
    p.add_argument("--oracle-max-total", type=_nonneg, default=ORACLE_MAX_TOTAL)
    p.set_defaults(run=cmd_matrix)

    p = command("rank", "print a method's relation and its rankings")
    p.add_argument("--method", choices=METHOD_NAMES, default="flow")
    p.add_argument("--limit", type=_nonneg, default=100, help="rankings to list (count is exact)")
    p.set_defaults(run=cmd_rank)

    p = command("winners", "print the k-maximum sets of a method")
    p.add_argument("--method", choices=METHOD_NAMES, default="flow")
    p.add_argument("-k", type=int, default=1)
    p.set_defaults(run=cmd_winners)

    p = command("compare", "compare the relations of several methods")
    p.add_argument("--methods", default="flow,borda,dual-borda,schulze",
                   help="comma-separated method names")
    p.set_defaults(run=cmd_compare)

    p = command("check", "run the property suite on random instances", with_input=False)
    p.add_argument("--props", default="all", help="comma-separated properties or groups, or all")
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--seed", type=_nonneg, default=0)
    p.add_argument("--max-n", type=int, default=6)
    p.add_argument("--max-cap", type=int, default=4)
    p.add_argument("--show", type=_nonneg, default=3, help="counterexamples dumped per property")
    p.set_defaults(run=cmd_check)

    p = command("gen", "write a random network of a given class as edges text", with_input=False)
    p.add_argument("--class", dest="gen_class", choices=sorted(GEN_CLASSES), default="arbitrary")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=_nonneg, default=0)
    p.add_argument("--max-cap", type=int, default=4)
    for name in ("k", "value", "a", "b", "l"):
        p.add_argument(f"--{name}", type=int, default=None)
    p.set_defaults(run=cmd_gen)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    out = Output(args.output_format)
    try:
        status = args.run(args, out)
    except (FlowRankError, UsageError) as exc:
        print(f"flowrank {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    sys.stdout.write(out.render())
    sys.stdout.flush()
    return status


if __name__ == "__main__":
    sys.exit(main())
