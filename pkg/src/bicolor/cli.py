"""Command-line interface.

Predicate commands (is-minimal, bisimilar, artin is-ra-qi, artin is-3mfld)
exit 0 for yes and 1 for no. Any parse or validation error exits 2 with a
message on stderr.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Optional, Sequence, TextIO

from . import artin as artin_mod
from . import splice as splice_mod
from .census import enumerate_minimal
from .graph import BicoloredGraph, format_graph, graph_to_json, load_graph, to_dot
from .refine import bisimilar, is_minimal, minimize
from .unfold import unfolding, unfolding_key, unfolding_tree_dot

EXIT_YES, EXIT_NO, EXIT_ERROR = 0, 1, 2


class UsageError(Exception):
    pass


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _dump_json(obj) -> str:
    return json.dumps(obj, separators=(",", ":"))


def _emit_graph(g: BicoloredGraph, fmt: str, out: TextIO):
    if fmt == "json":
        out.write(_dump_json(graph_to_json(g)) + "\n")
    elif fmt == "dot":
        out.write(to_dot(g))
    else:
        out.write(format_graph(g))


def _vertex(g: BicoloredGraph, token: str) -> int:
    if g.names is not None and token in g.names:
        return g.names.index(token)
    if token.isdigit() and int(token) < g.n:
        return int(token)
    raise UsageError(f"unknown vertex {token!r}")


def cmd_minimize(args, out: TextIO) -> int:
    g = load_graph(_read(args.file))
    m, c = minimize(g)
    m = m.with_names([f"c{i}" for i in range(m.n)])
    pairs = [(g.name(v), m.name(c.classes[v])) for v in range(g.n)]
    if args.format == "json":
        out.write(_dump_json({"graph": graph_to_json(m), "map": dict(pairs)}) + "\n")
        return EXIT_YES
    _emit_graph(m, args.format, out)
    comment = "//" if args.format == "dot" else "#"
    for src, dst in pairs:
        out.write(f"{comment} map {src} -> {dst}\n")
    return EXIT_YES


def cmd_is_minimal(args, out: TextIO) -> int:
    g = load_graph(_read(args.file))
    verdict = is_minimal(g)
    if args.format == "json":
        out.write(_dump_json({"minimal": verdict}) + "\n")
    else:
        out.write("minimal\n" if verdict else "not minimal\n")
    return EXIT_YES if verdict else EXIT_NO


def cmd_bisimilar(args, out: TextIO) -> int:
    g1 = load_graph(_read(args.file1))
    g2 = load_graph(_read(args.file2))
    witness = bisimilar(g1, g2)
    matching = []
    if witness is not None:
        matching = [(f"c{v}", f"c{witness.mapping[v]}") for v in range(witness.source.n)]
    if args.format == "json":
        out.write(_dump_json({"bisimilar": witness is not None, "matching": matching}) + "\n")
    else:
        out.write("bisimilar\n" if witness is not None else "not bisimilar\n")
        for a, b in matching:
            out.write(f"match {a} {b}\n")
    return EXIT_YES if witness is not None else EXIT_NO


def cmd_enumerate(args, out: TextIO) -> int:
    if args.format == "dot":
        raise UsageError("enumerate supports text or json output")
    reps: list[BicoloredGraph] = []
    try:
        result = enumerate_minimal(args.n, args.b, reps.append if args.list else None, jobs=args.jobs)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if args.list:
        if args.format == "json":
            out.write(_dump_json([graph_to_json(g) for g in reps]) + "\n")
        else:
            out.write("\n".join(format_graph(g) for g in reps))
        return EXIT_YES
    if args.b is not None:
        if args.format == "json":
            out.write(_dump_json({"n": args.n, "b": args.b, "count": result}) + "\n")
        else:
            out.write(f"n={args.n} b={args.b} count={result}\n")
        return EXIT_YES
    if args.format == "json":
        out.write(_dump_json(result.as_dict()) + "\n")
    else:
        header = ["n"] + [f"b={b}" for b in range(args.n + 1)] + ["total"]
        row = [str(args.n)] + [str(x) for x in result.counts] + [str(result.total)]
        out.write("\t".join(header) + "\n" + "\t".join(row) + "\n")
    return EXIT_YES


def cmd_unfold(args, out: TextIO) -> int:
    g = load_graph(_read(args.file))
    v = _vertex(g, args.root)
    if args.depth < 0:
        raise UsageError("depth must be non-negative")
    if args.format == "dot":
        out.write(unfolding_tree_dot(g, v, args.depth, args.multiplicity))
        return EXIT_YES
    key = unfolding_key(unfolding(g, v, args.depth))
    if args.format == "json":
        out.write(_dump_json({"root": g.name(v), "depth": args.depth, "key": key}) + "\n")
    else:
        out.write(key + "\n")
    return EXIT_YES


def _load_tree(path: str) -> artin_mod.ArtinTree:
    return artin_mod.parse_artin_tree(_read(path))


def _require_big(t: artin_mod.ArtinTree):
    if not artin_mod.is_big(t):
        raise UsageError("presentation tree is not big (diameter < 3, or diameter 2 with all weights 2)")


def cmd_artin(args, out: TextIO) -> int:
    action = args.action
    if action == "is-3mfld":
        verdict = artin_mod.is_3manifold_artin(artin_mod.parse_labeled_graph(_read(args.input)))
        return _verdict(out, args.format, "3-manifold group", verdict)
    t = _load_tree(args.input)
    if action == "convert":
        _require_big(t)
        _emit_graph(artin_mod.artin_to_decomposition(t), args.format, out)
        return EXIT_YES
    if action == "classify":
        qi = artin_mod.classify_artin(t)
        if args.format == "json":
            payload = {"class": qi.kind}
            if qi.graph is not None:
                payload["graph"] = graph_to_json(qi.graph)
            out.write(_dump_json(payload) + "\n")
        elif qi.graph is not None:
            if args.format == "dot":
                out.write(to_dot(qi.graph))
            else:
                out.write(f"# class {qi.kind}\n")
                out.write(format_graph(qi.graph))
        else:
            out.write(f"{qi.kind}\n")
        return EXIT_YES
    verdict = artin_mod.is_qi_to_right_angled_tree_group(t)
    return _verdict(out, args.format, "quasi-isometric to a right-angled tree group", verdict)


def _verdict(out: TextIO, fmt: str, what: str, verdict: bool) -> int:
    if fmt == "json":
        out.write(_dump_json({"verdict": verdict}) + "\n")
    else:
        out.write(("" if verdict else "not ") + what + "\n")
    return EXIT_YES if verdict else EXIT_NO


def cmd_splice(args, out: TextIO) -> int:
    t = _load_tree(args.input)
    d = splice_mod.artin_tree_to_splice(t)
    if args.action == "from-artin":
        if args.format == "dot":
            out.write(splice_mod.splice_to_dot(d))
        elif args.format == "json":
            out.write(_dump_json({"kinds": [list(k) for k in d.kinds], "edges": [list(e) for e in d.edges]}) + "\n")
        else:
            out.write(splice_mod.format_splice(d))
        return EXIT_YES
    _emit_graph(splice_mod.splice_to_decomposition(d), args.format, out)
    return EXIT_YES


def build_parser() -> argparse.ArgumentParser:
    fmt = argparse.ArgumentParser(add_help=False)
    fmt.add_argument("--format", choices=["text", "json", "dot"], default="text")

    p = argparse.ArgumentParser(prog="bicolor", description="Minimal bicolored graphs, census, and Artin tree groups.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("minimize", parents=[fmt], help="print the minimal graph and the class map")
    s.add_argument("file")
    s.set_defaults(func=cmd_minimize)

    s = sub.add_parser("is-minimal", parents=[fmt], help="exit 0 iff the graph is minimal")
    s.add_argument("file")
    s.set_defaults(func=cmd_is_minimal)

    s = sub.add_parser("bisimilar", parents=[fmt], help="exit 0 iff the two graphs are bisimilar")
    s.add_argument("file1")
    s.add_argument("file2")
    s.set_defaults(func=cmd_bisimilar)

    s = sub.add_parser("enumerate", parents=[fmt], help="count minimal graphs with n vertices")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--b", type=int, default=None, help="restrict to this many black vertices")
    s.add_argument("--list", action="store_true", help="print one canonical graph per class")
    s.add_argument("--jobs", type=int, default=os.cpu_count() or 1)
    s.set_defaults(func=cmd_enumerate)

    s = sub.add_parser("unfold", parents=[fmt], help="depth-d type of the Bass-Serre tree at a vertex")
    s.add_argument("file")
    s.add_argument("--root", required=True)
    s.add_argument("--depth", type=int, required=True)
    s.add_argument("--multiplicity", type=int, default=2, help="edge copies in the DOT drawing")
    s.set_defaults(func=cmd_unfold)

    s = sub.add_parser("artin", parents=[fmt], help="Artin presentation trees")
    s.add_argument("action", choices=["convert", "classify", "is-ra-qi", "is-3mfld"])
    s.add_argument("--in", dest="input", required=True)
    s.set_defaults(func=cmd_artin)

    s = sub.add_parser("splice", parents=[fmt], help="splice diagram route for Artin trees")
    s.add_argument("action", choices=["from-artin", "decomposition"])
    s.add_argument("--in", dest="input", required=True)
    s.set_defaults(func=cmd_splice)
    return p


def run(argv: Optional[Sequence[str]] = None, out: Optional[TextIO] = None, err: Optional[TextIO] = None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_ERROR if exc.code else EXIT_YES
    try:
        return args.func(args, out)
    except (UsageError, ValueError) as exc:
        err.write(f"bicolor {args.command}: error: {exc}\n")
        return EXIT_ERROR


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
