"""Batch command-line front end.

Subcommands: link, aut, volume, count, dist, parse. Every subcommand emits
deterministic output: fixed key order, shortest round-trip float formatting
(via json), so identical inputs give byte-identical bytes.

Exit codes: 0 success, 1 internal verification failure, 2 size/budget cap,
3 epsilon too large, 4 leaf-count mismatch.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from pathlib import Path

from .errors import (
    BhvError,
    EnumerationTooLarge,
    EpsilonTooLarge,
    LeafCountMismatch,
    SearchBudgetExceeded,
    TooLarge,
)
from .linkgraph import (
    brute_force_automorphisms,
    build_link_graph,
    link_report,
    permutation_to_automorphism,
)
from .measure import (
    TreePoint,
    ball_volume,
    ball_volume_bounds,
    distance_upper_bound,
    is_cone_point,
    same_orthant_distance,
)
from .newick import iter_newick_lines, parse_newick, to_newick
from .splits import all_permutations, make_split
from .topology import (
    DEFAULT_ENUMERATION_CAP,
    count_refining_orthants,
    degree_sequence,
    double_factorial,
    enumerate_binary_refinements,
    is_binary,
    make_topology,
    reconstruct_tree,
)

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_TOO_LARGE = 2
EXIT_EPSILON = 3
EXIT_LEAF_MISMATCH = 4


def _dump(obj) -> str:
    return json.dumps(obj, separators=(",", ":"))


def _emit(text: str, path: str | None):
    if path is None or path == "-":
        print(text)
    else:
        Path(path).write_text(text + "\n", encoding="utf-8")


def _parse_tree_line(line: str) -> TreePoint:
    if line.lstrip().startswith("{"):
        return TreePoint.from_json(json.loads(line))
    return parse_newick(line)


def _load_trees(arg: str) -> list[TreePoint]:
    """Tree argument: '-' for stdin, an existing file (one tree per line,
    '#' comments skipped), or an inline string. Each tree may be Newick or
    the JSON tree-point schema."""
    if arg == "-":
        content = sys.stdin.read()
        return [_parse_tree_line(line) for line in iter_newick_lines(content)]
    if os.path.isfile(arg):
        content = Path(arg).read_text(encoding="utf-8")
        return [_parse_tree_line(line) for line in iter_newick_lines(content)]
    return [_parse_tree_line(arg)]


def cmd_link(args) -> int:
    g = build_link_graph(args.n)
    report = link_report(g)
    if args.dot:
        _emit(g.to_dot(), args.dot)
    _emit(_dump(report), args.json)
    return EXIT_OK if report["degrees_ok"] else EXIT_FAIL


def cmd_aut(args) -> int:
    if args.n == 4:
        print(
            "aut 4 refused: the n=4 link graph is three isolated vertices with "
            "automorphism group of order 6, while there are 4! = 24 leaf "
            "relabelings; the relabeling action is not faithful at n=4, so the "
            "group-equals-leaf-permutations check only applies for n >= 5.",
            file=sys.stderr,
        )
        return EXIT_TOO_LARGE
    if not 5 <= args.n <= 7:
        print(f"aut supports 5 <= n <= 7, got {args.n}", file=sys.stderr)
        return EXIT_TOO_LARGE
    g = build_link_graph(args.n)
    group = brute_force_automorphisms(g)
    expected = math.factorial(args.n)
    realized = False
    if group.elements is not None and group.order == expected:
        images = {permutation_to_automorphism(sigma, g) for sigma in all_permutations(args.n)}
        realized = images == set(group.elements)
    report = {
        "n": args.n,
        "aut_order": group.order,
        "expected_order": expected,
        "realized": realized,
        "generators": [list(gen) for gen in group.generators],
    }
    _emit(_dump(report), args.json)
    return EXIT_OK if realized else EXIT_FAIL


def cmd_volume(args) -> int:
    trees = _load_trees(args.tree)
    lines = []
    for x in trees:
        vol = ball_volume(x, args.eps)
        lower, upper = ball_volume_bounds(x.n, x.p, args.eps)
        lines.append(
            _dump(
                {
                    "p": x.p,
                    "degree_sequence": list(degree_sequence(x.topology)),
                    "s_F": vol.s_f,
                    "mu": vol.value,
                    "lower": lower,
                    "upper": upper,
                    "is_binary": is_binary(x.topology),
                    "is_cone_point": is_cone_point(x),
                }
            )
        )
    _emit("\n".join(lines), args.json)
    return EXIT_OK


def cmd_count(args) -> int:
    cap = args.cap
    if args.refine is not None:
        try:
            sides = json.loads(args.refine)
        except json.JSONDecodeError as exc:
            print(f"error: --refine is not valid JSON: {exc}", file=sys.stderr)
            return EXIT_FAIL
        face = make_topology((make_split(side, args.n) for side in sides), args.n)
        value = count_refining_orthants(face)
    else:
        face = make_topology((), args.n)
        value = double_factorial(2 * args.n - 5)
    census = double_factorial(2 * args.n - 5)
    if census > cap:
        raise EnumerationTooLarge(f"(2n-5)!! = {census} exceeds cap {cap}")
    if args.oracle:
        refinements = enumerate_binary_refinements(face, cap)
        ok = len(refinements) == value
        _emit(_dump({"count": value, "oracle_ok": ok}), args.json)
        return EXIT_OK if ok else EXIT_FAIL
    _emit(str(value), args.json)
    return EXIT_OK


def cmd_dist(args) -> int:
    a = _load_trees(args.tree_a)[0]
    b = _load_trees(args.tree_b)[0]
    same = same_orthant_distance(a, b)
    cone = a.norm + b.norm
    report = {
        "same_orthant": same,
        "cone_path": cone,
        "upper_bound": distance_upper_bound(a, b),
    }
    _emit(_dump(report), args.json)
    return EXIT_OK


def cmd_parse(args) -> int:
    for x in _load_trees(args.tree):
        if args.dot:
            _emit(reconstruct_tree(x.topology).to_dot(), args.dot)
        obj = x.to_json()
        obj["newick"] = to_newick(x)
        _emit(_dump(obj), args.json)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bhvkit",
        description="Combinatorics and local geometry of phylogenetic tree space.",
    )
    parser.add_argument(
        "--cap",
        type=int,
        default=int(os.environ.get("BHVKIT_CAP", DEFAULT_ENUMERATION_CAP)),
        help="enumeration item cap (env BHVKIT_CAP)",
    )
    parser.add_argument(
        "--seed", type=int, default=0, help="seed reserved for sampled verification runs"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("link", help="build the split compatibility graph and verify degrees")
    p.add_argument("n", type=int)
    p.add_argument("--dot", metavar="PATH", help="write Graphviz output ('-' for stdout)")
    p.add_argument("--json", metavar="PATH", default="-")
    p.set_defaults(func=cmd_link)

    p = sub.add_parser("aut", help="exhaustive automorphism search on the link graph")
    p.add_argument("n", type=int)
    p.add_argument("--json", metavar="PATH", default="-")
    p.set_defaults(func=cmd_aut)

    p = sub.add_parser("volume", help="epsilon-ball volume report for Newick trees")
    p.add_argument("tree", help="file, inline Newick, or '-' for stdin")
    p.add_argument("--eps", type=float, required=True)
    p.add_argument("--json", metavar="PATH", default="-")
    p.set_defaults(func=cmd_volume)

    p = sub.add_parser("count", help="orthant census or refining-orthant count")
    p.add_argument("n", type=int)
    p.add_argument("--refine", metavar="SPLITS_JSON", help='face splits, e.g. "[[1,2]]"')
    p.add_argument("--oracle", action="store_true", help="cross-check by exhaustive enumeration")
    p.add_argument("--json", metavar="PATH", default="-")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("dist", help="distance bounds between two trees")
    p.add_argument("tree_a")
    p.add_argument("tree_b")
    p.add_argument("--json", metavar="PATH", default="-")
    p.set_defaults(func=cmd_dist)

    p = sub.add_parser("parse", help="parse Newick to the JSON tree-point schema")
    p.add_argument("tree")
    p.add_argument("--dot", metavar="PATH", help="also render the reconstructed tree as Graphviz")
    p.add_argument("--json", metavar="PATH", default="-")
    p.set_defaults(func=cmd_parse)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except EpsilonTooLarge as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_EPSILON
    except (TooLarge, EnumerationTooLarge, SearchBudgetExceeded) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_TOO_LARGE
    except LeafCountMismatch as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_LEAF_MISMATCH
    except (BhvError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
