"""Command-line interface: ``bicayley <command> ...``.

Every command is a thin wrapper over a library call; ``--json`` prints
that call's ``to_json()`` through :func:`dumps`.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

from .bci import HypothesisError, is_bci_graph, is_ci_digraph, is_m_bci_group, parse_set, set_labels
from .caps import CapExceeded
from .graphs import Graph6Error, GraphError, bcay, girth, graph6_encode, is_connected, \
    read_graph6_file, write_graph6_file
from .groups import GroupSpecError, automorphism_group as group_aut, build_group, classify_class_C
from .isomorph import automorphism_group, s_regularity

NAMING = """\
element naming:
  C<n>             integers 0..n-1 (C9: 0, 1, ..., 8)
  Q8               1, -1, i, -i, j, -j, k, -k
  D<n>             r<a> and s<a> for rotations and reflections
  products         coordinates joined by ':' in parentheses, last factor
                   fastest: C3xQ8 has (0:1), (2:-i), ...; C3^2 has (0:0)..(2:2)
  sets             comma separated, e.g. --set "0,1,3" or --set "(0:0),(0:1),(1:0)"
group specs:
  atom (x atom)* with atom one of C<n>, C<n>^<k>, Q8, D<n>; e.g. C9^2xQ8.
  "1" is the trivial group; C3^3:C4 is an experimental atom of order 108.
environment:
  BCI_MAX_ELEMENTS overrides the permutation-group element cap.
  BCI_TIER3_BUDGET sets the per-claim budget (seconds) for tier-3 claims.
  BICAYLEY_PURE=1 forces the pure-Python kernels.
"""


class UsageError(Exception):
    """Bad input from the command line (exit code 2)."""


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True)


def _group(spec: str):
    try:
        return build_group(spec)
    except (GroupSpecError, CapExceeded) as exc:
        raise UsageError(f"group spec {spec!r}: {exc}") from exc


def _set(G, text: str):
    try:
        return parse_set(G, text)
    except (KeyError, ValueError) as exc:
        raise UsageError(f"set {text!r}: {exc}") from exc


def group_info(G) -> dict:
    rec = classify_class_C(G)
    return {
        "group_spec": G.name,
        "order": G.order,
        "exponent": G.exponent,
        "abelian": G.is_abelian(),
        "aut_order": group_aut(G).order,
        "class_C": rec.to_json(),
        "elements": list(G.elements),
    }


def graph_info(gamma) -> dict:
    g = girth(gamma)
    connected = is_connected(gamma)
    A = automorphism_group(gamma)
    out = {
        "order": gamma.n,
        "edges": gamma.num_edges,
        "degrees": sorted({int(d) for d in gamma.degrees}),
        "girth": None if g == math.inf else int(g),
        "connected": connected,
        "aut_order": A.order,
        "s_regularity": None,
    }
    if connected and gamma.is_regular(3):
        out["s_regularity"] = s_regularity(gamma, A).to_json()
    return out


def _emit_text(d: dict) -> None:
    for k, v in d.items():
        if isinstance(v, (list, dict)):
            v = json.dumps(v)
        print(f"{k}: {v}")


def cmd_group_info(args) -> int:
    d = group_info(_group(args.spec))
    if args.json:
        print(dumps(d))
    else:
        _emit_text(d)
    return 0


def cmd_bcay(args) -> int:
    G = _group(args.group)
    S = _set(G, args.set)
    gamma = bcay(G, S)
    g6 = graph6_encode(gamma).decode()
    if args.g6_out:
        write_graph6_file(gamma, args.g6_out)
    if args.json:
        print(dumps({"group_spec": G.name, "set": set_labels(G, S), "vertices": gamma.n,
                     "edges": gamma.num_edges, "graph6": g6}))
    else:
        print(g6)
    return 0


def cmd_check(args) -> int:
    G = _group(args.group)
    try:
        if args.kind == "mbci":
            if args.m is None:
                raise UsageError("check mbci needs --m")
            if not 1 <= args.m <= G.order:
                raise UsageError(f"--m must lie in 1..{G.order}")
            res = is_m_bci_group(G, args.m)
            verdict = res.is_m_bci
        else:
            if args.set is None:
                raise UsageError(f"check {args.kind} needs --set")
            S = _set(G, args.set)
            if args.kind == "bci":
                res = is_bci_graph(G, S)
                verdict = res.is_bci
            else:
                res = is_ci_digraph(G, S)
                verdict = res.is_ci
    except HypothesisError as exc:
        raise UsageError(str(exc)) from exc
    print(dumps(res.to_json()) if args.json else ("true" if verdict else "false"))
    return 0


def cmd_graph_info(args) -> int:
    try:
        gamma = read_graph6_file(args.input)
    except (OSError, Graph6Error, GraphError) as exc:
        raise UsageError(f"{args.input}: {exc}") from exc
    d = graph_info(gamma)
    if args.json:
        print(dumps(d))
    else:
        _emit_text(d)
    return 0


def cmd_verify(args) -> int:
    from .claims import run_claim_suite

    only = [c.strip() for c in args.only.split(",")] if args.only else None

    def progress(rec):
        if not args.quiet:
            print(f"  {rec.id} {rec.status} ({rec.elapsed_ms:.0f} ms)", file=sys.stderr, flush=True)

    report = run_claim_suite(args.tier, seed=args.seed, only=only, budget_s=args.budget,
                             progress=progress)
    if args.report:
        with open(args.report, "w") as fh:
            fh.write(dumps(report.to_json()) + "\n")
    print(report.table())
    return report.exit_code


def build_parser() -> argparse.ArgumentParser:
    from .claims import DEFAULT_SEED

    fmt = argparse.RawDescriptionHelpFormatter
    p = argparse.ArgumentParser(prog="bicayley", description="Bi-Cayley graphs and the BCI/CI problems.",
                                epilog=NAMING, formatter_class=fmt)
    sub = p.add_subparsers(dest="command", required=True)

    grp = sub.add_parser("group", help="group commands", epilog=NAMING, formatter_class=fmt)
    gsub = grp.add_subparsers(dest="action", required=True)
    gi = gsub.add_parser("info", help="order, Aut order, class C membership and labels",
                         epilog=NAMING, formatter_class=fmt)
    gi.add_argument("spec")
    gi.add_argument("--json", action="store_true")
    gi.set_defaults(func=cmd_group_info)

    b = sub.add_parser("bcay", help="build BCay(G, S) and print its graph6 string",
                       epilog=NAMING, formatter_class=fmt)
    b.add_argument("--group", required=True)
    b.add_argument("--set", required=True)
    b.add_argument("--g6-out", metavar="FILE")
    b.add_argument("--json", action="store_true")
    b.set_defaults(func=cmd_bcay)

    c = sub.add_parser("check", help="BCI, m-BCI and CI decisions", epilog=NAMING, formatter_class=fmt)
    c.add_argument("kind", choices=["bci", "mbci", "ci"])
    c.add_argument("--group", required=True)
    c.add_argument("--set")
    c.add_argument("--m", type=int)
    c.add_argument("--json", action="store_true")
    c.set_defaults(func=cmd_check)

    gr = sub.add_parser("graph", help="graph commands")
    grsub = gr.add_subparsers(dest="action", required=True)
    ginfo = grsub.add_parser("info", help="order, girth, connectivity, |Aut| and s-regularity")
    ginfo.add_argument("--in", dest="input", required=True, metavar="FILE.g6")
    ginfo.add_argument("--json", action="store_true")
    ginfo.set_defaults(func=cmd_graph_info)

    v = sub.add_parser("verify-paper", help="run the claim suite up to a tier")
    v.add_argument("--tier", type=int, choices=[1, 2, 3], required=True)
    v.add_argument("--report", metavar="FILE.json")
    v.add_argument("--seed", type=int, default=DEFAULT_SEED)
    v.add_argument("--only", help="comma separated claim ids, e.g. A1,A4")
    v.add_argument("--budget", type=float, default=None, help="tier-3 budget in seconds per claim")
    v.add_argument("--quiet", action="store_true")
    v.set_defaults(func=cmd_verify)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"bicayley: error: {exc}", file=sys.stderr)
        return 2
    except CapExceeded as exc:
        print(f"bicayley: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
