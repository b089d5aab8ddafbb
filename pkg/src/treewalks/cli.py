"""Command-line front end.

Exit status: 0 success or verified, 1 counterexample found, 2 input or
configuration error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Sequence

from .degseq import DegreeSequence, compare_majorization, majorization_chain, parse_degseq
from .errors import InvalidParameter, TreeWalksError
from .treekit import Tree, build_greedy_tree, canonical_form, enumerate_trees
from .verifier import CLAIMS, SuiteConfig, dense_r_max, run_suite, suite_exit_status
from .walkcount import closed_walks_power, estrada_index_eigen, estrada_series, spectral_moments

COMMANDS = ("validate", "greedy", "enumerate", "walks", "moments", "estrada",
            "majorize", "chain", "verify", "dense-r")


def _degseq(arg: str) -> DegreeSequence:
    if arg.startswith("@"):
        with open(arg[1:]) as fh:
            arg = fh.read().strip()
    return parse_degseq(arg)


def _tree_or_degseq(arg: str) -> Tree:
    """A tree file (text or JSON) or a degree sequence, which stands for its greedy tree."""
    if not arg.startswith("@") and os.path.isfile(arg):
        with open(arg) as fh:
            text = fh.read()
        return Tree.from_json(text) if text.lstrip().startswith("{") else Tree.from_text(text)
    return build_greedy_tree(_degseq(arg))[0]


def _int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(",") if x)
    except ValueError as exc:
        raise InvalidParameter(f"expected comma-separated integers, got {text!r}") from exc


class _Out:
    def __init__(self, path: str | None):
        self.fh = open(path, "w") if path else sys.stdout

    def line(self, text: str = "") -> None:
        self.fh.write(text + "\n")

    def json(self, obj) -> None:
        self.line(json.dumps(obj))

    def close(self) -> None:
        if self.fh is not sys.stdout:
            self.fh.close()


def cmd_validate(args, out: _Out) -> int:
    pi = _degseq(args.degseq)
    if args.format == "json":
        out.json({"degrees": pi.to_json(), "n": pi.n})
    else:
        out.line(str(pi))
    return 0


def cmd_greedy(args, out: _Out) -> int:
    tree, bfs = build_greedy_tree(_degseq(args.degseq))
    if args.format == "json":
        out.json({**tree.to_json(), "bfs_order": list(bfs.order), "degrees": list(tree.degrees)})
    elif args.format == "csv":
        out.line("u,v")
        for u, v in tree.edges:
            out.line(f"{u},{v}")
    else:
        out.fh.write(tree.to_text())
        out.line("bfs " + ",".join(map(str, bfs.order)))
    return 0


def cmd_enumerate(args, out: _Out) -> int:
    pi = _degseq(args.degseq)
    mode = "labeled" if args.labeled else "unlabeled"
    count = 0
    for t in enumerate_trees(pi, mode, max_n=args.n_max):
        count += 1
        if args.format == "json":
            out.json({**t.to_json(), "canonical": canonical_form(t)})
        else:
            out.line(canonical_form(t) + "  " + " ".join(f"{u}-{v}" for u, v in t.edges))
    if args.format != "json":
        out.line(f"# {count} {mode} trees")
    return 0


def cmd_walks(args, out: _Out) -> int:
    tree = _tree_or_degseq(args.source)
    if args.k % 2:
        print("warning: odd length, closed walks on a tree are all zero", file=sys.stderr)
    wv = closed_walks_power(tree, args.k)
    if args.format == "json":
        out.json(wv.to_json())
    elif args.format == "csv":
        out.fh.write(wv.to_csv())
    else:
        out.line(",".join(map(str, wv.counts)))
    return 0


def cmd_moments(args, out: _Out) -> int:
    moments = spectral_moments(_tree_or_degseq(args.source), args.k_max)
    if args.format == "json":
        out.json({"moments": [str(m) for m in moments]})
    elif args.format == "csv":
        out.line("k,moment")
        for k, m in enumerate(moments):
            out.line(f"{k},{m}")
    else:
        out.line(",".join(map(str, moments)))
    return 0


def cmd_estrada(args, out: _Out) -> int:
    if not args.tol > 0:
        raise InvalidParameter("tol must be positive")
    tree = _tree_or_degseq(args.source)
    value, K, bound = estrada_series(tree, args.tol)
    record = {"estrada": value, "terms": K + 1, "tail_bound": bound}
    if args.check and tree.n <= 64:
        record["eigen"] = estrada_index_eigen(tree)
    if args.format == "json":
        out.json(record)
    else:
        out.line(f"{value:.12f} +/- {bound:.3g} ({K + 1} terms)")
    return 0


def cmd_majorize(args, out: _Out) -> int:
    a, b = _int_list(args.alpha), _int_list(args.beta)
    v = compare_majorization(a, b, pad=not args.no_pad)
    record = {"relation": v.relation.value, "first_strict_index": v.first_strict_index,
              "first_violation_index": v.first_violation_index}
    if args.format == "json":
        out.json(record)
    else:
        out.line(" ".join(f"{k}={val}" for k, val in record.items()))
    return 0


def cmd_chain(args, out: _Out) -> int:
    chain = majorization_chain(_degseq(args.pi), _degseq(args.pi_prime))
    if args.format == "json":
        out.json([p.to_json() for p in chain])
    else:
        for p in chain:
            out.line(str(p))
    return 0


def cmd_verify(args, out: _Out) -> int:
    claims = tuple(c for part in args.claims for c in part.split(",") if c)
    cfg = SuiteConfig(n_max=args.n_max, ks=_int_list(args.k), claims=claims, n_min=args.n_min,
                      max_n=args.guard, direction=args.direction, k_max_strict=args.k_max_strict,
                      jobs=args.jobs, seed=args.seed, lemma_trials=args.trials)
    reports = run_suite(cfg)
    for r in reports:
        out.json(r.to_json())
    status = suite_exit_status(reports)
    bad = sum(r.status == "counterexample" for r in reports)
    print(f"{len(reports)} reports, {bad} counterexamples", file=sys.stderr)
    return status


def cmd_dense_r(args, out: _Out) -> int:
    res = dense_r_max(_degseq(args.degseq), args.k, args.r, brute_force=args.brute_force,
                      max_n=args.n_max)
    if args.format == "json":
        out.json(res.to_json())
    else:
        out.line(str(res.value))
        out.line("subset " + ",".join(map(str, res.subset)))
        if res.brute_force_value is not None:
            out.line(f"brute-force {res.brute_force_value} over {res.trees_checked} trees")
    if res.brute_force_value is not None and res.brute_force_value != res.value:
        return 1
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json", "csv"), default="text")
    common.add_argument("--out", metavar="PATH", help="write output here instead of stdout")
    common.add_argument("--n-max", type=int, default=10, help="enumeration bound")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized sweeps")
    common.add_argument("--jobs", type=int, default=1, help="parallel workers for verify")

    p = argparse.ArgumentParser(prog="treewalks", description="Closed walks on trees and greedy-tree majorization.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", parents=[common], help="check a tree degree sequence")
    s.add_argument("degseq")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("greedy", parents=[common], help="greedy tree of a degree sequence")
    s.add_argument("degseq")
    s.set_defaults(func=cmd_greedy)

    s = sub.add_parser("enumerate", parents=[common], help="trees with a degree sequence")
    s.add_argument("degseq")
    s.add_argument("--labeled", action="store_true")
    s.set_defaults(func=cmd_enumerate)

    s = sub.add_parser("walks", parents=[common], help="closed-walk vector C(k;T)")
    s.add_argument("source", help="tree file, or degree sequence (its greedy tree)")
    s.add_argument("--k", type=int, required=True)
    s.set_defaults(func=cmd_walks)

    s = sub.add_parser("moments", parents=[common], help="spectral moments M_0..M_kmax")
    s.add_argument("source")
    s.add_argument("--k-max", type=int, default=10)
    s.set_defaults(func=cmd_moments)

    s = sub.add_parser("estrada", parents=[common], help="Estrada index by truncated series")
    s.add_argument("source")
    s.add_argument("--tol", type=float, default=1e-9)
    s.add_argument("--check", action="store_true", help="also report the eigenvalue value")
    s.set_defaults(func=cmd_estrada)

    s = sub.add_parser("majorize", parents=[common], help="compare two sequences")
    s.add_argument("alpha")
    s.add_argument("beta")
    s.add_argument("--no-pad", action="store_true")
    s.set_defaults(func=cmd_majorize)

    s = sub.add_parser("chain", parents=[common], help="unit-step majorization chain")
    s.add_argument("pi")
    s.add_argument("pi_prime")
    s.set_defaults(func=cmd_chain)

    s = sub.add_parser("verify", parents=[common], help="exhaustive theorem checks")
    s.add_argument("claims", nargs="+", help=f"any of {', '.join(CLAIMS)}")
    s.add_argument("--k", default="2,4")
    s.add_argument("--n-min", type=int, default=2)
    s.add_argument("--guard", type=int, default=10, help="largest n allowed (at most 12)")
    s.add_argument("--direction", choices=("forward", "any"), default="forward")
    s.add_argument("--k-max-strict", type=int, default=20)
    s.add_argument("--trials", type=int, default=10_000, help="random instances for the lemma claim")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("dense-r", parents=[common], help="max walk sum over r vertices")
    s.add_argument("degseq")
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--r", type=int, required=True)
    s.add_argument("--brute-force", action="store_true")
    s.set_defaults(func=cmd_dense_r)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    out = _Out(args.out)
    try:
        return args.func(args, out)
    except (TreeWalksError, OSError, ValueError) as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    finally:
        out.close()


if __name__ == "__main__":
    sys.exit(main())
