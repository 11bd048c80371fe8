"""Command-line front end.

Subcommands: ``build`` (canonical JSON tree document), ``verify``
(invariant suite, optionally over a random corpus), ``ends``
(classification table for branch policies), ``export`` (DOT graph).

Exit codes: 0 ok, 1 invariant failure, 2 bad spec/input, 3 node budget
exceeded, 4 depth too shallow to certify.
"""

from __future__ import annotations

import argparse
import sys
from typing import Optional

from .document import build_document, dumps_canonical, export_dot
from .ends import (
    ChainHop,
    EndPolicy,
    FollowLabel,
    HopRule,
    classify,
    genus_profile,
    local_genus_upper,
)
from .errors import (
    DepthTooShallowError,
    PolicyError,
    ResourceError,
    SpecSyntaxError,
    SpecValueError,
)
from .genus_spec import parse_spec
from .verify import corpus, run_suite

EXIT_OK = 0
EXIT_INVARIANT = 1
EXIT_SPEC = 2
EXIT_BUDGET = 3
EXIT_DEPTH = 4


def _write(text: str, out: Optional[str]) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)


def cmd_build(args: argparse.Namespace) -> int:
    spec = parse_spec(args.spec)
    doc = build_document(spec, args.stages, budget=args.budget)
    _write(dumps_canonical(doc), args.out)
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    specs = [parse_spec(args.spec)]
    if args.corpus:
        specs.extend(corpus(args.corpus, seed=args.seed))
    failed = False
    for spec in specs:
        results = run_suite(spec, args.stages, budget=args.budget)
        print(f"spec {spec.render()}")
        for result in results:
            print("  " + result.line())
        if not all(r.passed for r in results):
            failed = True
            break
    return EXIT_INVARIANT if failed else EXIT_OK


def cmd_ends(args: argparse.Namespace) -> int:
    spec = parse_spec(args.spec)
    policies: list[EndPolicy] = []
    for token in args.labels.split(","):
        token = token.strip()
        if not token.isdigit() or int(token) < 1:
            raise SpecSyntaxError(f"bad label {token!r}")
        policies.append(EndPolicy(tail=FollowLabel(int(token))))
    if args.chain_hop:
        policies.append(EndPolicy(tail=ChainHop(HopRule(args.chain_hop))))

    header = f"{'policy':<22} {'genus profile':<34} {'upper':>5}  {'class':<9} provenance"
    print(header)
    for policy in policies:
        profile = genus_profile(spec, policy, args.depth, budget=args.budget)
        upper = local_genus_upper(spec, policy, args.depth, budget=args.budget)
        cls = classify(spec, policy, budget=args.budget)
        seq = ",".join(str(g) for g in profile.stages)
        if len(seq) > 26:
            seq = seq[:23] + "..."
        summary = f"{seq} sup={profile.sup_so_far}"
        exact = str(cls.genus_exact)
        print(
            f"{policy.render():<22} {summary:<34} {str(upper):>5}  "
            f"{cls.kind:<9} exact={exact}; {cls.provenance}"
        )
    return EXIT_OK


def cmd_export(args: argparse.Namespace) -> int:
    if args.format != "dot":
        raise SpecSyntaxError(f"unknown export format {args.format!r}")
    spec = parse_spec(args.spec)
    text = export_dot(
        spec, args.stages, highlight_label=args.highlight_label, budget=args.budget
    )
    _write(text, args.out)
    return EXIT_OK


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cantorforge",
        description="Build and analyze nested handlebody stage sequences.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_build = sub.add_parser("build", help="write a canonical JSON tree document")
    p_build.add_argument("--spec", required=True)
    p_build.add_argument("--stages", type=int, required=True)
    p_build.add_argument("--out", default=None)
    p_build.add_argument("--budget", type=int, default=None)
    p_build.set_defaults(func=cmd_build)

    p_verify = sub.add_parser("verify", help="run the invariant suite")
    p_verify.add_argument("--spec", required=True)
    p_verify.add_argument("--stages", type=int, required=True)
    p_verify.add_argument("--corpus", type=int, default=0)
    p_verify.add_argument("--seed", type=int, default=0xC4A7)
    p_verify.add_argument("--budget", type=int, default=None)
    p_verify.set_defaults(func=cmd_verify)

    p_ends = sub.add_parser("ends", help="classify branch policies")
    p_ends.add_argument("--spec", required=True)
    p_ends.add_argument("--labels", required=True)
    p_ends.add_argument("--chain-hop", default=None)
    p_ends.add_argument("--depth", type=int, required=True)
    p_ends.add_argument("--budget", type=int, default=None)
    p_ends.set_defaults(func=cmd_ends)

    p_export = sub.add_parser("export", help="export the stage graph")
    p_export.add_argument("--spec", required=True)
    p_export.add_argument("--stages", type=int, required=True)
    p_export.add_argument("--format", default="dot")
    p_export.add_argument("--highlight-label", type=int, default=None)
    p_export.add_argument("--out", default=None)
    p_export.add_argument("--budget", type=int, default=None)
    p_export.set_defaults(func=cmd_export)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (SpecSyntaxError, SpecValueError, PolicyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SPEC
    except ResourceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except DepthTooShallowError as exc:
        print(f"error: {exc}; raise --depth", file=sys.stderr)
        return EXIT_DEPTH


if __name__ == "__main__":
    sys.exit(main())
