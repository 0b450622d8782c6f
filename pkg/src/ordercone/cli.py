"""``ordercone`` command line: gen, check, verify-paper.

Exit codes: 0 for a true verdict or a clean campaign, 1 for a false verdict
or campaign failures, 2 for input errors.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from pathlib import Path

from . import __version__
from .band import DEFAULT_PROBES
from .campaign import CAMPAIGN_KINDS, SABOTAGE_MODES, parse_dims, run_campaign
from .exact import parse_vector
from .genlab import InstanceSpec, gen_direct_sum, gen_l1_cone, gen_random_cone, gen_simplicial
from .queries import QUERIES, run_query

EXIT_TRUE, EXIT_FALSE, EXIT_INPUT = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_INPUT)


def _gen(args) -> int:
    kind = args.kind
    try:
        if kind == "simplicial":
            inst = gen_simplicial(_need(args.n, "--n", 1), args.seed)
        elif kind == "direct-sum":
            blocks = tuple(args.blocks.split(",")) if args.blocks else None
            if blocks is not None and len(blocks) != 2:
                raise ValueError("--blocks takes two comma-separated block kinds")
            inst = gen_direct_sum(_need(args.n1, "--n1", 1), _need(args.n2, "--n2", 1), args.seed,
                                  blocks=blocks, basis_change=not args.no_basis_change)
        elif kind == "l1":
            inst = gen_l1_cone(_need(args.m, "--m", 2))
        else:
            n = _need(args.n, "--n", 2)
            k = args.k if args.k is not None else n + 1
            if k < n:
                raise ValueError("--k must be at least --n")
            inst = gen_random_cone(n, k, args.seed)
    except (ValueError, RuntimeError) as exc:
        print(f"ordercone gen: {exc}", file=sys.stderr)
        return EXIT_INPUT
    text = inst.dumps()
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    print(inst.canonical_hash(), file=sys.stderr if not args.out else sys.stdout)
    return 0


def _need(value, flag, minimum):
    if value is None:
        raise ValueError(f"{flag} is required for this kind")
    if value < minimum:
        raise ValueError(f"{flag} must be at least {minimum}")
    return value


def _check(args) -> int:
    try:
        data = json.loads(Path(args.instance).read_text())
        inst = InstanceSpec.from_json(data)
        vectors = [parse_vector(v) for v in args.vectors]
        result = run_query(inst.cone, args.query, vectors, inst.projection)
    except (OSError, ValueError, KeyError, TypeError, ZeroDivisionError) as exc:
        print(json.dumps({"error": str(exc)}), file=sys.stderr)
        return EXIT_INPUT
    print(json.dumps(result, sort_keys=True))
    return EXIT_TRUE if result["holds"] else EXIT_FALSE


def _verify(args) -> int:
    try:
        dims = parse_dims(args.dims)
    except ValueError as exc:
        print(f"ordercone verify-paper: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if args.trials < 1:
        print("ordercone verify-paper: --trials must be at least 1", file=sys.stderr)
        return EXIT_INPUT
    kinds = tuple(args.kind.split(",")) if args.kind else CAMPAIGN_KINDS[:4]
    bad = [k for k in kinds if k not in CAMPAIGN_KINDS]
    if bad:
        print(f"ordercone verify-paper: unknown kind(s) {bad}", file=sys.stderr)
        return EXIT_INPUT
    report = run_campaign(dims=dims, trials=args.trials, seed=args.seed, probes=args.probes,
                          kinds=kinds, sabotage=args.sabotage)
    payload = report.to_json()
    if args.out:
        Path(args.out).write_text(json.dumps(payload, indent=1, sort_keys=True) + "\n")
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        print(report.summary())
    return report.exit_code


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="ordercone", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"ordercone {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    g = sub.add_parser("gen", help="generate a seeded instance file")
    g.add_argument("--kind", required=True, choices=("simplicial", "direct-sum", "l1", "random"))
    g.add_argument("--n", type=int, help="dimension (simplicial, random)")
    g.add_argument("--n1", type=int, help="range block dimension (direct-sum)")
    g.add_argument("--n2", type=int, help="kernel block dimension (direct-sum)")
    g.add_argument("--m", type=int, help="l1 cone parameter; the cone lives in dimension m+1")
    g.add_argument("--k", type=int, help="number of rays (random)")
    g.add_argument("--blocks", help="two block kinds for direct-sum, e.g. l1,orthant")
    g.add_argument("--no-basis-change", action="store_true", help="direct-sum without conjugation")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--out", help="output path (default: stdout)")
    g.set_defaults(func=_gen)

    c = sub.add_parser("check", help="run one decision on an instance file")
    c.add_argument("instance")
    c.add_argument("query", choices=sorted(QUERIES))
    c.add_argument("vectors", nargs="*", help='comma-separated rationals, e.g. "1,-1/2,0"')
    c.set_defaults(func=_check)

    v = sub.add_parser("verify-paper", help="seeded campaign over every claim")
    v.add_argument("--dims", default="2..6")
    v.add_argument("--trials", type=int, default=100)
    v.add_argument("--seed", type=int, default=1)
    v.add_argument("--probes", type=int, default=DEFAULT_PROBES)
    v.add_argument("--kind", help=f"comma list from {','.join(CAMPAIGN_KINDS)}")
    v.add_argument("--json", action="store_true", help="print the report as JSON")
    v.add_argument("--out", help="write the JSON report here")
    v.add_argument("--sabotage", choices=SABOTAGE_MODES, help=argparse.SUPPRESS)
    v.set_defaults(func=_verify)
    return p


_NEGATIVE_VECTOR = re.compile(r"^-[0-9]")


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    # argparse reads "-1,0,1" or "-1/2" as an option; plain "-1" it already handles
    argv = [" " + a if _NEGATIVE_VECTOR.match(a) and ("," in a or "/" in a) else a for a in argv]
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    raise SystemExit(main())
