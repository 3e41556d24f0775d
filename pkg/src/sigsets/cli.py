"""Command-line entry point wiring the pipeline end to end.

    sigsets gen-corpus  seeded synthetic corpus -> JSONL
    sigsets build       corpus -> instruction-subset family atlas
    sigsets eval        corpus + atlas -> CSV/JSON/SVG report
    sigsets synth       test cases + atlas -> program
    sigsets signatures  list the 225 production signatures

Exit codes: 0 success, 1 data/provenance error, 2 usage error,
3 synthesis found nothing within budget.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .catalog import load_catalog
from .corpus import (
    corpus_stats,
    derive_unit_subsets,
    generate_synthetic_corpus,
    load_corpus,
    write_corpus,
)
from .errors import DataError, InvalidParameter
from .evaluation import run_evaluation
from .families import atlas_stats, build_atlas, load_atlas, save_atlas
from .report import emit_report
from .synth import (
    DEFAULT_MAX_DEPTH,
    DEFAULT_MAX_NODES,
    DEFAULT_PER_SUBSET_BUDGET,
    load_cases,
    synthesize,
)
from .typesig import enumerate_production_signatures

EXIT_OK = 0
EXIT_DATA = 1
EXIT_USAGE = 2
EXIT_NOT_FOUND = 3


def _parse_group_size(text: str) -> tuple[int, int]:
    try:
        lo, _, hi = text.partition(":")
        return int(lo), int(hi if hi else lo)
    except ValueError:
        raise InvalidParameter(f"--group-size must be LO:HI, got {text!r}") from None


def cmd_gen_corpus(args: argparse.Namespace) -> int:
    cat = load_catalog(args.catalog)
    records = generate_synthetic_corpus(
        seed=args.seed,
        n_pus=args.pus,
        cat=cat,
        zipf_exponent=args.zipf,
        n_cooccurrence_groups=args.groups,
        group_size_range=_parse_group_size(args.group_size),
        cap=args.cap,
    )
    write_corpus(records, args.out)
    derivation = derive_unit_subsets(records, cat, cap=None)
    stats = corpus_stats(derivation.subsets, cap=args.cap)
    print(f"wrote {len(records)} program units to {args.out}")
    print(
        f"unique subsets: {len(derivation.subsets)}, signatures: {len(stats.per_signature)}, "
        f"fraction within cap {args.cap}: {stats.fraction_within_cap:.3f}"
    )
    return EXIT_OK


def cmd_build(args: argparse.Namespace) -> int:
    cat = load_catalog(args.catalog)
    records = load_corpus(args.corpus, cat)
    derivation = derive_unit_subsets(records, cat, cap=args.cap)
    atlas = build_atlas(
        derivation.subsets, cat, cap=args.cap, amplify_factor=args.amplify_factor, seed=args.seed
    )
    save_atlas(atlas, args.out)
    print(f"built atlas from {len(records)} program units ({derivation.oversize_discarded} oversize discarded)")
    print(
        f"baseline: {len(atlas.baseline)} subsets; "
        f"signature families: {len(atlas.by_signature)}; wrote {args.out}"
    )
    return EXIT_OK


def cmd_eval(args: argparse.Namespace) -> int:
    cat = load_catalog(args.catalog)
    atlas = load_atlas(args.atlas)
    records = load_corpus(args.corpus, cat)
    subsets = derive_unit_subsets(records, cat, cap=atlas.cap).subsets
    report = run_evaluation(atlas, subsets, threads=args.threads)
    formats = [f.strip() for f in args.formats.split(",") if f.strip()]
    written = emit_report(report, atlas_stats(atlas), args.out_dir, formats)
    t = report.totals
    print(f"evaluated {t['n_pus']} program units over {len(report.rows)} signatures")
    print(f"T1={t['T1']} T2={t['T2']} T3={t['T3']}")
    print(
        "reduction log10: signatures="
        f"{report.reductions['signatures_log10']} "
        f"reordered={report.reductions['signatures_reordered_log10']}"
    )
    for kind, path in sorted(written.items()):
        print(f"wrote {kind}: {path}")
    return EXIT_OK


def cmd_synth(args: argparse.Namespace) -> int:
    cat = load_catalog(args.catalog)
    atlas = load_atlas(args.atlas)
    cases = load_cases(args.cases)
    result = synthesize(
        cases,
        atlas,
        cat,
        max_depth=args.max_depth,
        max_nodes=args.max_nodes,
        per_subset_budget=args.budget,
    )
    print(json.dumps(result.to_dict(), sort_keys=True, indent=2))
    return EXIT_OK if result.found else EXIT_NOT_FOUND


def cmd_signatures(args: argparse.Namespace) -> int:
    for sig in enumerate_production_signatures():
        print(sig.canonical())
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sigsets",
        description="Instruction-subset families keyed by type signatures.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen-corpus", help="generate a seeded synthetic corpus")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--pus", type=int, required=True, help="number of program units")
    p.add_argument("--catalog", required=True)
    p.add_argument("--zipf", type=float, default=1.0)
    p.add_argument("--groups", type=int, default=20)
    p.add_argument("--group-size", default="3:12", help="co-occurrence group size range LO:HI")
    p.add_argument("--cap", type=int, default=10)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_gen_corpus)

    p = sub.add_parser("build", help="build a family atlas from a corpus")
    p.add_argument("--corpus", required=True)
    p.add_argument("--catalog", required=True)
    p.add_argument("--cap", type=int, default=10)
    p.add_argument("--amplify-factor", type=float, default=3.0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("eval", help="run the leading-subset evaluation and emit reports")
    p.add_argument("--corpus", required=True)
    p.add_argument("--catalog", required=True)
    p.add_argument("--atlas", required=True)
    p.add_argument("--out-dir", required=True)
    p.add_argument("--formats", default="csv,json,svg")
    p.add_argument(
        "--threads", type=int, default=max(1, os.cpu_count() or 1),
        help="worker cap for the per-signature evaluation map",
    )
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("synth", help="synthesize a program from test cases")
    p.add_argument("--cases", required=True)
    p.add_argument("--atlas", required=True)
    p.add_argument("--catalog", required=True)
    p.add_argument("--max-depth", type=int, default=DEFAULT_MAX_DEPTH)
    p.add_argument("--max-nodes", type=int, default=DEFAULT_MAX_NODES)
    p.add_argument("--budget", type=int, default=DEFAULT_PER_SUBSET_BUDGET)
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("signatures", help="list all 225 production type signatures")
    p.set_defaults(func=cmd_signatures)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InvalidParameter as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DataError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
