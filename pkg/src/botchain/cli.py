"""Command-line front door.

Every output stream starts with a reproduction header carrying the package
version, the seed actually used, and the effective configuration: JSONL gets
it as the first record, plain text and CSV as a leading "# " comment line,
SVG as an XML comment.  Outputs contain no timestamps, so identical
invocations produce identical bytes.

Exit codes: 0 success, 1 gate failure, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from dataclasses import asdict
from pathlib import Path

from . import __version__
from .chainfast import erasure_chain_fast
from .diagnostics import DiagnosticsReport, scaling_proxy, theta_gap_report
from .erasure import chain_records, coloring_rows, erasure_chain
from .growth import grow_chain_log
from .render import MODE_BRANCH, MODE_LEAF, ColorScale, render_frames, render_svg
from .rng import DEFAULT_MASTER, Seed
from .sampling import enumerate_trees, sample_uniform
from .tree import ParseError, canonical_encoding, parse_tree
from .verify import (
    grow_chi2_check,
    sampler_chi2_check,
    verify_suite,
)


def _default_master() -> int:
    raw = os.environ.get("BOT_SEED")
    if raw is None:
        return DEFAULT_MASTER
    try:
        return int(raw, 0)
    except ValueError:
        raise SystemExit(f"botchain: BOT_SEED is not an integer: {raw!r}")


def _seed(args) -> Seed:
    master = args.seed if args.seed is not None else _default_master()
    return Seed(master, getattr(args, "stream", 0) or 0)


def _header(args, seed: Seed | None) -> dict:
    config = {
        k: v
        for k, v in sorted(vars(args).items())
        if k not in ("func", "seed", "stream", "out") and v is not None
    }
    return {
        "version": __version__,
        "seed": None if seed is None else {"master": seed.master, "stream": seed.stream},
        "config": config,
    }


def _out_handle(path: str | None):
    if path is None or path == "-":
        return sys.stdout, False
    return open(path, "w", encoding="utf-8", newline="\n"), True


def _write_lines(path: str | None, lines) -> None:
    fh, close = _out_handle(path)
    try:
        for line in lines:
            fh.write(line + "\n")
    finally:
        if close:
            fh.close()


def _comment(header: dict) -> str:
    return "# " + json.dumps(header, sort_keys=True)


# ----------------------------------------------------------------------
# subcommands


def cmd_sample(args) -> int:
    seed = _seed(args)
    header = _header(args, seed)
    encodings = (
        canonical_encoding(sample_uniform(args.n, Seed(seed.master, seed.stream + i)))
        for i in range(args.count)
    )
    if args.format == "jsonl":
        lines = [json.dumps({"header": header}, sort_keys=True)]
        lines += (
            json.dumps({"index": i, "tree": enc}, sort_keys=True)
            for i, enc in enumerate(encodings)
        )
    else:
        lines = [_comment(header), *encodings]
    _write_lines(args.out, lines)
    return 0


def cmd_enumerate(args) -> int:
    try:
        trees = enumerate_trees(args.n)
    except ValueError as exc:
        print(f"botchain enumerate: {exc}", file=sys.stderr)
        return 2
    header = _header(args, None)
    if args.format == "jsonl":
        lines = [json.dumps({"header": header}, sort_keys=True)]
        lines += (
            json.dumps({"index": i, "tree": canonical_encoding(t)}, sort_keys=True)
            for i, t in enumerate(trees)
        )
    else:
        lines = [_comment(header)]
        lines += (canonical_encoding(t) for t in trees)
    _write_lines(args.out, lines)
    return 0


def _input_tree(args, seed: Seed):
    if args.tree is not None:
        return parse_tree(args.tree)
    if args.n is None:
        raise SystemExit("botchain: provide --tree or --n")
    return sample_uniform(args.n, seed)


def cmd_erase(args) -> int:
    seed = _seed(args)
    try:
        t = _input_tree(args, seed)
    except ParseError as exc:
        print(f"botchain erase: {exc}", file=sys.stderr)
        return 2
    header = _header(args, None if args.tree is not None else seed)
    header["tree"] = canonical_encoding(t)

    if args.coloring:
        chain = erasure_chain_fast(t)
        lines = [_comment(header), "node_id,node_kind,erasure_time"]
        lines += (f"{v},{kind},{time}" for v, kind, time in coloring_rows(t, chain))
        _write_lines(args.out, lines)
        return 0

    chain = erasure_chain(t, keep_snapshots=True) if args.snapshots else erasure_chain_fast(t)
    records = chain_records(chain)
    if args.snapshots:
        for rec in records:
            rec["tree"] = chain.trees[rec["k"]]
    lines = [json.dumps({"header": header}, sort_keys=True)]
    lines += (json.dumps(rec, sort_keys=True) for rec in records)
    _write_lines(args.out, lines)
    return 0


def cmd_grow(args) -> int:
    seed = _seed(args)
    header = _header(args, seed)
    if args.from_size > 0:
        # the start tree consumes the given stream; growth gets the next one
        start = sample_uniform(args.from_size, seed)
        t, log = grow_chain_log(args.to, Seed(seed.master, seed.stream + 1), start)
    else:
        t, log = grow_chain_log(args.to, seed)
    if args.emit == "replay-log":
        lines = [json.dumps({"header": header}, sort_keys=True)]
        size = args.from_size
        for opt in log:
            size += 1
            lines.append(
                json.dumps(
                    {"n": size, "j": opt.j, "anchor_label": opt.anchor_label, "side": opt.side},
                    sort_keys=True,
                )
            )
    else:
        lines = [_comment(header), canonical_encoding(t)]
    _write_lines(args.out, lines)
    return 0


def cmd_verify(args) -> int:
    status, report = verify_suite(args.level)
    if args.json:
        print(json.dumps(report, sort_keys=True, indent=2))
    else:
        for check in report["checks"]:
            mark = "ok " if check["ok"] else "FAIL"
            print(f"{mark} {check['name']:24s} {check['elapsed_s']:8.2f}s  {check['detail']}")
        print(f"{'all checks passed' if status == 0 else 'FAILURES PRESENT'}")
    return status


def _report_lines(report: DiagnosticsReport) -> list[str]:
    rows = [
        ("test", report.test_name),
        ("statistic", f"{report.statistic:.6g}"),
        ("threshold", f"{report.threshold:.6g}"),
        ("samples", str(report.n_samples)),
        ("verdict", report.verdict),
    ]
    rows += [(k, str(v)) for k, v in sorted(report.details.items())]
    width = max(len(k) for k, _ in rows)
    return [f"{k:<{width}}  {v}" for k, v in rows]


def cmd_stats(args) -> int:
    if args.fresh_seed:
        master = int.from_bytes(os.urandom(8), "big")
        seed = Seed(master, getattr(args, "stream", 0) or 0)
    else:
        seed = _seed(args)
    if args.n is None:
        args.n = {"scaling": 4096, "theta-gaps": 1024}.get(args.gate, 4)
    header = _header(args, seed)
    relevant = {
        "sampler-chi2": {"n", "samples"},
        "grow-chi2": {"n", "samples"},
        "scaling": {"n", "t", "trials", "no_rescale"},
        "theta-gaps": {"n", "ells"},
    }[args.gate] | {"command", "gate", "json", "csv", "fresh_seed"}
    header["config"] = {k: v for k, v in header["config"].items() if k in relevant}

    if args.gate == "sampler-chi2":
        report = sampler_chi2_check(args.n, args.samples, seed)
        csv_rows = [("cell", "count")]
    elif args.gate == "grow-chi2":
        report = grow_chi2_check(args.n, args.samples, seed)
        csv_rows = [("cell", "count")]
    elif args.gate == "scaling":
        report = scaling_proxy(
            args.n, args.t, args.trials, seed, rescale_reference=not args.no_rescale
        )
        csv_rows = None
    else:
        t = sample_uniform(args.n, seed)
        ells = [int(x) for x in args.ells.split(",")] if args.ells else None
        if ells is None:
            ells, ell = [], 2
            while ell <= t.size:
                ells.append(ell)
                ell *= 2
        report = theta_gap_report(t, ells)
        csv_rows = [("ell", "max_gap")] + [
            (str(l), f"{g:.8f}")
            for l, g in zip(report.details["ells"], report.details["max_gaps"])
        ]

    if args.csv and csv_rows:
        _write_lines(args.csv, [_comment(header)] + [",".join(r) for r in csv_rows])

    if args.json:
        print(json.dumps({"header": header, "report": asdict(report)}, sort_keys=True))
    else:
        print(_comment(header))
        for line in _report_lines(report):
            print(line)
    return 0 if report.passed else 1


def cmd_render(args) -> int:
    seed = _seed(args)
    try:
        t = _input_tree(args, seed)
    except ParseError as exc:
        print(f"botchain render: {exc}", file=sys.stderr)
        return 2
    header = _header(args, None if args.tree is not None else seed)
    chain = erasure_chain_fast(t)
    scale = ColorScale.for_tree(args.mode, chain.size)

    if args.frames is not None:
        if args.frames < 2:
            print("botchain render: --frames must be at least 2", file=sys.stderr)
            return 2
        if args.out is None:
            print("botchain render: --frames needs --out DIR", file=sys.stderr)
            return 2
        delta = max(1, math.ceil(chain.size / (args.frames - 1)))
        out_dir = Path(args.out)
        out_dir.mkdir(parents=True, exist_ok=True)
        for size, doc in render_frames(t, chain, scale, delta, metadata=header):
            (out_dir / f"frame_{size:05d}.svg").write_text(doc, encoding="utf-8")
        return 0

    doc = render_svg(t, chain, scale, metadata=header)
    fh, close = _out_handle(args.out)
    try:
        fh.write(doc)
    finally:
        if close:
            fh.close()
    return 0


# ----------------------------------------------------------------------
# parser


def _add_seed_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--seed", type=lambda s: int(s, 0), default=None,
                   help="master seed (default: BOT_SEED env or the built-in constant)")
    p.add_argument("--stream", type=int, default=0, help="stream index (default 0)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="botchain",
        description="Best-of-three erasure chains on labeled binary plane trees.",
    )
    parser.add_argument("--version", action="version", version=f"botchain {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sample", help="draw uniform labeled trees")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--count", type=int, default=1)
    p.add_argument("--format", choices=("canonical", "jsonl"), default="canonical")
    p.add_argument("--out", default=None)
    _add_seed_args(p)
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("enumerate", help="list every labeled tree of a small size")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--format", choices=("canonical", "jsonl"), default="canonical")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("erase", help="run the full erasure chain")
    p.add_argument("--tree", default=None, help="canonical encoding of the input tree")
    p.add_argument("--n", type=int, default=None, help="sample an input tree of this size")
    p.add_argument("--snapshots", action="store_true", help="include the tree after each step")
    p.add_argument("--coloring", action="store_true",
                   help="emit the node_id,node_kind,erasure_time CSV instead of step records")
    p.add_argument("--out", default=None)
    _add_seed_args(p)
    p.set_defaults(func=cmd_erase)

    p = sub.add_parser("grow", help="grow a uniform tree one inverse step at a time")
    p.add_argument("--to-size", dest="to", type=int, required=True, help="target size")
    p.add_argument("--from-size", type=int, default=0,
                   help="start from a uniform tree of this size instead of size 0")
    p.add_argument("--emit", choices=("final", "replay-log"), default="final",
                   help="final tree encoding or the JSONL log of growth moves")
    p.add_argument("--out", default=None)
    _add_seed_args(p)
    p.set_defaults(func=cmd_grow)

    p = sub.add_parser("verify", help="run the correctness gate battery")
    p.add_argument("--level", choices=("quick", "exhaustive"), default="quick")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("stats", help="statistical gates and summaries")
    p.add_argument("--gate", choices=("sampler-chi2", "grow-chi2", "scaling", "theta-gaps"),
                   required=True)
    p.add_argument("--n", type=int, default=None,
                   help="instance size (default 4 for chi-square, 4096 scaling, 1024 theta)")
    p.add_argument("--samples", type=int, default=100_000,
                   help="sample or chain count for the chi-square gates")
    p.add_argument("--t", type=float, default=0.25, help="time fraction for the scaling gate")
    p.add_argument("--trials", type=int, default=400, help="trials for the scaling gate")
    p.add_argument("--no-rescale", action="store_true",
                   help="drop the sqrt(t) factor (negative control; expected to fail)")
    p.add_argument("--ells", default=None, help="comma-separated span sizes for theta-gaps")
    p.add_argument("--json", action="store_true")
    p.add_argument("--csv", default=None, help="write plot data to this CSV file")
    p.add_argument("--fresh-seed", action="store_true",
                   help="use an OS-random seed instead of the recorded one")
    _add_seed_args(p)
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("render", help="SVG of a tree colored by erasure time")
    p.add_argument("--tree", default=None)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--mode", choices=(MODE_LEAF, MODE_BRANCH), default=MODE_LEAF)
    p.add_argument("--frames", type=int, default=None,
                   help="emit this many frames of the shrinking tree into --out DIR")
    p.add_argument("--out", default=None)
    _add_seed_args(p)
    p.set_defaults(func=cmd_render)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except SystemExit:
        raise
    except BrokenPipeError:
        return 0
    except ValueError as exc:
        print(f"botchain {args.command}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
