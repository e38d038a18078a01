"""symcheck command line: list, analyze, verify, element.

Exit codes: 0 pass, 1 verification failure, 2 usage or input error,
3 internal invariant violation.
"""

from __future__ import annotations

import argparse
import json
import sys

from .catalog import ENTRY_IDS, UnknownPair, get_entry
from .cayley import CayleyError, Convention
from .criteria import build_context
from .lie import Element
from .linalg import LinAlgError, Matrix
from .report import (
    RunConfig,
    build_report,
    element_report,
    render_element_markdown,
    render_json,
    render_markdown,
)
from .scalar import ParseError, parse_scalar
from .sl2 import InvariantViolation
from .theta import StructureError

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 3


class InputError(ValueError):
    pass


def _global_flags(defaults: bool) -> argparse.ArgumentParser:
    # shared by the top-level parser and every subcommand, so flags may go on either side
    d = (lambda v: v) if defaults else (lambda v: argparse.SUPPRESS)
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--seed", type=int, default=d(0), help="global random seed (default 0)")
    p.add_argument("--samples", type=int, default=d(100), help="samples per randomized check (default 100)")
    p.add_argument("--convention", choices=["adjusted", "paper"], default=d("adjusted"),
                   help="Cayley sign convention (default adjusted)")
    p.add_argument("--format", choices=["md", "json"], default=d("md"), help="output format (default md)")
    p.add_argument("--parallel", action="store_true", default=d(False), help="run pairs in worker processes")
    return p


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="symcheck",
        description="Exact checks of nilpotent-orbit criteria on a catalog of symmetric pairs.",
        parents=[_global_flags(True)],
    )
    sub = parser.add_subparsers(dest="command", required=True)
    flags = _global_flags(False)
    sub.add_parser("list", parents=[flags], help="list catalog pairs")
    a = sub.add_parser("analyze", parents=[flags], help="full report for one pair")
    a.add_argument("pair_id")
    v = sub.add_parser("verify", parents=[flags], help="verify selected pairs (default all)")
    v.add_argument("selection", nargs="?", default=None, help="'all' or a comma-separated id list")
    v.add_argument("--pairs", default=None, help="'all' or a comma-separated id list")
    e = sub.add_parser("element", parents=[flags], help="classify a user-supplied element")
    e.add_argument("pair_id")
    e.add_argument("--file", required=True, help='JSON file with {"matrix": ...} or {"coords": ...}')
    return parser


def _resolve_pairs(text: str | None) -> tuple:
    if text is None or text == "all":
        return ENTRY_IDS
    ids = tuple(sorted({t.strip() for t in text.split(",") if t.strip()}))
    for pid in ids:
        if pid not in ENTRY_IDS:
            raise UnknownPair(pid)
    if not ids:
        raise InputError("empty pair selection")
    return ids


def _scalar(value):
    if isinstance(value, bool) or not isinstance(value, (int, str)):
        raise InputError(f"scalar entries must be strings or integers, got {value!r}")
    return parse_scalar(str(value))


def load_element(pair_id: str, path: str) -> Element:
    alg = get_entry(pair_id).algebra
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read {path}: {exc}") from None
    if not isinstance(data, dict) or len(data) != 1 or next(iter(data)) not in ("matrix", "coords"):
        raise InputError('element file must hold exactly one key, "matrix" or "coords"')
    key, value = next(iter(data.items()))
    if key == "coords":
        if not isinstance(value, list) or len(value) != alg.dim:
            raise InputError(f"coords must be a list of {alg.dim} scalars")
        return alg.element([_scalar(v) for v in value])
    n = alg.matrix_size
    if not isinstance(value, list) or len(value) != n or any(not isinstance(r, list) or len(r) != n for r in value):
        raise InputError(f"matrix must be {n}x{n}")
    m = Matrix([[_scalar(v) for v in row] for row in value])
    try:
        return alg.from_matrix(m)
    except LinAlgError as exc:
        raise InputError(f"matrix is not in {alg.name}: {exc}") from None


def cmd_list() -> str:
    lines = ["| id | g | k | p | r | real form |", "|---|---|---|---|---|---|"]
    for pid in ENTRY_IDS:
        ctx = build_context(get_entry(pid))
        d = ctx.pair.dims
        rf = ctx.pair.entry.real_form_name if ctx.pair.entry.real_form else "none"
        lines.append(f"| {pid} | {d['g']} | {d['k']} | {d['p']} | {ctx.cartan.r} | {rf} |")
    return "\n".join(lines) + "\n"


def _run(args) -> int:
    convention = Convention(args.convention)
    if args.command == "list":
        sys.stdout.write(cmd_list())
        return EXIT_OK
    if args.command == "element":
        x = load_element(args.pair_id, args.file)
        config = RunConfig((args.pair_id,), args.seed, args.samples, convention, args.format)
        rep = element_report(args.pair_id, x, config)
        sys.stdout.write(render_json(rep) if args.format == "json" else render_element_markdown(rep))
        return EXIT_OK
    if args.command == "analyze":
        pairs = _resolve_pairs(args.pair_id)
    else:
        if args.selection is not None and args.pairs is not None:
            raise InputError("give the pair selection once")
        pairs = _resolve_pairs(args.pairs if args.pairs is not None else args.selection)
    config = RunConfig(pairs, args.seed, args.samples, convention, args.format, args.parallel)
    report = build_report(config)
    sys.stdout.write(render_json(report) if args.format == "json" else render_markdown(report))
    for p in report["pairs"]:
        for msg in p["failures"]:
            print(f"FAIL {p['id']}: {msg}", file=sys.stderr)
    return EXIT_OK if report["passed"] else EXIT_FAIL


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.samples < 1:
        print("symcheck: --samples must be at least 1", file=sys.stderr)
        return EXIT_USAGE
    try:
        return _run(args)
    except UnknownPair as exc:
        print(f"symcheck: unknown pair id {exc.args[0]!r}; known: {', '.join(ENTRY_IDS)}", file=sys.stderr)
        return EXIT_USAGE
    except (InputError, ParseError) as exc:
        print(f"symcheck: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (InvariantViolation, StructureError, CayleyError, LinAlgError) as exc:
        print(f"symcheck: internal invariant violation: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
