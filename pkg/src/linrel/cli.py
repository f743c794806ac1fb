"""``linrel`` command-line front end.

Reports go to standard output as JSON, diagnostics to standard error.
Exit codes: 0 success, 1 falsification (``verify``) or failed check
(``check`` of a pair), 2 bad input or configuration.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import harness
from .dualpair import DualPair, NotADualPair, analyze
from .errors import HypothesisError, PreconditionError
from .extension import (
    NotAnExtension,
    ProperExtension,
    correctness_probe,
    extension_report,
)
from .io import SchemaError, dump_json, load_relation, relation_to_json, serialize_relation
from .linalg import DimensionMismatch
from .relation import (
    arens_decompose,
    deficiency,
    is_hermitian,
    is_selfadjoint,
    product,
    von_neumann_check,
)


class UsageError(Exception):
    pass


def _unsigned(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if not 0 <= v < 2**64:
        raise argparse.ArgumentTypeError("expected a 64-bit unsigned integer")
    return v


def _positive(text: str) -> int:
    v = _unsigned(text)
    if v < 1:
        raise argparse.ArgumentTypeError("expected a positive integer")
    return v


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="linrel", description="Exact calculus of linear relations.")
    sub = ap.add_subparsers(dest="verb", required=True, metavar="VERB")

    def with_output(p):
        p.add_argument("--output", type=Path, help="write the report here instead of stdout")
        return p

    p = with_output(sub.add_parser("adjoint", help="adjoint relation T*"))
    p.add_argument("relation", type=Path)

    p = with_output(sub.add_parser("decompose", help="operator and multivalued parts"))
    p.add_argument("relation", type=Path)

    p = with_output(sub.add_parser("product", help="product relation AT"))
    p.add_argument("left", type=Path, help="A")
    p.add_argument("right", type=Path, help="T")

    p = with_output(sub.add_parser(
        "check", help="relation properties, or dual-pair validity when given two files"))
    p.add_argument("relation", type=Path)
    p.add_argument("partner", type=Path, nargs="?")

    p = with_output(sub.add_parser("analyze", help="full dual-pair report"))
    p.add_argument("a", type=Path)
    p.add_argument("b", type=Path)
    p.add_argument("--override-hypotheses", action="store_true")

    p = with_output(sub.add_parser("extend", help="extension report, or search for one"))
    p.add_argument("a", type=Path)
    p.add_argument("b", type=Path)
    p.add_argument("extension", type=Path, nargs="?",
                   help="Ã; without it a quasi-selfadjoint extension is searched for")
    p.add_argument("--budget", type=_positive, default=100)
    p.add_argument("--seed", type=_unsigned, default=0)
    p.add_argument("--override-hypotheses", action="store_true")

    p = with_output(sub.add_parser("verify", help="run a seeded verification campaign"))
    p.add_argument("--seed", type=_unsigned, default=0)
    p.add_argument("--trials", type=_unsigned, default=100)
    p.add_argument("--dim-min", type=_positive, default=1)
    p.add_argument("--dim-max", type=_positive, default=6)
    p.add_argument("--entry-bound", type=_positive, default=3)
    p.add_argument("--strategy", choices=harness.STRATEGIES, default="free")
    p.add_argument("--suite", action="append", choices=harness.SUITES,
                   help="repeatable; default: every suite")
    p.add_argument("--workers", type=_positive, default=1)
    p.add_argument("--override-hypotheses", action="store_true",
                   help="also evaluate and record checks outside their hypotheses")
    return ap


def _pair(args) -> DualPair:
    a = load_relation(args.a)
    b = load_relation(args.b)
    try:
        return DualPair(a, b)
    except NotADualPair as exc:
        raise UsageError(f"{args.a}, {args.b}: {exc}") from None


def _cmd_adjoint(args):
    return serialize_relation(load_relation(args.relation).star), 0


def _cmd_decompose(args):
    op, multi = arens_decompose(load_relation(args.relation))
    return dump_json({"op_part": relation_to_json(op), "multi_part": relation_to_json(multi)}), 0


def _cmd_product(args):
    a = load_relation(args.left)
    t = load_relation(args.right)
    try:
        return serialize_relation(product(a, t)), 0
    except DimensionMismatch as exc:
        raise UsageError(str(exc)) from None


def _cmd_check(args):
    t = load_relation(args.relation)
    if args.partner is None:
        herm = is_hermitian(t)
        doc = {
            "dim": t.dim,
            "hermitian": herm,
            "selfadjoint": is_selfadjoint(t),
            "deficiency": list(deficiency(t)) if herm else None,
            "von_neumann": von_neumann_check(t) if herm else None,
        }
        return dump_json(doc), 0
    b = load_relation(args.partner)
    if b.space_dim != t.space_dim:
        raise UsageError(f"space dimensions differ: {t.space_dim} vs {b.space_dim}")
    try:
        DualPair(t, b)
    except NotADualPair as exc:
        (f, g), (h, k) = exc.witness
        witness = {"a": {"x": [c.to_text() for c in f], "y": [c.to_text() for c in g]},
                   "b": {"x": [c.to_text() for c in h], "y": [c.to_text() for c in k]}}
        return dump_json({"dual_pair": False, "witness": witness}), 1
    return dump_json({"dual_pair": True, "witness": None}), 0


def _cmd_analyze(args):
    return dump_json(analyze(_pair(args), override=args.override_hypotheses)), 0


def _cmd_extend(args):
    p = _pair(args)
    if args.extension is not None:
        ext = load_relation(args.extension)
        if ext.space_dim != p.space_dim:
            raise UsageError(f"{args.extension}: space dimension {ext.space_dim}, expected {p.space_dim}")
        try:
            e = ProperExtension(p, ext)
        except NotAnExtension as exc:
            raise UsageError(f"{args.extension}: {exc}") from None
        return dump_json(extension_report(e, override=args.override_hypotheses)), 0
    res = correctness_probe(p, args.budget, args.seed)
    doc = {
        "found": res.found,
        "tried": res.tried,
        "parity": res.parity_ok,
        "witness": relation_to_json(res.witness.ext) if res.found else None,
        "report": extension_report(res.witness, override=args.override_hypotheses) if res.found else None,
    }
    return dump_json(doc), 0


def _cmd_verify(args):
    try:
        cfg = harness.GenConfig(
            seed=args.seed,
            dim_min=args.dim_min,
            dim_max=args.dim_max,
            entry_bound=args.entry_bound,
            strategy=args.strategy,
            trials=args.trials,
        )
    except harness.ConfigError as exc:
        raise UsageError(str(exc)) from None
    suites = args.suite or list(harness.SUITES)
    report = harness.run_campaign(cfg, suites, workers=args.workers,
                                  override=args.override_hypotheses)
    code = harness.exit_code(report)
    print(f"trials={report['trials']} population={report['population']} "
          f"starved={report['starved']} falsifications={len(report['falsifications'])}",
          file=sys.stderr)
    return harness.report_json(report), code


_COMMANDS = {
    "adjoint": _cmd_adjoint,
    "decompose": _cmd_decompose,
    "product": _cmd_product,
    "check": _cmd_check,
    "analyze": _cmd_analyze,
    "extend": _cmd_extend,
    "verify": _cmd_verify,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        text, code = _COMMANDS[args.verb](args)
    except (SchemaError, UsageError, HypothesisError, PreconditionError) as exc:
        print(f"linrel {args.verb}: error: {exc}", file=sys.stderr)
        return 2
    if args.output is not None:
        try:
            args.output.write_text(text, encoding="utf-8")
        except OSError as exc:
            print(f"linrel {args.verb}: error: {args.output}: {exc.strerror}", file=sys.stderr)
            return 2
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
