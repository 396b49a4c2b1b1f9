"""Command line front end.

Exit status: 0 analysed, 2 design flagged (dependent or special position),
1 input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence

from .bracket import FanError, enumerate_ab_fans, pure_condition_bracket
from .exact import fraction_str
from .factoring import FactoringError
from .gc import GCError, evaluate, parse_certificate
from .graph import GraphDocument, GraphFormatError, TieDown, apply_tie_down, parse_document
from .report import audit, colored, render_figures
from .rigidity import LabelError, parse_labeling, pure_condition_float, pure_condition_value, stresses

OK, INPUT_ERROR, FLAGGED = 0, 1, 2


class InputError(Exception):
    pass


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from exc


def _document(path: str) -> GraphDocument:
    try:
        return parse_document(_read(path))
    except GraphFormatError as exc:
        raise InputError(f"{path}: {exc}") from exc


def _labels(path: str):
    try:
        return parse_labeling(_read(path))
    except LabelError as exc:
        raise InputError(f"{path}: {exc}") from exc


def _tie_down(doc: GraphDocument, args) -> TieDown:
    if args.tie_down is not None:
        if not 1 <= args.tie_down <= doc.graph.n:
            raise InputError(f"--tie-down {args.tie_down} out of range 1..{doc.graph.n}")
        return TieDown.standard(args.tie_down - 1, doc.sig, colored=colored(doc.graph, doc.sig))
    if doc.tie_down is not None:
        return doc.tie_down
    return TieDown.standard(0, doc.sig, colored=colored(doc.graph, doc.sig))


def _emit(args, payload: dict, rows: Sequence[Sequence[str]]) -> None:
    if args.json:
        print(json.dumps(payload, indent=1))
    else:
        for row in rows:
            print("\t".join(row))


# -- subcommands ------------------------------------------------------------------------------


def cmd_check(args) -> int:
    doc = _document(args.graph)
    rep, dec = audit(doc.graph, doc.sig, with_factors=bool(args.plot))
    if args.plot:
        render_figures(rep, doc.graph, dec, args.plot, Path(args.graph).stem)
    if colored(doc.graph, doc.sig):
        label = f"{rep.sparsity} ([{doc.sig.a},{doc.sig.b}])"
    else:
        label = f"{rep.sparsity} ({doc.sig.k},{doc.sig.k})"
    payload = rep.to_dict()
    payload.pop("factors", None)
    rows = [(label, rep.verdict)]
    rows += [("circuit", e, " ".join(rep.circuits[e])) for e in rep.rejected]
    rows += [("figure", p) for p in rep.figures]
    _emit(args, payload, rows)
    return FLAGGED if rep.flagged else OK


def cmd_factor(args) -> int:
    doc = _document(args.graph)
    rep, dec = audit(doc.graph, doc.sig)
    if dec is None:
        raise InputError(f"{args.graph}: graph is not tight ({rep.sparsity}); nothing to factor")
    if args.plot:
        render_figures(rep, doc.graph, dec, args.plot, Path(args.graph).stem)
    payload = dec.to_dict()
    if rep.figures:
        payload["figures"] = rep.figures
    rows = [("factor", str(i), " ".join(f.edge_ids), f.origin) for i, f in enumerate(dec.factors, 1)]
    rows += [("figure", p) for p in rep.figures]
    _emit(args, payload, rows)
    return OK


def cmd_fans(args) -> int:
    doc = _document(args.graph)
    tied = apply_tie_down(doc.graph, _tie_down(doc, args))
    count = 0
    for fan in enumerate_ab_fans(tied, doc.sig, limit=args.max_fans):
        count += 1
        out = {e: [t, h] for e, (t, h) in fan.to_dict().items()}
        print(json.dumps(out) if args.json else "\t".join(f"{e}:{t}>{h}" for e, (t, h) in out.items()))
    if not args.json:
        print(f"# {count} fan diagrams", file=sys.stderr)
    return OK


def cmd_bracket(args) -> int:
    doc = _document(args.graph)
    bp = pure_condition_bracket(doc.graph, doc.sig, _tie_down(doc, args), limit=args.max_fans)
    if args.json:
        print(json.dumps({"terms": len(bp), "polynomial": bp.to_text()}))
    else:
        print(bp.to_text())
    return OK


def cmd_evaluate(args) -> int:
    doc = _document(args.graph)
    labels = _labels(args.embedding)
    td = _tie_down(doc, args)
    if args.float:
        det, norm, zero = pure_condition_float(doc.graph, doc.sig, labels, td, args.tol)
        payload = {"value": det, "normalized": norm, "vanishes": zero, "mode": "float"}
    else:
        val = pure_condition_value(doc.graph, doc.sig, labels, td)
        zero = val == 0
        payload = {"value": fraction_str(val), "vanishes": zero, "mode": "exact"}
    _emit(args, payload, [("value", str(payload["value"])), ("vanishes", "yes" if zero else "no")])
    return FLAGGED if zero else OK


def cmd_check_special(args) -> int:
    doc = _document(args.graph)
    labels = _labels(args.embedding)
    td = _tie_down(doc, args)
    rep, dec = audit(doc.graph, doc.sig, labels, td, use_float=args.float, tol=args.tol)
    if dec is None:
        raise InputError(f"{args.graph}: graph is not tight ({rep.sparsity})")
    if args.plot:
        render_figures(rep, doc.graph, dec, args.plot, Path(args.graph).stem)
    _emit(args, rep.to_dict(), rep.rows())
    return FLAGGED if rep.flagged else OK


def cmd_gc_eval(args) -> int:
    try:
        cert = parse_certificate(_read(args.certificate))
    except GCError as exc:
        raise InputError(f"{args.certificate}: {exc}") from exc
    labels = _labels(args.embedding)
    ext = evaluate(cert.expr, labels, cert.k)
    if ext.step in (0, cert.k):
        val = ext.value()
        payload = {"expression": cert.expr.to_text(), "step": ext.step, "value": fraction_str(val), "vanishes": val == 0}
        rows = [("expression", cert.expr.to_text()), ("value", fraction_str(val)), ("vanishes", "yes" if val == 0 else "no")]
        zero = val == 0
    else:
        coeffs = [fraction_str(x) for x in ext.vector_form()]
        zero = ext.is_zero()
        payload = {"expression": cert.expr.to_text(), "step": ext.step, "coefficients": coeffs, "vanishes": zero}
        rows = [("expression", cert.expr.to_text()), ("step", str(ext.step)), ("coefficients", " ".join(coeffs))]
    _emit(args, payload, rows)
    return FLAGGED if zero else OK


def cmd_stress(args) -> int:
    doc = _document(args.graph)
    labels = _labels(args.embedding)
    basis = stresses(doc.graph, doc.sig, labels, _tie_down(doc, args))
    payload = {
        "dimension": len(basis),
        "stresses": [{k: fraction_str(v) for k, v in s.weights.items() if v != 0} for s in basis],
    }
    rows = [("dimension", str(len(basis)))]
    rows += [("stress", str(i), " ".join(f"{k}={fraction_str(v)}" for k, v in s.weights.items() if v)) for i, s in enumerate(basis, 1)]
    _emit(args, payload, rows)
    return FLAGGED if basis else OK


# -- parser -----------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--tie-down", type=int, metavar="VERTEX", help="standard tie-down at this 1-based vertex")
    common.add_argument("--float", action="store_true", help="floating point determinants")
    common.add_argument("--tol", type=float, default=1e-9, help="relative tolerance in float mode")
    common.add_argument("--max-fans", type=int, default=None, metavar="N", help="stop enumeration after N fans")
    common.add_argument("--plot", metavar="DIR", help="write figures into DIR")

    parser = argparse.ArgumentParser(prog="cadrigid", description="Rigidity audit for body-and-cad designs.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, fn, extra in (
        ("check", cmd_check, ("graph",)),
        ("factor", cmd_factor, ("graph",)),
        ("fans", cmd_fans, ("graph",)),
        ("bracket", cmd_bracket, ("graph",)),
        ("evaluate", cmd_evaluate, ("graph", "embedding")),
        ("check-special", cmd_check_special, ("graph", "embedding")),
        ("gc-eval", cmd_gc_eval, ("certificate", "embedding")),
        ("stress", cmd_stress, ("graph", "embedding")),
    ):
        p = sub.add_parser(name, parents=[common])
        for arg in extra:
            p.add_argument(arg)
        p.set_defaults(func=fn)
    return parser


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return INPUT_ERROR if exc.code else OK
    try:
        return args.func(args)
    except (InputError, GraphFormatError, LabelError, GCError, FanError, FactoringError, ValueError) as exc:
        print(f"cadrigid: error: {exc}", file=sys.stderr)
        return INPUT_ERROR


def main(argv: Sequence[str] | None = None) -> None:
    sys.exit(run(argv))

