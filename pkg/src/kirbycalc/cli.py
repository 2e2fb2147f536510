"""Command-line front end: parse .hbd files, run operations, emit JSON.

Exit codes: 0 when every requested assertion passes, 1 for user errors
(bad arguments, parse errors, failed checks), 2 for internal errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence

from . import acceptance
from .handles import (
    HandleError,
    blow_down,
    blow_up,
    dot_zero_swap,
    handle_slide,
    rational_blowdown_splice,
)
from .hbd import DiagramDocument, HbdParseError, parse_hbd, print_hbd
from .homology import boundary_first_homology, boundary_group_order, homology
from .legendrian import FrontError, stein_check
from .scenarios import (
    ScenarioError,
    build_X0_model,
    build_cusp_model,
    catalog,
    genus_obstruction_Nn,
    knotted_cork_scenario,
    scenario_by_name,
    verify_contractibility,
    verify_count_lemma,
    verify_restriction_lemma,
    verify_stein_catalog,
)
from .swledger import (
    LedgerError,
    adjunction_check,
    alexander_polynomial_torus,
    blow_up_basic_classes,
    d_invariant,
    knot_surgery_basic_classes,
    rational_blowdown_descend,
)

SCHEMA = 1


class UserError(ValueError):
    pass


def _load(path: str) -> DiagramDocument:
    if path == "-":
        return parse_hbd(sys.stdin.read(), source="<stdin>")
    p = Path(path)
    try:
        text = p.read_text()
    except OSError as exc:
        raise UserError(f"cannot read {path}: {exc}") from exc
    return parse_hbd(text, source=str(p))


def _knot(text: str) -> tuple[int, int]:
    try:
        p, q = (int(x) for x in text.split(","))
    except ValueError as exc:
        raise UserError(f"expected a knot as p,q: {text!r}") from exc
    return p, q


def _document_payload(doc: DiagramDocument, new_d, dropped: set[str]) -> str:
    fronts = {k: f for k, f in doc.annotation.items()
              if k not in dropped and new_d.is_two_handle(k)}
    return print_hbd(DiagramDocument(new_d, fronts, doc.source))


# -- subcommand handlers ----------------------------------------------------------


def _cmd_homology(args) -> dict:
    doc = _load(args.file)
    prof = homology(doc.decomposition)
    return {
        "schema": SCHEMA,
        "command": "homology",
        "name": doc.name,
        "h1": {"invariant_factors": list(prof.h1_invariant_factors),
               "free_rank": prof.h1_free_rank},
        "h2": {"rank": prof.h2_rank,
               "intersection_form": prof.intersection_form.to_lists()},
        "boundary": {"invariant_factors": list(boundary_first_homology(doc.decomposition)),
                     "order": boundary_group_order(doc.decomposition)},
        "ok": True,
    }


def _cmd_boundary(args) -> dict:
    doc = _load(args.file)
    return {
        "schema": SCHEMA,
        "command": "boundary",
        "name": doc.name,
        "invariant_factors": list(boundary_first_homology(doc.decomposition)),
        "order": boundary_group_order(doc.decomposition),
        "ok": True,
    }


def _cmd_stein(args) -> dict:
    doc = _load(args.file)
    report = stein_check(doc.decomposition, dict(doc.annotation))
    return {
        "schema": SCHEMA,
        "command": "stein",
        "name": doc.name,
        "handles": [{"id": v.handle, "framing": v.framing, "tb": v.tb,
                     "required_framing": v.tb - 1, "ok": v.ok}
                    for v in report.verdicts],
        "ok": report.ok,
    }


def _cmd_slide(args) -> dict:
    doc = _load(args.file)
    out = handle_slide(doc.decomposition, args.a, args.b, args.sign)
    return {
        "schema": SCHEMA,
        "command": "slide",
        "name": doc.name,
        "a": args.a,
        "b": args.b,
        "sign": args.sign,
        "framing_after": out.framing(args.a),
        "document": _document_payload(doc, out, {args.a}),
        "ok": True,
    }


def _cmd_blowup(args) -> dict:
    doc = _load(args.file)
    attach = []
    for item in args.attach or []:
        if "=" not in item:
            raise UserError(f"expected --attach id=multiplicity, got {item!r}")
        k, _, m = item.partition("=")
        try:
            attach.append((k, int(m)))
        except ValueError as exc:
            raise UserError(f"bad multiplicity in {item!r}") from exc
    out = blow_up(doc.decomposition, attach, new_id=args.id)
    new_id = out.two_handles[-1][0]
    dropped = {k for k, m in attach if m}
    return {
        "schema": SCHEMA,
        "command": "blowup",
        "name": doc.name,
        "new_handle": new_id,
        "document": _document_payload(doc, out, dropped),
        "ok": True,
    }


def _cmd_blowdown(args) -> dict:
    doc = _load(args.file)
    d = doc.decomposition
    dropped = {k for k in d.two_handle_ids if k != args.handle and d.link(k, args.handle)}
    out = blow_down(d, args.handle)
    return {
        "schema": SCHEMA,
        "command": "blowdown",
        "name": doc.name,
        "removed": args.handle,
        "document": _document_payload(doc, out, dropped),
        "ok": True,
    }


def _cmd_corktwist(args) -> dict:
    doc = _load(args.file)
    out = dot_zero_swap(doc.decomposition, args.one_handle, args.two_handle)
    return {
        "schema": SCHEMA,
        "command": "corktwist",
        "name": doc.name,
        "dotted": args.two_handle,
        "zero_framed": args.one_handle,
        "document": _document_payload(doc, out, {args.two_handle}),
        "ok": True,
    }


def _cmd_rbd(args) -> dict:
    doc = _load(args.file)
    chain = args.chain.split(",")
    out = rational_blowdown_splice(doc.decomposition, chain, args.p)
    return {
        "schema": SCHEMA,
        "command": "rbd",
        "name": doc.name,
        "p": args.p,
        "removed_chain": chain,
        "document": _document_payload(doc, out, set(chain)),
        "ok": True,
    }


def _cmd_sw_blowup(args) -> dict:
    base = build_cusp_model(args.count)
    model, classes = blow_up_basic_classes(base.model, base.classes, args.n)
    d_ok = all(d_invariant(model, kappa) == 0 for kappa in classes.members)
    ok = classes.count == (1 << args.n) * base.classes.count and d_ok
    return {
        "schema": SCHEMA,
        "command": "sw-blowup",
        "n": args.n,
        "count_before": base.classes.count,
        "count_after": classes.count,
        "d_preserved": d_ok,
        "ok": ok,
    }


def _cmd_sw_descend(args) -> dict:
    x0 = build_X0_model((args.p,), args.count)
    m, b = rational_blowdown_descend(x0.model, x0.classes, x0.chain_vectors(0),
                                     x0.complement_basis(0))
    d_ok = all(d_invariant(m, kappa) == 0 for kappa in b.members)
    return {
        "schema": SCHEMA,
        "command": "sw-descend",
        "p": args.p,
        "count_before": x0.classes.count,
        "count_after": b.count,
        "d_preserved": d_ok,
        "ok": b.count == x0.classes.count and d_ok,
    }


def _cmd_sw_knotsurgery(args) -> dict:
    knots = [_knot(k) for k in args.knot]
    base = build_cusp_model(args.count)
    outs = []
    for p, q in knots:
        delta = alexander_polynomial_torus(p, q)
        outs.append(knot_surgery_basic_classes(base.model, base.classes,
                                               base.torus(), delta))
    fingerprints = {tuple(sorted(o.weights.items())) for o in outs}
    ok = len(fingerprints) == len(outs) and all(o.count for o in outs)
    return {
        "schema": SCHEMA,
        "command": "sw-knotsurgery",
        "knots": [list(k) for k in knots],
        "counts": [o.count for o in outs],
        "alexander": [str(alexander_polynomial_torus(p, q)) for p, q in knots],
        "distinct": len(fingerprints) == len(outs),
        "ok": ok,
    }


def _cmd_sw_adjunction(args) -> dict:
    x0 = build_X0_model(tuple(args.p), args.count)
    report = adjunction_check(x0.model, x0.classes, x0.torus(), 1)
    return {
        "schema": SCHEMA,
        "command": "sw-adjunction",
        "p": list(args.p),
        "genus": 1,
        "torus_pairings_zero": report.ok,
        "ok": report.ok,
    }


def _cmd_sw_genusbound(args) -> dict:
    report = genus_obstruction_Nn(args.n, args.k)
    return {
        "schema": SCHEMA,
        "command": "sw-genusbound",
        "n": args.n,
        "k": args.k,
        "max_pairing": report.max_pairing,
        "bound": report.genus_bound,
        "forces_zero_below_n": report.forces_zero_below_n,
        "ok": report.ok,
    }


def _cmd_scenario_count(args) -> dict:
    report = verify_count_lemma(tuple(args.p), args.index, args.seed)
    return {
        "schema": SCHEMA,
        "N0": report.n0,
        "Ni": report.ni,
        "ok": report.ok,
    }


def _cmd_scenario_restriction(args) -> dict:
    report = verify_restriction_lemma(tuple(args.p), args.index, args.seed)
    return {
        "schema": SCHEMA,
        "p": report.p,
        "alpha_orthogonal": report.alpha_orthogonal,
        "evaluation_identity": report.evaluation_identity,
        "all_eligible": report.all_eligible,
        "restrictions_distinct": report.restrictions_distinct,
        "mayer_vietoris_index": report.mayer_vietoris_index,
        "ok": report.ok,
    }


def _cmd_scenario_genus(args) -> dict:
    return _cmd_sw_genusbound(args)


def _cmd_scenario_knottedcork(args) -> dict:
    knots = [_knot(k) for k in args.knot]
    report = knotted_cork_scenario(knots)
    return {
        "schema": SCHEMA,
        "knots": [list(k) for k in report.knots],
        "counts": list(report.counts),
        "alexander": list(report.alexander),
        "all_nonzero": report.all_nonzero,
        "pairwise_distinct": report.pairwise_distinct,
        "ok": report.ok,
    }


def _cmd_scenario_stein(args) -> dict:
    report = verify_stein_catalog()
    return {
        "schema": SCHEMA,
        "diagrams": [{"name": name, "ok": rep.ok} for name, rep in report.reports],
        "ok": report.ok,
    }


def _cmd_scenario_corkhomology(args) -> dict:
    report = verify_contractibility()
    return {
        "schema": SCHEMA,
        "pieces": list(report.names),
        "ok": report.ok,
    }


def _cmd_scenario_list(args) -> dict:
    return {
        "schema": SCHEMA,
        "scenarios": [{"name": sc.name, "description": sc.description}
                      for sc in catalog()],
        "ok": True,
    }


def _cmd_scenario_export(args) -> dict:
    sc = scenario_by_name(args.name)
    payload = sc.export()
    payload["schema"] = SCHEMA
    payload["ok"] = True
    return payload


def _cmd_scenario_run(args) -> dict:
    sc = scenario_by_name(args.name)
    ok = sc.verify()
    return {"schema": SCHEMA, "name": sc.name, "ok": ok}


def _cmd_check(args) -> dict:
    results = acceptance.run_all(args.seed)
    if args.verbose:
        for r in results:
            status = "PASS" if r.ok else "FAIL"
            print(f"{status} {r.number:2d} {r.title} ({r.seconds:.2f}s)",
                  file=sys.stderr)
    return {
        "schema": SCHEMA,
        "command": "check",
        "seed": args.seed,
        "criteria": [{"number": r.number, "title": r.title, "ok": r.ok,
                      "seconds": round(r.seconds, 3), "detail": r.detail}
                     for r in results],
        "ok": all(r.ok for r in results),
    }


# -- parser ------------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="kirbycalc",
        description="Kirby calculus and Seiberg-Witten bookkeeping on .hbd diagrams")
    top.add_argument("--json", action="store_true", default=True,
                     help="emit JSON on stdout (default; kept for compatibility)")
    top.add_argument("--verbose", action="store_true", help="extra stderr output")
    # the same flags are accepted after the subcommand; SUPPRESS keeps the
    # subparser from clobbering a value parsed at the top level
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS)
    common.add_argument("--verbose", action="store_true", default=argparse.SUPPRESS)
    sub = top.add_subparsers(dest="command", required=True)

    def add(name, fn, help_text):
        p = sub.add_parser(name, help=help_text, parents=[common])
        p.set_defaults(handler=fn)
        return p

    p = add("homology", _cmd_homology, "homology profile of a diagram")
    p.add_argument("file")
    p = add("boundary", _cmd_boundary, "first homology of the boundary")
    p.add_argument("file")
    p = add("stein", _cmd_stein, "check framing = tb - 1 on every 2-handle")
    p.add_argument("file")

    p = add("slide", _cmd_slide, "slide one 2-handle over another")
    p.add_argument("file")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--sign", type=int, choices=(1, -1), default=1)

    p = add("blowup", _cmd_blowup, "introduce a -1-framed circle")
    p.add_argument("file")
    p.add_argument("--attach", action="append", metavar="ID=MULT")
    p.add_argument("--id", default=None, help="identifier for the new handle")

    p = add("blowdown", _cmd_blowdown, "delete a -1-framed 2-handle")
    p.add_argument("file")
    p.add_argument("handle")

    p = add("corktwist", _cmd_corktwist, "exchange a dot with a zero framing")
    p.add_argument("file")
    p.add_argument("one_handle")
    p.add_argument("two_handle")

    p = add("rbd", _cmd_rbd, "rational blowdown of a linear chain")
    p.add_argument("file")
    p.add_argument("--chain", required=True,
                   help="comma-separated 2-handle ids, heavy end first")
    p.add_argument("--p", type=int, required=True)

    sw = sub.add_parser("sw", help="basic-class transformations on built-in models")
    swsub = sw.add_subparsers(dest="sw_command", required=True)

    q = swsub.add_parser(parents=[common], name="blowup")
    q.set_defaults(handler=_cmd_sw_blowup)
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--count", type=int, default=2, help="declared class count")

    q = swsub.add_parser(parents=[common], name="descend")
    q.set_defaults(handler=_cmd_sw_descend)
    q.add_argument("--p", type=int, required=True)
    q.add_argument("--count", type=int, default=2)

    q = swsub.add_parser(parents=[common], name="knotsurgery")
    q.set_defaults(handler=_cmd_sw_knotsurgery)
    q.add_argument("--knot", action="append", required=True, metavar="P,Q")
    q.add_argument("--count", type=int, default=2)

    q = swsub.add_parser(parents=[common], name="adjunction")
    q.set_defaults(handler=_cmd_sw_adjunction)
    q.add_argument("--p", type=int, nargs="+", required=True)
    q.add_argument("--count", type=int, default=2)

    q = swsub.add_parser(parents=[common], name="genusbound")
    q.set_defaults(handler=_cmd_sw_genusbound)
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--k", type=int, required=True)

    sc = sub.add_parser("scenario", help="run a named verification scenario")
    scsub = sc.add_subparsers(dest="scenario_name", required=True)

    q = scsub.add_parser(parents=[common], name="count")
    q.set_defaults(handler=_cmd_scenario_count)
    q.add_argument("--p", type=int, nargs="+", required=True)
    q.add_argument("--index", type=int, default=0)
    q.add_argument("--seed", type=int, default=2, help="declared class count N0")

    q = scsub.add_parser(parents=[common], name="restriction")
    q.set_defaults(handler=_cmd_scenario_restriction)
    q.add_argument("--p", type=int, nargs="+", required=True)
    q.add_argument("--index", type=int, default=0)
    q.add_argument("--seed", type=int, default=4, help="declared class count N0")

    q = scsub.add_parser(parents=[common], name="genus")
    q.set_defaults(handler=_cmd_scenario_genus)
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--k", type=int, required=True)

    q = scsub.add_parser(parents=[common], name="knottedcork")
    q.set_defaults(handler=_cmd_scenario_knottedcork)
    q.add_argument("--knot", action="append", required=True, metavar="P,Q")

    q = scsub.add_parser(parents=[common], name="stein")
    q.set_defaults(handler=_cmd_scenario_stein)

    q = scsub.add_parser(parents=[common], name="corkhomology")
    q.set_defaults(handler=_cmd_scenario_corkhomology)

    q = scsub.add_parser(parents=[common], name="list")
    q.set_defaults(handler=_cmd_scenario_list)

    q = scsub.add_parser(parents=[common], name="export")
    q.set_defaults(handler=_cmd_scenario_export)
    q.add_argument("--name", required=True)

    q = scsub.add_parser(parents=[common], name="run")
    q.set_defaults(handler=_cmd_scenario_run)
    q.add_argument("--name", required=True)

    p = add("check", _cmd_check, "run the full acceptance suite")
    p.add_argument("--seed", type=int, default=2026, help="seed for randomized checks")

    return top


def run_command(argv: Sequence[str]) -> int:
    """Dispatch one command; prints JSON to stdout and returns the exit code."""
    parser = _build_parser()
    try:
        args = parser.parse_args(list(argv))
    except SystemExit as exc:     # argparse already printed the message
        return 1 if exc.code else 0
    try:
        payload = args.handler(args)
    except (UserError, HbdParseError, HandleError, FrontError, LedgerError,
            ScenarioError) as exc:
        print(json.dumps({"schema": SCHEMA, "error": str(exc), "ok": False},
                         indent=2))
        return 1
    except Exception as exc:      # internal invariant violation
        print(json.dumps({"schema": SCHEMA, "internal_error": repr(exc),
                          "ok": False}, indent=2))
        return 2
    print(json.dumps(payload, indent=2))
    return 0 if payload.get("ok", True) else 1


def main() -> int:
    return run_command(sys.argv[1:])


if __name__ == "__main__":
    sys.exit(main())
