"""Command line interface: ``flatiso <command> FILE``.

Commands: validate, analyze, fixed-points, centralizer, classify, construct.
Exit status is 0 whenever the input was analyzed, whatever the findings,
and 2 for unreadable or malformed input.
"""

from __future__ import annotations

import argparse
import sys
from collections.abc import Sequence
from typing import Any

from . import __version__
from .centralizer import homogeneity_verdict, translation_independence
from .errors import FlatIsoError, ParseError, PreconditionError, ScopeError
from .exactlin import format_scalar
from .fixpoint import CASCADE, FixedPointWitness, criteria_witnesses, dimension_diagnostic, freeness_scan
from .groupfile import build_from_parameters, dumps, load_group, load_json, matrix_strings, serialize_group, vector_strings
from .isogrp import (
    GroupPresentation,
    block_form,
    check_rules,
    group_rank,
    holonomy_abelian,
    is_abelian,
    noncommuting_pairs,
    u_gamma,
    u_zero,
    validate_presentation,
)
from .lowdim import classify
from .quadspace import WittFrame, frame_from_coordinates, witt_frame

REPORT_SCHEMA = "flatiso-report"
REPORT_VERSION = 1
EXIT_OK = 0
EXIT_INPUT = 2


def _witness(w: FixedPointWitness | None) -> dict | None:
    if w is None:
        return None
    return {
        "provenance": w.provenance,
        "point": vector_strings(w.point),
        "element": {"nilpart": matrix_strings(w.element.nilpart), "translation": vector_strings(w.element.translation)},
        "verified": w.verify(),
    }


def _frame(P: GroupPresentation, mode: str) -> WittFrame:
    u0 = u_zero(P)
    if mode == "given":
        frame = frame_from_coordinates(P.space, u0.dim)
        if frame.u_subspace() != u0:
            raise PreconditionError("--frame=given: the first coordinates do not span U_0")
        return frame
    return witt_frame(P.space, u0)


def _frame_section(frame: WittFrame) -> dict:
    return {
        "dim_u0": frame.k,
        "u_basis": [vector_strings(v) for v in frame.u_basis],
        "w_basis": [vector_strings(v) for v in frame.w_basis],
        "ustar_basis": [vector_strings(v) for v in frame.ustar_basis],
        "w_gram": matrix_strings(frame.w_gram),
    }


def _guard(fn) -> Any:
    try:
        return fn()
    except FlatIsoError as exc:
        return {"error": f"{type(exc).__name__}: {exc}"}


def validation_section(P: GroupPresentation) -> dict:
    rep = validate_presentation(P)
    return {
        "generators": [{"name": name, "checks": dict(r.checks)} for name, r in zip(P.names, rep.generator_reports)],
        "two_step": rep.two_step,
        "triple_products_vanish": rep.triple_products_vanish,
        "admissible": rep.admissible,
    }


def structure_section(P: GroupPresentation) -> dict:
    return {
        "holonomy_abelian": holonomy_abelian(P),
        "group_abelian": is_abelian(P),
        "dim_u_gamma": u_gamma(P).dim,
        "dim_u0": u_zero(P).dim,
        "group_rank": group_rank(P),
    }


def blocks_section(P: GroupPresentation, frame: WittFrame) -> dict:
    forms = []
    for name, g in zip(P.names, P.generators):
        f = _guard(lambda g=g: block_form(g, frame))
        forms.append({"name": name, **(f if isinstance(f, dict) else {"B": matrix_strings(f.B), "C": matrix_strings(f.C)})})
    rules = []
    for i, j in noncommuting_pairs(P):
        r = check_rules(P.generators[i], P.generators[j], frame)
        rules.append(
            {
                "pair": [P.names[i], P.names[j]],
                "isotropy": r.isotropy,
                "crossover": r.crossover,
                "duality": r.duality,
                "commutator_block": r.commutator_block,
                "commutator_translation_in_u0": r.commutator_translation_in_u0,
                "dual_components_in_common_kernel": r.dual_components_in_common_kernel,
                "realizable": r.realizable,
                "structure_error": r.structure_error,
            }
        )
    return {"block_forms": forms, "rules": rules}


def fixed_point_section(P: GroupPresentation, frame: WittFrame, max_len: int) -> dict:
    pairs = []
    for i, j in noncommuting_pairs(P):
        outcomes = criteria_witnesses(P.generators[i], P.generators[j], frame)
        found = {o.name: o.witness for o in outcomes}
        first = next((found[name] for name in CASCADE if found[name] is not None), None)
        pairs.append(
            {
                "pair": [P.names[i], P.names[j]],
                "criteria": {o.name: o.witness is not None for o in outcomes},
                "witness": _witness(first),
            }
        )
    scan = freeness_scan(P, max_len)
    return {"pairs": pairs, "scan": {"max_word_len": max_len, "witness": _witness(scan)}}


def diagnostic_section(P: GroupPresentation) -> dict:
    d = dimension_diagnostic(P)
    return {
        "n": d.n,
        "s": d.s,
        "dim_u0": d.dim_u0,
        "holonomy_abelian": d.holonomy_abelian,
        "witt_index_w": d.witt_index_w,
        "dim_w": d.dim_w,
        "pairs": [
            {
                "pair": [P.names[p.pair[0]], P.names[p.pair[1]]],
                "rank_b1": p.rank_b1,
                "rank_b2": p.rank_b2,
                "rank_pairing": p.rank_pairing,
                "image_sum_dim": p.image_sum_dim,
                "witness": _witness(p.witness),
                "structure_error": p.rules_error,
            }
            for p in d.pairs
        ],
        "inequalities": [{"label": q.label, "lhs": q.lhs, "rhs": q.rhs, "holds": q.holds} for q in d.inequalities],
        "status": d.status,
    }


def independence_status(P: GroupPresentation, assert_malcev: bool) -> dict:
    ok = translation_independence(P)
    if ok:
        status = "independent"
    elif assert_malcev:
        status = "dependent: violates a necessary condition for completeness"
    else:
        status = "dependent: inconclusive for completeness (generators not asserted minimal)"
    return {"independent": ok, "status": status}


def centralizer_section(P: GroupPresentation, assert_malcev: bool) -> dict:
    r = homogeneity_verdict(P)
    return {
        "algebra_dim": len(r.algebra_basis),
        "orbit_span_dim": r.orbit_span_dim,
        "nilpotent_certified": r.nilpotent_certified,
        "certificate_source": r.certificate_source,
        "verdict": r.verdict,
        "translation_independence": independence_status(P, assert_malcev),
    }


def classification_section(P: GroupPresentation, assert_malcev: bool) -> dict:
    try:
        v = classify(P, assert_malcev=assert_malcev)
    except ScopeError as exc:
        return {"tag": None, "scope": str(exc)}
    data = {k: (format_scalar(x) if not isinstance(x, (int, str)) else x) for k, x in v.data.items()}
    return {
        "tag": v.tag,
        "data": data,
        "trail": [{"rule": r, "finding": f} for r, f in v.trail],
        "qualifiers": list(v.qualifiers),
    }


def _header(command: str, P: GroupPresentation) -> dict:
    p, q = P.space.signature
    return {
        "schema": REPORT_SCHEMA,
        "version": REPORT_VERSION,
        "command": command,
        "input": {"dim": P.dim, "signature": [p, q], "generators": list(P.names)},
    }


def build_report(command: str, P: GroupPresentation, opts: argparse.Namespace) -> dict:
    rep = _header(command, P)
    malcev = getattr(opts, "assert_malcev", False)
    max_len = getattr(opts, "max_word_len", 4)
    frame_mode = getattr(opts, "frame", "auto")
    if command == "validate":
        rep["validation"] = validation_section(P)
        return rep
    if command == "centralizer":
        rep["centralizer"] = centralizer_section(P, malcev)
        return rep
    if command == "classify":
        rep["classification"] = classification_section(P, malcev)
        return rep
    frame = _frame(P, frame_mode)
    if command == "fixed-points":
        rep["fixed_points"] = _guard(lambda: fixed_point_section(P, frame, max_len))
        rep["dimension_diagnostic"] = _guard(lambda: diagnostic_section(P))
        return rep
    rep["validation"] = validation_section(P)
    rep["structure"] = structure_section(P)
    rep["witt_frame"] = _frame_section(frame)
    rep.update(_guard(lambda: blocks_section(P, frame)))
    rep["fixed_points"] = _guard(lambda: fixed_point_section(P, frame, max_len))
    rep["dimension_diagnostic"] = _guard(lambda: diagnostic_section(P))
    rep["centralizer"] = _guard(lambda: centralizer_section(P, malcev))
    rep["classification"] = _guard(lambda: classification_section(P, malcev))
    return rep


# ---------------------------------------------------------------------------
# text rendering


def _is_leaf_list(x: Any) -> bool:
    return isinstance(x, list) and all(not isinstance(e, (dict, list)) for e in x)


def _fmt(x: Any) -> str:
    if x is None:
        return "none"
    if isinstance(x, bool):
        return "yes" if x else "no"
    if _is_leaf_list(x):
        return "(" + ", ".join(_fmt(e) for e in x) + ")"
    if isinstance(x, list) and all(_is_leaf_list(e) for e in x):
        return "[" + "; ".join(_fmt(e) for e in x) + "]"
    return str(x)


def render_text(doc: Any, indent: int = 0) -> list[str]:
    pad = "  " * indent
    lines: list[str] = []
    if isinstance(doc, dict):
        for key, val in doc.items():
            label = str(key).replace("_", " ")
            if isinstance(val, dict) or (isinstance(val, list) and val and not _is_leaf_list(val) and not all(_is_leaf_list(e) for e in val)):
                lines.append(f"{pad}{label}:")
                lines.extend(render_text(val, indent + 1))
            else:
                lines.append(f"{pad}{label}: {_fmt(val)}")
    elif isinstance(doc, list):
        for item in doc:
            if isinstance(item, (dict, list)):
                sub = render_text(item, indent + 1)
                if sub:
                    sub[0] = pad + "- " + sub[0].lstrip()
                lines.extend(sub)
            else:
                lines.append(f"{pad}- {_fmt(item)}")
    else:
        lines.append(pad + _fmt(doc))
    return lines


def emit(doc: Any, fmt: str, out_path: str | None) -> None:
    text = dumps(doc) if fmt == "structured" else "\n".join(render_text(doc)) + "\n"
    if out_path and out_path != "-":
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# entry point


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="flatiso", description="Exact analysis of 2-step nilpotent groups of affine isometries.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("path", help="group file (JSON), or - for standard input")
        p.add_argument("--format", choices=("text", "structured"), default="text")
        p.add_argument("-o", "--output", help="write the report here instead of standard output")
        p.add_argument("--assert-malcev", action="store_true", help="treat the generators as a minimal (Malcev) basis")
        p.add_argument("--max-word-len", type=int, default=4, help="word length bound for the freeness scan")
        p.add_argument("--frame", choices=("auto", "given"), default="auto", help="compute the Witt frame or take the coordinate basis")

    for name, text in (
        ("validate", "check every generator and the 2-step condition"),
        ("analyze", "full report"),
        ("fixed-points", "fixed-point criteria, word scan and dimension diagnostic"),
        ("centralizer", "centralizer algebra and homogeneity verdict"),
        ("classify", "low-dimensional classification"),
    ):
        common(sub.add_parser(name, help=text))
    c = sub.add_parser("construct", help="build a group file from constructor parameters")
    c.add_argument("path", help="parameter file (JSON), or - for standard input")
    c.add_argument("-o", "--output", help="write the group file here instead of standard output")
    c.add_argument("--description", help="description stored in the group file")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = make_parser()
    opts = parser.parse_args(argv)
    try:
        if opts.command == "construct":
            P = build_from_parameters(load_json(opts.path))
            emit(serialize_group(P, opts.description), "structured", opts.output)
            return EXIT_OK
        if opts.max_word_len < 1:
            raise ParseError("--max-word-len", "must be at least 1")
        P = load_group(opts.path)
        emit(build_report(opts.command, P, opts), opts.format, opts.output)
        return EXIT_OK
    except ParseError as exc:
        print(f"flatiso: parse error at {exc.locus}: {exc.message}", file=sys.stderr)
        return EXIT_INPUT
    except (FlatIsoError, OSError) as exc:
        print(f"flatiso: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
