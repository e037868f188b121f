"""Command line front end: ``legtangle <command> ...``."""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .boxdot import apply_f_move, template
from .classifier import classify_pair, verdict_line
from .invariants import Convention
from .rational_core import (FlypeVector, NotationError, Rational, cf_rational,
                            enumerate_flype_vectors, format_vector, parse_vector, regular_cf)
from .render import RenderOptions, render_boxdot, render_foliation_schematic, render_front
from .report import SCHEMA, diagram_report, dumps, invariants_full, tangle_report
from .tangle import build_front, build_unknot


class InputError(ValueError):
    pass


def _flype(r: Rational, text: str | None) -> tuple[FlypeVector, list[str]]:
    """Flype vector for ``r`` from vector notation; plain ``r`` if omitted."""
    v = regular_cf(r)
    if text is None:
        return FlypeVector.zeros(v.n), []
    try:
        w, f = parse_vector(text)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    if w != v:
        raise InputError(f"vector {text!r} does not expand {r} (expected {format_vector(v)})")
    notes = []
    if f.f(v.n):
        notes.append(f"f_n={f.f(v.n)} ignored; the final twist admits no flype")
    return f.normalized(), notes


def _rational(text: str) -> Rational:
    try:
        return Rational.parse(text)
    except ValueError as exc:
        raise InputError(str(exc)) from None


def _target(args) -> tuple[Rational, FlypeVector, list[str]]:
    r = _rational(args.q)
    f, notes = _flype(r, args.vector)
    if r.reduced_from:
        notes.insert(0, "input %d/%d reduced to %s" % (*r.reduced_from, r))
    return r, f, notes


def cmd_cf(args, out):
    r = _rational(args.q)
    out.write(format_vector(regular_cf(r)) + "\n")


def cmd_diagram(args, out):
    r, f, notes = _target(args)
    out.write(dumps(diagram_report(r, apply_f_move(regular_cf(r), f), notes)))


def cmd_tangle(args, out):
    r, f, notes = _target(args)
    out.write(dumps(tangle_report(r, apply_f_move(regular_cf(r), f), notes)))


def cmd_invariants(args, out):
    r, f, notes = _target(args)
    d = apply_f_move(regular_cf(r), f)
    out.write(dumps(invariants_full(r, d, Convention(args.strand_writhe), notes)))


def cmd_classify(args, out):
    r = _rational(args.q)
    f, _ = _flype(r, args.f)
    g, _ = _flype(r, args.g)
    verdict = classify_pair(r, f, g, args.strand_writhe)
    rec = {"schema": SCHEMA, "q": str(r), "f": format_vector(regular_cf(r), f),
           "g": format_vector(regular_cf(r), g)}
    rec.update(verdict.as_json())
    out.write(dumps(rec))


def cmd_enumerate(args, out):
    r = _rational(args.q)
    v = regular_cf(r)
    fs = enumerate_flype_vectors(v)
    for f in fs:
        for g in fs:
            out.write(verdict_line(r, f, g, classify_pair(r, f, g, args.strand_writhe)) + "\n")


def cmd_render(args, out):
    r, f, _ = _target(args)
    layers = frozenset(x.strip() for x in args.layers.split(",") if x.strip())
    try:
        o = RenderOptions(scale=args.scale, layers=layers)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    d = apply_f_move(regular_cf(r), f)
    stem = f"{r.p}_{r.q}" + ("_f" + "".join(map(str, f.exponents)) if any(f.exponents) else "")
    outdir = Path(args.out)
    outdir.mkdir(parents=True, exist_ok=True)
    docs = {}
    board = o.layers & {"template", "subdivision", "marks", "signs", "classes"}
    if board:
        docs["boxdot"] = render_boxdot(d, o)
    if "tangle" in o.layers:
        docs["front"] = render_front(build_front(d), o, f"front {format_vector(d.vector, d.flype)}")
    if "unknot" in o.layers:
        docs["unknot"] = render_front(build_unknot(template(r)), o, f"unknot K {r}")
    if "foliation" in o.layers:
        docs["foliation"] = render_foliation_schematic(d, o)
    for name, text in docs.items():
        path = outdir / f"{stem}_{name}.svg"
        path.write_text(text, encoding="utf-8")
        out.write(f"{path}\n")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="legtangle",
                                description="Legendrian rational tangles from box-dot diagrams.")
    sub = p.add_subparsers(dest="command", required=True)

    def conv(sp):
        sp.add_argument("--strand-writhe", choices=[c.value for c in Convention],
                        default=Convention.SELF.value,
                        help="how crossings between the two strands enter strand writhe")

    sp = sub.add_parser("cf", help="regular continued fraction of P/Q")
    sp.add_argument("q")
    sp.set_defaults(func=cmd_cf)
    for name, func, hlp in (("diagram", cmd_diagram, "box-dot diagram as JSON"),
                            ("tangle", cmd_tangle, "front projection as JSON"),
                            ("invariants", cmd_invariants, "unknot and strandwise invariants")):
        sp = sub.add_parser(name, help=hlp)
        sp.add_argument("q")
        sp.add_argument("vector", nargs="?", help='flyped vector, e.g. "(2,1^1,1)"')
        if name == "invariants":
            conv(sp)
        sp.set_defaults(func=func)
    sp = sub.add_parser("classify", help="compare two flypes of the same tangle")
    sp.add_argument("q")
    sp.add_argument("f")
    sp.add_argument("g")
    conv(sp)
    sp.set_defaults(func=cmd_classify)
    sp = sub.add_parser("enumerate", help="verdicts for all flype pairs, one JSON per line")
    sp.add_argument("q")
    conv(sp)
    sp.set_defaults(func=cmd_enumerate)
    sp = sub.add_parser("render", help="write SVG pictures")
    sp.add_argument("q")
    sp.add_argument("vector", nargs="?")
    sp.add_argument("--scale", type=float, default=40.0)
    sp.add_argument("--layers", default="subdivision,marks,signs,tangle")
    sp.add_argument("--out", default=".")
    sp.set_defaults(func=cmd_render)
    return p


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        args.func(args, out)
    except (InputError, NotationError) as exc:
        print(f"legtangle: error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # noqa: BLE001
        print(f"legtangle: internal failure: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
