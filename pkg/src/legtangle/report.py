"""JSON report assembly.  Every report carries the schema tag and tool version."""
from __future__ import annotations

import json

from . import __version__
from .boxdot import BoxDotDiagram, diagram_json, template
from .classifier import elliptic_profile
from .invariants import (Convention, invariants_report, strandwise_invariants, tb_r,
                         verify_unknot)
from .rational_core import Rational, format_vector, subdivide
from .tangle import build_front, build_unknot, connectivity_type, front_json

SCHEMA = "legtangle/1"


def _head(kind: str, **extra) -> dict:
    out = {"schema": SCHEMA, "version": __version__, "kind": kind}
    out.update(extra)
    return out


def _input(r: Rational, d: BoxDotDiagram | None = None) -> dict:
    rec = {"q": str(r)}
    if r.reduced_from:
        rec["reduced_from"] = "%d/%d" % r.reduced_from
    if d is not None:
        rec["vector"] = format_vector(d.vector, d.flype)
    return rec


def diagram_report(r: Rational, d: BoxDotDiagram, notes=()) -> dict:
    return _head("diagram", input=_input(r, d), notes=list(notes), diagram=diagram_json(d))


def tangle_report(r: Rational, d: BoxDotDiagram, notes=()) -> dict:
    fp = build_front(d)
    return _head("tangle", input=_input(r, d), notes=list(notes),
                 connectivity=fp.connectivity().value,
                 parity_rule=connectivity_type(r).value,
                 front=front_json(fp),
                 profile=elliptic_profile(d, fp).as_json())


def invariants_full(r: Rational, d: BoxDotDiagram, convention: Convention, notes=()) -> dict:
    unknot = build_unknot(template(r))
    k = tb_r(unknot)
    cert = verify_unknot(unknot, subdivide(r))
    fp = build_front(d)
    return _head("invariants", input=_input(r, d), notes=list(notes),
                 unknot={"tb2": k.tb2, "r2": k.r2, "writhe2": k.writhe2,
                         "D": k.down, "U": k.up, "certificate": cert.as_json()},
                 tangle=invariants_report(strandwise_invariants(fp, convention), convention))


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"
