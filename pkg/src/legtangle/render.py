"""
SVG renderings of box-dot diagrams, fronts and a foliation schematic.

Everything is emitted through ElementTree with fixed attribute order, so the
same input always produces the same bytes.  The y-axis points up, as in the
usual pictures of these diagrams.
"""
from __future__ import annotations

import xml.etree.ElementTree as ET
from dataclasses import dataclass, field

from .boxdot import BoxDotDiagram, row_major
from .tangle import FrontProjection

LAYERS = ("template", "subdivision", "marks", "signs", "classes",
          "tangle", "unknot", "foliation")
SVG_NS = "http://www.w3.org/2000/svg"


@dataclass(frozen=True)
class RenderOptions:
    scale: float = 40.0
    layers: frozenset[str] = field(default_factory=lambda: frozenset({"subdivision", "marks", "signs"}))
    positive: str = "#d62728"
    negative: str = "#1f77b4"

    def __post_init__(self):
        if not self.scale > 0:
            raise ValueError(f"scale must be positive, got {self.scale}")
        if not self.layers:
            raise ValueError("at least one layer is required")
        unknown = sorted(set(self.layers) - set(LAYERS))
        if unknown:
            raise ValueError(f"unknown layer {unknown[0]!r}")

    def color(self, sign: int) -> str:
        return self.positive if sign > 0 else self.negative


def _num(x: float) -> str:
    s = f"{x:.3f}".rstrip("0").rstrip(".")
    return "0" if s in ("-0", "") else s


class _Canvas:
    """Doubled lattice coordinates to SVG pixels, y flipped."""

    def __init__(self, w2: int, h2: int, o: RenderOptions, title: str):
        self.o = o
        self.h2 = h2
        self.pad = 1.0
        u = o.scale / 2
        W, H = (w2 + 2 * self.pad) * u, (h2 + 2 * self.pad) * u
        self.root = ET.Element("svg", {"xmlns": SVG_NS, "width": _num(W), "height": _num(H),
                                       "viewBox": f"0 0 {_num(W)} {_num(H)}"})
        ET.SubElement(self.root, "title").text = title

    def xy(self, x2: float, y2: float) -> tuple[str, str]:
        u = self.o.scale / 2
        return _num((x2 + self.pad) * u), _num((self.h2 - y2 + self.pad) * u)

    def group(self, cls: str, parent=None):
        return ET.SubElement(self.root if parent is None else parent, "g", {"class": cls})

    def tostring(self) -> str:
        ET.indent(self.root)
        return ET.tostring(self.root, encoding="unicode") + "\n"


def _mark(parent, cv: _Canvas, pt, dot: bool, fill: str, cls: str, r: float = 0.28):
    x, y = cv.xy(*pt)
    px = cv.o.scale / 2 * r
    if dot:
        ET.SubElement(parent, "circle", {"class": cls, "cx": x, "cy": y, "r": _num(px),
                                         "fill": fill})
    else:
        ET.SubElement(parent, "rect", {"class": cls, "x": _num(float(x) - px),
                                       "y": _num(float(y) - px), "width": _num(2 * px),
                                       "height": _num(2 * px), "fill": fill})


def _outline(parent, cv: _Canvas, x, y, w, h, cls: str, stroke="#222", width="1.5"):
    pts = [(x, y), (x + w, y), (x + w, y + h), (x, y + h)]
    d = "M " + " L ".join(" ".join(cv.xy(2 * a, 2 * b)) for a, b in pts) + " Z"
    ET.SubElement(parent, "path", {"class": cls, "d": d, "fill": "none",
                                   "stroke": stroke, "stroke-width": width})


def render_boxdot(d: BoxDotDiagram, o: RenderOptions) -> str:
    t = d.template
    cv = _Canvas(2 * d.p, 2 * d.q, o, f"box-dot diagram {d.p}/{d.q}")
    _outline(cv.root, cv, 0, 0, d.p, d.q, "frame")
    if "subdivision" in o.layers:
        g = cv.group("subdivision")
        for sq in d.subdivision.squares:
            _outline(g, cv, sq.x, sq.y, sq.size, sq.size, f"square stage-{sq.stage}",
                     stroke="#888", width="1")
    if "template" in o.layers:
        g = cv.group("template")
        for pt in row_major(t.boxes | t.dots):
            _mark(g, cv, pt, pt[0] % 2 == 0, "none", "template", r=0.18)
        for el in g:
            el.set("stroke", "#bbb")
    if "marks" in o.layers:
        g = cv.group("marks")
        signed = "signs" in o.layers
        for pt in row_major(d.marks):
            fill = o.color(t.sign(pt)) if signed else "#222"
            _mark(g, cv, pt, pt[0] % 2 == 0, fill, "dot" if pt[0] % 2 == 0 else "box")
    if "classes" in o.layers:
        g = cv.group("classes")
        c = d.classes
        for pt in row_major(c.tagged):
            x, y = cv.xy(*pt)
            kind = "shared" if pt in c.shared else "tagged"
            ET.SubElement(g, "text", {"class": kind, "x": x, "y": y, "dy": "-8",
                                      "font-size": "10", "text-anchor": "middle"}).text = \
                "s" if kind == "shared" else "t"
        for name, pt in c.endpoint.items():
            x, y = cv.xy(*pt)
            ET.SubElement(g, "text", {"class": "endpoint", "x": x, "y": y, "dx": "6",
                                      "font-size": "10"}).text = name
    return cv.tostring()


def _arc_path(cv: _Canvas, a, cusp_ends: set) -> str:
    """Straight arc, bent to a horizontal tangent near any cusp end."""
    (x0, y0), (x1, y1) = a.left, a.right
    h = 0.3
    s = a.slope
    parts = []
    if a.left in cusp_ends:
        parts.append("M " + " ".join(cv.xy(x0, y0)))
        parts.append("Q " + " ".join(cv.xy(x0 + h, y0)) + " " + " ".join(cv.xy(x0 + 2 * h, y0 + 2 * h * s)))
    else:
        parts.append("M " + " ".join(cv.xy(x0, y0)))
    if a.right in cusp_ends:
        parts.append("L " + " ".join(cv.xy(x1 - 2 * h, y1 - 2 * h * s)))
        parts.append("Q " + " ".join(cv.xy(x1 - h, y1)) + " " + " ".join(cv.xy(x1, y1)))
    else:
        parts.append("L " + " ".join(cv.xy(x1, y1)))
    return " ".join(parts)


def render_front(fp: FrontProjection, o: RenderOptions, title: str = "front") -> str:
    w2 = max(max(a.right[0] for a in fp.arcs), 1) if fp.arcs else 2
    h2 = max(max(max(a.left[1], a.right[1]) for a in fp.arcs), 1) if fp.arcs else 2
    cv = _Canvas(w2, h2, o, title)
    strand = fp.strand_of()
    colors = {1: "#222", 2: "#8c564b"}
    cusp_ends = {j.point for j in fp.cusps}
    g = cv.group("arcs")
    for a in fp.arcs:
        ET.SubElement(g, "path", {"class": f"arc strand-{strand.get(a.id, 0)}",
                                  "d": _arc_path(cv, a, cusp_ends), "fill": "none",
                                  "stroke": colors.get(strand.get(a.id), "#222"),
                                  "stroke-width": "2"})
    g = cv.group("crossings")
    u = o.scale / 2
    for c in fp.crossings:
        x, y = c.point
        over = fp.arcs[c.over]
        ET.SubElement(g, "circle", {"class": "gap", "cx": cv.xy(x, y)[0], "cy": cv.xy(x, y)[1],
                                    "r": _num(0.22 * u), "fill": "white"})
        s = over.slope
        (ax, ay), (bx, by) = cv.xy(x - 0.3, y - 0.3 * s), cv.xy(x + 0.3, y + 0.3 * s)
        ET.SubElement(g, "line", {"class": "over", "x1": ax, "y1": ay, "x2": bx, "y2": by,
                                  "stroke": colors.get(strand.get(c.over), "#222"),
                                  "stroke-width": "2"})
    g = cv.group("cusps")
    for j in fp.cusps:
        x, y = cv.xy(*j.point)
        ET.SubElement(g, "circle", {"class": f"cusp {j.tip}", "cx": x, "cy": y,
                                    "r": _num(0.08 * u), "fill": "#222"})
    if fp.endpoints:
        g = cv.group("endpoints")
        for name, pt in fp.endpoints.items():
            x, y = cv.xy(*pt)
            ET.SubElement(g, "text", {"class": "endpoint", "x": x, "y": y, "dx": "4",
                                      "dy": "-4", "font-size": "10"}).text = name
    return cv.tostring()


def render_foliation_schematic(d: BoxDotDiagram, o: RenderOptions) -> str:
    """Stencil picture of the signed foliation: an elliptic glyph at every
    dot and a pair of hyperbolic glyphs of opposite sign at every box.
    The leaves are stylized, not integrated."""
    t = d.template
    cv = _Canvas(2 * d.p, 2 * d.q, o, f"foliation schematic {d.p}/{d.q}")
    _outline(cv.root, cv, 0, 0, d.p, d.q, "frame")
    ET.SubElement(cv.root, "text", {"class": "label", "x": "4", "y": "12",
                                    "font-size": "10"}).text = "schematic"
    u = o.scale / 2
    g = cv.group("elliptic")
    for pt in row_major(m for m in d.marks if m[0] % 2 == 0):
        sign = t.sign(pt)
        x, y = cv.xy(*pt)
        ET.SubElement(g, "circle", {"class": "elliptic", "cx": x, "cy": y,
                                    "r": _num(0.25 * u), "fill": o.color(sign)})
        fx, fy = float(x), float(y)
        spokes = " ".join(f"M {_num(fx)} {_num(fy)} l {_num(dx * 0.6 * u)} {_num(dy * 0.6 * u)}"
                          for dx, dy in ((1, 0), (0, 1), (-1, 0), (0, -1)))
        ET.SubElement(g, "path", {"class": "leaf", "d": spokes, "stroke": o.color(sign),
                                  "stroke-width": "0.8", "fill": "none"})
    g = cv.group("hyperbolic")
    for pt in row_major(m for m in d.marks if m[0] % 2 == 1):
        sign = t.sign(pt)
        pair = ET.SubElement(g, "g", {"class": "hyperbolic-pair"})
        for k, sg in ((-1, sign), (1, -sign)):
            x, y = cv.xy(pt[0], pt[1] + 0.3 * k)
            fx, fy = float(x), float(y)
            r = 0.2 * u
            dpath = (f"M {_num(fx - r)} {_num(fy - r)} L {_num(fx + r)} {_num(fy + r)} "
                     f"M {_num(fx - r)} {_num(fy + r)} L {_num(fx + r)} {_num(fy - r)}")
            ET.SubElement(pair, "path", {"class": f"hyperbolic {'pos' if sg > 0 else 'neg'}",
                                         "d": dpath, "stroke": o.color(sg),
                                         "stroke-width": "1.5", "fill": "none"})
    return cv.tostring()
