"""
Front projections built from box-dot data.

A front is stored combinatorially: straight arcs of slope +1 or -1 between
exact (doubled) lattice points, transverse crossings with the negative-slope
arc on top, and junctions where two arc ends meet.  A junction is either a
smoothed extremum or a cusp with horizontal tangent.  Drawn fronts compress
slopes into (-1, 1); only the sign of a slope matters to anything computed
here.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

from .boxdot import BoxDotDiagram, BoxDotTemplate, Point2
from .rational_core import Rational, TwistVector, cf_value

LEFT, RIGHT = 0, 1


class TracingError(RuntimeError):
    """The arcs of a front do not assemble into the expected strands."""


class ConnectivityType(str, Enum):
    TYPE0 = "type0"
    TYPE1 = "type1"
    TYPE_INF = "typeInf"


@dataclass(frozen=True)
class Arc:
    id: int
    left: Point2
    right: Point2
    slope: int                 # +1 or -1
    square: int | None = None  # owning subdivision square, for tangle fronts


@dataclass(frozen=True)
class Crossing:
    point: Point2
    over: int
    under: int


@dataclass(frozen=True)
class Junction:
    """Two arc ends meeting at ``point``.

    ``kind`` is ``"max"``, ``"min"``, ``"cusp"``.  For cusps ``tip`` says
    which way the cusp points and ``upper``/``lower`` name the two branches.
    For extrema ``upper`` is the arc arriving from the left.
    """
    point: Point2
    kind: str
    upper: int
    lower: int
    tip: str | None = None


@dataclass(frozen=True)
class Strand:
    id: int
    arcs: tuple[int, ...]
    directions: tuple[int, ...]   # +1: arc traversed left to right
    junctions: tuple[int, ...]    # indices into FrontProjection.junctions, in order
    start: Point2
    end: Point2
    closed: bool = False


@dataclass(frozen=True)
class FrontProjection:
    arcs: tuple[Arc, ...]
    crossings: tuple[Crossing, ...]
    junctions: tuple[Junction, ...]
    endpoints: dict[str, Point2] = field(default_factory=dict)
    strands: tuple[Strand, ...] = ()

    @property
    def cusps(self) -> list[Junction]:
        return [j for j in self.junctions if j.kind == "cusp"]

    @property
    def oriented(self) -> bool:
        return bool(self.strands)

    def strand_of(self) -> dict[int, int]:
        return {a: s.id for s in self.strands for a in s.arcs}

    def direction(self) -> dict[int, int]:
        return {a: d for s in self.strands for a, d in zip(s.arcs, s.directions)}

    def connectivity(self) -> ConnectivityType:
        """Which endpoint the strand leaving p1 reaches."""
        first = self.strands[0]
        lookup = {v: k for k, v in self.endpoints.items()}
        other = lookup[first.end]
        return {"p2": ConnectivityType.TYPE0,
                "p3": ConnectivityType.TYPE_INF,
                "p4": ConnectivityType.TYPE1}[other]


# --- assembling arcs into strands ------------------------------------------

def _walk(arcs, ends, start_arc, start_side):
    """Follow arcs from ``start_arc`` entered at ``start_side``.

    ``ends`` maps ``(arc, side)`` to the junction index and the partner
    ``(arc, side)`` there (``None`` partner at a free endpoint).
    Returns the traversed arcs, their directions, and the junctions passed.
    """
    seq, dirs, juncs = [], [], []
    arc, side = start_arc, start_side
    seen = set()
    while True:
        if arc in seen:
            break
        seen.add(arc)
        seq.append(arc)
        dirs.append(1 if side == LEFT else -1)
        out = RIGHT if side == LEFT else LEFT
        jidx, partner = ends[(arc, out)]
        if partner is None:
            return seq, dirs, juncs, False
        juncs.append(jidx)
        arc, side = partner
        if arc == start_arc:
            return seq, dirs, juncs, True
    raise TracingError("walk revisited an arc before closing")


def _arc_point(arc: Arc, side: int) -> Point2:
    return arc.left if side == LEFT else arc.right


# --- tangle fronts -----------------------------------------------------------

def build_front(d: BoxDotDiagram) -> FrontProjection:
    """Front of the (flyped) tangle carried by ``d``.

    Each square gets one crossing along its diagonals, negative diagonal on
    top.  Where two squares share a corner their diagonals are joined: side
    by side they make a maximum or minimum, stacked they make a cusp.  The
    result is traced and oriented.
    """
    arcs: list[Arc] = []
    crossings: list[Crossing] = []
    at: dict[tuple[int, int], list[tuple[int, int, str]]] = {}
    for k, sq in enumerate(d.subdivision.squares):
        tl, tr, bl, br = sq.corners()
        neg = Arc(2 * k, (2 * tl[0], 2 * tl[1]), (2 * br[0], 2 * br[1]), -1, k)
        pos = Arc(2 * k + 1, (2 * bl[0], 2 * bl[1]), (2 * tr[0], 2 * tr[1]), 1, k)
        arcs += [neg, pos]
        crossings.append(Crossing((2 * sq.x + sq.size, 2 * sq.y + sq.size), neg.id, pos.id))
        at.setdefault(tl, []).append((neg.id, LEFT, "tl"))
        at.setdefault(br, []).append((neg.id, RIGHT, "br"))
        at.setdefault(bl, []).append((pos.id, LEFT, "bl"))
        at.setdefault(tr, []).append((pos.id, RIGHT, "tr"))

    P, Q = d.p, d.q
    corner_names = {(0, Q): "p1", (P, Q): "p2", (0, 0): "p3", (P, 0): "p4"}
    junctions: list[Junction] = []
    ends: dict[tuple[int, int], tuple[int, tuple[int, int] | None]] = {}
    endpoint_arcs = {}
    for pt in sorted(at, key=lambda t: (-t[1], t[0])):
        items = at[pt]
        if pt in corner_names:
            if len(items) != 1:
                raise TracingError(f"corner {pt} meets {len(items)} arcs")
            a, side, _ = items[0]
            ends[(a, side)] = (-1, None)
            endpoint_arcs[corner_names[pt]] = (a, side)
            continue
        if len(items) != 2:
            raise TracingError(f"grid point {pt} meets {len(items)} arc ends")
        (a1, s1, c1), (a2, s2, c2) = items
        kinds = {c1, c2}
        if kinds == {"tr", "tl"}:
            left = a1 if c1 == "tr" else a2
            right = a2 if left == a1 else a1
            j = Junction((2 * pt[0], 2 * pt[1]), "max", left, right)
        elif kinds == {"br", "bl"}:
            left = a1 if c1 == "br" else a2
            right = a2 if left == a1 else a1
            j = Junction((2 * pt[0], 2 * pt[1]), "min", left, right)
        elif kinds == {"tl", "bl"}:
            # squares stacked, corner at their left edge: cusp pointing left
            upper = a1 if c1 == "bl" else a2
            lower = a2 if upper == a1 else a1
            j = Junction((2 * pt[0], 2 * pt[1]), "cusp", upper, lower, "left")
        elif kinds == {"tr", "br"}:
            upper = a1 if c1 == "br" else a2
            lower = a2 if upper == a1 else a1
            j = Junction((2 * pt[0], 2 * pt[1]), "cusp", upper, lower, "right")
        else:
            raise TracingError(f"unexpected corner pairing {kinds} at {pt}")
        idx = len(junctions)
        junctions.append(j)
        ends[(a1, s1)] = (idx, (a2, s2))
        ends[(a2, s2)] = (idx, (a1, s1))

    endpoints = {name: (2 * x, 2 * y) for (x, y), name in corner_names.items()}
    endpoints = dict(sorted(endpoints.items()))
    fp = FrontProjection(tuple(arcs), tuple(crossings), tuple(junctions), endpoints)
    return trace_strands(fp, d, _ends=ends, _endpoint_arcs=endpoint_arcs)


def _final_stage_arcs(d: BoxDotDiagram) -> list[tuple[int, int]]:
    """(neg arc, pos arc) of the unit squares making up R_n."""
    n = d.vector.n
    return [(2 * k, 2 * k + 1) for k, sq in enumerate(d.subdivision.squares) if sq.stage == n]


def trace_strands(fp: FrontProjection, d: BoxDotDiagram, _ends=None,
                  _endpoint_arcs=None) -> FrontProjection:
    """Label and orient the strands of a tangle front.

    Strand 1 leaves p1.  Strand 2 is oriented so that both strands cross the
    final remainder R_n in the same direction.
    """
    if _ends is None:
        return build_front(d)
    arcs = fp.arcs
    a1, s1 = _endpoint_arcs["p1"]
    seq1, dir1, j1, closed = _walk(arcs, _ends, a1, s1)
    if closed:
        raise TracingError("strand from p1 closed up")
    end1 = _arc_point(arcs[seq1[-1]], RIGHT if dir1[-1] == 1 else LEFT)
    rest = [k for k in ("p2", "p3", "p4") if fp.endpoints[k] != end1]
    a2, s2 = _endpoint_arcs[rest[0]]
    seq2, dir2, j2, _ = _walk(arcs, _ends, a2, s2)
    if len(seq1) + len(seq2) != len(arcs):
        raise TracingError("tangle front has a closed component")

    # both strands cross R_n the same way
    d1 = dict(zip(seq1, dir1))
    d2 = dict(zip(seq2, dir2))
    n = d.vector.n
    neg, pos = _final_stage_arcs(d)[0]
    if neg in d1:
        mine, theirs = d1[neg], d2[pos]
        # columns are traversed vertically; the two diagonals run opposite
        # vertical ways for the same x-direction
        same = mine == theirs if n % 2 else mine == -theirs
    else:
        mine, theirs = d1[pos], d2[neg]
        same = mine == theirs if n % 2 else mine == -theirs
    if not same:
        seq2, dir2, j2 = seq2[::-1], [-x for x in dir2[::-1]], j2[::-1]
    start2 = _arc_point(arcs[seq2[0]], LEFT if dir2[0] == 1 else RIGHT)
    end2 = _arc_point(arcs[seq2[-1]], RIGHT if dir2[-1] == 1 else LEFT)
    strands = (
        Strand(1, tuple(seq1), tuple(dir1), tuple(j1), fp.endpoints["p1"], end1),
        Strand(2, tuple(seq2), tuple(dir2), tuple(j2), start2, end2),
    )
    return FrontProjection(fp.arcs, fp.crossings, fp.junctions, fp.endpoints, strands)


def connectivity_type(r: Rational) -> ConnectivityType:
    if r.p % 2 == 0:
        return ConnectivityType.TYPE0
    if r.q % 2 == 0:
        return ConnectivityType.TYPE_INF
    return ConnectivityType.TYPE1


def subtangle_connectivity(v: TwistVector, j: int) -> ConnectivityType:
    """Connectivity of the subtangle ``(q_n, ..., q_{j+1}, 0)`` sitting in R_{j+1}."""
    if not 1 <= j < v.n:
        raise ValueError(f"stage {j} outside 1..{v.n - 1}")
    val = cf_value(v.components[: v.n - j] + (0,))
    return connectivity_type(Rational.of(val.numerator, val.denominator))


# --- the unknot K_q -----------------------------------------------------------

def _unknot_lines(P: int, Q: int):
    """Slope -1 and +1 lines through the boundary marks, clipped to the
    rectangle, as (left point, right point) in doubled coordinates."""
    P2, Q2 = 2 * P, 2 * Q
    lines = []
    for c in range(1, P2 + Q2, 2):          # X + Y = c
        left = (0, c) if c <= Q2 else (c - Q2, Q2)
        right = (c, 0) if c <= P2 else (P2, c - P2)
        lines.append((left, right, -1))
    for c in range(-Q2 + 1, P2, 2):         # X - Y = c
        left = (0, -c) if c <= 0 else (c, 0)
        right = (c + Q2, Q2) if c <= P2 - Q2 else (P2, P2 - c)
        lines.append((left, right, 1))
    return lines


def _closed_front(lines, interior, is_cusp):
    """Assemble slope +-1 lines into a closed front.

    ``interior`` are the points where lines cross; ``is_cusp`` tells which
    boundary meeting points become cusps (the rest are smoothed extrema).
    """
    arcs = [Arc(k, l, r, s) for k, (l, r, s) in enumerate(lines)]
    at: dict[Point2, list[tuple[int, int]]] = {}
    for a in arcs:
        at.setdefault(a.left, []).append((a.id, LEFT))
        at.setdefault(a.right, []).append((a.id, RIGHT))
    neg_through = {}
    pos_through = {}
    for a in arcs:
        (x0, y0), (x1, _) = a.left, a.right
        for x in range(x0 + 1, x1):
            pt = (x, y0 + a.slope * (x - x0))
            if pt in interior:
                (neg_through if a.slope < 0 else pos_through)[pt] = a.id
    crossings = tuple(Crossing(pt, neg_through[pt], pos_through[pt])
                      for pt in sorted(interior, key=lambda t: (-t[1], t[0])))
    junctions, ends = [], {}
    for pt in sorted(at, key=lambda t: (-t[1], t[0])):
        (a, sa), (b, sb) = at[pt]
        A, B = arcs[a], arcs[b]
        if is_cusp(pt):
            tip = "left" if sa == LEFT else "right"
            if tip == "left":
                upper = a if A.slope > 0 else b
            else:
                upper = a if A.slope < 0 else b
            lower = b if upper == a else a
            j = Junction(pt, "cusp", upper, lower, tip)
        else:
            left_arc = a if sa == RIGHT else b
            right_arc = b if left_arc == a else a
            kind = "max" if arcs[left_arc].slope > 0 else "min"
            j = Junction(pt, kind, left_arc, right_arc)
        idx = len(junctions)
        junctions.append(j)
        ends[(a, sa)] = (idx, (b, sb))
        ends[(b, sb)] = (idx, (a, sa))
    return arcs, crossings, junctions, ends


def build_unknot(t: BoxDotTemplate) -> FrontProjection:
    """Front of the Legendrian unknot K_q on the template boundary.

    Lines of slope -1 and +1 join the boundary marks, crossing at every
    interior mark; boundary boxes become smoothed corners and boundary dots
    cusps.  Oriented from the top-left boundary dot along its slope -1 line.
    """
    P, Q = t.p, t.q
    lines = _unknot_lines(P, Q)
    interior = t.interior_dots | t.interior_boxes
    arcs, crossings, junctions, ends = _closed_front(
        lines, interior, lambda pt: pt[0] in (0, 2 * P))
    start = next(a.id for a in arcs if a.left == (0, 2 * Q - 1) and a.slope < 0)
    seq, dirs, juncs, closed = _walk(arcs, ends, start, LEFT)
    if not closed:
        raise TracingError("K_q did not close up")
    strands = (Strand(1, tuple(seq), tuple(dirs), tuple(juncs),
                      (0, 2 * Q - 1), (0, 2 * Q - 1), closed=True),)
    if len(seq) != len(arcs):
        # extra components are reported as further closed strands
        left = set(range(len(arcs))) - set(seq)
        extra = []
        while left:
            a0 = min(left)
            s2, d2, j2, _ = _walk(arcs, ends, a0, LEFT)
            left -= set(s2)
            extra.append(Strand(len(strands) + len(extra) + 1, tuple(s2), tuple(d2),
                                tuple(j2), arcs[a0].left, arcs[a0].left, closed=True))
        strands = strands + tuple(extra)
    return FrontProjection(tuple(arcs), crossings, tuple(junctions), {}, strands)


def square_unlink(m: int) -> FrontProjection:
    """The pattern U_m: 4m slope +-1 segments joining the 4m half-integer
    marks on the boundary of an m x m square, all loops oriented."""
    M = 2 * m
    lines = []
    for c in range(1, 2 * M, 2):
        left = (0, c) if c <= M else (c - M, M)
        right = (c, 0) if c <= M else (M, c - M)
        lines.append((left, right, -1))
    for c in range(-M + 1, M, 2):
        left = (0, -c) if c <= 0 else (c, 0)
        right = (c + M, M) if c <= 0 else (M, M - c)
        lines.append((left, right, 1))
    interior = {(x, y) for x in range(1, M) for y in range(1, M) if (x + y) % 2 == 1}
    arcs, crossings, junctions, ends = _closed_front(
        lines, interior, lambda pt: pt[0] in (0, M))
    strands = []
    left = set(range(len(arcs)))
    while left:
        a0 = min(left, key=lambda a: (-arcs[a].left[1], arcs[a].left[0]))
        s2, d2, j2, _ = _walk(arcs, ends, a0, LEFT)
        left -= set(s2)
        strands.append(Strand(len(strands) + 1, tuple(s2), tuple(d2), tuple(j2),
                              arcs[a0].left, arcs[a0].left, closed=True))
    return FrontProjection(tuple(arcs), crossings, tuple(junctions), {}, tuple(strands))


def front_json(fp: FrontProjection) -> dict:
    strand = fp.strand_of()
    dirn = fp.direction()
    return {
        "arcs": [{"id": a.id, "from": list(a.left), "to": list(a.right), "slope": a.slope,
                  "strand": strand.get(a.id), "direction": dirn.get(a.id)} for a in fp.arcs],
        "crossings": [{"at": list(c.point), "over": c.over, "under": c.under}
                      for c in fp.crossings],
        "cusps": [{"at": list(j.point), "tip": j.tip, "upper": j.upper, "lower": j.lower,
                   "strand": strand.get(j.upper)} for j in fp.cusps],
        "extrema": [{"at": list(j.point), "kind": j.kind, "strand": strand.get(j.upper)}
                    for j in fp.junctions if j.kind != "cusp"],
        "endpoints": {k: list(v) for k, v in fp.endpoints.items()},
        "strands": [{"id": s.id, "from": list(s.start), "to": list(s.end),
                     "arcs": list(s.arcs), "closed": s.closed} for s in fp.strands],
    }
