"""
Classical invariants of fronts, strandwise invariants of tangle strands, and
an unraveling certificate for the unknot K_q.

Half-integers are carried doubled: ``tb2 = 2 tb`` and ``r2 = 2 r``.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import networkx as nx

from .rational_core import Subdivision
from .tangle import FrontProjection, Junction


class Convention(str, Enum):
    SELF = "self"
    HALF_MIXED = "half-mixed"


DEFAULT_CONVENTION = Convention.SELF


class Unoriented(ValueError):
    pass


class CertificateError(RuntimeError):
    """K_q could not be unraveled; this means a construction bug."""


@dataclass(frozen=True)
class ClassicalInvariants:
    writhe2: int
    down: int
    up: int

    @property
    def tb2(self) -> int:
        return self.writhe2 - (self.down + self.up)

    @property
    def r2(self) -> int:
        return self.down - self.up

    @property
    def tb(self):
        return _half(self.tb2)

    @property
    def r(self):
        return _half(self.r2)

    @property
    def writhe(self):
        return _half(self.writhe2)

    def as_json(self) -> dict:
        return {"tb2": self.tb2, "r2": self.r2, "writhe2": self.writhe2,
                "D": self.down, "U": self.up}


def _half(x2: int):
    from fractions import Fraction
    v = Fraction(x2, 2)
    return int(v) if v.denominator == 1 else v


def _require_oriented(fp: FrontProjection):
    if not fp.strands:
        raise Unoriented("front carries no orientation")


def crossing_signs(fp: FrontProjection) -> list[int]:
    """Sign of each crossing, in ``fp.crossings`` order.

    With the front in the xz-plane and y pointing into the page, a crossing
    is positive exactly when the two strands travel the same x-direction.
    """
    _require_oriented(fp)
    d = fp.direction()
    return [d[c.over] * d[c.under] for c in fp.crossings]


def writhe(fp: FrontProjection) -> int:
    return sum(crossing_signs(fp))


def _cusp_is_down(j: Junction, d: dict[int, int], arcs) -> bool:
    """A cusp is traversed downward iff the strand leaves along the lower branch."""
    lower = arcs[j.lower]
    # the lower branch leaves the tip going right (left cusp) or left (right cusp)
    leaves_right = lower.left == j.point
    return d[j.lower] == (1 if leaves_right else -1)


def cusp_counts(fp: FrontProjection, strand: int | None = None) -> tuple[int, int]:
    _require_oriented(fp)
    d = fp.direction()
    owner = fp.strand_of()
    down = up = 0
    for j in fp.cusps:
        if strand is not None and owner[j.upper] != strand:
            continue
        if _cusp_is_down(j, d, fp.arcs):
            down += 1
        else:
            up += 1
    return down, up


def tb_r(fp: FrontProjection) -> ClassicalInvariants:
    _require_oriented(fp)
    if not all(s.closed for s in fp.strands):
        raise ValueError("open strands: use strandwise_invariants")
    D, U = cusp_counts(fp)
    return ClassicalInvariants(2 * writhe(fp), D, U)


def strandwise_invariants(fp: FrontProjection,
                          convention: Convention | str = DEFAULT_CONVENTION
                          ) -> dict[int, ClassicalInvariants]:
    """Per-strand tb and r.

    Self-crossings of a strand always count toward its writhe.  Under the
    ``half-mixed`` rule each crossing between the two strands also adds half
    its sign to both.
    """
    _require_oriented(fp)
    convention = Convention(convention)
    owner = fp.strand_of()
    signs = crossing_signs(fp)
    out = {}
    for s in fp.strands:
        w2 = 0
        for c, e in zip(fp.crossings, signs):
            a, b = owner[c.over], owner[c.under]
            if a == b == s.id:
                w2 += 2 * e
            elif convention is Convention.HALF_MIXED and s.id in (a, b):
                w2 += e
        D, U = cusp_counts(fp, s.id)
        out[s.id] = ClassicalInvariants(w2, D, U)
    return out


def reversed_front(fp: FrontProjection) -> FrontProjection:
    """Same front with every strand orientation reversed."""
    from .tangle import Strand
    strands = tuple(Strand(s.id, s.arcs[::-1], tuple(-x for x in s.directions[::-1]),
                           s.junctions[::-1], s.end, s.start, s.closed)
                    for s in fp.strands)
    return FrontProjection(fp.arcs, fp.crossings, fp.junctions, fp.endpoints, strands)


# --- unraveling K_q -----------------------------------------------------------

@dataclass(frozen=True)
class Step:
    square: int   # index into Subdivision.squares
    loop: int     # 1..size; loop ``size`` lies on top


@dataclass(frozen=True)
class UnknotCertificate:
    steps: tuple[Step, ...]
    residual: Step | None
    loops: int
    gluings: int

    @property
    def squares(self) -> list[int]:
        seen = []
        for st in self.steps + ((self.residual,) if self.residual else ()):
            if st.square not in seen:
                seen.append(st.square)
        return seen

    def as_json(self) -> dict:
        return {"steps": [[s.square, s.loop] for s in self.steps],
                "residual": [self.residual.square, self.residual.loop] if self.residual else None,
                "loops": self.loops, "gluings": self.gluings}


def _unit_steps(a, b):
    """Split a slope +-1 segment (doubled coords, a left of b) into unit steps."""
    (x0, y0), (x1, y1) = a, b
    s = 1 if y1 > y0 else -1
    return [((x, y0 + s * (x - x0)), (x + 1, y0 + s * (x + 1 - x0))) for x in range(x0, x1)]


def square_loops(x0: int, y0: int, m: int) -> dict[int, list[tuple]]:
    """The m rectangular loops of U_m in the square with doubled origin
    ``(x0, y0)`` and side ``m``, keyed by loop index, as lists of segments."""
    M = 2 * m
    out = {}
    for j in range(1, m + 1):
        J = 2 * j - 1
        pts = [(0, J), (J, 0), (M, M - J), (M - J, M)]
        pts = [(x0 + x, y0 + y) for x, y in pts]
        a, b, c, d = pts
        out[j] = [(a, b), (b, c), (d, c), (a, d)]
    return out


def _front_steps(fp: FrontProjection) -> dict[tuple, int]:
    steps = {}
    for a in fp.arcs:
        for st in _unit_steps(a.left, a.right):
            steps[st] = a.id
    return steps


def verify_unknot(fp: FrontProjection, s: Subdivision) -> UnknotCertificate:
    """Unravel K_q square by square.

    Inside each square of side m the front is the pattern U_m of m stacked
    rectangular loops.  Loops of neighbouring squares are glued at the
    diagram marks on shared edges, and the gluing graph must be a tree.  The
    loops are then removed outermost squares first, stage by stage, top loop
    first; each removal must take a loop glued to at most one survivor.
    The last loop is the unknot itself and is reported as the residual.
    """
    if len(fp.strands) != 1 or not fp.strands[0].closed:
        raise CertificateError(f"front has {len(fp.strands)} components")
    front = _front_steps(fp)
    owner: dict[tuple, tuple[int, int]] = {}
    touch: dict[tuple[int, int], list[tuple[int, int]]] = {}
    loop_squares = {}
    for k, sq in enumerate(s.squares):
        loops = square_loops(2 * sq.x, 2 * sq.y, sq.size)
        for j, segs in loops.items():
            key = (k, j)
            loop_squares[key] = k
            corners = set()
            for a, b in segs:
                corners |= {a, b}
                for st in _unit_steps(a, b):
                    if st in owner:
                        raise CertificateError(f"step {st} claimed twice")
                    if st not in front:
                        raise CertificateError(f"loop step {st} is not in the front")
                    owner[st] = key
            for c in corners:
                touch.setdefault(c, []).append(key)
    if len(owner) != len(front):
        raise CertificateError("loops do not cover the front")

    # stacking: at crossings inside a square, the higher loop is over
    arc_steps: dict[int, list] = {}
    for st, a in front.items():
        arc_steps.setdefault(a, []).append(st)
    for c in fp.crossings:
        pt = c.point
        lo = [owner[st] for st in arc_steps[c.over] if pt in st]
        lu = [owner[st] for st in arc_steps[c.under] if pt in st]
        if len(set(lo)) == 1 and len(set(lu)) == 1 and lo[0][0] == lu[0][0]:
            if lo[0][1] <= lu[0][1]:
                raise CertificateError(f"loop {lu[0]} lies over {lo[0]} at {pt}")

    # gluing graph
    P2 = max(p[0] for p in touch)
    Q2 = max(p[1] for p in touch)
    edges = []
    for pt, keys in sorted(touch.items()):
        interior = 0 < pt[0] < P2 and 0 < pt[1] < Q2
        if interior:
            if len(keys) != 2:
                raise CertificateError(f"mark {pt} touches {len(keys)} loops")
            edges.append(tuple(keys))
        elif len(keys) != 1:
            raise CertificateError(f"boundary mark {pt} touches {len(keys)} loops")
    nodes = list(loop_squares)
    graph = nx.MultiGraph()
    graph.add_nodes_from(nodes)
    graph.add_edges_from(edges)
    if not nx.is_tree(graph):
        raise CertificateError(f"gluing graph of {len(nodes)} loops and "
                               f"{len(edges)} marks is not a tree")

    # peel
    n = s.vector.n
    order = sorted(range(len(s.squares)),
                   key=lambda k: (s.squares[k].stage,
                                  s.squares[k].depth if s.squares[k].stage < n else 0,
                                  _final_key(s, k)))
    alive = set(nodes)
    degree = {v: 0 for v in nodes}
    for a, b in edges:
        degree[a] += 1
        degree[b] += 1
    steps = []
    for k in order:
        for j in range(s.squares[k].size, 0, -1):
            v = (k, j)
            if degree[v] > 1:
                raise CertificateError(f"loop {j} of square {k} still glued {degree[v]} ways")
            alive.discard(v)
            for a, b in edges:
                if v in (a, b):
                    other = b if a == v else a
                    if other in alive:
                        degree[other] -= 1
            steps.append(Step(k, j))
    residual = steps.pop()
    return UnknotCertificate(tuple(steps), residual, len(nodes), len(edges))


def _final_key(s: Subdivision, k: int):
    """Stage-n squares are peeled from one end of their row or column."""
    sq = s.squares[k]
    if sq.stage != s.vector.n:
        return (0, 0)
    return (-sq.x, -sq.y)


def unlink_certificate(m: int) -> list[Step]:
    """Top-down removal of the m loops of U_m, checked against its front."""
    from .tangle import square_unlink
    fp = square_unlink(m)
    if len(fp.strands) != m:
        raise CertificateError(f"U_{m} has {len(fp.strands)} components")
    loops = square_loops(0, 0, m)
    front = _front_steps(fp)
    by_arc = {}
    for st, a in front.items():
        by_arc.setdefault(a, set()).add(st)
    owner = {}
    for j, segs in loops.items():
        for a, b in segs:
            for st in _unit_steps(a, b):
                owner[st] = j
    comps = []
    for strand in fp.strands:
        ids = {owner[st] for a in strand.arcs for st in by_arc[a]}
        if len(ids) != 1:
            raise CertificateError("a component mixes loops")
        comps.append(ids.pop())
    if sorted(comps) != list(range(1, m + 1)):
        raise CertificateError("components do not match the loops")
    for c in fp.crossings:
        o = {owner[st] for st in by_arc[c.over] if c.point in st}
        u = {owner[st] for st in by_arc[c.under] if c.point in st}
        if max(o) <= min(u):
            raise CertificateError(f"crossing at {c.point} violates the stacking")
    return [Step(0, j) for j in range(m, 0, -1)]


def invariants_report(values: dict[int, ClassicalInvariants], convention) -> dict:
    return {"convention": Convention(convention).value,
            "strands": {str(k): v.as_json() for k, v in sorted(values.items())}}
