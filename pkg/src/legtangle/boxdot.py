"""
Box-dot templates and diagrams.

Marked points live on a half-integer lattice and are stored doubled:
the box ``(i - 1/2, j)`` is ``(2i - 1, 2j)`` and the dot ``(i, j - 1/2)`` is
``(2i, 2j - 1)``.  A doubled point is a dot iff its x-coordinate is even.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .rational_core import (FlypeVector, Rational, Subdivision, TwistVector,
                            cf_rational, check_regular, subdivide)

Point2 = tuple[int, int]


def is_dot(pt: Point2) -> bool:
    return pt[0] % 2 == 0


def row_major(pts):
    """Top row first, left to right inside a row."""
    return sorted(pts, key=lambda t: (-t[1], t[0]))


@dataclass(frozen=True)
class BoxDotTemplate:
    p: int
    q: int

    @cached_property
    def boxes(self) -> frozenset[Point2]:
        return frozenset((2 * i - 1, 2 * j)
                         for i in range(1, self.p + 1) for j in range(0, self.q + 1))

    @cached_property
    def dots(self) -> frozenset[Point2]:
        return frozenset((2 * i, 2 * j - 1)
                         for i in range(0, self.p + 1) for j in range(1, self.q + 1))

    def is_interior(self, pt: Point2) -> bool:
        x, y = pt
        return 0 < x < 2 * self.p and 0 < y < 2 * self.q

    @cached_property
    def interior_boxes(self) -> frozenset[Point2]:
        return frozenset(b for b in self.boxes if self.is_interior(b))

    @cached_property
    def interior_dots(self) -> frozenset[Point2]:
        return frozenset(d for d in self.dots if self.is_interior(d))

    @cached_property
    def boundary_boxes(self) -> frozenset[Point2]:
        return self.boxes - self.interior_boxes

    @cached_property
    def boundary_dots(self) -> frozenset[Point2]:
        return self.dots - self.interior_dots

    def sign(self, pt: Point2) -> int:
        """Checkerboard sign of a dot or interior box (+1 or -1)."""
        x, y = pt
        if is_dot(pt):
            i, j = x // 2, (y + 1) // 2
        else:
            if not self.is_interior(pt):
                raise ValueError(f"boundary box {pt} carries no sign")
            i, j = (x + 1) // 2, y // 2
        return 1 if (i + j - self.q) % 2 == 0 else -1

    @cached_property
    def signs(self) -> dict[Point2, int]:
        return {pt: self.sign(pt) for pt in row_major(self.dots | self.interior_boxes)}


def template(r: Rational) -> BoxDotTemplate:
    return BoxDotTemplate(r.p, r.q)


def sign_marks(t: BoxDotTemplate) -> dict[Point2, int]:
    """Checkerboard signing of all dots and interior boxes.

    Dot ``(i, j - 1/2)`` and box ``(i - 1/2, j)`` are positive iff
    ``i + j = Q (mod 2)``.  A box thus shares the sign of both dots next to it
    on its slope -1 line.
    """
    return dict(t.signs)


@dataclass(frozen=True)
class Segment:
    """An edge added to the subdivision at some stage.

    ``start`` is the bottom (vertical) or left (horizontal) endpoint in grid
    units.  Its marks are ordered bottom-to-top or left-to-right.
    """
    stage: int
    vertical: bool
    start: tuple[int, int]
    length: int

    @property
    def end(self) -> tuple[int, int]:
        x, y = self.start
        return (x, y + self.length) if self.vertical else (x + self.length, y)

    @property
    def marks(self) -> list[Point2]:
        x, y = self.start
        if self.vertical:
            return [(2 * x, 2 * (y + k) - 1) for k in range(1, self.length + 1)]
        return [(2 * (x + k) - 1, 2 * y) for k in range(1, self.length + 1)]


def stage_segments(s: Subdivision) -> list[Segment]:
    """Edges each stage adds: one per square of stage ``j < n`` (its side
    facing R_{j+1}) and the ``q_n - 1`` edges between the final unit squares."""
    n = s.vector.n
    segs = []
    for sq in s.squares:
        j = sq.stage
        if j == n:
            continue
        inner = s.remainders[j]          # R_{j+1}
        cx2, cy2 = inner.center2()
        if j % 2:   # columns: vertical edge toward the remainder
            x = sq.x + sq.size if 2 * sq.x + sq.size < cx2 else sq.x
            segs.append(Segment(j, True, (x, sq.y), sq.size))
        else:
            y = sq.y if 2 * sq.y + sq.size > cy2 else sq.y + sq.size
            segs.append(Segment(j, False, (sq.x, y), sq.size))
    last = sorted(s.stage_squares(n), key=lambda t: (t.x, t.y))
    for a, b in zip(last, last[1:]):
        if n % 2:
            segs.append(Segment(n, True, (b.x, b.y), 1))
        else:
            segs.append(Segment(n, False, (b.x, b.y), 1))
    segs.sort(key=lambda g: (g.stage, g.vertical, g.start))
    return segs


@dataclass(frozen=True)
class MarkClasses:
    shared: frozenset[Point2]
    tagged: frozenset[Point2]
    endpoint: dict[str, Point2]
    plain: frozenset[Point2]


@dataclass(frozen=True, eq=False)
class BoxDotDiagram:
    template: BoxDotTemplate
    subdivision: Subdivision
    segments: tuple[Segment, ...]
    # mark -> stage index
    stages: dict[Point2, int]

    @property
    def p(self) -> int:
        return self.template.p

    @property
    def q(self) -> int:
        return self.template.q

    @property
    def vector(self) -> TwistVector:
        return self.subdivision.vector

    @property
    def flype(self) -> FlypeVector:
        return self.subdivision.flype

    @property
    def key(self):
        return (self.p, self.q, self.flype.exponents)

    @cached_property
    def marks(self) -> frozenset[Point2]:
        return frozenset(self.stages)

    @cached_property
    def dots(self) -> list[Point2]:
        return row_major(m for m in self.stages if is_dot(m))

    @cached_property
    def boxes(self) -> list[Point2]:
        return row_major(m for m in self.stages if not is_dot(m))

    def __eq__(self, other):
        if not isinstance(other, BoxDotDiagram):
            return NotImplemented
        return (self.p, self.q) == (other.p, other.q) and self.marks == other.marks

    def __hash__(self):
        return hash((self.p, self.q, self.marks))

    @cached_property
    def classes(self) -> MarkClasses:
        return mark_classes(self)

    @cached_property
    def extremum_marks(self) -> dict[tuple[int, int], Point2]:
        """Grid corner -> tagged mark nearest to it.

        Top and bottom ends of each added vertical edge map to its top-most
        and bottom-most dots; left and right ends of horizontal edges map to
        the left-most and right-most boxes.  On unit edges both ends map to
        the single (shared) mark.
        """
        out = {}
        for seg in self.segments:
            ms = seg.marks
            out[seg.start] = ms[0]
            out[seg.end] = ms[-1]
        return out


def diagram(s: Subdivision, t: BoxDotTemplate) -> BoxDotDiagram:
    """Interior template points lying on the edges of ``s``, tagged by stage."""
    if (s.p, s.q) != (t.p, t.q):
        raise ValueError(f"subdivision is for {s.p}/{s.q}, template for {t.p}/{t.q}")
    segs = stage_segments(s)
    stages = {}
    for seg in segs:
        for m in seg.marks:
            if m in stages:
                raise AssertionError(f"mark {m} lies on two added edges")
            if not t.is_interior(m):
                raise AssertionError(f"mark {m} is not interior")
            stages[m] = seg.stage
    return BoxDotDiagram(t, s, tuple(segs), stages)


def apply_f_move(v: TwistVector, f: FlypeVector | None = None) -> BoxDotDiagram:
    """The diagram of ``q^f`` for ``q = cf_value(v)``; ``f = 0`` gives the
    standard diagram."""
    check_regular(v)
    r = cf_rational(v)
    return diagram(subdivide(r, f), template(r))


def standard_diagram(r: Rational) -> BoxDotDiagram:
    return diagram(subdivide(r), template(r))


def mark_classes(d: BoxDotDiagram) -> MarkClasses:
    n = d.vector.n
    shared, tagged = set(), set()
    for seg in d.segments:
        ms = seg.marks
        if seg.stage == n:
            shared.update(ms)
        else:
            tagged.add(ms[0])
            tagged.add(ms[-1])
    tagged |= shared
    P2, Q2 = 2 * d.p, 2 * d.q
    endpoint = {
        "p1": (0, Q2 - 1),
        "p2": (P2, Q2 - 1),
        "p3": (0, 1),
        "p4": (P2, 1),
    }
    plain = d.marks - tagged
    return MarkClasses(frozenset(shared), frozenset(tagged), endpoint, frozenset(plain))


def diagram_json(d: BoxDotDiagram) -> dict:
    c = d.classes
    return {
        "p": d.p,
        "q": d.q,
        "vector": list(d.vector.components),
        "f": list(d.flype.exponents),
        "dots": [list(m) for m in d.dots],
        "boxes": [list(m) for m in d.boxes],
        "classes": {
            "shared": [list(m) for m in row_major(c.shared)],
            "tagged": [list(m) for m in row_major(c.tagged)],
            "endpoint": {k: list(v) for k, v in c.endpoint.items()},
        },
        "signs": {f"{x},{y}": d.template.sign((x, y)) for x, y in row_major(d.marks)},
        "squares": [[s.x, s.y, s.size, s.stage] for s in d.subdivision.squares],
    }
