"""
Regular continued fractions and square subdivisions of the rectangle
[0, P] x [0, Q].

Vectors are written in the tangle convention ``(q_n, ..., q_1)``: the first
component is the *last* stage of the Euclidean recurrence and the final
component is ``q_1 = floor(P/Q)``.  Stage indices ``j`` always refer to this
numbering, so ``vector.q(1)`` is the last tuple entry.

Square positions are integer grid coordinates (lower-left corner and side
length); all arithmetic is exact.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction as _Q
from itertools import product
from math import gcd, prod


class NotationError(ValueError):
    """Raised for unparseable or out-of-range input notation."""


@dataclass(frozen=True)
class Rational:
    """A reduced positive rational ``p/q``.

    ``reduced_from`` records the original pair when the input was not in
    lowest terms.
    """
    p: int
    q: int
    reduced_from: tuple[int, int] | None = field(default=None, compare=False)

    @classmethod
    def of(cls, p: int, q: int = 1) -> "Rational":
        if isinstance(p, bool) or isinstance(q, bool):
            raise NotationError("fraction parts must be integers")
        if p <= 0 or q <= 0:
            raise NotationError(f"fraction must be positive, got {p}/{q}")
        g = gcd(p, q)
        if g == 1:
            return cls(p, q)
        return cls(p // g, q // g, reduced_from=(p, q))

    @classmethod
    def parse(cls, text: str) -> "Rational":
        """Parse ``"P/Q"`` or ``"P"``."""
        s = text.strip()
        m = re.fullmatch(r"([+-]?\d+)\s*(?:/\s*([+-]?\d+))?", s)
        if not m:
            raise NotationError(f"cannot parse fraction {text!r}")
        p = int(m.group(1))
        q = int(m.group(2)) if m.group(2) is not None else 1
        try:
            return cls.of(p, q)
        except NotationError as exc:
            raise NotationError(f"invalid fraction {text!r}: {exc}") from None

    def as_fraction(self) -> _Q:
        return _Q(self.p, self.q)

    def __str__(self) -> str:
        return f"{self.p}/{self.q}"


@dataclass(frozen=True)
class TwistVector:
    """Twist components ``(q_n, ..., q_1)`` of a continued fraction."""
    components: tuple[int, ...]

    def __post_init__(self):
        if not self.components:
            raise NotationError("twist vector must be non-empty")
        if any(c < 0 for c in self.components):
            raise NotationError(f"negative twist component in {self.components}")

    @property
    def n(self) -> int:
        return len(self.components)

    def q(self, j: int) -> int:
        """Component ``q_j`` (1-based, ``q_1`` is the last entry)."""
        if not 1 <= j <= self.n:
            raise IndexError(j)
        return self.components[self.n - j]

    def is_regular(self) -> bool:
        n, c = self.n, self.q
        if n == 1:
            return c(1) >= 1
        if c(n) < 2:
            return False
        return all(c(j) >= 1 for j in range(2, n))

    def __str__(self) -> str:
        return format_vector(self)


@dataclass(frozen=True)
class FlypeVector:
    """Flype exponents ``(f_n, ..., f_1)``, indexed like :class:`TwistVector`."""
    exponents: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.exponents)

    def f(self, j: int) -> int:
        if not 1 <= j <= self.n:
            raise IndexError(j)
        return self.exponents[self.n - j]

    @classmethod
    def zeros(cls, n: int) -> "FlypeVector":
        return cls((0,) * n)

    @classmethod
    def from_stages(cls, n: int, **stages: int) -> "FlypeVector":
        """``FlypeVector.from_stages(5, f3=1)`` sets ``f_3 = 1``."""
        exps = [0] * n
        for key, val in stages.items():
            j = int(key.lstrip("f"))
            exps[n - j] = val
        return cls(tuple(exps))

    def check(self, v: TwistVector) -> None:
        if self.n != v.n:
            raise NotationError(
                f"flype vector length {self.n} does not match twist vector length {v.n}")
        for j in range(1, v.n + 1):
            if not 0 <= self.f(j) <= v.q(j):
                raise NotationError(
                    f"flype exponent f_{j}={self.f(j)} outside 0..{v.q(j)}")

    def normalized(self) -> "FlypeVector":
        """Copy with ``f_n`` set to 0 (the last stage admits no placement choice)."""
        return FlypeVector((0,) + self.exponents[1:])


@dataclass(frozen=True)
class Stage:
    j: int
    count: int     # q_j
    size: int      # r_j
    rest: int      # r_{j+1}


def euclid_stages(r: Rational) -> list[Stage]:
    """Run the recurrence ``r_{j-1} = q_j r_j + r_{j+1}`` from ``r_0 = P``, ``r_1 = Q``."""
    stages = []
    prev, cur = r.p, r.q
    j = 1
    while cur:
        qj, rest = divmod(prev, cur)
        stages.append(Stage(j, qj, cur, rest))
        prev, cur = cur, rest
        j += 1
    return stages


def regular_cf(r: Rational) -> TwistVector:
    """Regular continued fraction of ``r`` as ``(q_n, ..., q_1)``.

    >>> regular_cf(Rational.of(37, 26))
    TwistVector(components=(3, 1, 2, 2, 1))
    """
    stages = euclid_stages(r)
    return TwistVector(tuple(s.count for s in reversed(stages)))


def cf_value(v: TwistVector | tuple[int, ...]) -> _Q:
    """Exact value of ``q_1 + 1/(q_2 + 1/(... + 1/q_n))``.

    Raises ZeroDivisionError when an inner partial value vanishes, which can
    only happen for non-regular vectors (a zero that is not the final term).
    """
    comps = v.components if isinstance(v, TwistVector) else tuple(v)
    if not comps:
        raise NotationError("empty vector")
    num, den = comps[0], 1
    for c in comps[1:]:
        if num == 0:
            raise ZeroDivisionError(f"vanishing convergent while evaluating {comps}")
        num, den = c * num + den, num
    return _Q(num, den)


def cf_rational(v: TwistVector) -> Rational:
    val = cf_value(v)
    if val <= 0:
        raise NotationError(f"vector {v.components} has non-positive value {val}")
    return Rational.of(val.numerator, val.denominator)


def check_regular(v: TwistVector) -> None:
    if not v.is_regular():
        raise NotationError(f"vector {format_vector(v)} is not a regular continued fraction")


# --- subdivisions -----------------------------------------------------------

@dataclass(frozen=True)
class Rect:
    x: int
    y: int
    w: int
    h: int

    def center2(self) -> tuple[int, int]:
        return (2 * self.x + self.w, 2 * self.y + self.h)


@dataclass(frozen=True)
class Square:
    x: int
    y: int
    size: int
    stage: int
    # 0 for the square farthest from the stage remainder, increasing inward
    depth: int

    def corners(self):
        """(top_left, top_right, bottom_left, bottom_right) in grid units."""
        x, y, s = self.x, self.y, self.size
        return (x, y + s), (x + s, y + s), (x, y), (x + s, y)


@dataclass(frozen=True)
class Subdivision:
    p: int
    q: int
    vector: TwistVector
    flype: FlypeVector
    squares: tuple[Square, ...]
    # remainders[j-1] is the absolute rectangle R_j
    remainders: tuple[Rect, ...]

    @property
    def sizes(self) -> tuple[int, ...]:
        """``(r_1, ..., r_n)``."""
        return tuple(r.h if j % 2 else r.w for j, r in enumerate(self.remainders, 1))

    def stage_squares(self, j: int) -> list[Square]:
        return [s for s in self.squares if s.stage == j]


def _layout(stages: list[Stage], f: FlypeVector, j: int):
    """Squares of R_j in its own frame (origin at its lower-left corner).

    Returns ``(w, h, squares, rects)`` with ``rects`` the frames of R_j..R_n.
    A flype at stage ``j`` rotates the inner remainder R_{j+1} by a half turn
    about the axis parallel to the twist, so its contents are mirrored once
    per flype.
    """
    st = stages[j - 1]
    n = len(stages)
    r_prev = stages[j - 2].size if j > 1 else None
    odd = j % 2 == 1
    if j == 1:
        w, h = st.count * st.size + st.rest, st.size
    elif odd:
        w, h = r_prev, st.size
    else:
        w, h = st.size, r_prev
    own = Rect(0, 0, w, h)
    if j == n:
        sq = [Square(k if odd else 0, 0 if odd else k, 1, j, k) for k in range(st.count)]
        return w, h, sq, [own]

    iw, ih, inner, rects = _layout(stages, f, j + 1)
    fj = f.f(j)
    if fj % 2:
        if odd:
            inner = [Square(s.x, ih - s.y - s.size, s.size, s.stage, s.depth) for s in inner]
            rects = [Rect(r.x, ih - r.y - r.h, r.w, r.h) for r in rects]
        else:
            inner = [Square(iw - s.x - s.size, s.y, s.size, s.stage, s.depth) for s in inner]
            rects = [Rect(iw - r.x - r.w, r.y, r.w, r.h) for r in rects]
    s = st.size
    out = []
    if odd:
        near = [Square(k * s, 0, s, j, k) for k in range(fj)]
        ox, oy = fj * s, 0
        far_start = ox + iw
        far = [Square(far_start + k * s, 0, s, j, st.count - fj - 1 - k)
               for k in range(st.count - fj)]
    else:
        near = [Square(0, h - (k + 1) * s, s, j, k) for k in range(fj)]
        bottom = st.count - fj
        ox, oy = 0, bottom * s
        far = [Square(0, k * s, s, j, k) for k in range(bottom)]
    out.extend(near)
    out.extend(far)
    out.extend(Square(q.x + ox, q.y + oy, q.size, q.stage, q.depth) for q in inner)
    rects = [own] + [Rect(r.x + ox, r.y + oy, r.w, r.h) for r in rects]
    return w, h, out, rects


def subdivide(r: Rational, f: FlypeVector | None = None) -> Subdivision:
    """Free subdivision of ``[0,P] x [0,Q]`` into maximal squares.

    At each stage ``j < n``, ``f_j`` squares sit at the left (odd ``j``) or
    top (even ``j``) end of the remainder R_j in its own frame and the other
    ``q_j - f_j`` at the right or bottom end; the inner remainder R_{j+1} is
    mirrored ``f_j`` times, exactly as the corresponding flypes rotate the
    subtangle it carries.  ``f_n`` is ignored.
    """
    v = regular_cf(r)
    if f is None:
        f = FlypeVector.zeros(v.n)
    f.check(v)
    f = f.normalized()
    stages = euclid_stages(r)
    w, h, squares, rects = _layout(stages, f, 1)
    assert (w, h) == (r.p, r.q)
    squares = tuple(sorted(squares, key=lambda s: (s.stage, s.depth, s.x, s.y)))
    return Subdivision(r.p, r.q, v, f, squares, tuple(rects))


def enumerate_flype_vectors(v: TwistVector) -> list[FlypeVector]:
    """All flype vectors with ``f_n = 0``, in lexicographic order."""
    check_regular(v)
    ranges = [range(1)] + [range(v.q(j) + 1) for j in range(v.n - 1, 0, -1)]
    return [FlypeVector(t) for t in product(*ranges)]


def flype_count(v: TwistVector) -> int:
    return prod(v.q(j) + 1 for j in range(1, v.n))


# --- notation ---------------------------------------------------------------

_TOKEN = re.compile(r"^(\d+)(?:\^(\d+))?$")


def parse_vector(text: str) -> tuple[TwistVector, FlypeVector]:
    """Parse ``"(2,1^1,1)"`` or ``"2,1^1,1"``; missing exponents are 0."""
    s = re.sub(r"\s+", "", text)
    if s.startswith("(") and s.endswith(")"):
        s = s[1:-1]
    if not s:
        raise NotationError(f"empty vector {text!r}")
    comps, exps = [], []
    for tok in s.split(","):
        m = _TOKEN.match(tok)
        if not m:
            raise NotationError(f"cannot parse vector component {tok!r} in {text!r}")
        comps.append(int(m.group(1)))
        exps.append(int(m.group(2) or 0))
    v = TwistVector(tuple(comps))
    f = FlypeVector(tuple(exps))
    f.check(v)
    return v, f


def format_vector(v: TwistVector, f: FlypeVector | None = None) -> str:
    parts = []
    for i, c in enumerate(v.components):
        e = f.exponents[i] if f is not None else 0
        parts.append(f"{c}^{e}" if e else str(c))
    return "(" + ",".join(parts) + ")"
