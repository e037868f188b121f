"""
Elliptic profiles and the pairwise flype classifier.

Tagged dots mark the local extrema of the tangle front.  Walking each
oriented strand and recording the dot behind every extremum gives the
ordered lists E1 and E2; shared dots are extrema of both strands and so
show up in both lists.  The classifier combines these lists with sigma
counts and strandwise invariants.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from enum import Enum

from .boxdot import BoxDotDiagram, Point2, apply_f_move, is_dot
from .invariants import DEFAULT_CONVENTION, Convention, strandwise_invariants
from .rational_core import FlypeVector, Rational, TwistVector, regular_cf
from .tangle import ConnectivityType, FrontProjection, build_front, subtangle_connectivity


class Outcome(str, Enum):
    ISOTOPIC = "Isotopic"
    NOT_ISOTOPIC = "NotIsotopic"
    UNKNOWN = "Unknown"


RULES = {
    "canonical": "canonical-form: equal after dropping f_n and vertical flypes",
    "sigma_inf": "sigma-inf: horizontal flypes at type-inf subtangles differ",
    "sigma": "sigma: horizontal flype totals differ (n odd)",
    "cardinality": "elliptic-count: strandwise elliptic counts differ",
    "bijection": "shared-position: shared elliptics sit at different positions",
    "strandwise": "strandwise: strandwise classical invariants differ",
}


@dataclass(frozen=True)
class EllipticProfile:
    e1: tuple[Point2, ...]
    e2: tuple[Point2, ...]
    shared: frozenset[Point2]

    @property
    def counts(self) -> tuple[int, int]:
        return len(self.e1), len(self.e2)

    def index_pairs(self) -> list[tuple[int, int]]:
        """(position in E1, position in E2) of each shared dot, sorted."""
        return sorted((self.e1.index(m), self.e2.index(m)) for m in self.shared)

    def shared_start(self) -> int | None:
        """Position in E1 where the shared block begins."""
        idx = [self.e1.index(m) for m in self.shared]
        return min(idx) if idx else None

    def as_json(self) -> dict:
        return {"E1": [list(m) for m in self.e1], "E2": [list(m) for m in self.e2],
                "shared": [list(m) for m in sorted(self.shared, key=lambda t: (-t[1], t[0]))],
                "counts": list(self.counts), "index_pairs": [list(p) for p in self.index_pairs()]}


def elliptic_profile(d: BoxDotDiagram, fp: FrontProjection | None = None) -> EllipticProfile:
    if fp is None:
        fp = build_front(d)
    marks = d.extremum_marks
    lists = []
    for s in fp.strands:
        seq = []
        for k in s.junctions:
            j = fp.junctions[k]
            if j.kind == "cusp":
                continue
            corner = (j.point[0] // 2, j.point[1] // 2)
            m = marks[corner]
            if not is_dot(m):
                raise AssertionError(f"extremum at {corner} carries box {m}")
            seq.append(m)
        lists.append(tuple(seq))
    shared = d.classes.shared if d.vector.n % 2 else frozenset()
    e1, e2 = lists
    for m in shared:
        if e1.count(m) != 1 or e2.count(m) != 1:
            raise AssertionError(f"shared dot {m} is not met once by each strand")
    return EllipticProfile(e1, e2, frozenset(shared))


@dataclass(frozen=True)
class CheckResult:
    ok: bool
    witness: dict = field(default_factory=dict)


def cardinality_check(a: EllipticProfile, b: EllipticProfile) -> CheckResult:
    for k, (x, y) in enumerate(zip(a.counts, b.counts), start=1):
        if x != y:
            return CheckResult(False, {"strand": k, "counts": [x, y]})
    return CheckResult(True)


def bijection_obstruction(a: EllipticProfile, b: EllipticProfile) -> CheckResult:
    """Consistent iff the order-preserving strandwise bijections send shared
    dots to shared dots, i.e. the shared index pairs agree."""
    pa, pb = a.index_pairs(), b.index_pairs()
    if pa == pb:
        return CheckResult(True)
    extra = sorted(set(pa) - set(pb)) or sorted(set(pb) - set(pa))
    return CheckResult(False, {"index_pair": list(extra[0]) if extra else None,
                               "pairs": [[list(p) for p in pa], [list(p) for p in pb]]})


def sigma(v: TwistVector, f: FlypeVector) -> int:
    return sum(f.f(j) for j in range(1, v.n) if j % 2)


def sigma_inf(v: TwistVector, f: FlypeVector) -> int:
    return sum(f.f(j) for j in range(1, v.n)
               if j % 2 and subtangle_connectivity(v, j) is ConnectivityType.TYPE_INF)


def canonicalize(v: TwistVector, f: FlypeVector) -> FlypeVector:
    f.check(v)
    return FlypeVector(tuple(0 if (j == v.n or j % 2 == 0) else f.f(j)
                             for j in range(v.n, 0, -1)))


@dataclass(frozen=True)
class Verdict:
    outcome: Outcome
    rule: str | None
    witness: dict
    evidence: dict

    def as_json(self) -> dict:
        return {"outcome": self.outcome.value, "rule": self.rule,
                "witness": self.witness, "evidence": self.evidence}


@dataclass(frozen=True)
class _Side:
    f: FlypeVector
    canon: FlypeVector
    sigma: int
    sigma_inf: int
    profile: EllipticProfile
    strandwise: dict


@lru_cache(maxsize=4096)
def _side(v: TwistVector, f: FlypeVector, convention) -> _Side:
    d = apply_f_move(v, f)
    fp = build_front(d)
    inv = strandwise_invariants(fp, convention)
    return _Side(f, canonicalize(v, f), sigma(v, f), sigma_inf(v, f),
                 elliptic_profile(d, fp),
                 {k: (x.tb2, x.r2) for k, x in inv.items()})


def _evidence(a: _Side, b: _Side, convention) -> dict:
    return {
        "convention": Convention(convention).value,
        "canonical": [list(a.canon.exponents), list(b.canon.exponents)],
        "sigma": [a.sigma, b.sigma],
        "sigma_inf": [a.sigma_inf, b.sigma_inf],
        "counts": [list(a.profile.counts), list(b.profile.counts)],
        "index_pairs": [[list(p) for p in a.profile.index_pairs()],
                        [list(p) for p in b.profile.index_pairs()]],
        "strandwise": [{str(k): {"tb2": t, "r2": r} for k, (t, r) in sorted(s.strandwise.items())}
                       for s in (a, b)],
    }


def classify_pair(q: Rational, f: FlypeVector, g: FlypeVector,
                  convention: Convention | str = DEFAULT_CONVENTION) -> Verdict:
    v = regular_cf(q)
    f.check(v)
    g.check(v)
    convention = Convention(convention)
    a, b = _side(v, f, convention), _side(v, g, convention)
    ev = _evidence(a, b, convention)

    def no(rule, witness):
        return Verdict(Outcome.NOT_ISOTOPIC, RULES[rule], witness, ev)

    if a.canon == b.canon:
        return Verdict(Outcome.ISOTOPIC, RULES["canonical"],
                       {"canonical": list(a.canon.exponents)}, ev)
    if a.sigma_inf != b.sigma_inf:
        return no("sigma_inf", {"sigma_inf": [a.sigma_inf, b.sigma_inf]})
    if v.n % 2 and a.sigma != b.sigma:
        return no("sigma", {"sigma": [a.sigma, b.sigma]})
    card = cardinality_check(a.profile, b.profile)
    if not card.ok:
        return no("cardinality", card.witness)
    bij = bijection_obstruction(a.profile, b.profile)
    if not bij.ok:
        return no("bijection", bij.witness)
    if a.strandwise != b.strandwise:
        diff = sorted(k for k in a.strandwise if a.strandwise[k] != b.strandwise[k])
        return no("strandwise", {"strands": diff})
    return Verdict(Outcome.UNKNOWN, None, {}, ev)


def justifications(q: Rational, f: FlypeVector, g: FlypeVector,
                   convention: Convention | str = DEFAULT_CONVENTION) -> list[str]:
    """Every rule whose hypothesis holds for the pair, not just the first."""
    v = regular_cf(q)
    convention = Convention(convention)
    a, b = _side(v, f, convention), _side(v, g, convention)
    fired = []
    if a.canon == b.canon:
        fired.append("canonical")
    if a.sigma_inf != b.sigma_inf:
        fired.append("sigma_inf")
    if v.n % 2 and a.sigma != b.sigma:
        fired.append("sigma")
    if not cardinality_check(a.profile, b.profile).ok:
        fired.append("cardinality")
    if not bijection_obstruction(a.profile, b.profile).ok:
        fired.append("bijection")
    if a.strandwise != b.strandwise:
        fired.append("strandwise")
    return fired


def classify_all(q: Rational, convention: Convention | str = DEFAULT_CONVENTION):
    """Verdicts for every ordered pair of flype vectors of ``q``, row-major."""
    from .rational_core import enumerate_flype_vectors
    v = regular_cf(q)
    fs = enumerate_flype_vectors(v)
    for f in fs:
        for g in fs:
            yield f, g, classify_pair(q, f, g, convention)


def verdict_line(q: Rational, f: FlypeVector, g: FlypeVector, verdict: Verdict) -> str:
    rec = {"q": str(q), "f": list(f.exponents), "g": list(g.exponents)}
    rec.update(verdict.as_json())
    return json.dumps(rec, sort_keys=True, separators=(",", ":"))
