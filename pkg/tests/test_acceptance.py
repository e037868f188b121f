"""
Acceptance criteria, one test each.  Every test records a single PASS/FAIL
line; the lines are echoed in the terminal summary (see conftest.py).
"""
import os
import subprocess
import sys
import time
from fractions import Fraction

import pytest

from legtangle.boxdot import apply_f_move, template
from legtangle.classifier import (RULES, Outcome, classify_pair, elliptic_profile, justifications,
                                  sigma)
from legtangle.invariants import (cusp_counts, strandwise_invariants, tb_r, unlink_certificate,
                                  verify_unknot)
from legtangle.rational_core import (FlypeVector, Rational, cf_rational, cf_value,
                                     enumerate_flype_vectors, flype_count, parse_vector,
                                     regular_cf, subdivide)
from legtangle.tangle import (ConnectivityType, build_front, build_unknot, connectivity_type,
                              subtangle_connectivity)

from _oracles import cf_eval, reduced_pairs, regular_vectors

RESULTS = []


def record(n, title, ok, detail=""):
    line = f"{'PASS' if ok else 'FAIL'}  criterion {n}: {title}" + (f" ({detail})" if detail else "")
    RESULTS.append(line)
    print(line)
    assert ok, line


def test_criterion_1_continued_fractions():
    pairs = reduced_pairs(200)
    t = time.perf_counter()
    computed = []
    for p, q in pairs:
        v = regular_cf(Rational.of(p, q))
        computed.append((v, cf_value(v), v.is_regular()))
    dt = time.perf_counter() - t
    bad = []
    for (p, q), (v, val, regular) in zip(pairs, computed):
        exact = Fraction(p, q)
        if val != exact or cf_eval(v.components) != exact or not regular:
            bad.append((p, q))
        elif (v.q(1) == 0) != (p < q):
            bad.append((p, q))
    fixtures = (regular_cf(Rational.of(5, 3)).components == (2, 1, 1)
                and regular_cf(Rational.of(37, 26)).components == (3, 1, 2, 2, 1))
    record(1, "regular CF round trip for P,Q <= 200", not bad and fixtures and dt < 1.0,
           f"{len(pairs)} fractions, {len(bad)} failures, {dt:.2f}s")


def test_criterion_2_mark_counts():
    t = time.perf_counter()
    bad, product_bad, total = [], [], 0
    for p, q in reduced_pairs(50):
        r = Rational.of(p, q)
        v = regular_cf(r)
        fs = enumerate_flype_vectors(v)
        seen = set()
        for f in fs:
            d = apply_f_move(v, f)
            total += 1
            seen.add(d)
            if len(d.dots) != p - 1 or len(d.boxes) != q - 1:
                bad.append((p, q, f.exponents))
        if len(seen) != flype_count(v) or len(fs) != flype_count(v):
            product_bad.append((p, q))
    dt = time.perf_counter() - t
    record(2, "P-1 dots and Q-1 boxes in every diagram, P,Q <= 50",
           not bad and not product_bad and dt < 30, f"{total} diagrams, {dt:.1f}s")


def test_criterion_3_unknot_invariants():
    t = time.perf_counter()
    bad = []
    for p, q in reduced_pairs(50):
        fp = build_unknot(template(Rational.of(p, q)))
        inv = tb_r(fp)
        D, U = cusp_counts(fp)
        box = sum(1 for c in fp.crossings if c.point[0] % 2)
        dot = len(fp.crossings) - box
        want_du = (q + 1, q - 1) if p % 2 == 0 else (q, q)
        ok = (inv.tb == -p and inv.r == (1 if p % 2 == 0 else 0) and (D, U) == want_du
              and box == p * (q - 1) and dot == q * (p - 1))
        if not ok:
            bad.append((p, q))
    dt = time.perf_counter() - t
    record(3, "tb(K_q) = -P and r(K_q) by parity from the front, P,Q <= 50",
           not bad and dt < 30, f"{len(bad)} failures, {dt:.1f}s")


def test_criterion_4_unknot_certificate():
    t = time.perf_counter()
    bad = []
    for p, q in reduced_pairs(30):
        r = Rational.of(p, q)
        try:
            c = verify_unknot(build_unknot(template(r)), subdivide(r))
            if c.loops != p + q - 1:
                bad.append((p, q))
        except Exception as exc:  # noqa: BLE001
            bad.append((p, q, str(exc)))
    u5 = unlink_certificate(5)
    dt = time.perf_counter() - t
    record(4, "K_q unravels for P,Q <= 30; U_5 has 5 removable loops",
           not bad and len(u5) == 5 and dt < 60, f"{len(bad)} failures, {dt:.1f}s")


def test_criterion_5_connectivity():
    bad, total = [], 0
    for p, q in reduced_pairs(50):
        r = Rational.of(p, q)
        v = regular_cf(r)
        want = connectivity_type(r)
        for f in enumerate_flype_vectors(v):
            total += 1
            if build_front(apply_f_move(v, f)).connectivity() is not want:
                bad.append((p, q, f.exponents))
    record(5, "traced connectivity equals the parity rule, all f, P,Q <= 50",
           not bad, f"{total} fronts, {len(bad)} exceptions")


def _bump(v, f, j):
    e = list(f.exponents)
    e[v.n - j] += 1
    return FlypeVector(tuple(e))


def test_criterion_6_flype_laws():
    t = time.perf_counter()
    bad = {"inf count": 0, "shift": 0, "vertical": 0}
    checked = 0
    for v in regular_vectors(8):
        if v.n == 1:
            continue
        data = {}
        for f in enumerate_flype_vectors(v):
            fp = build_front(apply_f_move(v, f))
            prof = elliptic_profile(apply_f_move(v, f), fp)
            sw = {k: (x.tb2, x.r2) for k, x in strandwise_invariants(fp).items()}
            data[f] = (prof, sw)
        for f, (pf, sf) in data.items():
            for j in range(1, v.n):
                if f.f(j) == v.q(j):
                    continue
                pg, sg = data[_bump(v, f, j)]
                checked += 1
                if j % 2 == 0:
                    if (pg.counts, pg.index_pairs(), pg.shared_start()) != \
                            (pf.counts, pf.index_pairs(), pf.shared_start()) or sg != sf:
                        bad["vertical"] += 1
                    continue
                if subtangle_connectivity(v, j) is ConnectivityType.TYPE_INF:
                    delta = (pg.counts[0] - pf.counts[0], pg.counts[1] - pf.counts[1])
                    if delta != (2, -2):
                        bad["inf count"] += 1
                if v.n % 2 and pg.shared_start() - pf.shared_start() != 1:
                    bad["shift"] += 1
            if v.n % 2 and pf.shared_start() != sigma(v, f):
                bad["shift"] += 1
    dt = time.perf_counter() - t
    record(6, "flype laws over all vectors with sum <= 8",
           not any(bad.values()) and dt < 120,
           f"{checked} single flypes, failures {bad}, {dt:.1f}s")


FIXTURES = [
    ("(2,1,1^1,2,1)", "(2,1,1,2,1^1)", Outcome.NOT_ISOTOPIC, "strandwise"),
    ("(3,1,1^1,2,1)", "(3,1,1,2,1^1)", Outcome.NOT_ISOTOPIC, "strandwise"),
    ("(2,1,2^1,1,1)", "(2,1,2,1,1^1)", Outcome.NOT_ISOTOPIC, "bijection"),
    ("(2,1,2^2,2,2)", "(2,1,2,2,2^2)", Outcome.UNKNOWN, None),
]


def test_criterion_7_fixture_matrix():
    problems = []
    for a, b, outcome, rule in FIXTURES:
        v, f = parse_vector(a)
        _, g = parse_vector(b)
        q = cf_rational(v)
        vd = classify_pair(q, f, g)
        fired = justifications(q, f, g)
        if vd.outcome is not outcome or vd.rule != (RULES[rule] if rule else None):
            problems.append(f"{a} vs {b}: {vd.outcome.value} / {vd.rule}")
        if rule == "strandwise" and fired != ["strandwise"]:
            problems.append(f"{a} vs {b}: also fired {fired}")
        if rule == "bijection":
            zeros = all(x == {"tb2": 0, "r2": 0}
                        for side in vd.evidence["strandwise"] for x in side.values())
            if "cardinality" in fired or not zeros:
                problems.append(f"{a} vs {b}: strandwise not all zero or counts differ")
    record(7, "classification of the four fixture pairs", not problems, "; ".join(problems))


def test_criterion_8_soundness():
    t = time.perf_counter()
    both, asym, pairs = [], [], 0
    for v in regular_vectors(8):
        q = cf_rational(v)
        fs = enumerate_flype_vectors(v)
        for i, f in enumerate(fs):
            for g in fs[i:]:
                pairs += 1
                fired = justifications(q, f, g)
                if "canonical" in fired and len(fired) > 1:
                    both.append((v, f, g, fired))
                a, b = classify_pair(q, f, g), classify_pair(q, g, f)
                if (a.outcome, a.rule) != (b.outcome, b.rule):
                    asym.append((v, f, g))
    dt = time.perf_counter() - t
    record(8, "no pair both Isotopic and NotIsotopic; classify_pair symmetric",
           not both and not asym and dt < 300,
           f"{pairs} unordered pairs, {len(both)} conflicts, {len(asym)} asymmetric, {dt:.1f}s")


COMMANDS = [
    ["cf", "37/26"],
    ["diagram", "37/26", "(3,1,2^1,2,1^1)"],
    ["tangle", "25/18", "(3,1,1^1,2,1)"],
    ["invariants", "19/11", "(2,1,2^1,1,1)"],
    ["classify", "46/19", "(2,1,2^2,2,2)", "(2,1,2,2,2^2)"],
    ["enumerate", "7/4"],
]


def _cli(argv, seed, outdir=None):
    env = dict(os.environ, PYTHONHASHSEED=str(seed))
    res = subprocess.run([sys.executable, "-m", "legtangle", *argv], env=env,
                         capture_output=True, check=True)
    return res.stdout


def test_criterion_9_determinism(tmp_path):
    diffs = []
    for argv in COMMANDS:
        if _cli(argv, 1) != _cli(argv, 2):
            diffs.append(" ".join(argv))
    outs = []
    for seed, sub in ((1, "a"), (2, "b")):
        d = tmp_path / sub
        _cli(["render", "37/26", "(3,1,2^1,2,1^1)", "--layers",
              "template,subdivision,marks,signs,classes,tangle,unknot,foliation",
              "--out", str(d)], seed)
        outs.append({p.name: p.read_bytes() for p in sorted(d.iterdir())})
    if outs[0] != outs[1]:
        diffs.append("render")
    record(9, "byte-identical CLI output across runs and hash seeds", not diffs,
           ", ".join(diffs))
