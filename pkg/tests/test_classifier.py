import json

import pytest

from legtangle.boxdot import apply_f_move, standard_diagram
from legtangle.classifier import (RULES, Outcome, bijection_obstruction, canonicalize,
                                  cardinality_check, classify_all, classify_pair,
                                  elliptic_profile, justifications, sigma, sigma_inf,
                                  verdict_line)
from legtangle.rational_core import (FlypeVector, Rational, TwistVector, cf_rational,
                                     enumerate_flype_vectors, parse_vector)
from legtangle.tangle import ConnectivityType, subtangle_connectivity

from _oracles import regular_vectors


def profile(name):
    v, f = parse_vector(name)
    return elliptic_profile(apply_f_move(v, f))


def pair(a, b):
    v, f = parse_vector(a)
    _, g = parse_vector(b)
    return cf_rational(v), f, g


def test_profile_two_one_one():
    p = elliptic_profile(standard_diagram(Rational.of(5, 3)))
    assert len(p.shared) == 1
    (m,) = p.shared
    assert p.e1.count(m) == 1 and p.e2.count(m) == 1


@pytest.mark.parametrize("v", regular_vectors(8), ids=str)
def test_profile_invariants(v):
    for f in enumerate_flype_vectors(v):
        d = apply_f_move(v, f)
        p = elliptic_profile(d)
        tagged_dots = {m for m in d.classes.tagged if m[0] % 2 == 0}
        assert len(p.e1) + len(p.e2) - len(p.shared) == len(tagged_dots)
        assert set(p.e1) | set(p.e2) == tagged_dots
        assert len(p.shared) == (v.q(v.n) - 1 if v.n % 2 else 0)


def test_cardinality_and_bijection_identity():
    p = profile("(2,1,2^1,1,1)")
    assert cardinality_check(p, p).ok and bijection_obstruction(p, p).ok


def test_cardinality_passes_for_inf_pair():
    assert cardinality_check(profile("(3,1,1^1,2,1)"), profile("(3,1,1,2,1^1)")).ok


def test_cardinality_fails_after_extra_inf_flype():
    a, b = profile("(3,1,1^1,2,1)"), profile("(3,1,1,2,1)")
    res = cardinality_check(a, b)
    assert not res.ok and res.witness["strand"] == 1
    assert a.counts[0] - b.counts[0] == 2


def test_bijection_obstruction_fixtures():
    bad = bijection_obstruction(profile("(2,1,2^1,1,1)"), profile("(2,1,2,1,1^1)"))
    assert not bad.ok and bad.witness["index_pair"] is not None
    assert bijection_obstruction(profile("(2,1,1^1,2,1)"), profile("(2,1,1,2,1^1)")).ok


def test_sigma():
    v = TwistVector((2, 1, 1, 2, 1))
    assert sigma(v, FlypeVector.from_stages(5, f3=1)) == 1
    assert sigma(v, FlypeVector.zeros(5)) == sigma_inf(v, FlypeVector.zeros(5)) == 0
    # vertical flypes never count
    assert sigma(v, FlypeVector.from_stages(5, f2=2, f4=1)) == 0


def test_sigma_inf_uses_subtangle_type():
    v = TwistVector((2, 1, 2, 1, 1))
    # (2,1,0) = 2/3 is of type 0, so this flype contributes nothing
    assert sigma_inf(v, FlypeVector.from_stages(5, f3=1)) == 0
    w = TwistVector((3, 1, 1, 2, 1))
    assert sigma_inf(w, FlypeVector.from_stages(5, f3=1)) == 1


@pytest.mark.parametrize("v", regular_vectors(8), ids=str)
def test_sigma_bounds(v):
    for f in enumerate_flype_vectors(v):
        assert 0 <= sigma_inf(v, f) <= sigma(v, f)


@pytest.mark.parametrize("name,canon", [
    ("(2^2,1^1,1)", (0, 0, 0)),
    ("(2,1,1^1)", (0, 0, 1)),
    ("(2,1^1,2,1^1,1)", (0, 0, 0, 0, 0)),
    ("(2,1,2^1,1,1^1)", (0, 0, 1, 0, 1)),
])
def test_canonicalize(name, canon):
    v, f = parse_vector(name)
    assert canonicalize(v, f).exponents == canon


FIXTURES = [
    ("(2,1,1^1,2,1)", "(2,1,1,2,1^1)", Outcome.NOT_ISOTOPIC, "strandwise"),
    ("(3,1,1^1,2,1)", "(3,1,1,2,1^1)", Outcome.NOT_ISOTOPIC, "strandwise"),
    ("(2,1,2^1,1,1)", "(2,1,2,1,1^1)", Outcome.NOT_ISOTOPIC, "bijection"),
    ("(2,1,2^2,2,2)", "(2,1,2,2,2^2)", Outcome.UNKNOWN, None),
    ("(2,1^1,1)", "(2,1,1)", Outcome.ISOTOPIC, "canonical"),
]


@pytest.mark.parametrize("a,b,outcome,rule", FIXTURES)
def test_fixture_verdicts(a, b, outcome, rule):
    q, f, g = pair(a, b)
    vd = classify_pair(q, f, g)
    assert vd.outcome is outcome
    assert vd.rule == (RULES[rule] if rule else None)
    assert classify_pair(q, g, f).outcome is outcome


def test_unknown_carries_full_evidence():
    q, f, g = pair("(2,1,2^2,2,2)", "(2,1,2,2,2^2)")
    ev = classify_pair(q, f, g).evidence
    assert set(ev) >= {"sigma", "sigma_inf", "counts", "index_pairs", "strandwise", "convention"}


def test_inf_pair_only_strandwise_fires():
    q, f, g = pair("(3,1,1^1,2,1)", "(3,1,1,2,1^1)")
    assert justifications(q, f, g) == ["strandwise"]


def test_bijection_pair_has_zero_strandwise():
    q, f, g = pair("(2,1,2^1,1,1)", "(2,1,2,1,1^1)")
    ev = classify_pair(q, f, g).evidence
    assert all(x == {"tb2": 0, "r2": 0} for side in ev["strandwise"] for x in side.values())


def test_mismatched_vectors_rejected():
    with pytest.raises(ValueError):
        classify_pair(Rational.of(5, 3), FlypeVector((0, 0)), FlypeVector((0, 0, 0)))


@pytest.mark.parametrize("v", [v for v in regular_vectors(8) if v.n > 1], ids=str)
def test_single_flype_laws(v):
    profiles = {f: elliptic_profile(apply_f_move(v, f)) for f in enumerate_flype_vectors(v)}
    for f, pf in profiles.items():
        if v.n % 2:
            assert pf.shared_start() == sigma(v, f)
        for j in range(1, v.n):
            if f.f(j) == v.q(j):
                continue
            e = list(f.exponents)
            e[v.n - j] += 1
            pg = profiles[FlypeVector(tuple(e))]
            if j % 2 == 0:
                assert pg.counts == pf.counts and pg.index_pairs() == pf.index_pairs()
            elif subtangle_connectivity(v, j) is ConnectivityType.TYPE_INF:
                assert (pg.counts[0] - pf.counts[0], pg.counts[1] - pf.counts[1]) == (2, -2)


def test_even_length_never_uses_sigma_rule():
    for v in regular_vectors(8):
        if v.n % 2:
            continue
        q = cf_rational(v)
        for f, g, vd in classify_all(q):
            assert vd.rule != RULES["sigma"]


def test_verdict_line_is_compact_json():
    q, f, g = pair("(2,1^1,1)", "(2,1,1)")
    line = verdict_line(q, f, g, classify_pair(q, f, g))
    assert "\n" not in line and json.loads(line)["outcome"] == "Isotopic"
