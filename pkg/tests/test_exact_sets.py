import json
import random
from fractions import Fraction as F

import jsonschema
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ivolsets.exact_sets import (
    UNBOUNDED,
    Diverges,
    ExhaustedSet,
    GeneratorSet,
    MoebiusFamily,
    Slot,
    SumExpr,
    accumulation_complexity,
    expr_contains,
    expr_derived,
    expr_k_smallest,
    expr_min_positive,
    format_rational,
    generator_k_smallest,
    load_schema,
    parse_rational,
)
from ivolsets.kodaira import FiberClass, coefficient_set, fiber
from ivolsets.surfaces import HARMONIC, ivol_sm_expr, ruled_volume_expr

import oracles

C1 = coefficient_set(fiber("I1"))
C2 = coefficient_set(fiber("II"))
C3_STAR = coefficient_set(fiber("III*"))

rationals = st.fractions(min_value=-5, max_value=5, max_denominator=50)


def schema_for(name):
    schema = load_schema()
    return {"$ref": f"#/$defs/{name}", "$defs": schema["$defs"]}


# -- rationals


@given(rationals, rationals)
def test_fraction_arithmetic_is_exact(a, b):
    assert (a + b) - b == a
    assert (a < b) == (a.numerator * b.denominator < b.numerator * a.denominator)


@given(rationals)
def test_format_parse_round_trip(x):
    assert parse_rational(format_rational(x)) == x


def test_parse_rejects_malformed():
    for bad in ["1/0", "x", "1.5", "1//2", ""]:
        with pytest.raises(ValueError):
            parse_rational(bad)
    assert format_rational(F(-3, 6)) == "-1/2"
    assert format_rational(F(4)) == "4"


# -- families


families = st.builds(
    lambda p, q, s, t, m0: (p, q, s, t, m0),
    st.integers(-6, 6),
    st.integers(-6, 6),
    st.integers(1, 6),
    st.integers(-6, 12),
    st.integers(0, 4),
).filter(lambda c: c[0] * c[3] - c[1] * c[2] > 0 and c[2] * c[4] + c[3] > 0)


@settings(max_examples=200)
@given(families, st.fractions(min_value=-3, max_value=3, max_denominator=30))
def test_family_index_solving_matches_scan(coeffs, x):
    f = MoebiusFamily(*coeffs)
    values = [(m, f.value(m)) for m in range(f.m_start, f.m_start + 400)]
    above = [m for m, v in values if v > x]
    if x < f.limit:
        assert f.first_above(x) == above[0]
        at_most = [m for m, v in values if v <= x]
        assert f.last_at_most(x) == (at_most[-1] if at_most else None)
    else:
        assert f.first_above(x) is None
    hits = [m for m, v in values if v == x]
    assert f.index_of(x) == (hits[0] if hits else None)


@settings(max_examples=100)
@given(families, st.integers(0, 5))
def test_reindexing_keeps_values(coeffs, start):
    f = MoebiusFamily(*coeffs)
    g = f.reindexed(start)
    assert g.m_start == start
    for i in range(20):
        assert g.value(start + i) == f.value(f.m_start + i)
    assert f.subfamily_of(g) and g.subfamily_of(f)


def test_subfamily_detection():
    whole = MoebiusFamily(1, 0, 1, 1, 0)  # m/(m+1)
    evens = MoebiusFamily(2, 0, 2, 1, 0)  # 2m/(2m+1)
    shifted = MoebiusFamily(1, 3, 1, 4, 0)  # (m+3)/(m+4)
    assert evens.subfamily_of(whole)
    assert shifted.subfamily_of(whole)
    assert not whole.subfamily_of(evens)
    assert not MoebiusFamily(1, 0, 2, 1, 0).subfamily_of(whole)


def test_built_families_are_monotone():
    for f in [x for cls in ["I1", "II", "III", "IV", "I0*", "I1*", "II*", "III*", "IV*"]
              for x in coefficient_set(FiberClass.parse(cls)).families]:
        prev = f.value(f.m_start)
        for m in range(f.m_start + 1, 10_000, 97):
            v = f.value(m)
            assert prev < v < f.limit
            prev = v


def test_invalid_family_rejected():
    with pytest.raises(ValueError):
        MoebiusFamily(1, 1, 1, 1)
    with pytest.raises(ValueError):
        MoebiusFamily(1, 0, 0, 1)


# -- generator sets


def test_generator_k_smallest_examples():
    assert generator_k_smallest(C1, 3, F(0)) == [F(1, 2), F(2, 3), F(3, 4)]
    assert generator_k_smallest(GeneratorSet((F(0), F(1))), 5, F(0)) == [F(1)]
    assert generator_k_smallest(C3_STAR, 2, F(0)) == [F(1, 7), F(1, 6)]
    assert generator_k_smallest(GeneratorSet(), 3, F(0)) == []


def test_generator_queries():
    assert C1.limits() == [F(1)]
    assert C1.contains(F(1)) and C1.contains(F(0)) and C1.contains(F(99, 100))
    assert not C1.contains(F(3, 5))
    assert C2.min_positive() == F(1, 2)
    assert GeneratorSet((F(0),)).min_positive() is None


def test_restricted_intervals():
    r = C1.restricted(F(1, 2), F(3, 4), lower_open=False, upper_open=False)
    assert r.k_smallest(10, F(-1)) == [F(1, 2), F(2, 3), F(3, 4)]
    r = C1.restricted(F(1, 2), 1)
    assert r.k_smallest(2, F(-1)) == [F(2, 3), F(3, 4)]
    assert not r.contains(F(1))
    assert r.limits() == [F(1)]


def test_union_drops_duplicates():
    u = C1.union(HARMONIC)
    assert len(u.families) == 1
    assert u.k_smallest(4, F(-1)) == [0, F(1, 2), F(2, 3), F(3, 4)]


# -- sum expressions


E10 = SumExpr(F(-1), (Slot(HARMONIC, UNBOUNDED),))


def test_expr_k_smallest_examples():
    assert expr_k_smallest(E10, 3) == [F(1, 6), F(1, 4), F(3, 10)]
    assert expr_k_smallest(E10, 1) == [F(1, 6)]
    with pytest.raises(ExhaustedSet):
        expr_k_smallest(SumExpr(F(0)), 1)


def test_expr_min_positive_examples():
    v, cert = expr_min_positive(SumExpr(F(-1), (Slot(C2, 1), Slot(C3_STAR, 1))))
    assert v == F(1, 671)
    assert cert.witness == ((F(50, 61),), (F(2, 11),))
    v, cert = expr_min_positive(SumExpr(F(-2), (Slot(HARMONIC, UNBOUNDED),)))
    assert v == F(1, 42)
    assert sorted(cert.witness[0]) == [F(1, 2), F(2, 3), F(6, 7)]
    assert expr_min_positive(SumExpr(F(1)))[0] == 1
    with pytest.raises(ExhaustedSet):
        expr_min_positive(SumExpr(F(-1)))


def test_expr_contains_examples():
    assert expr_contains(E10, F(1, 671)) == (False, None)
    expr = SumExpr(F(-1), (Slot(C2, 1), Slot(C3_STAR, 1)))
    found, witness = expr_contains(expr, F(1, 671))
    assert found and expr.value_of(witness) == F(1, 671)
    assert expr_contains(SumExpr(F(2), (Slot(C1, 2),)), F(2))[0]
    assert not expr_contains(E10, F(1, 5))[0]


def test_window_upper_bound():
    e = E10.with_upper(F(1, 3))
    assert expr_k_smallest(e, 10, partial=True) == [F(1, 6), F(1, 4), F(3, 10), F(1, 3)]
    with pytest.raises(ExhaustedSet):
        expr_k_smallest(e, 10)
    assert not expr_contains(e, F(5, 14))[0]


def test_derived_examples():
    d = expr_derived(E10)
    assert len(d) == 1 and d[0].offset == 0 and d[0].slots == E10.slots
    d2 = expr_derived(d)
    assert len(d2) == 1 and d2[0].offset == 1
    finite = SumExpr(F(-1), (Slot(GeneratorSet((F(1, 2), F(2, 3))), 3),))
    assert expr_derived(finite) == []


def test_derived_decrements_caps():
    e = SumExpr(F(-1), (Slot(C2, 2), Slot(C3_STAR, 1)))
    d = expr_derived(e)
    assert [(x.offset, [s.cap for s in x.slots]) for x in d] == [
        (F(-1, 6), [1, 1]),
        (F(-3, 4), [2]),
    ]


def test_accumulation_complexity_examples():
    assert accumulation_complexity(E10, F(5, 2)) == 3
    assert accumulation_complexity(E10, 1) == 2
    assert accumulation_complexity(E10, F(7, 2)) == 4
    finite = SumExpr(F(0), (Slot(GeneratorSet((F(1, 2),)), 2),))
    assert accumulation_complexity(finite, 10) == 0
    with pytest.raises(Diverges):
        accumulation_complexity(E10, 10, ceiling=3)


def test_json_round_trip_and_schema():
    validator = jsonschema.Draft202012Validator(schema_for("sumexpr"))
    for e in [E10, E10.with_upper(F(7, 3)), ruled_volume_expr(2), SumExpr(F(1))]:
        raw = e.to_json()
        validator.validate(raw)
        assert SumExpr.from_json(json.loads(json.dumps(raw))) == e


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10_000))
def test_random_expressions_round_trip(seed):
    e = oracles.random_expression(random.Random(seed))
    raw = e.to_json()
    jsonschema.validate(raw, schema_for("sumexpr"))
    assert SumExpr.from_json(raw) == e


def test_bad_json_rejected():
    with pytest.raises(ValueError):
        Slot.from_json({"generator": {"points": [], "families": []}, "cap": 0})
    with pytest.raises(ValueError):
        SumExpr.from_json({"offset": "1/0", "slots": [], "window": {"upper": None}})


# -- oracle equivalence


PRESETS = [E10, ivol_sm_expr(), ruled_volume_expr(0), ruled_volume_expr(1), ruled_volume_expr(2),
           SumExpr(F(-1), (Slot(C2, 1), Slot(C3_STAR, 1), Slot(C1, UNBOUNDED)))]


@pytest.mark.parametrize("index", range(len(PRESETS)))
def test_k_smallest_matches_brute_force_on_truncated_sets(index):
    e = oracles.capped(PRESETS[index])
    finite = SumExpr(e.offset, tuple(Slot(oracles.truncated_generator(s.generator, 15), s.cap) for s in e.slots))
    brute = oracles.brute_values(e, 15)
    assert expr_k_smallest(finite, 20, partial=True) == brute[:20]


@pytest.mark.parametrize("index", range(len(PRESETS)))
def test_k_smallest_matches_brute_force_below_truncation(index):
    e = oracles.capped(PRESETS[index])
    brute = oracles.brute_values(e, 15)
    safe = oracles.safe_threshold(e, 15)
    mine = expr_k_smallest(e, 20, partial=True)
    trusted = [x for x in brute[:20] if safe is None or x < safe]
    assert mine[: len(trusted)] == trusted
    assert all(a < b for a, b in zip(mine, mine[1:]))
    for x in mine:
        assert expr_contains(e, x)[0]


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10_000))
def test_random_k_smallest_against_brute_force(seed):
    e = oracles.capped(oracles.random_expression(random.Random(seed)), 2)
    finite = SumExpr(e.offset, tuple(Slot(oracles.truncated_generator(s.generator, 6), s.cap) for s in e.slots))
    brute = oracles.brute_values(finite)
    assert expr_k_smallest(finite, 15, partial=True) == brute[:15]


# -- certificates


def test_certificate_soundness_random_expressions():
    # The search is exact but worst-case exponential in the pick count, so
    # the random corpus keeps to at most three picks per expression.
    rng = random.Random(20261015)
    for _ in range(60):
        oracles.check_certificate(oracles.random_expression(rng, max_picks=3))
    rng = random.Random(7)
    for _ in range(40):
        oracles.check_certificate(oracles.random_expression(rng, max_picks=2))


def test_certificate_branch_kinds():
    v, cert = expr_min_positive(E10)
    kinds = {b.kind for b in cert.branches}
    assert "tail" in kinds and "explored" in kinds
    assert cert.to_json()["value"] == "1/6"
    jsonschema.validate(cert.to_json(), schema_for("min_certificate"))


# -- derived witnesses


@pytest.mark.parametrize("eps", [F(1, 1000), F(1, 10**6)])
def test_derived_elements_are_limits(eps):
    total = 0
    for e in [E10, ruled_volume_expr(0), ruled_volume_expr(1),
              SumExpr(F(-1), (Slot(C2, 1), Slot(C3_STAR, 1), Slot(C1, UNBOUNDED)))]:
        total += oracles.derived_witness_check(e, eps)
    assert total > 40
