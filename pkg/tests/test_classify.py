from __future__ import annotations

import jsonschema
import pytest
from hypothesis import given, settings, strategies as hs

from finring import constructors as C
from finring import structure as st
from finring.classify import (PROPERTIES, classify, clean_decompositions,
                              element_is_uniquely_clean, element_is_unituc, has_property,
                              implication_audit, replay_witness, unituc_oracle)
from finring.dsl import eval_expr

UNITUC = ["Z(2)", "Z(4)", "Z(8)", "Prod(Z(2),Z(2))", "T(2,Z(2))", "T(3,Z(2))", "Sn(3,Z(2))",
          "Ks(Z(4),2)", "MnS(2,Z(4),2)", "TrivExt(Z(4),1)", "GR(Z(2),C(2))", "GR(Z(2),C(4))",
          "GR(Z(4),C(2))", "GR(Z(2),GxG(C(2),C(2)))", "PolyQuot(Z(2),3)"]
NOT_UNITUC = ["Z(3)", "GF(2,2)", "M(2,Z(2))", "M(2,Z(4))", "Ks(Z(4),1)", "GR(Z(2),C(3))",
              "GR(GF(2,2),C(2))"]

VERDICT_SCHEMA = {
    "type": "object",
    "required": ["property", "holds", "witness"],
    "properties": {"property": {"enum": list(PROPERTIES)}, "holds": {"type": "boolean"},
                   "witness": {"type": ["object", "null"]}},
    "additionalProperties": False,
}


@pytest.mark.parametrize("expr", UNITUC)
def test_unituc_fixtures(expr):
    v = has_property(eval_expr(expr), "unituc")
    assert v.holds and v.witness is None


@pytest.mark.parametrize("expr", NOT_UNITUC)
def test_non_unituc_fixtures_have_replayable_witness(expr):
    R = eval_expr(expr)
    v = has_property(R, "unituc")
    assert not v.holds
    assert replay_witness(R, v)


def test_z2_decomposition_of_zero():
    rec = clean_decompositions(C.zmod(2), 0)
    assert rec.pairs == [(1, 1)]
    assert rec.commuting_flags == [True]


def test_z4_decomposition_of_two():
    rec = clean_decompositions(C.zmod(4), 2)
    assert rec.pairs == [(1, 1)]
    assert rec.conjugacy_partition == [[1]]


def test_m2z2_identity_is_uniquely_clean():
    # I - e is idempotent, so it is a unit only when e = 0
    M = C.matrix_ring(2, C.zmod(2))
    rec = clean_decompositions(M, M.one)
    assert rec.pairs == [(0, M.one)]
    assert element_is_unituc(M, M.one)


def test_m2z2_nilpotent_has_non_conjugate_pairs():
    M = C.matrix_ring(2, C.zmod(2))
    a = 2  # [0 0; 1 0]
    rec = clean_decompositions(M, a)
    es = [e for e, _ in rec.pairs]
    assert M.one in es and len(rec.pairs) == 3
    assert len(rec.conjugacy_partition) == 2
    for e, u in rec.pairs:
        assert M.add[e, u] == a and M.mul[e, e] == e and st.units(M).is_unit[u]
    assert not element_is_uniquely_clean(M, a)
    assert not element_is_unituc(M, a)
    assert [x for x in range(16) if not element_is_unituc(M, x)] == [2, 4, 6, 7, 11, 13, 14, 15]


def test_decomposition_json_renders_elements():
    doc = clean_decompositions(C.zmod(4), 3).to_json(C.zmod(4))
    assert doc["element"] == 3 and doc["rendered"] == "3"
    assert {p["e"] for p in doc["pairs"]} == {0}


def test_uniquely_clean_elements():
    Z4 = C.zmod(4)
    assert all(element_is_uniquely_clean(Z4, a) for a in range(4))
    P = C.direct_product([C.zmod(2), C.zmod(2)])
    assert element_is_uniquely_clean(P, 2)  # (1, 0)


@pytest.mark.parametrize("expr", ["M(2,Z(2))", "T(2,Z(3))", "GR(Z(2),C(3))", "Ks(Z(4),1)"])
def test_idempotents_and_central_nilpotents_are_unituc(expr):
    R = eval_expr(expr)
    for e in st.idempotents(R):
        assert element_is_unituc(R, e)
    central = st.center(R).mask()
    for b in st.nilpotents(R):
        if central[b]:
            assert element_is_unituc(R, b)
    assert element_is_unituc(C.zmod(4), 2)


def test_m2z2_witness_is_unit_pair():
    M = C.matrix_ring(2, C.zmod(2))
    v = has_property(M, "unituc")
    u, w = v.witness["unit_pair"]
    U = st.units(M)
    assert U.is_unit[u] and U.is_unit[w] and M.add[u, w] == M.one


def test_gf4_fails_unituc():
    assert not has_property(C.galois_field(2, 2), "unituc").holds
    assert not unituc_oracle(C.galois_field(2, 2))


@pytest.mark.parametrize("expr,expected", [("Z(8)", True), ("GR(Z(2),C(3))", False),
                                           ("T(3,Z(4))", True)])
def test_oracle_examples(expr, expected):
    assert unituc_oracle(eval_expr(expr)) is expected


def test_audit_empty_on_z4():
    R = C.zmod(4)
    assert implication_audit(R) == []
    assert R.two() in st.jacobson_radical(R)


def test_audit_detects_injected_inconsistency():
    R = C.zmod(3)
    bad = implication_audit(R, {"uniquely-clean": True})
    assert {"ring": R.label, "premise": "uniquely-clean",
            "conclusion": "strongly-uniquely-clean"} in bad
    assert implication_audit(C.zmod(4), {"two-in-radical": False})


@pytest.mark.parametrize("expr", ["Z(6)", "M(2,Z(2))", "T(2,Z(3))", "GR(GF(2,2),C(2))",
                                  "Sn(3,Z(2))", "Ks(Z(2),1)"])
def test_every_failing_verdict_replays(expr):
    R = eval_expr(expr)
    for v in classify(R):
        jsonschema.validate(v.to_json(), VERDICT_SCHEMA)
        if not v.holds:
            assert v.witness is not None
            assert replay_witness(R, v), (v.property, v.witness)


def test_replay_rejects_a_bogus_witness():
    from finring.classify import PropertyVerdict

    R = C.zmod(4)
    assert not replay_witness(R, PropertyVerdict("unituc", False, {"kind": "not-clean",
                                                                   "element": 2}))
    assert not replay_witness(R, PropertyVerdict("unituc", True))


def test_unknown_property():
    with pytest.raises(ValueError):
        has_property(C.zmod(2), "shiny")


RINGS = ["Z(2)", "Z(6)", "Z(9)", "GF(2,2)", "T(2,Z(2))", "T(2,Z(3))", "M(2,Z(2))",
         "Ks(Z(2),0)", "GR(Z(2),C(3))", "Prod(Z(2),Z(4))", "Sn(3,Z(2))", "PolyQuot(Z(3),2)",
         "TrivExt(Z(2),2)", "Snm(2,2,Z(2))"]


@settings(max_examples=40, deadline=None)
@given(hs.sampled_from(RINGS))
def test_taxonomy_invariants(expr):
    R = eval_expr(expr)
    v = {p.property: p.holds for p in classify(R)}
    assert v["unituc"] == unituc_oracle(R)
    assert v["unituc"] == v["strongly-nil-clean"] == v["strongly-uniquely-clean"] \
        == v["strongly-j-clean"]
    assert (v["abelian"] and v["unituc"]) == v["uniquely-clean"]
    assert not v["boolean"] or v["unituc"]
    assert v["clean"] and v["exchange"] and v["dedekind-finite"]
    assert implication_audit(R) == []


@settings(max_examples=40, deadline=None)
@given(hs.sampled_from(RINGS), hs.data())
def test_decomposition_records_are_exhaustive(expr, data):
    R = eval_expr(expr)
    a = data.draw(hs.integers(0, R.order - 1))
    rec = clean_decompositions(R, a)
    U = st.units(R)
    expected = [e for e in st.idempotents(R) if U.is_unit[R.add[a, R.neg[e]]]]
    assert [e for e, _ in rec.pairs] == expected
    for (e, u), c in zip(rec.pairs, rec.commuting_flags):
        assert R.add[e, u] == a
        assert c == (R.mul[e, u] == R.mul[u, e])
    assert sorted(x for b in rec.conjugacy_partition for x in b) == sorted(expected)
