from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings, strategies as hs

import bruteforce as bf
from finring import constructors as C
from finring import structure as st
from finring.classify import unituc_oracle
from finring.dsl import eval_expr

# Reference values from tests/bruteforce.py (textbook constructions, exhaustive search):
# order, idempotents, units, nilpotents, radical, center, conjugacy classes, unituc
ORACLE = {
    "Z(2)": (2, 2, 1, 1, 1, 2, 2, True),
    "Z(3)": (3, 2, 2, 1, 1, 3, 2, False),
    "Z(4)": (4, 2, 2, 2, 2, 4, 2, True),
    "Z(8)": (8, 2, 4, 4, 4, 8, 2, True),
    "GF(2,2)": (4, 2, 3, 1, 1, 4, 2, False),
    "Prod(Z(2),Z(2))": (4, 4, 1, 1, 1, 4, 4, True),
    "Prod(Z(2),Z(3))": (6, 4, 2, 1, 1, 6, 4, False),
    "M(2,Z(2))": (16, 8, 6, 4, 1, 2, 3, False),
    "T(2,Z(2))": (8, 6, 2, 2, 2, 2, 4, True),
    "T(3,Z(2))": (64, 26, 8, 8, 8, 2, 8, True),
    "T(2,Z(4))": (64, 10, 16, 16, 16, 4, 4, True),
    "T(2,Z(3))": (27, 8, 12, 3, 3, 3, 4, False),
    "Ks(Z(2),0)": (16, 10, 4, 4, 4, 2, 4, True),
    "Ks(Z(2),1)": (16, 8, 6, 4, 1, 2, 3, False),
    "GR(Z(2),C(2))": (4, 2, 2, 2, 2, 4, 2, True),
    "GR(Z(2),C(3))": (8, 4, 3, 1, 1, 8, 4, False),
    "GR(Z(2),C(4))": (16, 2, 8, 8, 8, 16, 2, True),
    "GR(Z(4),C(2))": (16, 2, 8, 8, 8, 16, 2, True),
    "GR(GF(2,2),C(2))": (16, 2, 12, 4, 4, 16, 2, False),
    "PolyQuot(Z(2),3)": (8, 2, 4, 4, 4, 8, 2, True),
    "PolyQuot(Z(3),2)": (9, 2, 6, 3, 3, 9, 2, False),
    "TrivExt(Z(4),1)": (16, 2, 8, 8, 8, 16, 2, True),
}

REFERENCE = {
    "Z(3)": lambda: bf.zn(3),
    "GF(2,2)": bf.gf4,
    "Prod(Z(2),Z(3))": lambda: bf.direct(bf.zn(2), bf.zn(3)),
    "M(2,Z(2))": lambda: bf.matrices(2, bf.zn(2)),
    "T(2,Z(2))": lambda: bf.matrices(2, bf.zn(2), lambda i, j: i <= j),
    "T(2,Z(3))": lambda: bf.matrices(2, bf.zn(3), lambda i, j: i <= j),
    "Ks(Z(2),0)": lambda: bf.ks(bf.zn(2), 0),
    "GR(Z(2),C(3))": lambda: bf.group_ring_cyclic(bf.zn(2), 3),
    "PolyQuot(Z(3),2)": lambda: bf.truncated_poly(bf.zn(3), 2),
}


def invariants(R) -> tuple:
    s = st.structure(R)
    return (R.order, len(s.idempotents), len(s.units.units), len(s.nilpotents), len(s.radical),
            len(s.center), len(s.conjugacy_classes), unituc_oracle(R))


@pytest.mark.parametrize("expr", sorted(ORACLE))
def test_invariants_match_frozen_oracle(expr):
    assert invariants(eval_expr(expr)) == ORACLE[expr]


@pytest.mark.parametrize("expr", sorted(REFERENCE))
def test_reference_implementation_agrees_live(expr):
    ref = bf.invariants(REFERENCE[expr]())
    keys = ["order", "idempotents", "units", "nilpotents", "radical", "center", "classes",
            "unituc"]
    assert tuple(ref[k] for k in keys) == ORACLE[expr]


def test_z4_radical_and_units():
    R = C.zmod(4)
    assert st.jacobson_radical(R).members == (0, 2)
    U = st.units(R)
    assert U.units.members == (1, 3)
    assert U.inv(3) == 3
    with pytest.raises(ValueError):
        U.inv(2)


def test_m2z2_center_and_classes():
    M = C.matrix_ring(2, C.zmod(2))
    assert st.center(M).members == (0, M.one)
    classes = st.idempotent_conjugacy_classes(M)
    assert [len(c) for c in classes] == [1, 6, 1]
    assert classes[0] == (0,) and (M.one,) in classes
    assert st.jacobson_radical(M).members == (0,)


def test_abelian_witness():
    T = C.upper_triangular(2, C.zmod(2))
    chk = st.is_abelian(T)
    assert not chk
    e, x = chk.witness["idempotent"], chk.witness["partner"]
    assert T.mul[e, x] != T.mul[x, e]
    assert st.is_abelian(C.zmod(6))


def test_ideal_closure_examples():
    R = C.zmod(8)
    assert st.ideal_closure(R, [2]).members == (0, 2, 4, 6)
    assert st.ideal_closure(R, [4, 6]).members == (0, 2, 4, 6)
    assert st.ideal_closure(R, [3]).members == tuple(range(8))
    assert st.ideal_closure(R, []).members == (0,)
    M = C.matrix_ring(2, C.zmod(2))
    assert len(st.ideal_closure(M, [8])) == 16  # matrix rings over fields are simple


def test_augmentation_ideal_is_generated_by_one_minus_g():
    RG, aug = C.group_ring(C.zmod(2), C.cyclic_group(2))
    g = C.group_element(RG, C.zmod(2), 1)
    one_minus_g = int(RG.add[RG.one, RG.neg[g]])
    assert st.ideal_closure(RG, [one_minus_g]).members == aug.kernel().members


def test_is_ideal():
    R = C.zmod(6)
    assert st.is_ideal(R, [0, 3])
    assert not st.is_ideal(R, [0, 1])
    assert not st.is_ideal(R, [1, 3])


def test_checks_carry_witnesses():
    R = C.zmod(4)
    b = st.is_boolean(R)
    assert not b and R.mul[b.witness["element"], b.witness["element"]] != b.witness["element"]
    assert st.is_reduced(R).witness == {"nilpotent": 2}
    assert st.is_local(R)
    loc = st.is_local(C.zmod(6))
    assert not loc
    assert st.units(C.zmod(6)).is_unit[loc.witness["sum"]]
    assert st.is_boolean(C.direct_product([C.zmod(2), C.zmod(2)]))


@settings(max_examples=30, deadline=None)
@given(hs.sampled_from(["Z(4)", "Z(6)", "T(2,Z(2))", "M(2,Z(2))", "Ks(Z(2),0)",
                        "GR(Z(2),C(3))", "Sn(3,Z(2))"]), hs.data())
def test_zero_conjugate_only_to_zero(expr, data):
    R = eval_expr(expr)
    E = st.idempotents(R).members
    f = data.draw(hs.sampled_from(E))
    assert (st.are_conjugate(R, R.zero, f) is not None) == (f == R.zero)
    assert (st.are_conjugate(R, R.one, f) is not None) == (f == R.one)


@settings(max_examples=30, deadline=None)
@given(hs.sampled_from(["Z(8)", "T(2,Z(2))", "M(2,Z(2))", "Ks(Z(2),0)", "T(2,Z(3))",
                        "GR(Z(2),C(4))", "Prod(Z(2),Z(3))"]), hs.data())
def test_conjugation_witness_is_a_unit(expr, data):
    R = eval_expr(expr)
    E = st.idempotents(R).members
    e, f = data.draw(hs.sampled_from(E)), data.draw(hs.sampled_from(E))
    u = st.are_conjugate(R, e, f)
    if u is not None:
        U = st.units(R)
        assert U.is_unit[u]
        assert R.mul[R.mul[U.inv(u), f], u] == e
        # the relation is symmetric
        assert st.are_conjugate(R, f, e) is not None


@pytest.mark.parametrize("expr", ["Z(12)", "T(2,Z(4))", "M(2,Z(2))", "Snm(2,2,Z(2))",
                                  "GR(Z(2),GxG(C(2),C(2)))"])
def test_radical_post_conditions(expr):
    R = eval_expr(expr)
    J = st.jacobson_radical(R)
    U = st.units(R)
    assert st.is_ideal(R, J.members)
    one_minus = R.add[R.one, R.neg[J.array()]]
    assert U.is_unit[one_minus].all()
    # nilpotent ideal in a finite ring
    assert set(J.members) <= set(st.nilpotents(R).members)
    classes = st.idempotent_conjugacy_classes(R)
    assert (R.zero,) in classes and (R.one,) in classes
    flat = sorted(x for c in classes for x in c)
    assert flat == list(st.idempotents(R).members)


def test_conjugacy_labels_partition_idempotents():
    R = C.upper_triangular(3, C.zmod(2))
    lab = st.conjugacy_labels(R)
    E = np.array(st.idempotents(R).members)
    assert (lab[E] >= 0).all()
    assert (np.delete(lab, E) == -1).all()
