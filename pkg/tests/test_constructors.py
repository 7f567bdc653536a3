from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings, strategies as hs

from finring import constructors as C
from finring import structure as st
from finring.ring import RingHom, validate_ring_axioms, verify_hom, verify_isomorphism

Z2, Z3, Z4 = C.zmod(2), C.zmod(3), C.zmod(4)


def test_zmod_rejects_trivial_modulus():
    with pytest.raises(C.ConstructionError):
        C.zmod(1)


def test_galois_field_rejects_reducible_polynomial():
    # x^2 + 1 = (x + 1)^2 over Z(2)
    with pytest.raises(C.ConstructionError, match="reducible"):
        C.galois_field(2, 2, [1, 0, 1])


def test_galois_field_needs_prime():
    with pytest.raises(C.ConstructionError):
        C.galois_field(4, 2)


def test_gf4_is_a_field():
    F = C.galois_field(2, 2)
    assert st.is_division_ring(F)
    assert len(st.units(F).units) == 3


def test_product_of_coprime_cyclics_is_z6():
    P = C.direct_product([Z2, Z3])
    crt = [next(x for x in range(6) if x % 2 == a and x % 3 == b)
           for a in range(2) for b in range(3)]
    assert verify_isomorphism(RingHom(P, C.zmod(6), crt))


@pytest.mark.parametrize("R", [Z2, Z3, Z4], ids=lambda R: R.label)
def test_ks_at_one_is_matrix_ring(R):
    K = C.formal_Ks(R, R.one)
    assert verify_isomorphism(RingHom(K, C.matrix_ring(2, R), np.arange(K.order)))


def test_ks_twisted_square():
    # (0 1; 1 0)^2 = (s 0; 0 s) with s = 2 over Z(4)
    K = C.formal_Ks(Z4, 2)
    a = 0 * 64 + 1 * 16 + 1 * 4 + 0
    assert K.mul[a, a] == 2 * 64 + 0 + 0 + 2


def test_ks_requires_central_element():
    M = C.matrix_ring(2, Z2)
    with pytest.raises(C.ConstructionError, match="s not central"):
        C.formal_Ks(M, 3)


def test_trivial_extension_matches_dual_numbers():
    T = C.trivial_extension(Z2, 1)
    P = C.poly_quot(Z2, 2)
    assert verify_isomorphism(RingHom(T, P, np.arange(4)))


def test_group_ring_c2_over_z2_is_dual_numbers():
    RG, aug = C.group_ring(Z2, C.cyclic_group(2))
    P = C.poly_quot(Z2, 2)
    # c0 + c1 g with g = 1 + x
    perm = [((c0 + c1) % 2) * 2 + c1 for c0 in range(2) for c1 in range(2)]
    assert verify_isomorphism(RingHom(RG, P, perm))
    rep = verify_hom(aug)
    assert rep.ok and rep.surjective
    assert aug.kernel().members == (0, 3)


def test_group_element_index():
    RG, _ = C.group_ring(Z2, C.cyclic_group(3))
    g = C.group_element(RG, Z2, 1)
    assert RG.mul[g, RG.mul[g, g]] == RG.one
    assert C.group_element(RG, Z2, 0) == RG.one


def test_group_exponent_and_two_group():
    klein = C.group_product(C.cyclic_group(2), C.cyclic_group(2))
    assert klein.validate() and klein.exponent() == 2 and klein.is_two_group
    assert C.cyclic_group(6).exponent() == 6
    assert not C.cyclic_group(6).is_two_group
    assert C.group_ring(Z2, C.cyclic_group(1))[0].order == 2


def test_quotient_of_t2_by_strict_upper():
    T = C.upper_triangular(2, Z2)
    Q, proj = C.quotient_ring(T, [0, 2])
    P = C.direct_product([Z2, Z2])
    assert Q.order == 4
    assert verify_isomorphism(RingHom(Q, P, [0, 1, 2, 3]))
    assert verify_hom(proj).surjective


def test_quotient_by_zero_is_identity():
    Q, proj = C.quotient_ring(Z4, [0])
    assert Q is Z4 and list(proj.map) == [0, 1, 2, 3]


def test_quotient_rejects_non_ideal():
    with pytest.raises(C.ConstructionError):
        C.quotient_ring(Z4, [0, 1])


def test_skew_frobenius_rule():
    F = C.galois_field(2, 2)
    S = C.skew_poly_quot(F, 2, C.frobenius(F))
    x, w, w2 = 1, 8, 12  # x, omega and omega^2 as constants
    assert S.mul[x, w] == S.mul[w2, x]
    assert S.mul[w, x] != S.mul[x, w]
    assert S.render(3) == "(1+w)*x"


def test_family_orders():
    assert C.family_Tnm(2, 2, Z2).order == 8
    assert C.family_Snm(2, 2, Z2).order == 16
    assert C.family_Un(4, Z2).order == 64
    assert C.family_Anm(2, 3, Z2).order == 16
    assert C.family_Bnm(2, 3, Z2).order == 64


@pytest.mark.parametrize("n,m", [(2, 2), (2, 3), (3, 2)])
@pytest.mark.parametrize("R", [Z2, Z4], ids=lambda R: R.label)
def test_phi_and_psi_are_isomorphisms(n, m, R):
    if R.order ** (n * m) > 4096:
        pytest.skip("tables too large for the unit test budget")
    assert verify_isomorphism(C.phi_Anm_Tnm(n, m, R))
    assert verify_isomorphism(C.psi_Bnm_Snm(n, m, R))


def test_u4_matches_shape():
    U = C.family_Un(4, Z2)
    assert verify_isomorphism(C.coordinate_hom(U, C.example3_shape(Z2), range(6)))


def test_non_closed_shape_is_rejected():
    with pytest.raises(C.ConstructionError):
        C.template_ring(Z2, [[0, 1], [None, 1]], "bad")  # identity not in the shape
    with pytest.raises(C.ConstructionError):
        C.template_ring(Z2, [[0, 1, None], [None, 0, 1], [None, None, 0]], "bad")


def test_corner_of_matrix_ring():
    M = C.matrix_ring(2, Z2)
    E = C.corner_ring(M, 8)  # E11
    assert E.order == 2
    assert verify_isomorphism(RingHom(E, Z2, [0, 1]))
    with pytest.raises(C.ConstructionError):
        C.corner_ring(M, 2)  # E21 squares to zero
    with pytest.raises(C.ConstructionError):
        C.corner_ring(M, 0)
    assert C.corner_ring(M, M.one) is M


@pytest.mark.parametrize("R", [Z2, Z4], ids=lambda R: R.label)
def test_sn2_is_trivial_extension(R):
    S = C.constant_diag_triangular(2, R)
    assert verify_isomorphism(C.coordinate_hom(S, C.trivial_extension(R, 1), [0, 1]))


@pytest.mark.parametrize("n,R", [(2, Z2), (2, Z4), (3, Z2)], ids=["2-Z2", "2-Z4", "3-Z2"])
def test_mns_at_one_is_matrix_ring(n, R):
    S = C.formal_MnS(n, R, R.one)
    assert verify_isomorphism(RingHom(S, C.matrix_ring(n, R), np.arange(S.order)))


def test_mns_exponent_values():
    assert C.mns_exponent(1, 1, 1) == 0
    assert C.mns_exponent(1, 2, 1) == 2
    assert C.mns_exponent(1, 2, 3) == 1


def test_mns_two_is_ks_of_square():
    for s in range(4):
        S = C.formal_MnS(2, Z4, s)
        K = C.formal_Ks(Z4, (s * s) % 4)
        assert verify_isomorphism(RingHom(S, K, np.arange(S.order)))


def test_t2_units_have_unit_diagonal():
    T = C.upper_triangular(2, Z2)
    X = C.coordinates(T)
    expected = [i for i in range(T.order) if X[i, 0] == 1 and X[i, 2] == 1]
    assert list(st.units(T).units.members) == expected


def test_size_one_cases():
    assert verify_isomorphism(RingHom(C.matrix_ring(1, Z3), Z3, [0, 1, 2]))
    assert verify_isomorphism(RingHom(C.upper_triangular(1, Z4), Z4, [0, 1, 2, 3]))
    assert C.family_Tnm(1, 1, Z2).order == 2
    assert C.poly_quot(Z3, 1).order == 3
    with pytest.raises(C.ConstructionError):
        C.matrix_ring(0, Z2)


def test_endomorphism_must_be_a_hom():
    with pytest.raises(C.ConstructionError):
        C.EndomorphismSpec(Z3, [0, 2, 2])


@settings(max_examples=20, deadline=None)
@given(hs.sampled_from(["T", "M", "Sn", "PolyQuot", "TrivExt"]), hs.sampled_from([2, 3]),
       hs.integers(1, 2))
def test_constructions_satisfy_axioms(kind, q, n):
    R = C.zmod(q)
    build = {"T": lambda: C.upper_triangular(n + 1, R), "M": lambda: C.matrix_ring(n, R),
             "Sn": lambda: C.constant_diag_triangular(n + 1, R),
             "PolyQuot": lambda: C.poly_quot(R, n + 1),
             "TrivExt": lambda: C.trivial_extension(R, n)}
    S = build[kind]()
    assert validate_ring_axioms(S).ok
    assert S.mul[S.one, S.one] == S.one
