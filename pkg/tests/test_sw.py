import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from e6v import sw, twisting, weyl
from e6v.sw import CoeffRing, F2Poly, HCPrimeElement, InvElement, T, E, e_power

B = InvElement.basis

polys = st.integers(0, 2**12).map(F2Poly)
coeffs = st.builds(CoeffRing, polys, st.integers(0, 1))
inv_elements = st.tuples(coeffs, coeffs, coeffs, coeffs, coeffs).map(InvElement)


def P(*exps):
    return F2Poly.from_exponents(exps)


# --- F2[x] ---

@given(polys, polys, polys)
def test_f2_ring_axioms(a, b, c):
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + a == sw.ZERO


@given(polys)
def test_frobenius(a):
    # squaring is additive over F2
    assert a * a == F2Poly.from_exponents(2 * k for k in a.exponents())


@given(st.integers(0, 40))
def test_binomial_expansion_matches_lucas(m):
    p = sw.one_plus_x_power(m)
    assert p.exponents() == [k for k in range(m + 1) if (k & m) == k]


def test_exact_division():
    assert P(3, 5).divide_by_x_power(3) == P(0, 2)
    with pytest.raises(sw.DivisibilityError):
        P(1, 5).divide_by_x_power(2)


def test_poly_degree_and_canonical_form():
    assert sw.ZERO.degree == -1
    assert P(0, 7).degree == 7
    assert P(2, 2) == sw.ZERO
    assert F2Poly.from_coefficients([1, 0, 1, 0, 0]).coefficients() == [1, 0, 1]


# --- coefficient ring ---

def test_t_relations():
    assert T * E == CoeffRing()
    assert T * T == CoeffRing()
    assert T * sw.C1 == T


@given(coeffs, coeffs, coeffs)
def test_coeff_ring_axioms(a, b, c):
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c


# --- Inv(G) ---

def test_table():
    assert B(1) * B(2) == B(3)
    assert B(4) * B(4) == B(4, e_power(4))
    assert B(2) * B(3) == B(3, e_power(2))
    assert B(1) * B(3) == B(3, E)
    for j in (1, 2, 3):
        assert not B(j) * B(4)
    for i in range(5):
        assert B(i) * B(i) == B(i, e_power(i))


@settings(max_examples=150)
@given(inv_elements, inv_elements, inv_elements)
def test_inv_ring_axioms(a, b, c):
    assert sw.inv_multiply(a, b) == sw.inv_multiply(b, a)
    assert sw.inv_multiply(sw.inv_multiply(a, b), c) == sw.inv_multiply(a, sw.inv_multiply(b, c))
    assert sw.inv_multiply(a, b + c) == sw.inv_multiply(a, b) + sw.inv_multiply(a, c)


def test_w2w3_derivation():
    # w2 w3 = (w1 w2) w2 = w1 w2^2 = w1 w2 e^2
    lhs = B(2) * B(3)
    rhs = B(1) * (B(2) * B(2))
    assert lhs == rhs


# --- m-values and the polynomials p_i ---

def test_m_values_gsets():
    assert sw.m_values(weyl.lines_gset()).m == (6, 10, 12, 12)
    assert sw.m_values(weyl.triangle_gset()).m == (15, 20, 19, 16)


def test_m_values_trivial():
    assert sw.m_values_characters([frozenset()] * 7).m == (0, 0, 0, 0)


def test_m_values_rejects_non_involution():
    G = weyl.weyl_group()
    g = next(G.element(k) for k in range(len(G)) if not G.element(k).is_involution())
    with pytest.raises(ValueError):
        sw.m_values(weyl.lines_gset(), reps=[g, g, g, g])


def test_m_routes_agree():
    for gs, cf in ((weyl.lines_gset(), twisting.q27_cform()), (weyl.triangle_gset(), twisting.q45_cform())):
        assert sw.m_values(gs) == sw.m_values_characters(sw.characters_of_cform(cf))


def test_solve_p_rho6():
    assert sw.solve_p((1, 2, 3, 4)) == (sw.ONE,) * 4


def test_solve_p_rho27():
    assert sw.solve_p((6, 10, 12, 12)) == (P(1, 3, 5), P(0, 6, 8), P(3, 7, 9), P(0, 4, 8))


def test_solve_p_rho45():
    p = sw.solve_p((15, 20, 19, 16))
    assert p == (P(*range(15)), P(2, 14, 18), P(*range(2, 13), *range(14, 18)), P(12))


def test_divisibility_witness():
    with pytest.raises(sw.DivisibilityError):
        sw.solve_p((1, 1, 0, 0))
    assert not sw.MVector((1, 1, 0, 0)).congruences_hold()


@given(st.integers(0, 30), st.integers(0, 30), st.integers(0, 30), st.integers(0, 30))
def test_congruences_imply_divisibility(m1, m2, m3, m4):
    m = sw.MVector((m1, m2, m3, m4))
    try:
        sw.solve_p(m)
    except sw.DivisibilityError:
        assert not m.congruences_hold()


def test_divisibility_weaker_than_congruences():
    # 1 + (1+x)^4 = x^4 divides exactly although m4 = 4 is not 2 m2 mod 8
    m = sw.MVector((0, 0, 0, 4))
    assert not m.congruences_hold()
    assert sw.solve_p(m) == (sw.ZERO, sw.ZERO, sw.ZERO, sw.ONE)


# --- graded expansion ---

def test_rho27_pieces():
    pieces = sw.graded_expansion((6, 10, 12, 12))
    assert pieces[2] == B(1, E) + B(2)
    assert pieces[4] == B(1, e_power(3)) + B(4)
    assert pieces[6] == B(1, e_power(5)) + B(3, e_power(3))
    assert pieces[8] == B(2, e_power(6)) + B(4, e_power(4))
    assert pieces[10] == B(2, e_power(8)) + B(3, e_power(7))
    assert pieces[12] == B(3, e_power(9)) + B(4, e_power(8))
    assert all(n % 2 == 0 and n <= 12 for n in pieces)


def test_rho45_top_piece():
    pieces = sw.graded_expansion((15, 20, 19, 16))
    assert pieces[20] == B(2, e_power(18)) + B(3, e_power(17))
    assert max(pieces) == 20


def test_rho6_vanishes_above_four():
    pieces = sw.graded_expansion((1, 2, 3, 4))
    assert max(pieces) == 4
    assert sw.theorem9_expand((1, 2, 3, 4)) == B(0) + B(1) + B(2) + B(3) + B(4)


def test_rho27_factorized():
    assert sw.theorem9_expand((6, 10, 12, 12)) == sw.rho27_factorized()


def test_specialization_at_e_zero():
    assert sw.corollary_specialize((6, 10, 12, 12)) == B(0) + B(2) + B(4)
    assert sw.corollary_specialize((1, 2, 3, 4)) == B(0) + B(1) + B(2) + B(3) + B(4)
    assert sw.corollary_specialize((0, 0, 0, 0)) == InvElement.one()


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**20))
def test_corollary_three_routes(seed):
    chars = sw.random_symmetric_multiset(random.Random(seed))
    m = sw.m_values_characters(chars)
    a, b, c = sw.corollary_specialize(m), sw.corollary_product(m), sw.corollary_binomial(m)
    assert a == b == c


# --- H(C)' ---

def test_hcprime_products():
    x12 = HCPrimeElement.from_dict({frozenset({1, 2}): sw.ONE})
    x23 = HCPrimeElement.from_dict({frozenset({2, 3}): sw.ONE})
    assert x12 * x23 == HCPrimeElement.from_dict({frozenset({1, 2, 3}): sw.X})
    z = HCPrimeElement.x(1) + HCPrimeElement.x(2)
    assert z * z == HCPrimeElement.from_dict({frozenset({1}): sw.X, frozenset({2}): sw.X})


def test_squares_follow_degree():
    # z^2 = z y^d for z of degree d
    z = sw.elementary_symmetric(2)
    assert z * z == HCPrimeElement.from_dict({I: p.shift(2) for I, p in z.terms})


def test_rho4_class():
    w = sw.hcprime_total_class([frozenset({i}) for i in range(1, 5)])
    expected = HCPrimeElement.one()
    for k in range(1, 5):
        expected = expected + sw.elementary_symmetric(k)
    assert w == expected
    assert sw.symmetric_extract_p(w) == (sw.ONE,) * 4


def test_extract_rho27():
    w = sw.hcprime_total_class(sw.characters_of_cform(twisting.q27_cform()))
    assert sw.symmetric_extract_p(w) == sw.solve_p((6, 10, 12, 12))


def test_extract_errors():
    with pytest.raises(sw.SymmetryError):
        sw.symmetric_extract_p(sw.hcprime_total_class([frozenset({1})]))
    with pytest.raises(sw.BasisError):
        sw.symmetric_extract_p(sw.elementary_symmetric(1))


def test_interpolation():
    assert sw.interpolation_check(seed=0, samples=200) == []


def test_restriction_basis():
    w = sw.hcprime_total_class(sw.characters_of_cform(twisting.q6_cform()))
    assert sw.symmetric_extract_p(w) == (sw.ONE,) * 4
    supports = [{I for I, _ in sw.elementary_symmetric(k).terms} for k in range(5)]
    for a, b in itertools.combinations(supports, 2):
        assert not a & b


@given(polys, st.integers(1, 6))
def test_substitution_rule(p, n):
    assert sw.substitution_rule_holds(p, n)


# --- Kahn ---

def test_kahn_lines():
    assert sw.kahn_trace_class(weyl.lines_gset()) == sw.theorem9_expand((6, 10, 12, 12))


def test_kahn_triangles():
    w45 = sw.theorem9_expand((15, 20, 19, 16))
    assert sw.kahn_trace_class(weyl.triangle_gset()) == w45 + B(1, T)


def test_kahn_no_odd_pieces_no_correction():
    w = sw.rho27_factorized()
    assert sw.kahn_correction(w) == w
