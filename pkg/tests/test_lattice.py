import itertools
import json

import numpy as np
import pytest
from hypothesis import given, strategies as st

from e6v import lattice
from e6v.lattice import H, GAMMA, OMEGA1_PRIME, LatticeError, LatticePoint, q_L


def test_cartan_determinant():
    assert lattice.cartan_data().det == 3
    A = lattice.cartan_matrix()
    assert np.array_equal(A, A.T)
    assert np.array_equal(A @ lattice.inverse_cartan_times3(), 3 * np.eye(6, dtype=int))


def test_root_count_and_closure():
    roots = set(lattice.build_root_system())
    assert len(roots) == 72
    assert len(lattice.positive_roots()) == 36
    assert lattice.HIGHEST_ROOT in roots and lattice.lowest_root() in roots
    for r in roots:
        assert lattice.root_pairing(r, r) == 2
        assert tuple(-v for v in r) in roots


def test_roots_are_sorted_and_deterministic():
    roots = lattice.build_root_system()
    assert list(roots) == sorted(roots)


# --- e: P -> Z/3 ---

def test_class_coefficients():
    assert lattice.class_coefficients() == (1, 0, 2, 0, 1, 2)
    assert lattice.class_mod_Q((1, 0, 0, 0, 0, 0)) == 1


def test_class_kills_roots():
    for r in lattice.build_root_system():
        assert lattice.class_mod_Q(lattice.root_to_weight(r)) == 0


@given(st.lists(st.integers(-5, 5), min_size=6, max_size=6), st.lists(st.integers(-5, 5), min_size=6, max_size=6))
def test_class_is_additive(p, q):
    s = [a + b for a, b in zip(p, q)]
    assert lattice.class_mod_Q(s) == (lattice.class_mod_Q(p) + lattice.class_mod_Q(q)) % 3


@given(st.lists(st.integers(-4, 4), min_size=6, max_size=6))
def test_kernel_is_root_lattice(p):
    in_q = True
    try:
        lattice.weight_to_root(p)
    except LatticeError:
        in_q = False
    assert in_q == (lattice.class_mod_Q(p) == 0)


# --- L ---

def test_point_congruence_enforced():
    with pytest.raises(LatticeError):
        LatticePoint(0, (1, 0, 0, 0, 0, 0))


def test_special_values():
    assert q_L(H, H) == 3
    assert q_L(OMEGA1_PRIME, OMEGA1_PRIME) == -1
    assert q_L(H, OMEGA1_PRIME) == 1
    assert q_L(GAMMA, GAMMA) == 0


def test_gram_unimodular():
    g = lattice.gram_matrix_L()
    assert round(np.linalg.det(g.astype(float))) == 1
    assert lattice.gram_signature(g) == (1, 6)


_points = st.builds(
    lambda k, p: LatticePoint(lattice.class_mod_Q(p) + 3 * k, tuple(p)),
    st.integers(-2, 2),
    st.lists(st.integers(-3, 3), min_size=6, max_size=6),
)


@given(_points, _points, _points)
def test_q_L_symmetric_bilinear(u, v, w):
    assert q_L(u, v) == q_L(v, u)
    assert q_L(u + v, w) == q_L(u, w) + q_L(v, w)


@given(_points)
def test_coordinates_roundtrip(u):
    c = lattice.lattice_coordinates(u)
    basis = lattice.lattice_basis()
    total = LatticePoint(0, (0,) * 6)
    for k, b in zip(c, basis):
        for _ in range(abs(k)):
            total = total + b if k > 0 else total - b
    assert total == u


def test_lattice_rule_recovers_roots():
    assert lattice.roots_by_lattice_rule() == set(lattice.build_root_system())


def test_lattice_rule_pointwise_agrees():
    for r in lattice.build_root_system()[:10]:
        assert lattice.is_root_in_L(LatticePoint.from_root(r))
    assert not lattice.is_root_in_L(H)


# --- lines ---

def test_lines():
    lines = lattice.enumerate_lines()
    assert len(lines) == 27
    assert [l.point.p for l in lines] == sorted(l.point.p for l in lines)
    for l in lines:
        assert q_L(H, l.point) == 1 and q_L(l.point, l.point) == -1
    vals = {q_L(a.point, b.point) for a, b in itertools.combinations(lines, 2)}
    assert vals == {0, 1}


def test_lattice_json():
    d = json.loads(lattice.lattice_json())
    assert d["schema"] == "e6v.lattice/1"
    assert len(d["roots"]) == 72 and len(d["lines"]) == 27
    assert len(d["gram_L"]) == 7
    assert lattice.lattice_json() == lattice.lattice_json()
