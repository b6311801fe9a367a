import itertools
import math
import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from e6v import qforms
from e6v.qforms import INF, CForm, DiagonalForm, diag, ones

VALUES = (1, -1, 2, -2, 3, -3, 5, -5, 7, -7)
PLACES = (INF, 2, 3, 5, 7)

nonzero = st.integers(-60, 60).filter(bool)
forms = st.lists(st.sampled_from((1, -1, 2, -2, 3, -3, 5, -5, 6, -6, 7, -7, 10, 11, -11, 13)), min_size=1, max_size=6).map(
    lambda xs: DiagonalForm(tuple(xs))
)


# --- square classes and Hilbert symbols ---

def test_squarefree():
    assert qforms.squarefree(12) == 3
    assert qforms.squarefree(-50) == -2
    assert qforms.square_class(Fraction(3, 4)) == 3
    assert qforms.square_class(Fraction(2, 3)) == 6


@pytest.mark.parametrize("p", PLACES, ids=str)
def test_hilbert_matches_oracle(p):
    for a in VALUES:
        for b in VALUES:
            assert qforms.hilbert_symbol(a, b, p) == qforms.hilbert_oracle(a, b, p), (a, b, p)


def test_hilbert_known_values():
    assert qforms.hilbert_symbol(-1, -1, INF) == -1
    assert qforms.hilbert_symbol(-1, -1, 2) == -1
    assert qforms.hilbert_symbol(2, 2, 2) == 1
    assert qforms.hilbert_symbol(2, 3, 3) == -1


@given(nonzero, nonzero)
def test_reciprocity(a, b):
    places = [INF] + sorted(qforms.primes_of(2 * a * b))
    assert math.prod(qforms.hilbert_symbol(a, b, p) for p in places) == 1


@given(nonzero, nonzero, nonzero, st.sampled_from(PLACES))
def test_hilbert_bimultiplicative(a, b, c, p):
    h = qforms.hilbert_symbol
    assert h(a, b, p) == h(b, a, p)
    assert h(a, b * c, p) == h(a, b, p) * h(a, c, p)
    assert h(a, -a, p) == 1


# --- invariants and isometry ---

def test_signature_disc():
    f = diag(3, -2, -2, -2, -2, -2, -2)
    inv = qforms.witt_invariants(f)
    assert inv.signature == (1, 6) and inv.rank == 7
    # the literal diagonal form has discriminant class 3 (3 * 2^6)
    assert inv.disc == 3
    assert qforms.is_isotropic(f)


def test_isometry_examples():
    assert qforms.is_isometric(diag(1, 1), diag(2, 2))
    assert qforms.is_isometric(diag(1, -1), diag(3, -3))
    assert not qforms.is_isometric(diag(1, 1), diag(3, 3))
    assert not qforms.is_isometric(diag(1, 1), diag(1, 1, 1))


@settings(max_examples=60, deadline=None)
@given(forms, st.integers(0, 10**6))
def test_congruent_grams_are_isometric(f, seed):
    rnd = random.Random(seed)
    n = f.rank
    while True:
        M = [[rnd.randint(-3, 3) for _ in range(n)] for _ in range(n)]
        if round(np.linalg.det(np.array(M, dtype=float))) != 0:
            break
    D = np.diag(f.entries).astype(object)
    Mo = np.array(M, dtype=object)
    g = qforms.gram_to_form(Mo.T @ D @ Mo)
    assert qforms.is_isometric(f, g)


@given(forms, forms)
def test_hasse_of_sum(f, g):
    for p in (2, 3, 5, 7, 11, 13):
        lhs = (f + g).hasse(p)
        rhs = f.hasse(p) * g.hasse(p) * qforms.hilbert_symbol(f.disc, g.disc, p)
        assert lhs == rhs


@given(forms, st.sampled_from((1, 4, 9, 25)))
def test_square_scaling_is_isometry(f, s):
    assert qforms.is_isometric(f, DiagonalForm(tuple(s * a for a in f.entries)))


def test_cancellation():
    big = diag(1, -1, 2, 3)
    inv = qforms.cancel_invariants(big, diag(1, -1))
    assert qforms.invariants_match(diag(2, 3), inv)
    assert not qforms.invariants_match(diag(1, 6), inv)


# --- isotropy ---

def _brute_ternary(a, b, c):
    bx, by, bz = (math.isqrt(abs(u * v)) + 1 for u, v in ((b, c), (a, c), (a, b)))
    for x in range(bx + 1):
        for y in range(-by, by + 1):
            for z in range(-bz, bz + 1):
                if (x, y, z) != (0, 0, 0) and a * x * x + b * y * y + c * z * z == 0:
                    return True
    return False


COPRIME = [(a, b, c) for a, b, c in itertools.combinations((1, -1, 2, -2, 3, -3, 5, -5, 7, -7, 11, -11), 3)
           if math.gcd(a, b) == math.gcd(a, c) == math.gcd(b, c) == 1]


@pytest.mark.parametrize("abc", COPRIME[::3])
def test_ternary_isotropy_vs_bounded_search(abc):
    assert qforms.is_isotropic(diag(*abc)) == _brute_ternary(*abc)


def test_isotropy_small_ranks():
    assert qforms.is_isotropic(diag(1, -1))
    assert not qforms.is_isotropic(diag(1, -2))
    assert not qforms.is_isotropic(diag(1, 1, 1, 1))
    assert not qforms.is_isotropic(diag(1, 1, 1, 7))
    # x^2 + y^2 + z^2 = 7 w^2 has no 2-adic solution
    assert not qforms.is_isotropic(diag(1, 1, 1, -7))
    assert qforms.is_isotropic(diag(1, 1, 1, -1))
    assert qforms.is_isotropic(diag(1, 1, 1, 1, -1))
    assert not qforms.is_isotropic(ones(5))


# --- tensor, exterior powers, trace forms ---

def test_lambda_powers():
    f = diag(1, 2, 3)
    assert qforms.lambda_power(f, 0) == ones(1)
    assert qforms.lambda_power(f, 1) == f
    assert qforms.is_isometric(qforms.lambda_power(f, 2), diag(2, 3, 6))
    with pytest.raises(ValueError):
        qforms.lambda_power(f, 4)


def test_quadratic_trace_form():
    # Q(sqrt 5): trace form (x + y sqrt5) -> 2x^2 + 10y^2
    assert qforms.quadratic_trace_form(5) == diag(2, 10)


def test_multiquadratic_trace_form():
    assert qforms.multiquadratic_trace_form([]) == ones(1)
    assert qforms.is_isometric(qforms.multiquadratic_trace_form([2, 3]), diag(1, 2, 3, 6))
    # dependent classes split the algebra into two copies
    assert qforms.is_isometric(qforms.multiquadratic_trace_form([3, 3]), diag(2, 6, 2, 6))


@given(st.lists(st.sampled_from((-1, 2, 3, 5, -7, 6, 1)), min_size=1, max_size=3))
def test_multiquadratic_is_tensor_of_quadratic(bs):
    prod = ones(1)
    for b in bs:
        prod = prod * qforms.quadratic_trace_form(b)
    assert qforms.is_isometric(qforms.multiquadratic_trace_form(bs), prod)


# --- cube forms ---

def test_isotypic_decompose_swap():
    # Z^2 with the swap: trivial part spanned by (1,1), sign part by (1,-1)
    swap = np.array([[0, 1], [1, 0]])
    one = np.eye(2, dtype=int)
    f = qforms.isotypic_decompose(np.eye(2, dtype=int), [swap, one, one, one])
    assert f.component(()) == diag(2)
    assert f.component({1}) == diag(2)


def test_isotypic_rejects_non_involution():
    rot = np.array([[0, -1], [1, 0]])
    one = np.eye(2, dtype=int)
    with pytest.raises(ValueError):
        qforms.isotypic_decompose(np.eye(2, dtype=int), [rot, one, one, one])


def test_cform_algebra():
    a = CForm.from_lines([(frozenset({1}), 2), (frozenset({2}), 3)])
    b = a * a
    assert qforms.is_isometric(b.component({1, 2}), diag(6, 6))
    assert qforms.is_isometric(b.component(()), diag(4, 9))
    assert a.lambda_power(2).rank == 1
    assert (3 * a).rank == 6
