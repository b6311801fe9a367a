"""Galois twists of the G-forms q6, q7, q27 (and the triangle trace form) by cube-valued phi.

A homomorphism phi from the Galois group into the canonical maximal cube C is
encoded by four square classes (a_1, .., a_4), one per reflection s_i of C:
the character chi_S of C pulls back to the quadratic character of the class
prod_{i in S} a_i.  Twisting a C-form multiplies its chi_S component by that
class.

Trace forms of twisted G-sets are built independently, orbit by orbit, from
the point stabilizers in C: each orbit C/K is the etale algebra
tensor_{chi in basis of K-perp} Q[t]/(t^2 - class(chi)).
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cache
from math import prod

import numpy as np
import sympy

from . import lattice
from .qforms import (
    CHARACTERS,
    CForm,
    DiagonalForm,
    ZERO as ZERO_FORM,
    WittInvariants,
    cancel_invariants,
    cform_isometric,
    diag,
    form_sum,
    gram_to_form,
    invariants_match,
    is_isometric,
    is_isotropic,
    isotypic_decompose,
    lambda_power,
    multiquadratic_trace_form,
    ones,
    squarefree,
    witt_invariants,
)
from .weyl import (
    GSet,
    canonical_cube_basis,
    canonical_cube_elements,
    canonical_cube_roots,
    lines_gset,
    orbit_decomposition,
    triangle_gset,
)

CLASS_POOL = (-1, 2, 3, 5, 7, 11, 13, -2, -3, -5, -7, -11, -13)


@dataclass(frozen=True)
class TwistSpec:
    classes: tuple

    def __post_init__(self):
        if len(self.classes) != 4:
            raise ValueError("a cube twist needs four square classes")
        if any(a == 0 for a in self.classes):
            raise ValueError("square classes must be nonzero")
        object.__setattr__(self, "classes", tuple(squarefree(int(a)) for a in self.classes))

    def character_class(self, S) -> int:
        """Square class attached to chi_S: prod_{i in S} a_i."""
        return squarefree(prod(self.classes[i - 1] for i in S))

    @classmethod
    def trivial(cls):
        return cls((1, 1, 1, 1))


def twist_cform(f: CForm, t: TwistSpec) -> DiagonalForm:
    return form_sum(
        f.component(S).scaled(t.character_class(S)) for S in CHARACTERS
    )


def fixed_space_twist(gram, actions, t: TwistSpec) -> DiagonalForm:
    """Oracle for :func:`twist_cform` that never builds projectors.

    For each character chi_S the vectors sqrt(a_S) v with s_i v = chi_S(s_i) v
    are Galois-fixed in V tensor K; they span V_phi and q(sqrt(a_S) v) = a_S q(v).
    Eigenspaces come from sympy nullspaces of the stacked s_i - chi_S(s_i).
    """
    G = sympy.Matrix(np.asarray(gram, dtype=object).tolist())
    n = G.shape[0]
    mats = [sympy.Matrix(np.asarray(a, dtype=object).tolist()) for a in actions]
    out = ZERO_FORM
    for S in CHARACTERS:
        stacked = sympy.Matrix.vstack(*[
            m - (-1 if i + 1 in S else 1) * sympy.eye(n) for i, m in enumerate(mats)
        ])
        basis = stacked.nullspace()
        if not basis:
            continue
        B = sympy.Matrix.hstack(*basis)
        sub = B.T * G * B
        sub = [[Fraction(int(x.p), int(x.q)) for x in row] for row in sub.tolist()]
        out = out + gram_to_form(sub).scaled(t.character_class(S))
    return out


# --- the restricted G-forms as C-forms ---------------------------------------------------

def _cube_mats():
    els = canonical_cube_elements()
    return [els[frozenset({i})] for i in range(1, 5)]


@cache
def q4_cform() -> CForm:
    """q6 restricted to the span of the four cube roots (Gram = identity)."""
    roots = canonical_cube_roots()
    gram = [[Fraction(lattice.root_pairing(a, b), 2) for b in roots] for a in roots]
    acts = []
    for s in _cube_mats():
        # s_i acts on beta_j by -1 iff i == j (orthogonal roots)
        cols = []
        for b in roots:
            img = s.mat @ np.array(b)
            sign = 1 if tuple(img) == tuple(b) else -1
            assert tuple(img) == tuple(sign * np.array(b))
            cols.append(sign)
        acts.append(np.diag(cols))
    return isotypic_decompose(gram, acts)


@cache
def q6_cform() -> CForm:
    A = lattice.cartan_matrix()
    gram = [[Fraction(int(x), 2) for x in row] for row in A]
    return isotypic_decompose(gram, [s.mat for s in _cube_mats()])


def _L_action(g) -> np.ndarray:
    """Matrix of g on L in the basis h, (e(omega_i), omega_i)."""
    W = g.weight_matrix()
    basis = lattice.lattice_basis()
    cols = []
    for b in basis:
        p = tuple(int(v) for v in W @ np.array(b.p))
        cols.append(lattice.lattice_coordinates(lattice.LatticePoint(b.n, p)))
    return np.array(cols, dtype=np.int64).T


@cache
def q7_cform() -> CForm:
    return isotypic_decompose(lattice.gram_matrix_L(), [_L_action(s) for s in _cube_mats()])


def permutation_matrix(perm) -> np.ndarray:
    n = len(perm)
    P = np.zeros((n, n), dtype=np.int64)
    for i, j in enumerate(perm):
        P[j, i] = 1
    return P


def gset_cform(t: GSet) -> CForm:
    """The permutation form (identity Gram) on Z^T restricted to the cube."""
    n = t.size
    return isotypic_decompose(np.eye(n, dtype=np.int64), [permutation_matrix(t.act(s)) for s in _cube_mats()])


@cache
def q27_cform() -> CForm:
    return gset_cform(lines_gset())


@cache
def q45_cform() -> CForm:
    return gset_cform(triangle_gset())


def untwisted_q6() -> DiagonalForm:
    return gram_to_form([[Fraction(int(x), 2) for x in row] for row in lattice.cartan_matrix()])


def untwisted_q7() -> DiagonalForm:
    return gram_to_form(lattice.gram_matrix_L())


# --- expected C-forms, closed formulas in q4 ----------------------------------------------

def trivial(f: DiagonalForm) -> CForm:
    return CForm.trivial(f)


def expected_q6_cform() -> CForm:
    return q4_cform() + trivial(diag(2, 6))


def expected_q7_cform() -> CForm:
    return q4_cform() * diag(-2) + trivial(diag(-1, -1, 1))


def expected_q27_cform() -> CForm:
    q4 = q4_cform()
    return q4.lambda_power(2) + 3 * q4 + trivial(ones(9))


# --- etale side: trace forms of twisted G-sets -------------------------------------------

def _subset_of(perm) -> frozenset:
    for I, g in canonical_cube_elements().items():
        if g.perm == perm:
            return I
    raise ValueError("element is not in the canonical cube")


def annihilator_basis(K) -> list[frozenset]:
    """An F2-basis of the characters chi_S trivial on the subgroup K (subsets I)."""
    perp = [S for S in CHARACTERS if all(len(S & I) % 2 == 0 for I in K)]
    basis: list[frozenset] = []
    span = {frozenset()}
    for S in perp:
        if S not in span:
            basis.append(S)
            span |= {S ^ T for T in span}
    assert len(span) == len(perp)
    return basis


@dataclass
class CubeOrbit:
    size: int
    stabilizer: tuple  # subsets I of {1..4}
    characters: tuple  # basis of the annihilator of the stabilizer


def cube_orbits(t: GSet) -> list[CubeOrbit]:
    gens = _cube_mats()
    out = []
    for orbit in orbit_decomposition(t, gens):
        K = tuple(sorted((_subset_of(g.perm) for g in orbit.stabilizer), key=sorted))
        out.append(CubeOrbit(orbit.size, K, tuple(annihilator_basis(K))))
    return out


def twisted_trace_form(t: GSet, spec: TwistSpec) -> DiagonalForm:
    """Trace form of the etale algebra of t twisted by spec, summed over C-orbits."""
    return form_sum(
        multiquadratic_trace_form([spec.character_class(S) for S in o.characters])
        for o in cube_orbits(t)
    )


def trace_form_coefficients(t: GSet) -> list[DiagonalForm]:
    """Forms t_0..t_4 with q_T = sum_i t_i lambda^i q4 for every cube twist.

    An orbit of size 2^s contributes <2^s> times the characters of its
    annihilator; grouping characters by weight |S| gives t_i, provided each
    character of weight i occurs with the same multiplicities (checked).
    """
    counts: dict[frozenset, list[int]] = {S: [0, 0] for S in CHARACTERS}
    for o in cube_orbits(t):
        s = o.size.bit_length() - 1
        span = {frozenset()}
        for S in o.characters:
            span |= {S ^ T for T in span}
        for S in span:
            counts[S][s % 2] += 1
    coeffs = []
    for k in range(5):
        rows = {tuple(counts[S]) for S in CHARACTERS if len(S) == k}
        if len(rows) != 1:
            raise ValueError(f"weight-{k} characters are not symmetric in {t.name}")
        plain, twos = rows.pop()
        coeffs.append(ones(plain) + twos * diag(2))
    return coeffs


def normalize_coefficient(f: DiagonalForm) -> DiagonalForm:
    """Reduce n<1> + m<2> to <1,...,1> or <1,...,1,2> using <2,2> = <1,1>."""
    twos = f.entries.count(2)
    if set(f.entries) - {1, 2}:
        raise ValueError("coefficient is not made of <1> and <2>")
    return ones(f.rank - twos % 2) + (twos % 2) * diag(2)


def expand_coefficients(coeffs, q: DiagonalForm) -> DiagonalForm:
    return form_sum(c * lambda_power(q, i) for i, c in enumerate(coeffs) if c.rank)


# --- twisted family ------------------------------------------------------------------------

@dataclass
class TwistedFamily:
    q4: DiagonalForm
    q5: DiagonalForm
    q6: DiagonalForm
    q7: DiagonalForm
    q27: DiagonalForm
    q45: DiagonalForm


def build_twisted_family(t: TwistSpec) -> TwistedFamily:
    q4 = twist_cform(q4_cform(), t)
    return TwistedFamily(
        q4=q4,
        q5=q4 + diag(2),
        q6=twist_cform(q6_cform(), t),
        q7=twist_cform(q7_cform(), t),
        q27=twisted_trace_form(lines_gset(), t),
        q45=twisted_trace_form(triangle_gset(), t),
    )


@dataclass
class VerificationReport:
    name: str
    left: DiagonalForm
    right: DiagonalForm | None
    verdict: bool
    spec: TwistSpec | None = None
    seed: int | None = None
    common: DiagonalForm | None = None
    note: str = ""
    left_invariants: WittInvariants | None = field(default=None, repr=False)
    right_invariants: WittInvariants | None = field(default=None, repr=False)

    def as_dict(self):
        return {
            "identity": self.name,
            "verdict": self.verdict,
            "classes": list(self.spec.classes) if self.spec else None,
            "seed": self.seed,
            "left": list(self.left.entries),
            "right": list(self.right.entries) if self.right is not None else None,
            "left_invariants": self.left_invariants.as_dict() if self.left_invariants else None,
            "right_invariants": self.right_invariants.as_dict() if self.right_invariants else None,
            "common": list(self.common.entries) if self.common is not None else None,
            "note": self.note,
        }


def _compare(name, left, right, spec, common=None, note=""):
    primes = left.bad_primes() | right.bad_primes()
    return VerificationReport(
        name,
        left,
        right,
        is_isometric(left, right),
        spec,
        common=common,
        note=note,
        left_invariants=witt_invariants(left, primes),
        right_invariants=witt_invariants(right, primes),
    )


def _thm2(name, actual: CForm, expected: CForm, twisted_left, twisted_right, spec):
    """Character-by-character check plus the twisted consequence."""
    ok = cform_isometric(actual, expected)
    rep = _compare(name, twisted_left, twisted_right, spec)
    rep.verdict = rep.verdict and ok
    rep.note = "isotypic components " + ("agree" if ok else "DIFFER")
    return rep


def _eq65(f: TwistedFamily, spec):
    # q7 = <-2> q5 + H  <=>  <-2> q7 = q5 + H: cancel the hyperbolic plane.
    inv = cancel_invariants(f.q7.scaled(-2), diag(1, -1))
    ok = invariants_match(f.q4 + diag(2), inv)
    rep = VerificationReport(
        "EQ_65", f.q5, f.q4 + diag(2), ok, spec,
        note="q5 invariants obtained by Witt cancellation from q7",
        left_invariants=inv, right_invariants=witt_invariants(f.q4 + diag(2)),
    )
    return rep


def _eq57(f: TwistedFamily, spec):
    # q27 = l2 q7 + (<-1> - <2>) q7 + 7 - <-2>; move the negative terms across.
    left = f.q27 + diag(2) * f.q7 + diag(-2)
    right = lambda_power(f.q7, 2) + diag(-1) * f.q7 + ones(7)
    return _compare("EQ_57", left, right, spec, common=diag(2) * f.q7 + diag(-2),
                    note="virtual identity compared after adding <2>q7 + <-2> to both sides")


IDENTITIES = {
    "THM2_44": lambda f, t: _thm2("THM2_44", q6_cform(), expected_q6_cform(), f.q6, f.q4 + diag(2, 6), t),
    "THM2_45": lambda f, t: _thm2("THM2_45", q7_cform(), expected_q7_cform(), f.q7, diag(-2) * f.q4 + diag(-1, -1, 1), t),
    "THM2_46": lambda f, t: _thm2("THM2_46", q27_cform(), expected_q27_cform(), twist_cform(q27_cform(), t),
                                  lambda_power(f.q4, 2) + 3 * f.q4 + ones(9), t),
    "THM3": lambda f, t: VerificationReport("THM3", f.q7, None, is_isotropic(f.q7), t,
                                            left_invariants=witt_invariants(f.q7)),
    "COR_51": lambda f, t: _compare("COR_51", f.q7, diag(-2) * f.q5 + diag(1, -1), t),
    "COR_52": lambda f, t: _compare("COR_52", f.q6, f.q5 + diag(6), t),
    "COR_53": lambda f, t: _compare("COR_53", f.q7, diag(-2) * f.q6 + diag(3), t),
    "THM4_55": lambda f, t: _compare(
        "THM4_55", f.q27, lambda_power(f.q5, 2) + diag(1, 2) * f.q5 + ones(6) + diag(2), t),
    "EQ_56": lambda f, t: _compare(
        "EQ_56", f.q27, lambda_power(f.q6, 2) + diag(3) * f.q6 + ones(6), t),
    "EQ_57": _eq57,
    "EQ_61": lambda f, t: _compare("EQ_61", f.q7, diag(-2) * f.q4 + diag(-1, -1, 1), t),
    "EQ_62": lambda f, t: _compare("EQ_62", f.q27, lambda_power(f.q4, 2) + 3 * f.q4 + ones(9), t),
    "EQ_63": lambda f, t: _compare(
        "EQ_63", f.q27, lambda_power(f.q4, 2) + diag(1, 2, 2) * f.q4 + ones(9), t),
    "EQ_64": lambda f, t: _compare("EQ_64", f.q7, diag(-2) * f.q5 + diag(1, -1), t),
    "EQ_65": _eq65,
    "EQ_66": lambda f, t: _compare(
        "EQ_66", lambda_power(f.q5, 2), lambda_power(f.q4, 2) + diag(2) * f.q4, t),
    "EQ_67": lambda f, t: _compare(
        "EQ_67", f.q27, lambda_power(f.q5, 2) + diag(1, 2) * f.q4 + ones(9), t),
    "EQ_610": lambda f, t: _compare(
        "EQ_610", f.q45,
        ones(11) + diag(1, 1, 2) * f.q4 + diag(1, 1, 2) * lambda_power(f.q4, 2)
        + diag(2) * lambda_power(f.q4, 3), t),
    "EQ_611": lambda f, t: _compare(
        "EQ_611", f.q45,
        ones(9) + diag(2) + f.q5 + diag(1, 2) * lambda_power(f.q5, 2)
        + diag(2) * lambda_power(f.q5, 3), t),
    "EQ_42": lambda f, t: _compare("EQ_42", untwisted_q7(), diag(3) + diag(-2) * untwisted_q6(), None,
                                   note="untwisted"),
    "Q27_CONSISTENCY": lambda f, t: _compare(
        "Q27_CONSISTENCY", twist_cform(q27_cform(), t), f.q27, t,
        note="character twist of q27|C vs etale trace form from C-orbits"),
    "Q45_CONSISTENCY": lambda f, t: _compare(
        "Q45_CONSISTENCY", twist_cform(q45_cform(), t), f.q45, t,
        note="character twist of q45|C vs etale trace form from C-orbits"),
}

IDENTITY_NAMES = tuple(IDENTITIES)


def verify_identity(name: str, t: TwistSpec, family: TwistedFamily | None = None) -> VerificationReport:
    if name not in IDENTITIES:
        raise KeyError(f"unknown identity {name!r}; known: {', '.join(IDENTITY_NAMES)}")
    family = family or build_twisted_family(t)
    return IDENTITIES[name](family, t)


def random_class(rng: random.Random) -> int:
    k = rng.choice((1, 1, 2))
    return squarefree(prod(rng.choice(CLASS_POOL) for _ in range(k)))


def random_twists(seed: int, trials: int) -> list[TwistSpec]:
    rng = random.Random(seed)
    return [TwistSpec(tuple(random_class(rng) for _ in range(4))) for _ in range(trials)]


def randomized_suite(seed: int, trials: int, names=None) -> list[VerificationReport]:
    if trials < 1:
        raise ValueError("trials must be at least 1")
    names = list(names or IDENTITY_NAMES)
    reports = []
    for t in random_twists(seed, trials):
        family = build_twisted_family(t)
        for name in names:
            rep = verify_identity(name, t, family)
            rep.seed = seed
            reports.append(rep)
    return reports


# identity used by ``e6v twist --compare`` for each form
COMPARISONS = {
    "q5": "EQ_65",
    "q6": "THM2_44",
    "q7": "EQ_61",
    "q27": "Q27_CONSISTENCY",
    "q45": "Q45_CONSISTENCY",
}
