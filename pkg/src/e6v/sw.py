"""Stiefel-Whitney classes of representations of W(E6) and of twisted trace forms.

Everything is mod 2 polynomial arithmetic on int bitsets: bit k of an
``F2Poly`` is the coefficient of x^k.

The ground-field cohomology is modelled by ``CoeffRing`` = F2[e, t]/(te, t^2),
where e = (-1) and t = (2).  The relation (2)e = 0 holds over any field in
which 2 is a sum of two squares (for example Q), which is the only
assumption made about the ground field.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from functools import reduce
from math import comb

from .qforms import CForm
from .weyl import GSet, GroupElement, degree_representatives, lines_gset, triangle_gset


class DivisibilityError(ArithmeticError):
    pass


class SymmetryError(ValueError):
    pass


class BasisError(ValueError):
    pass


# --- F2[x] ---------------------------------------------------------------------------------

@dataclass(frozen=True, order=True)
class F2Poly:
    bits: int = 0

    @classmethod
    def from_exponents(cls, exps):
        b = 0
        for k in exps:
            b ^= 1 << k
        return cls(b)

    @classmethod
    def from_coefficients(cls, coeffs):
        return cls.from_exponents(k for k, c in enumerate(coeffs) if c % 2)

    @classmethod
    def monomial(cls, k):
        return cls(1 << k)

    @property
    def degree(self) -> int:
        return self.bits.bit_length() - 1  # -1 for the zero polynomial

    def exponents(self) -> list[int]:
        return [k for k in range(self.bits.bit_length()) if self.bits >> k & 1]

    def coefficients(self) -> list[int]:
        return [self.bits >> k & 1 for k in range(self.bits.bit_length())]

    def coefficient(self, k) -> int:
        return self.bits >> k & 1 if k >= 0 else 0

    def __bool__(self):
        return self.bits != 0

    def __add__(self, other):
        return F2Poly(self.bits ^ other.bits)

    __sub__ = __add__

    def __mul__(self, other):
        a, b, out = self.bits, other.bits, 0
        while b:
            if b & 1:
                out ^= a
            a <<= 1
            b >>= 1
        return F2Poly(out)

    def __pow__(self, n: int):
        result, base = ONE, self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def shift(self, k: int):
        return F2Poly(self.bits << k)

    def divide_by_x_power(self, k: int):
        """Exact quotient by x^k; raises DivisibilityError on a nonzero remainder."""
        if self.bits & ((1 << k) - 1):
            raise DivisibilityError(f"{self} is not divisible by x^{k}")
        return F2Poly(self.bits >> k)

    def format(self, var="x") -> str:
        if not self.bits:
            return "0"
        terms = []
        for k in self.exponents():
            terms.append("1" if k == 0 else var if k == 1 else f"{var}^{k}")
        return "+".join(terms)

    def __str__(self):
        return self.format()


ZERO = F2Poly(0)
ONE = F2Poly(1)
X = F2Poly(2)


def one_plus_x_power(m: int) -> F2Poly:
    return (ONE + X) ** m


# --- coefficient ring F2[e, t]/(te, t^2) ---------------------------------------------------

@dataclass(frozen=True)
class CoeffRing:
    """poly(e) + t * tbit; t has degree 1 like e."""

    e: F2Poly = ZERO
    t: int = 0

    def __post_init__(self):
        object.__setattr__(self, "t", self.t % 2)

    def __bool__(self):
        return bool(self.e) or bool(self.t)

    def __add__(self, other):
        return CoeffRing(self.e + other.e, self.t ^ other.t)

    def __mul__(self, other):
        # t * e^k = 0 for k > 0 and t^2 = 0, so t only meets constant terms
        tbit = (self.t & other.e.coefficient(0)) ^ (other.t & self.e.coefficient(0))
        return CoeffRing(self.e * other.e, tbit)

    def homogeneous(self, d: int):
        """Degree-d part."""
        return CoeffRing(F2Poly(self.e.bits & (1 << d)), self.t if d == 1 else 0)

    def specialize_e0(self):
        """Set e = 0 (and keep t)."""
        return CoeffRing(F2Poly(self.e.coefficient(0)), self.t)

    def __str__(self):
        parts = [] if not self.e else [self.e.format("e")]
        if self.t:
            parts.append("t")
        return "+".join(parts) or "0"


C0 = CoeffRing()
C1 = CoeffRing(ONE)
E = CoeffRing(X)
T = CoeffRing(ZERO, 1)


def e_power(k: int) -> CoeffRing:
    return CoeffRing(F2Poly.monomial(k))


# --- Inv(G) as a free module on w0..w4 -------------------------------------------------------

def _table():
    tab = {}
    for i in range(5):
        tab[i, i] = (e_power(i), i)
    tab[1, 2] = (C1, 3)
    tab[1, 3] = (E, 3)
    tab[2, 3] = (e_power(2), 3)  # derived: w2 w3 = (w1 w2) w2 = w1 w2 e^2
    for j in (1, 2, 3):
        tab[j, 4] = None
    for i in range(5):
        tab[0, i] = (C1, i)
    out = dict(tab)
    for (i, j), v in tab.items():
        out[j, i] = v
    return out


MULT_TABLE = _table()


@dataclass(frozen=True)
class InvElement:
    coeffs: tuple = (C0,) * 5

    def __post_init__(self):
        if len(self.coeffs) != 5:
            raise ValueError("need five coefficients w0..w4")

    @classmethod
    def basis(cls, i: int, c: CoeffRing = C1):
        cs = [C0] * 5
        cs[i] = c
        return cls(tuple(cs))

    @classmethod
    def one(cls):
        return cls.basis(0)

    def __add__(self, other):
        return InvElement(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __mul__(self, other):
        if isinstance(other, CoeffRing):
            return InvElement(tuple(c * other for c in self.coeffs))
        return inv_multiply(self, other)

    __rmul__ = __mul__

    def __bool__(self):
        return any(self.coeffs)

    def graded_pieces(self) -> dict[int, "InvElement"]:
        """Degree -> homogeneous part; c * w_j with deg c = d sits in degree d + j."""
        pieces: dict[int, InvElement] = {}
        for j, c in enumerate(self.coeffs):
            for d in set(c.e.exponents()) | ({1} if c.t else set()):
                part = InvElement.basis(j, c.homogeneous(d))
                n = d + j
                pieces[n] = pieces[n] + part if n in pieces else part
        return {n: p for n, p in sorted(pieces.items()) if p}

    def specialize_e0(self):
        return InvElement(tuple(c.specialize_e0() for c in self.coeffs))

    def __str__(self):
        terms = []
        for j, c in enumerate(self.coeffs):
            if not c:
                continue
            w = "" if j == 0 else f"w{j}"
            cs = str(c)
            if not w:
                terms.append(cs)
            elif cs == "1":
                terms.append(w)
            elif "+" in cs:
                terms.append(f"({cs}){w}")
            else:
                terms.append(cs + w)
        return " + ".join(terms) or "0"

    def as_dict(self):
        return {
            f"w{j}": {"e": c.e.exponents(), "t": c.t} for j, c in enumerate(self.coeffs) if c
        }


def inv_multiply(u: InvElement, v: InvElement) -> InvElement:
    out = [C0] * 5
    for i, a in enumerate(u.coeffs):
        if not a:
            continue
        for j, b in enumerate(v.coeffs):
            if not b:
                continue
            entry = MULT_TABLE[i, j]
            if entry is None:
                continue
            c, k = entry
            out[k] = out[k] + a * b * c
    return InvElement(tuple(out))


def inv_from_polys(ps) -> InvElement:
    """1 + sum_i w_i p_i(e)."""
    return InvElement((C1,) + tuple(CoeffRing(p) for p in ps))


# --- m-vectors and the p_i ------------------------------------------------------------------

@dataclass(frozen=True)
class MVector:
    m: tuple

    def __post_init__(self):
        object.__setattr__(self, "m", tuple(int(v) for v in self.m))
        if len(self.m) != 4 or min(self.m) < 0:
            raise ValueError("m must be four nonnegative integers")

    def __iter__(self):
        return iter(self.m)

    def __getitem__(self, i):
        return self.m[i]

    def congruences_hold(self) -> bool:
        m1, m2, m3, m4 = self.m
        return m2 % 2 == 0 and (m3 - m1 - m2) % 4 == 0 and (m4 - 2 * m2) % 8 == 0


def _involution_reps(reps):
    if reps is None:
        reps = [degree_representatives()[i] for i in range(1, 5)]
    reps = list(reps)
    for g in reps:
        if not (isinstance(g, GroupElement) and g.is_involution()):
            raise ValueError("degree representatives must be involutions")
    return reps


def m_values_gset(t: GSet, reps=None) -> MVector:
    """m_i = number of 2-element orbits of {1, g_i} on t."""
    out = []
    for g in _involution_reps(reps):
        perm = t.act(g)
        out.append(sum(1 for i, j in enumerate(perm) if i < j and perm[j] == i))
    return MVector(out)


def m_values_characters(chars) -> MVector:
    """Characters are subsets S of {1..4}; g_i = s_1...s_i, so chi_S(g_i) = (-1)^|S & {1..i}|."""
    chars = [frozenset(S) for S in chars]
    return MVector(
        sum(1 for S in chars if len(S & set(range(1, i + 1))) % 2) for i in range(1, 5)
    )


def m_values(obj, reps=None) -> MVector:
    if isinstance(obj, GSet):
        return m_values_gset(obj, reps)
    return m_values_characters(obj)


def solve_p(m) -> tuple[F2Poly, F2Poly, F2Poly, F2Poly]:
    m1, m2, m3, m4 = MVector(tuple(m))
    xp1 = ONE + one_plus_x_power(m1)
    x2p2 = ONE + one_plus_x_power(m2)
    p1 = xp1.divide_by_x_power(1)
    p2 = x2p2.divide_by_x_power(2)
    p3 = (ONE + xp1 + x2p2 + one_plus_x_power(m3)).divide_by_x_power(3)
    p4 = (ONE + one_plus_x_power(m4)).divide_by_x_power(4)
    return p1, p2, p3, p4


def theorem9_expand(m) -> InvElement:
    return inv_from_polys(solve_p(m))


def graded_expansion(m) -> dict[int, InvElement]:
    return theorem9_expand(m).graded_pieces()


def corollary_specialize(m) -> InvElement:
    """Total class with e = 0."""
    return theorem9_expand(m).specialize_e0()


def corollary_product(m) -> InvElement:
    """(1 + m1 w1)(1 + m2/2 w2)(1 + m4/4 w4) with mod-2 coefficients."""
    m1, m2, _, m4 = MVector(tuple(m))
    one = InvElement.one()
    fac = [
        one + InvElement.basis(1, CoeffRing(F2Poly(m1 % 2))),
        one + InvElement.basis(2, CoeffRing(F2Poly((m2 // 2) % 2))),
        one + InvElement.basis(4, CoeffRing(F2Poly((m4 // 4) % 2))),
    ]
    return reduce(inv_multiply, fac).specialize_e0()


def corollary_binomial(m) -> InvElement:
    m1, m2, m3, m4 = MVector(tuple(m))
    cs = (1, m1, comb(m2, 2), comb(m1, 3) + comb(m2, 3) + comb(m3, 3), comb(m4, 4))
    return InvElement(tuple(CoeffRing(F2Poly(c % 2)) for c in cs))


# --- H(C)' ----------------------------------------------------------------------------------

@dataclass(frozen=True)
class HCPrimeElement:
    """sum_I x^I p_I(y), stored as a sorted tuple of (I, p_I) with p_I nonzero."""

    terms: tuple = ()

    @classmethod
    def from_dict(cls, d):
        items = [(frozenset(I), p) for I, p in d.items() if p]
        return cls(tuple(sorted(items, key=lambda kv: (len(kv[0]), sorted(kv[0])))))

    @classmethod
    def one(cls):
        return cls.from_dict({frozenset(): ONE})

    @classmethod
    def x(cls, i: int):
        return cls.from_dict({frozenset({i}): ONE})

    @classmethod
    def y_poly(cls, p: F2Poly):
        return cls.from_dict({frozenset(): p})

    def as_map(self) -> dict:
        return dict(self.terms)

    def coefficient(self, I) -> F2Poly:
        return self.as_map().get(frozenset(I), ZERO)

    def __add__(self, other):
        d = self.as_map()
        for I, p in other.terms:
            d[I] = d.get(I, ZERO) + p
        return HCPrimeElement.from_dict(d)

    def __mul__(self, other):
        d: dict = {}
        for I, p in self.terms:
            for J, q in other.terms:
                K = I | J
                d[K] = d.get(K, ZERO) + (p * q).shift(len(I & J))
        return HCPrimeElement.from_dict(d)

    def permuted(self, sigma: dict):
        return HCPrimeElement.from_dict({frozenset(sigma[i] for i in I): p for I, p in self.terms})

    def __str__(self):
        parts = []
        for I, p in self.terms:
            mono = "".join(f"x{i}" for i in sorted(I))
            ps = p.format("y")
            if not mono:
                parts.append(ps)
            elif ps == "1":
                parts.append(mono)
            else:
                parts.append(f"({ps}){mono}")
        return " + ".join(parts) or "0"


def elementary_symmetric(k: int) -> HCPrimeElement:
    return HCPrimeElement.from_dict({frozenset(I): ONE for I in itertools.combinations(range(1, 5), k)})


def character_class(S) -> HCPrimeElement:
    """Total class 1 + sum_{i in S} x_i of the character chi_S."""
    out = HCPrimeElement.one()
    for i in S:
        out = out + HCPrimeElement.x(i)
    return out


def hcprime_total_class(chars) -> HCPrimeElement:
    out = HCPrimeElement.one()
    for S in chars:
        if S:
            out = out * character_class(S)
    return out


def is_symmetric(w: HCPrimeElement) -> bool:
    for sigma in itertools.permutations(range(1, 5)):
        if w.permuted(dict(zip(range(1, 5), sigma))) != w:
            return False
    return True


def symmetric_extract_p(w: HCPrimeElement):
    """Write w = 1 + sum s_i p_i(y) and return (p1, .., p4)."""
    if not is_symmetric(w):
        raise SymmetryError("element is not invariant under permutations of x1..x4")
    if w.coefficient(()) != ONE:
        raise BasisError(f"constant term is {w.coefficient(()).format('y')}, expected 1")
    return tuple(w.coefficient(range(1, k + 1)) for k in range(1, 5))


def characters_of_cform(f: CForm) -> list[frozenset]:
    """Character multiset of the representation underlying a C-form."""
    return f.characters()


# --- the rank-1 quotient F2[x, y]/(x^2 - xy) ------------------------------------------------

@dataclass(frozen=True)
class Rank1:
    """a(y) + x b(y)."""

    a: F2Poly = ZERO
    b: F2Poly = ZERO

    def __add__(self, other):
        return Rank1(self.a + other.a, self.b + other.b)

    def __mul__(self, other):
        return Rank1(
            self.a * other.a,
            self.a * other.b + self.b * other.a + (self.b * other.b).shift(1),
        )

    def __pow__(self, n):
        out = Rank1(ONE)
        for _ in range(n):
            out = out * self
        return out


def rank1_of_x_poly(p: F2Poly) -> Rank1:
    xr = Rank1(ZERO, ONE)
    out = Rank1()
    for k in p.exponents():
        out = out + xr ** k
    return out


def substitution_rule_holds(p: F2Poly, n: int) -> bool:
    """x^n p(x) = x^n p(y) for n > 0."""
    xn = Rank1(ZERO, ONE) ** n
    return xn * rank1_of_x_poly(p) == xn * Rank1(p)


# --- trace forms (Kahn) ---------------------------------------------------------------------

def kahn_correction(w: InvElement) -> InvElement:
    """Add (2) * w_{i-1} to every even-degree piece w_i."""
    pieces = w.graded_pieces()
    out = w
    for n, piece in pieces.items():
        if n % 2 == 1:
            out = out + piece * T
    return out


def kahn_trace_class(t: GSet) -> InvElement:
    return kahn_correction(theorem9_expand(m_values(t)))


def rho27_factorized() -> InvElement:
    """(1 + e w1 + w2)(1 + e^3 w1 + w4)(1 + e^6 w2 + e^4 w4)."""
    one = InvElement.one()
    B = InvElement.basis
    f1 = one + B(1, E) + B(2)
    f2 = one + B(1, e_power(3)) + B(4)
    f3 = one + B(2, e_power(6)) + B(4, e_power(4))
    return inv_multiply(inv_multiply(f1, f2), f3)


GSETS = {"lines": lines_gset, "triangles": triangle_gset}


def random_symmetric_multiset(rng: random.Random, max_mult: int = 3) -> list[frozenset]:
    """S4-symmetric multiset: every character of weight k appears n_k times."""
    out = []
    for k in range(5):
        n = rng.randint(0, max_mult)
        for S in itertools.combinations(range(1, 5), k):
            out += [frozenset(S)] * n
    return out


def interpolation_check(seed: int = 0, samples: int = 200) -> list[tuple]:
    """Compare symmetric extraction with solve_p; returns the failing samples."""
    rng = random.Random(seed)
    bad = []
    for _ in range(samples):
        chars = random_symmetric_multiset(rng)
        lhs = symmetric_extract_p(hcprime_total_class(chars))
        rhs = solve_p(m_values_characters(chars))
        if lhs != rhs:
            bad.append((chars, lhs, rhs))
    return bad
