"""Diagonal quadratic forms over Q: local invariants, isometry, isotropy, lambda-powers.

Square classes are signed squarefree integers.  Isometry over Q is decided by
rank, signature, discriminant and Hasse invariants (Hasse-Minkowski).  The
Hasse invariant uses the convention prod_{i<j} (a_i, a_j)_p.

The second half handles forms carrying an action of the cube C = (Z/2)^4:
a :class:`CForm` maps each character chi_S (S a subset of {1,2,3,4}) to the
diagonal form on its eigenspace.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cache, reduce
from math import prod

import numpy as np
from sympy import factorint

INF = float("inf")


# --- square classes -------------------------------------------------------------------

@cache
def squarefree(n: int) -> int:
    """Signed squarefree kernel of a nonzero integer."""
    if n == 0:
        raise ValueError("zero has no square class")
    sign = -1 if n < 0 else 1
    return sign * prod(p for p, e in factorint(abs(n)).items() if e % 2)


def square_class(x) -> int:
    x = Fraction(x)
    return squarefree(x.numerator * x.denominator)


def class_product(*classes) -> int:
    return squarefree(prod(classes))


def primes_of(n: int) -> set[int]:
    return set(factorint(abs(n)))


def _split(a: int, p: int) -> tuple[int, int]:
    v = 0
    while a % p == 0:
        a //= p
        v += 1
    return v, a


def _legendre(u: int, p: int) -> int:
    r = pow(u % p, (p - 1) // 2, p)
    return -1 if r == p - 1 else r


def hilbert_symbol(a: int, b: int, p) -> int:
    """Local Hilbert symbol (a, b)_p over Q_p (p prime) or R (p = INF)."""
    return _hilbert(squarefree(a), squarefree(b), p)


@cache
def _hilbert(a: int, b: int, p) -> int:
    if p == INF:
        return -1 if a < 0 and b < 0 else 1
    alpha, u = _split(a, p)
    beta, v = _split(b, p)
    if p == 2:
        eps = lambda x: ((x % 8) - 1) // 2 % 2
        omega = lambda x: (((x % 8) ** 2 - 1) // 8) % 2
        e = eps(u) * eps(v) + alpha * omega(v) + beta * omega(u)
        return -1 if e % 2 else 1
    sign = -1 if (alpha * beta * (p - 1) // 2) % 2 else 1
    return sign * _legendre(u, p) ** beta * _legendre(v, p) ** alpha


def hilbert_oracle(a: int, b: int, p) -> int:
    """Brute-force decision of whether z^2 = a x^2 + b y^2 has a nonzero solution.

    A primitive solution has x or y a unit (otherwise z^2 would be a unit
    divisible by p^2), so we may scale that coordinate to 1 and search the
    other one modulo p^N.  With squarefree a, b the relevant partial
    derivative has valuation t <= v(2) + 1, and Hensel lifting succeeds from
    any solution modulo p^(2t+1).
    """
    a, b = squarefree(a), squarefree(b)
    if p == INF:
        return 1 if any(a * x * x + b * y * y >= 0 for x, y in ((1, 0), (0, 1))) else -1
    N = 5 if p == 2 else 3
    mod = p**N
    squares = {(z * z) % mod for z in range(mod)}
    # x = 1, y arbitrary
    if any((a + b * y * y) % mod in squares for y in range(mod)):
        return 1
    # y = 1, x divisible by p
    if any((a * x * x + b) % mod in squares for x in range(0, mod, p)):
        return 1
    return -1


def hilbert_places(a: int, b: int) -> list:
    return [INF] + sorted(primes_of(2 * a * b))


def is_local_square(d: int, p) -> bool:
    d = squarefree(d)
    if p == INF:
        return d > 0
    if d % p == 0:
        return False
    if p == 2:
        return d % 8 == 1
    return _legendre(d, p) == 1


# --- diagonal forms -------------------------------------------------------------------------

@dataclass(frozen=True)
class DiagonalForm:
    entries: tuple

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(square_class(a) for a in self.entries))

    def __len__(self):
        return len(self.entries)

    @property
    def rank(self) -> int:
        return len(self.entries)

    def __add__(self, other: "DiagonalForm") -> "DiagonalForm":
        return DiagonalForm(self.entries + other.entries)

    def __mul__(self, other: "DiagonalForm") -> "DiagonalForm":
        return DiagonalForm(tuple(a * b for a in self.entries for b in other.entries))

    def __rmul__(self, n: int) -> "DiagonalForm":
        # n * q = q + ... + q (n copies), as in "3 q_4"
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        return DiagonalForm(self.entries * n)

    def scaled(self, a: int) -> "DiagonalForm":
        return DiagonalForm(tuple(a * x for x in self.entries))

    @property
    def disc(self) -> int:
        return squarefree(prod(self.entries)) if self.entries else 1

    @property
    def signature(self) -> tuple[int, int]:
        pos = sum(1 for a in self.entries if a > 0)
        return pos, len(self.entries) - pos

    def bad_primes(self) -> set[int]:
        return {2}.union(*(primes_of(a) for a in self.entries))

    def hasse(self, p) -> int:
        """prod_{i<j} (a_i, a_j)_p, computed as prod_j (a_1...a_{j-1}, a_j)_p."""
        c, d = 1, 1
        for a in self.entries:
            c *= hilbert_symbol(d, a, p)
            d = squarefree(d * a)
        return c

    def sorted(self) -> "DiagonalForm":
        return DiagonalForm(tuple(sorted(self.entries)))

    def __str__(self):
        return "<" + ",".join(str(a) for a in self.entries) + ">"


def diag(*entries) -> DiagonalForm:
    return DiagonalForm(tuple(entries))


def ones(n: int) -> DiagonalForm:
    """n <1>, the integer n read as a quadratic form."""
    return DiagonalForm((1,) * n)


ZERO = DiagonalForm(())


def form_sum(forms) -> DiagonalForm:
    return reduce(lambda a, b: a + b, forms, ZERO)


def lambda_power(f: DiagonalForm, k: int) -> DiagonalForm:
    if k < 0 or k > f.rank:
        raise ValueError(f"lambda^{k} undefined for rank {f.rank}")
    return DiagonalForm(tuple(prod(c) for c in itertools.combinations(f.entries, k)))


@dataclass(frozen=True)
class WittInvariants:
    rank: int
    disc: int
    signature: tuple
    hasse: dict

    def as_dict(self):
        return {
            "rank": self.rank,
            "disc": self.disc,
            "signature": list(self.signature),
            "hasse": {str(p): v for p, v in sorted(self.hasse.items())},
        }


def witt_invariants(f: DiagonalForm, primes=()) -> WittInvariants:
    ps = sorted(f.bad_primes() | set(primes))
    return WittInvariants(f.rank, f.disc, f.signature, {p: f.hasse(p) for p in ps})


def is_isometric(f: DiagonalForm, g: DiagonalForm) -> bool:
    if f.rank != g.rank or f.signature != g.signature or f.disc != g.disc:
        return False
    return all(f.hasse(p) == g.hasse(p) for p in f.bad_primes() | g.bad_primes())


def is_isotropic(f: DiagonalForm) -> bool:
    n = f.rank
    pos, neg = f.signature
    if n < 2 or pos == 0 or neg == 0:
        return False
    if n == 2:
        return squarefree(-f.entries[0] * f.entries[1]) == 1
    if n >= 5:
        return True
    d = f.disc
    for p in sorted(f.bad_primes()):
        if n == 3 and f.hasse(p) != hilbert_symbol(-1, -d, p):
            return False
        if n == 4 and is_local_square(d, p) and f.hasse(p) != hilbert_symbol(-1, -1, p):
            return False
    return True


def cancel_invariants(big: DiagonalForm, small: DiagonalForm) -> WittInvariants:
    """Invariants of the form x with big = small + x (Witt cancellation).

    Uses c(f + g) = c(f) c(g) (d f, d g) place by place.
    """
    rank = big.rank - small.rank
    sig = (big.signature[0] - small.signature[0], big.signature[1] - small.signature[1])
    if rank < 0 or min(sig) < 0:
        raise ValueError("cannot cancel a larger form")
    d = squarefree(big.disc * small.disc)
    ps = sorted(big.bad_primes() | small.bad_primes() | primes_of(d))
    hasse = {
        p: big.hasse(p) * small.hasse(p) * hilbert_symbol(small.disc, d, p) for p in ps
    }
    return WittInvariants(rank, d, sig, hasse)


def invariants_match(f: DiagonalForm, inv: WittInvariants) -> bool:
    if (f.rank, f.disc, f.signature) != (inv.rank, inv.disc, tuple(inv.signature)):
        return False
    ps = f.bad_primes() | set(inv.hasse)
    return all(f.hasse(p) == inv.hasse.get(p, 1) for p in ps)


# --- trace forms of multiquadratic algebras -------------------------------------------------

def quadratic_trace_form(b: int) -> DiagonalForm:
    """Trace form of Q[t]/(t^2 - b) in the basis {1, t}: <2, 2b>."""
    return diag(2, 2 * b)


def class_subgroup(generators) -> list[int]:
    """All products of the generators, as distinct square classes."""
    group = {1}
    for g in generators:
        group |= {squarefree(x * g) for x in group}
    return sorted(group)


def multiquadratic_trace_form(generators) -> DiagonalForm:
    """Trace form of the tensor product of Q[t]/(t^2 - b) over the generators.

    The algebra is a product of 2^(s-r) copies of the field Q(sqrt B), where
    B is the image subgroup of order 2^r; each copy has trace form
    <2^r> * sum_{b in B} <b>.
    """
    generators = [square_class(b) for b in generators]
    B = class_subgroup(generators)
    r = len(B).bit_length() - 1
    copies = 2 ** (len(generators) - r)
    field_form = DiagonalForm(tuple(b for b in B)).scaled(2**r)
    return copies * field_form


# --- exact rational linear algebra ----------------------------------------------------------

def _fraction_matrix(M):
    return [[Fraction(int(x)) if not isinstance(x, Fraction) else x for x in row] for row in M]


def diagonalize_gram(gram) -> list[Fraction]:
    """Diagonal entries of a congruent diagonal form (symmetric pivoting)."""
    M = _fraction_matrix(gram)
    n = len(M)
    out = []
    for k in range(n):
        if M[k][k] == 0:
            j = next((j for j in range(k + 1, n) if M[j][j] != 0), None)
            if j is not None:
                M[k], M[j] = M[j], M[k]
                for row in M:
                    row[k], row[j] = row[j], row[k]
            else:
                j = next((j for j in range(k + 1, n) if M[k][j] != 0), None)
                if j is None:
                    raise ValueError("degenerate form")
                for i in range(n):
                    M[k][i] += M[j][i]
                for i in range(n):
                    M[i][k] += M[i][j]
        pivot = M[k][k]
        for i in range(k + 1, n):
            f = M[i][k] / pivot
            if f:
                for c in range(n):
                    M[i][c] -= f * M[k][c]
                for r in range(n):
                    M[r][i] -= f * M[r][k]
        out.append(pivot)
    return out


def gram_to_form(gram) -> DiagonalForm:
    return DiagonalForm(tuple(diagonalize_gram(gram)))


def column_space(M) -> list[list[Fraction]]:
    """Basis (as column vectors) of the column space, by exact row reduction."""
    A = _fraction_matrix(np.asarray(M, dtype=object).T.tolist())
    basis = []
    rows = len(A)
    cols = len(A[0]) if rows else 0
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if A[i][c] != 0), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        for i in range(rows):
            if i != r and A[i][c] != 0:
                f = A[i][c] / A[r][c]
                A[i] = [x - f * y for x, y in zip(A[i], A[r])]
        r += 1
    for i in range(r):
        basis.append(A[i])
    return basis


def _gram_on(gram, vecs, others=None):
    U = np.array(vecs, dtype=object)
    V = U if others is None else np.array(others, dtype=object)
    return (U @ np.asarray(gram, dtype=object) @ V.T).tolist()


# --- forms with an action of the cube ---------------------------------------------------------

CHARACTERS = tuple(
    frozenset(c) for k in range(5) for c in itertools.combinations((1, 2, 3, 4), k)
)


def char_name(S) -> str:
    return "{" + ",".join(str(i) for i in sorted(S)) + "}"


class CForm:
    """Orthogonal sum over characters chi_S of the cube of diagonal forms."""

    def __init__(self, isotypic=None):
        self.isotypic = {
            frozenset(S): f for S, f in (isotypic or {}).items() if f.rank
        }

    @classmethod
    def trivial(cls, f: DiagonalForm) -> "CForm":
        return cls({frozenset(): f})

    @classmethod
    def from_lines(cls, lines) -> "CForm":
        comps: dict[frozenset, list] = {}
        for S, a in lines:
            comps.setdefault(frozenset(S), []).append(a)
        return cls({S: DiagonalForm(tuple(v)) for S, v in comps.items()})

    def lines(self) -> list[tuple[frozenset, int]]:
        return [(S, a) for S in CHARACTERS if S in self.isotypic for a in self.isotypic[S].entries]

    def component(self, S) -> DiagonalForm:
        return self.isotypic.get(frozenset(S), ZERO)

    @property
    def rank(self) -> int:
        return sum(f.rank for f in self.isotypic.values())

    def underlying(self) -> DiagonalForm:
        return form_sum(self.component(S) for S in CHARACTERS)

    def __add__(self, other: "CForm") -> "CForm":
        return CForm({S: self.component(S) + other.component(S) for S in CHARACTERS})

    def __mul__(self, other) -> "CForm":
        if isinstance(other, DiagonalForm):
            other = CForm.trivial(other)
        return CForm.from_lines(
            (S ^ T, a * b) for S, a in self.lines() for T, b in other.lines()
        )

    def __rmul__(self, n):
        if isinstance(n, int):
            return CForm({S: n * f for S, f in self.isotypic.items()})
        if isinstance(n, DiagonalForm):
            return self * n
        return NotImplemented

    def lambda_power(self, k: int) -> "CForm":
        ls = self.lines()
        return CForm.from_lines(
            (reduce(frozenset.__xor__, (S for S, _ in c), frozenset()), prod(a for _, a in c))
            for c in itertools.combinations(ls, k)
        )

    def characters(self) -> list[frozenset]:
        """Multiset of characters (one per dimension)."""
        return [S for S, _ in self.lines()]

    def __repr__(self):
        parts = [f"{char_name(S)}:{self.isotypic[S]}" for S in CHARACTERS if S in self.isotypic]
        return "CForm(" + ", ".join(parts) + ")"


def cform_isometric(f: CForm, g: CForm) -> bool:
    """Character-by-character isometry of the isotypic components."""
    return all(is_isometric(f.component(S), g.component(S)) for S in CHARACTERS)


def isotypic_decompose(gram, actions) -> CForm:
    """Split a form with commuting involutive isometries s_1..s_4 into eigenspaces.

    ``actions[i]`` is the matrix of s_{i+1} acting on column vectors in the
    same basis as ``gram``.  The eigenspace of chi_S (s_i = -1 exactly for
    i in S) is the image of prod_i (1 -+ s_i); its basis is diagonalized exactly.
    """
    gram = np.asarray(gram, dtype=object)
    n = gram.shape[0]
    acts = [np.asarray(a, dtype=np.int64) for a in actions]
    I = np.eye(n, dtype=np.int64)
    for a in acts:
        if not np.array_equal(a @ a, I):
            raise ValueError("action does not square to the identity")
        if not np.array_equal(a.T.astype(object) @ gram @ a.astype(object), gram):
            raise ValueError("action does not preserve the form")
    for a, b in itertools.combinations(acts, 2):
        if not np.array_equal(a @ b, b @ a):
            raise ValueError("actions do not commute")

    spaces = {}
    for S in CHARACTERS:
        P = I.copy()
        for i, a in enumerate(acts, start=1):
            P = P @ (I - a if i in S else I + a)
        vecs = column_space(P) if P.any() else []
        if vecs:
            spaces[S] = vecs
    total = sum(len(v) for v in spaces.values())
    if total != n:
        raise ValueError("eigenspaces do not span")
    for (S, u), (T, v) in itertools.combinations(spaces.items(), 2):
        cross = _gram_on(gram, u, v)
        if any(c != 0 for row in cross for c in row):
            raise ValueError(f"eigenspaces {char_name(S)} and {char_name(T)} not orthogonal")
    return CForm({S: gram_to_form(_gram_on(gram, v)) for S, v in spaces.items()})
