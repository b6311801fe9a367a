"""E6 root system, weight lattice and the rank-7 lattice L with its 27 lines.

Roots live in the basis of simple roots (alpha-coordinates), weights in the
basis of fundamental weights (omega-coordinates).  Pairings between weights
have denominator 3, so they are carried as numerators of ``3 * (x . y)``.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from functools import cache

import numpy as np

RANK = 6

# Bourbaki numbering: 1-3-4-5-6 chain with 2 attached to 4.
DYNKIN_EDGES = ((1, 3), (3, 4), (4, 5), (5, 6), (2, 4))

HIGHEST_ROOT = (1, 2, 2, 3, 2, 1)


class LatticeError(ValueError):
    pass


@dataclass(frozen=True)
class CartanData:
    cartan_matrix: np.ndarray
    labels: tuple = (1, 2, 3, 4, 5, 6)

    @property
    def det(self) -> int:
        return round(np.linalg.det(self.cartan_matrix))


@cache
def cartan_data() -> CartanData:
    A = 2 * np.eye(RANK, dtype=np.int64)
    for i, j in DYNKIN_EDGES:
        A[i - 1, j - 1] = A[j - 1, i - 1] = -1
    A.setflags(write=False)
    return CartanData(A)


def cartan_matrix() -> np.ndarray:
    return cartan_data().cartan_matrix


@cache
def inverse_cartan_times3() -> np.ndarray:
    """Integer matrix ``3 * A^-1``; entry (i, j) is ``3 * (omega_i . omega_j)``."""
    A = cartan_matrix()
    T = np.rint(3 * np.linalg.inv(A)).astype(np.int64)
    if not np.array_equal(A @ T, 3 * np.eye(RANK, dtype=np.int64)):
        raise LatticeError("3 * A^-1 is not integral")
    T.setflags(write=False)
    return T


def root_pairing(r, s) -> int:
    """Scalar product of two elements of Q given in alpha-coordinates."""
    return int(np.asarray(r) @ cartan_matrix() @ np.asarray(s))


def weight_pairing3(p, q) -> int:
    """``3 * (p . q)`` for weights in omega-coordinates (always an integer)."""
    return int(np.asarray(p) @ inverse_cartan_times3() @ np.asarray(q))


def root_to_weight(r) -> tuple:
    """Omega-coordinates of an element of Q given in alpha-coordinates."""
    return tuple(int(v) for v in cartan_matrix() @ np.asarray(r))


def weight_to_root(p) -> tuple:
    """Alpha-coordinates of a weight; raises if the weight is not in Q."""
    num = inverse_cartan_times3() @ np.asarray(p)
    if np.any(num % 3):
        raise LatticeError(f"weight {tuple(p)} is not in the root lattice")
    return tuple(int(v) for v in num // 3)


def reflect_root(x, r) -> tuple:
    c = root_pairing(x, r)
    return tuple(int(a - c * b) for a, b in zip(x, r))


def reflect_weight(p, r) -> tuple:
    """s_r(p) = p - (p . r) r, with p in omega- and r in alpha-coordinates."""
    c = int(np.dot(p, r))
    rw = root_to_weight(r)
    return tuple(int(a - c * b) for a, b in zip(p, rw))


def simple_roots() -> list[tuple]:
    return [tuple(int(i == j) for j in range(RANK)) for i in range(RANK)]


@cache
def build_root_system() -> tuple[tuple, ...]:
    """All 72 roots (alpha-coordinates), sorted lexicographically."""
    simple = simple_roots()
    seen = set(simple)
    queue = deque(simple)
    while queue:
        x = queue.popleft()
        for s in simple:
            y = reflect_root(x, s)
            if y not in seen:
                seen.add(y)
                queue.append(y)
        if len(seen) > 72:
            raise LatticeError("root closure exceeded 72 elements")
    return tuple(sorted(seen))


def positive_roots() -> tuple[tuple, ...]:
    return tuple(r for r in build_root_system() if sum(r) > 0)


def lowest_root() -> tuple:
    return tuple(-c for c in HIGHEST_ROOT)


def is_root(x) -> bool:
    return tuple(x) in set(build_root_system())


# --- the homomorphism e: P -> Z/3 ---------------------------------------------

@cache
def class_coefficients() -> tuple[int, ...]:
    """c_i = e(omega_i), found by solving omega_i - c * omega_1 in Q mod 3."""
    T = inverse_cartan_times3()
    coeffs = []
    for i in range(RANK):
        hits = [c for c in range(3) if not np.any((T[:, i] - c * T[:, 0]) % 3)]
        if len(hits) != 1:
            raise LatticeError(f"no unique class for omega_{i + 1}")
        coeffs.append(hits[0])
    return tuple(coeffs)


def class_mod_Q(p) -> int:
    return int(np.dot(class_coefficients(), p)) % 3


# --- the lattice L ------------------------------------------------------------

@dataclass(frozen=True, order=True)
class LatticePoint:
    """A pair (n, p) with n = e(p) mod 3; p in omega-coordinates."""

    n: int
    p: tuple

    def __post_init__(self):
        object.__setattr__(self, "p", tuple(int(v) for v in self.p))
        if len(self.p) != RANK:
            raise LatticeError("weight must have 6 coordinates")
        if (self.n - class_mod_Q(self.p)) % 3:
            raise LatticeError(f"({self.n}, {self.p}) violates n = e(p) mod 3")

    def __add__(self, other):
        return LatticePoint(self.n + other.n, tuple(a + b for a, b in zip(self.p, other.p)))

    def __sub__(self, other):
        return LatticePoint(self.n - other.n, tuple(a - b for a, b in zip(self.p, other.p)))

    def __neg__(self):
        return LatticePoint(-self.n, tuple(-a for a in self.p))

    @classmethod
    def from_root(cls, r):
        return cls(0, root_to_weight(r))


def q_L(u: LatticePoint, v: LatticePoint) -> int:
    num = u.n * v.n - weight_pairing3(u.p, v.p)
    if num % 3:
        raise LatticeError("q_L value is not integral")
    return num // 3


H = LatticePoint(3, (0,) * RANK)
OMEGA1_PRIME = LatticePoint(1, (1, 0, 0, 0, 0, 0))
GAMMA = H - OMEGA1_PRIME


def lattice_basis() -> list[LatticePoint]:
    """Z-basis of L: h followed by (e(omega_i), omega_i) for i = 1..6."""
    basis = [H]
    for i, c in enumerate(class_coefficients()):
        basis.append(LatticePoint(c, tuple(int(i == j) for j in range(RANK))))
    return basis


def gram_matrix_L() -> np.ndarray:
    basis = lattice_basis()
    return np.array([[q_L(u, v) for v in basis] for u in basis], dtype=np.int64)


def lattice_coordinates(u: LatticePoint) -> tuple:
    """Coordinates of u in :func:`lattice_basis`."""
    c = class_coefficients()
    rest = u.n - int(np.dot(c, u.p))
    assert rest % 3 == 0
    return (rest // 3,) + tuple(u.p)


def gram_signature(gram) -> tuple[int, int]:
    ev = np.linalg.eigvalsh(np.asarray(gram, dtype=float))
    return int(np.sum(ev > 1e-9)), int(np.sum(ev < -1e-9))


def is_root_in_L(u: LatticePoint) -> bool:
    """Roots of L: q_L(h,u) = 0 and q_L(u,u) = -2."""
    return q_L(H, u) == 0 and q_L(u, u) == -2


def roots_by_lattice_rule(bound: int = 3) -> set[tuple]:
    """Enumerate an alpha-coordinate box and keep the points the L-rule accepts.

    Vectorized form of :func:`is_root_in_L` over the box: n = 0 forces
    q_L(h, u) = 0, and 3 q_L(u, u) = -p^T (3A^-1) p with p = A x.
    """
    rng = np.arange(-bound, bound + 1)
    X = np.stack(np.meshgrid(*([rng] * RANK), indexing="ij"), -1).reshape(-1, RANK)
    P = X @ cartan_matrix().T
    q3 = -np.einsum("ij,jk,ik->i", P, inverse_cartan_times3(), P)
    return {tuple(int(v) for v in x) for x in X[q3 == -6]}


@dataclass(frozen=True)
class LineClass:
    index: int
    point: LatticePoint
    schlafli_label: str | None = None


@cache
def enumerate_lines() -> tuple[LineClass, ...]:
    """The 27 points (1, w) with w in the Weyl orbit of omega_1."""
    seed = OMEGA1_PRIME.p
    seen = {seed}
    queue = deque([seed])
    while queue:
        p = queue.popleft()
        for s in simple_roots():
            q = reflect_weight(p, s)
            if q not in seen:
                seen.add(q)
                queue.append(q)
        if len(seen) > 27:
            raise LatticeError("orbit of omega_1 exceeded 27 elements")
    if len(seen) != 27:
        raise LatticeError(f"orbit of omega_1 has {len(seen)} elements")
    return tuple(LineClass(i, LatticePoint(1, p)) for i, p in enumerate(sorted(seen)))


@cache
def line_index() -> dict[tuple, int]:
    return {line.point.p: line.index for line in enumerate_lines()}


def line_weights() -> np.ndarray:
    return np.array([line.point.p for line in enumerate_lines()], dtype=np.int64)


def lattice_json() -> str:
    data = {
        "schema": "e6v.lattice/1",
        "roots": [list(r) for r in build_root_system()],
        "lines": [
            {"index": l.index, "n": l.point.n, "omega": list(l.point.p)}
            for l in enumerate_lines()
        ],
        "gram_L": gram_matrix_L().tolist(),
    }
    return json.dumps(data, indent=1, sort_keys=True) + "\n"
