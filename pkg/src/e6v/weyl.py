"""Weyl(E6) as permutations of the 27 lines, with involutions, cubes and G-sets.

Every element carries both its permutation of the lines and its 6x6 integer
matrix on the root lattice (alpha-basis).  The whole group of order 51840 is
materialized as two numpy arrays; scans over it (conjugacy, normalizers) are
vectorized.
"""

from __future__ import annotations

import itertools
import json
from collections import Counter, deque
from dataclasses import dataclass, field
from functools import cache

import numpy as np

from .lattice import (
    RANK,
    cartan_matrix,
    inverse_cartan_times3,
    is_root,
    line_index,
    line_weights,
    positive_roots,
    reflect_weight,
    root_pairing,
    simple_roots,
    LatticeError,
)
from . import schlafli

N_LINES = 27
WEYL_ORDER = 51840


class GroupError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class GroupElement:
    """perm[i] is the image of line i; mat acts on alpha-coordinates (columns)."""

    perm: tuple
    mat: np.ndarray = field(repr=False)

    def __eq__(self, other):
        return isinstance(other, GroupElement) and self.perm == other.perm

    def __hash__(self):
        return hash(self.perm)

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        # (g * h)(x) = g(h(x))
        return GroupElement(tuple(self.perm[i] for i in other.perm), self.mat @ other.mat)

    def inverse(self) -> "GroupElement":
        inv = [0] * len(self.perm)
        for i, j in enumerate(self.perm):
            inv[j] = i
        return GroupElement(tuple(inv), np.rint(np.linalg.inv(self.mat)).astype(np.int64))

    @property
    def trace(self) -> int:
        return int(np.trace(self.mat))

    def is_identity(self) -> bool:
        return self.perm == tuple(range(len(self.perm)))

    def is_involution(self) -> bool:
        return all(self.perm[j] == i for i, j in enumerate(self.perm))

    def fixed_points(self) -> list[int]:
        return [i for i, j in enumerate(self.perm) if i == j]

    def weight_matrix(self) -> np.ndarray:
        """Action on omega-coordinates: A M A^-1."""
        return weight_matrix(self.mat)

    def preserves_form(self) -> bool:
        A = cartan_matrix()
        return np.array_equal(self.mat.T @ A @ self.mat, A)

    def consistent(self) -> bool:
        """Matrix action on the 27 line weights agrees with the permutation."""
        W = self.weight_matrix()
        images = line_weights() @ W.T
        idx = line_index()
        return all(idx.get(tuple(int(v) for v in row)) == self.perm[i] for i, row in enumerate(images))


def weight_matrix(mat) -> np.ndarray:
    A = cartan_matrix()
    num = A @ mat @ inverse_cartan_times3()
    assert not np.any(num % 3)
    return num // 3


def identity() -> GroupElement:
    return GroupElement(tuple(range(N_LINES)), np.eye(RANK, dtype=np.int64))


def reflection(root) -> GroupElement:
    """s_r(x) = x - (x . r) r on Q, together with its permutation of the lines."""
    root = tuple(int(c) for c in root)
    if not is_root(root):
        raise LatticeError(f"{root} is not a root")
    r = np.array(root, dtype=np.int64)
    mat = np.eye(RANK, dtype=np.int64) - np.outer(r, cartan_matrix() @ r)
    idx = line_index()
    perm = tuple(idx[reflect_weight(p, root)] for p in map(tuple, line_weights()))
    return GroupElement(perm, mat)


def degree(g: GroupElement) -> int:
    """Multiplicity of -1 as an eigenvalue of an involution."""
    if not g.is_involution():
        raise GroupError("degree is defined for involutions only")
    return (RANK - g.trace) // 2


involution_degree = degree


# --- whole-group store ---------------------------------------------------------------

class Group:
    """A finite group of line permutations, closed under multiplication.

    ``perms[k]`` and ``mats[k]`` describe element k; element 0 is the identity.
    """

    def __init__(self, perms: np.ndarray, mats: np.ndarray):
        self.perms = perms
        self.mats = mats
        self._index = {row.tobytes(): k for k, row in enumerate(perms)}

    def __len__(self):
        return len(self.perms)

    order = property(__len__)

    def element(self, k: int) -> GroupElement:
        return GroupElement(tuple(int(v) for v in self.perms[k]), self.mats[k].astype(np.int64))

    def index_of(self, g) -> int:
        perm = g.perm if isinstance(g, GroupElement) else g
        key = np.asarray(perm, dtype=np.uint8).tobytes()
        if key not in self._index:
            raise GroupError("element is not in the group")
        return self._index[key]

    def __contains__(self, g) -> bool:
        perm = g.perm if isinstance(g, GroupElement) else g
        return np.asarray(perm, dtype=np.uint8).tobytes() in self._index

    def __iter__(self):
        return (self.element(k) for k in range(len(self)))

    def mul(self, i: int, j: int) -> int:
        return self._index[self.perms[i][self.perms[j]].tobytes()]

    @property
    def inverse_perms(self) -> np.ndarray:
        if not hasattr(self, "_inv"):
            self._inv = np.argsort(self.perms, axis=1).astype(np.uint8)
        return self._inv

    def conjugates(self, perm) -> np.ndarray:
        """Rows g x g^-1 for every group element g."""
        x = np.asarray(perm, dtype=np.uint8)
        return np.take_along_axis(self.perms, x[self.inverse_perms], axis=1)


def generate_group(generators, bound: int = 10**6) -> Group:
    """Breadth-first closure of the generators under right multiplication."""
    gens = list(generators)
    e = identity()
    perms = [np.array(e.perm, dtype=np.uint8)]
    mats = [e.mat.astype(np.int8)]
    seen = {perms[0].tobytes()}
    frontier_p = np.array(perms)
    frontier_m = np.array(mats, dtype=np.int64)
    while len(frontier_p):
        new_p, new_m = [], []
        for s in gens:
            sp = np.array(s.perm, dtype=np.intp)
            cand_p = frontier_p[:, sp]
            cand_m = frontier_m @ s.mat
            for row, m in zip(cand_p, cand_m):
                key = row.tobytes()
                if key not in seen:
                    seen.add(key)
                    new_p.append(row)
                    new_m.append(m)
            if len(seen) > bound:
                raise GroupError(f"closure exceeded {bound} elements")
        perms.extend(new_p)
        mats.extend(m.astype(np.int8) for m in new_m)
        frontier_p = np.array(new_p, dtype=np.uint8).reshape(-1, N_LINES)
        frontier_m = np.array(new_m, dtype=np.int64).reshape(-1, RANK, RANK)
    return Group(np.array(perms, dtype=np.uint8), np.array(mats, dtype=np.int8))


def simple_reflections() -> list[GroupElement]:
    return [reflection(a) for a in simple_roots()]


@cache
def weyl_group() -> Group:
    return generate_group(simple_reflections())


def group_json() -> str:
    """Generators (perm + matrix), the 36 reflections and the group order."""
    G = weyl_group()
    data = {
        "schema": "e6v.group/1",
        "order": len(G),
        "generators": [
            {"root": list(a), "perm": list(s.perm), "matrix": s.mat.tolist()}
            for a, s in zip(simple_roots(), simple_reflections())
        ],
        "reflections": [
            {"id": k, "root": list(r), "perm": list(g.perm)}
            for k, (r, g) in enumerate(zip(positive_roots(), reflections()))
        ],
    }
    return json.dumps(data, indent=1, sort_keys=True) + "\n"


# --- reflections and their conjugation action ----------------------------------------

@cache
def reflections() -> tuple[GroupElement, ...]:
    """The 36 reflections, indexed like :func:`positive_roots`."""
    return tuple(reflection(r) for r in positive_roots())


def reflection_roots() -> tuple[tuple, ...]:
    return positive_roots()


def reflection_id(root) -> int:
    root = tuple(root)
    if sum(root) < 0:
        root = tuple(-c for c in root)
    return positive_roots().index(root)


@cache
def reflection_action() -> np.ndarray:
    """(|G|, 36) array: row g sends reflection id j to the id of g s_j g^-1."""
    G = weyl_group()
    R = np.array(positive_roots(), dtype=np.int64).T
    images = np.einsum("nij,jk->nik", G.mats.astype(np.int64), R)
    sign = np.where(images.sum(axis=1, keepdims=True) < 0, -1, 1)
    images = images * sign
    codes = np.zeros(7**RANK, dtype=np.int64) - 1
    weights = 7 ** np.arange(RANK)
    for k, r in enumerate(positive_roots()):
        codes[int(np.dot(np.array(r) + 3, weights))] = k
    out = codes[np.einsum("nik,i->nk", images + 3, weights)]
    assert np.all(out >= 0)
    return out


def orthogonal(i: int, j: int) -> bool:
    roots = positive_roots()
    return root_pairing(roots[i], roots[j]) == 0


# --- involutions ------------------------------------------------------------------------

@cache
def involution_degrees() -> dict[int, int]:
    """Group index -> degree, for every involution (identity included)."""
    G = weyl_group()
    sq = np.take_along_axis(G.perms, G.perms.astype(np.intp), axis=1)
    invol = np.flatnonzero(np.all(sq == np.arange(N_LINES), axis=1))
    traces = np.trace(G.mats[invol].astype(np.int64), axis1=1, axis2=2)
    return {int(k): int((RANK - t) // 2) for k, t in zip(invol, traces)}


@dataclass
class InvolutionCensus:
    counts: tuple
    conjugate_by_degree: dict
    fixed_vertices_by_degree: dict
    degree2_are_commuting_products: bool

    def as_dict(self):
        return {
            "counts": list(self.counts),
            "conjugate_by_degree": {str(k): v for k, v in self.conjugate_by_degree.items()},
            "fixed_vertices_by_degree": {
                str(k): sorted(v) for k, v in self.fixed_vertices_by_degree.items()
            },
            "degree2_are_commuting_products": self.degree2_are_commuting_products,
        }


def involution_census() -> InvolutionCensus:
    G = weyl_group()
    degs = involution_degrees()
    by_deg: dict[int, list[int]] = {}
    for k, d in degs.items():
        by_deg.setdefault(d, []).append(k)
    counts = tuple(len(by_deg.get(d, [])) for d in range(5))

    conjugate = {}
    for d, members in by_deg.items():
        rep = G.perms[members[0]]
        conj = {row.tobytes() for row in G.conjugates(rep)}
        conjugate[d] = conj == {G.perms[k].tobytes() for k in members}

    fixed = {
        d: {int(np.sum(G.perms[k] == np.arange(N_LINES))) for k in members}
        for d, members in by_deg.items()
    }

    refl = reflections()
    products = set()
    for i, j in itertools.combinations(range(len(refl)), 2):
        if orthogonal(i, j):
            products.add((refl[i] * refl[j]).perm)
    deg2 = {tuple(int(v) for v in G.perms[k]) for k in by_deg.get(2, [])}
    return InvolutionCensus(counts, conjugate, fixed, products == deg2)


# --- cubes --------------------------------------------------------------------------------

@dataclass(frozen=True)
class Cube:
    reflection_ids: tuple

    def __post_init__(self):
        ids = tuple(sorted(self.reflection_ids))
        object.__setattr__(self, "reflection_ids", ids)
        for i, j in itertools.combinations(ids, 2):
            if not orthogonal(i, j):
                raise GroupError(f"reflections {i} and {j} do not commute")

    @property
    def rank(self) -> int:
        return len(self.reflection_ids)

    def elements(self, basis=None) -> dict[frozenset, GroupElement]:
        """Subset I of the basis -> product of the reflections in I."""
        basis = tuple(basis) if basis is not None else self.reflection_ids
        refl = reflections()
        out = {}
        for k in range(len(basis) + 1):
            for I in itertools.combinations(range(len(basis)), k):
                g = identity()
                for i in I:
                    g = g * refl[basis[i]]
                out[frozenset(i + 1 for i in I)] = g
        return out

    def extremity(self) -> GroupElement:
        return self.elements()[frozenset(range(1, self.rank + 1))]

    def degree_profile(self) -> tuple:
        c = Counter(degree(g) for g in self.elements().values())
        return tuple(c.get(d, 0) for d in range(self.rank + 1))


@cache
def all_cubes() -> tuple[Cube, ...]:
    """Every family of pairwise orthogonal reflections (including the empty cube)."""
    n = len(positive_roots())
    orth = [[orthogonal(i, j) for j in range(n)] for i in range(n)]
    out = []

    def extend(current, start):
        out.append(Cube(tuple(current)))
        for j in range(start, n):
            if all(orth[i][j] for i in current):
                extend(current + [j], j + 1)

    extend([], 0)
    return tuple(out)


@cache
def enumerate_maximal_cubes() -> tuple[Cube, ...]:
    n = len(positive_roots())
    out = []
    for c in all_cubes():
        if not any(
            j not in c.reflection_ids and all(orthogonal(i, j) for i in c.reflection_ids)
            for j in range(n)
        ):
            out.append(c)
    return tuple(out)


def cube_from_roots(roots) -> Cube:
    return Cube(tuple(reflection_id(r) for r in roots))


@dataclass
class NormalizerData:
    normalizer: list
    image: set
    kernel: list
    centralizer: list

    @property
    def order(self) -> int:
        return len(self.normalizer)


def normalizer_image(cube: Cube) -> NormalizerData:
    """Normalizer by full scan, its permutation image on the 4 reflections, and C_G(C)."""
    G = weyl_group()
    ids = np.array(cube.reflection_ids)
    act = reflection_action()[:, ids]
    in_cube = np.isin(act, ids).all(axis=1)
    normalizer = np.flatnonzero(in_cube)
    pos = {int(r): k for k, r in enumerate(ids)}
    image = {tuple(pos[int(v)] for v in act[g]) for g in normalizer}
    kernel = [int(g) for g in normalizer if np.array_equal(act[g], ids)]

    centralizer = np.ones(len(G), dtype=bool)
    for r in cube.reflection_ids:
        s = np.array(reflections()[r].perm, dtype=np.intp)
        gs = G.perms[:, s]
        sg = s[G.perms.astype(np.intp)]
        centralizer &= np.all(gs == sg, axis=1)
    return NormalizerData(
        [int(g) for g in normalizer], image, kernel, [int(g) for g in np.flatnonzero(centralizer)]
    )


def cube_orbits() -> dict[Cube, int]:
    """Orbit label of every cube under conjugation by G (via simple reflections)."""
    G = weyl_group()
    act = reflection_action()
    gens = [G.index_of(s) for s in simple_reflections()]
    cubes = all_cubes()
    label: dict[tuple, int] = {}
    for c in cubes:
        if c.reflection_ids in label:
            continue
        tag = len(set(label.values()))
        queue = deque([c.reflection_ids])
        label[c.reflection_ids] = tag
        while queue:
            ids = queue.popleft()
            for g in gens:
                img = tuple(sorted(int(act[g, i]) for i in ids))
                if img not in label:
                    label[img] = tag
                    queue.append(img)
    return {c: label[c.reflection_ids] for c in cubes}


def cubes_with_same_extremity_conjugate() -> bool:
    orbits = cube_orbits()
    by_ext: dict[tuple, set] = {}
    for c, tag in orbits.items():
        by_ext.setdefault(c.extremity().perm, set()).add(tag)
    return all(len(tags) == 1 for tags in by_ext.values())


def every_involution_is_extremity() -> bool:
    G = weyl_group()
    ext = {c.extremity().perm for c in all_cubes()}
    invol = {tuple(int(v) for v in G.perms[k]) for k in involution_degrees()}
    return ext == invol


# --- the canonical maximal cube (Schläfli labelling) -----------------------------------

@cache
def canonical_cube_basis() -> tuple[int, ...]:
    """Reflection ids of s1..s4 = epsilon, (12), (34), (56) in the fixed labelling."""
    ident = {i: i for i in range(1, 7)}
    model = [
        schlafli.model_automorphism(ident, swap=True),
        schlafli.model_automorphism(schlafli.transposition(1, 2)),
        schlafli.model_automorphism(schlafli.transposition(3, 4)),
        schlafli.model_automorphism(schlafli.transposition(5, 6)),
    ]
    by_perm = {s.perm: k for k, s in enumerate(reflections())}
    out = []
    for m in model:
        perm = schlafli.model_perm_to_lines(m)
        if perm not in by_perm:
            raise GroupError("model generator is not a reflection")
        out.append(by_perm[perm])
    return tuple(out)


def canonical_cube() -> Cube:
    return Cube(canonical_cube_basis())


def canonical_cube_elements() -> dict[frozenset, GroupElement]:
    """Subset I of {1,2,3,4} -> prod_{i in I} s_i for the canonical cube."""
    return canonical_cube().elements(canonical_cube_basis())


def canonical_cube_roots() -> tuple[tuple, ...]:
    return tuple(positive_roots()[i] for i in canonical_cube_basis())


def subcube_elements(pair) -> set:
    """Elements of the order-4 subcube generated by s_a, s_b (a, b in 1..4)."""
    els = canonical_cube_elements()
    a, b = pair
    return {els[I].perm for I in (frozenset(), frozenset({a}), frozenset({b}), frozenset({a, b}))}


def degree_representatives() -> dict[int, GroupElement]:
    """g_i = s_1 ... s_i in the canonical cube, for i = 0..4."""
    els = canonical_cube_elements()
    return {i: els[frozenset(range(1, i + 1))] for i in range(5)}


# --- G-sets ---------------------------------------------------------------------------------

@dataclass(frozen=True)
class GSet:
    """A G-set whose points are sets of lines; G acts through the line permutation."""

    name: str
    points: tuple

    def __post_init__(self):
        object.__setattr__(self, "points", tuple(tuple(sorted(p)) for p in self.points))
        object.__setattr__(self, "_pos", {p: k for k, p in enumerate(self.points)})

    @property
    def size(self) -> int:
        return len(self.points)

    def act(self, g) -> tuple[int, ...]:
        perm = g.perm if isinstance(g, GroupElement) else g
        pos = self._pos
        try:
            return tuple(pos[tuple(sorted(perm[i] for i in p))] for p in self.points)
        except KeyError:
            raise GroupError(f"{self.name}: action does not preserve the point set") from None

    def generator_action(self) -> list[tuple[int, ...]]:
        return [self.act(s) for s in simple_reflections()]

    def check_action(self, samples: int = 200, seed: int = 0) -> bool:
        """act(g h) = act(g) o act(h) on random pairs of group elements."""
        G = weyl_group()
        rng = np.random.default_rng(seed)
        for _ in range(samples):
            i, j = (int(v) for v in rng.integers(len(G), size=2))
            g, h = G.element(i), G.element(j)
            ag, ah = self.act(g), self.act(h)
            if self.act(g * h) != tuple(ag[k] for k in ah):
                return False
        return True


def lines_gset() -> GSet:
    return GSet("lines", tuple((i,) for i in range(N_LINES)))


@cache
def triangle_gset() -> GSet:
    return GSet("triangles", tuple(schlafli.triangles(schlafli.build_omega())))


@dataclass
class Orbit:
    points: tuple
    stabilizer: tuple  # GroupElements fixing points[0]

    @property
    def size(self) -> int:
        return len(self.points)


def subgroup_closure(elements) -> list[GroupElement]:
    G = weyl_group()
    elements = list(elements)
    for g in elements:
        if g not in G:
            raise GroupError("element is not in Weyl(E6)")
    out = {identity().perm: identity()}
    queue = deque(out.values())
    while queue:
        x = queue.popleft()
        for g in elements:
            y = x * g
            if y.perm not in out:
                out[y.perm] = y
                queue.append(y)
    return list(out.values())


def orbit_decomposition(t: GSet, sub) -> list[Orbit]:
    """Orbits of the subgroup generated by ``sub`` on t, each with a point stabilizer."""
    elements = subgroup_closure(sub)
    actions = [(g, t.act(g)) for g in elements]
    seen = set()
    orbits = []
    for x in range(t.size):
        if x in seen:
            continue
        orbit = sorted({a[x] for _, a in actions})
        seen.update(orbit)
        stab = tuple(g for g, a in actions if a[x] == x)
        orbits.append(Orbit(tuple(orbit), stab))
    return orbits


def orbit_profile(orbits) -> Counter:
    return Counter(o.size for o in orbits)
