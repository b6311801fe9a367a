"""The 27-vertex graph of lines, Schläfli's combinatorial model, and small-graph search.

Graphs are stored as one adjacency bitmask per vertex.  Isomorphism and
automorphism questions are answered by colour refinement (iterated
neighbour-colour counting) with backtracking on individualized vertices;
at 27 vertices this is exhaustive and fast.
"""

from __future__ import annotations

import itertools
import json
from collections import Counter
from dataclasses import dataclass
from functools import cache

from .lattice import (
    LatticePoint,
    build_root_system,
    enumerate_lines,
    q_L,
    root_to_weight,
    is_root,
    LatticeError,
)


@dataclass(frozen=True)
class LineGraph:
    adjacency: tuple[int, ...]
    labels: tuple = ()

    def __post_init__(self):
        for v, mask in enumerate(self.adjacency):
            if mask >> v & 1:
                raise ValueError(f"self-loop at vertex {v}")
            for u in _bits(mask):
                if not self.adjacency[u] >> v & 1:
                    raise ValueError(f"asymmetric edge {v}-{u}")

    @classmethod
    def from_edges(cls, n: int, edges, labels=()):
        adj = [0] * n
        for u, v in edges:
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(tuple(adj), tuple(labels))

    @property
    def n_vertices(self) -> int:
        return len(self.adjacency)

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adjacency[u] >> v & 1)

    def neighbors(self, v: int) -> list[int]:
        return list(_bits(self.adjacency[v]))

    def degree(self, v: int) -> int:
        return self.adjacency[v].bit_count()

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n_vertices) for v in self.neighbors(u) if u < v]

    def complement(self) -> "LineGraph":
        full = (1 << self.n_vertices) - 1
        return LineGraph(
            tuple(full & ~m & ~(1 << v) for v, m in enumerate(self.adjacency)), self.labels
        )

    def permuted(self, perm) -> "LineGraph":
        """Graph whose vertex perm[v] plays the role of v."""
        return LineGraph.from_edges(
            self.n_vertices, [(perm[u], perm[v]) for u, v in self.edges()]
        )

    def is_automorphism(self, perm) -> bool:
        return is_isomorphism(self, self, perm)


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def is_isomorphism(g1: LineGraph, g2: LineGraph, mapping) -> bool:
    n = g1.n_vertices
    if g2.n_vertices != n or sorted(mapping) != list(range(n)):
        return False
    for v in range(n):
        image = 0
        for u in _bits(g1.adjacency[v]):
            image |= 1 << mapping[u]
        if image != g2.adjacency[mapping[v]]:
            return False
    return True


# --- graph constructions --------------------------------------------------------

@cache
def build_omega() -> LineGraph:
    """Vertices are the 27 lines; adjacent iff q_L(y, y') = 1."""
    lines = enumerate_lines()
    edges = [
        (a.index, b.index)
        for a, b in itertools.combinations(lines, 2)
        if q_L(a.point, b.point) == 1
    ]
    return LineGraph.from_edges(27, edges, tuple(str(l.index) for l in lines))


def schlafli_vertices() -> list[tuple]:
    """Vertex keys of the model, in export order: x_1..x_6, x'_1..x'_6, pairs."""
    xs = [("X", i) for i in range(1, 7)]
    xps = [("Xp", i) for i in range(1, 7)]
    pairs = [("S", (i, j)) for i, j in itertools.combinations(range(1, 7), 2)]
    return xs + xps + pairs


def schlafli_name(key) -> str:
    kind, payload = key
    if kind == "X":
        return f"x{payload}"
    if kind == "Xp":
        return f"x{payload}'"
    return f"{{{payload[0]},{payload[1]}}}"


def _model_adjacent(a, b) -> bool:
    (ka, pa), (kb, pb) = a, b
    if {ka, kb} == {"X", "Xp"}:
        return pa != pb
    if ka == "S" and kb == "S":
        return not set(pa) & set(pb)
    if ka == "S":
        (ka, pa), (kb, pb) = (kb, pb), (ka, pa)
    if kb == "S" and ka in ("X", "Xp"):
        return pa in pb
    return False


@cache
def build_omega_X() -> LineGraph:
    keys = schlafli_vertices()
    edges = [
        (i, j)
        for i, j in itertools.combinations(range(len(keys)), 2)
        if _model_adjacent(keys[i], keys[j])
    ]
    return LineGraph.from_edges(27, edges, tuple(schlafli_name(k) for k in keys))


def model_automorphism(sigma, swap: bool = False) -> tuple[int, ...]:
    """Vertex permutation of the model induced by sigma in S6 (and epsilon if swap).

    ``sigma`` maps 1..6 to 1..6, given as a dict or a length-6 sequence of images.
    """
    if not isinstance(sigma, dict):
        sigma = {i + 1: int(s) for i, s in enumerate(sigma)}
    keys = schlafli_vertices()
    pos = {k: i for i, k in enumerate(keys)}
    perm = []
    for kind, payload in keys:
        if kind == "S":
            new = ("S", tuple(sorted(sigma[p] for p in payload)))
        else:
            if swap:
                kind = "Xp" if kind == "X" else "X"
            new = (kind, sigma[payload])
        perm.append(pos[new])
    return tuple(perm)


def transposition(i: int, j: int) -> dict:
    sigma = {k: k for k in range(1, 7)}
    sigma[i], sigma[j] = j, i
    return sigma


# --- colour refinement and search -----------------------------------------------

def _refine(g1, c1, g2, c2):
    """Jointly refine two colourings to equitable ones; None if histograms differ."""
    while True:
        if Counter(c1) != Counter(c2):
            return None
        s1 = [_signature(g1, c1, v) for v in range(g1.n_vertices)]
        s2 = [_signature(g2, c2, v) for v in range(g2.n_vertices)]
        code = {s: i for i, s in enumerate(sorted(set(s1) | set(s2)))}
        n1 = [code[s] for s in s1]
        n2 = [code[s] for s in s2]
        if Counter(n1) != Counter(n2):
            return None
        if len(code) == len(set(c1) | set(c2)):
            return n1, n2
        c1, c2 = n1, n2


def _signature(g, colours, v):
    counts = Counter(colours[u] for u in _bits(g.adjacency[v]))
    return (colours[v], tuple(sorted(counts.items())))


def _individualize(colours, v):
    out = list(colours)
    out[v] = max(colours) + 1
    return out


def _search(g1, c1, g2, c2):
    refined = _refine(g1, c1, g2, c2)
    if refined is None:
        return None
    c1, c2 = refined
    cells = Counter(c1)
    if all(k == 1 for k in cells.values()):
        where = {c: w for w, c in enumerate(c2)}
        mapping = tuple(where[c] for c in c1)
        return mapping if is_isomorphism(g1, g2, mapping) else None
    target = min((size, col) for col, size in cells.items() if size > 1)[1]
    v = c1.index(target)
    for w in (w for w, c in enumerate(c2) if c == target):
        found = _search(g1, _individualize(c1, v), g2, _individualize(c2, w))
        if found is not None:
            return found
    return None


def find_isomorphism(g1: LineGraph, g2: LineGraph):
    """A vertex bijection g1 -> g2 preserving adjacency both ways, or None."""
    if g1.n_vertices != g2.n_vertices:
        return None
    n = g1.n_vertices
    if n == 0:
        return ()
    return _search(g1, [0] * n, g2, [0] * n)


def automorphism_count(g: LineGraph) -> int:
    """Order of Aut(g) as a product of orbit lengths along a stabilizer chain."""
    n = g.n_vertices
    colours = [0] * n
    order = 1
    while True:
        colours, _ = _refine(g, colours, g, colours)
        cells = Counter(colours)
        if all(k == 1 for k in cells.values()):
            return order
        target = min((size, col) for col, size in cells.items() if size > 1)[1]
        b = colours.index(target)
        fixed_b = _individualize(colours, b)
        orbit = sum(
            1
            for w, c in enumerate(colours)
            if c == target and _search(g, fixed_b, g, _individualize(colours, w)) is not None
        )
        order *= orbit
        colours = fixed_b


def clique_census(g: LineGraph) -> tuple[int, int, int, int]:
    n = g.n_vertices
    adj = g.adjacency
    edges = triangles = tetrahedra = 0
    for u in range(n):
        up_u = adj[u] >> (u + 1) << (u + 1)
        for v in _bits(up_u):
            edges += 1
            common = up_u & adj[v] >> (v + 1) << (v + 1)
            for w in _bits(common):
                triangles += 1
                tetrahedra += (common & adj[w] >> (w + 1) << (w + 1)).bit_count()
    return n, edges, triangles, tetrahedra


def edges_in_unique_triangle(g: LineGraph) -> bool:
    return all((g.adjacency[u] & g.adjacency[v]).bit_count() == 1 for u, v in g.edges())


def triangles(g: LineGraph) -> list[tuple[int, int, int]]:
    out = []
    for u, v in g.edges():
        for w in _bits(g.adjacency[u] & g.adjacency[v]):
            if w > v:
                out.append((u, v, w))
    return sorted(out)


# --- double-sixes -----------------------------------------------------------------

@dataclass(frozen=True)
class DoubleSix:
    root: tuple
    couples: tuple[tuple[int, int], ...]


def double_six(root) -> DoubleSix:
    """The six couples (x, x') of lines with x - x' = root in L."""
    root = tuple(root)
    if not is_root(root):
        raise LatticeError(f"{root} is not a root")
    diff = LatticePoint.from_root(root)
    lines = enumerate_lines()
    couples = tuple(
        (a.index, b.index)
        for a in lines
        for b in lines
        if a.point - b.point == diff
    )
    if len(couples) != 6:
        raise LatticeError(f"root {root} gave {len(couples)} couples")
    return DoubleSix(root, couples)


def double_six_key(ds: DoubleSix) -> frozenset:
    return frozenset(frozenset(c) for c in ds.couples)


def all_double_sixes() -> dict[frozenset, list[tuple]]:
    out: dict[frozenset, list[tuple]] = {}
    for r in build_root_system():
        out.setdefault(double_six_key(double_six(r)), []).append(r)
    return out


# --- the persisted Schläfli labelling -----------------------------------------------

@cache
def schlafli_isomorphism() -> tuple[int, ...]:
    """Fixed bijection line index -> model vertex index (deterministic search)."""
    iso = find_isomorphism(build_omega(), build_omega_X())
    if iso is None:
        raise RuntimeError("lattice graph is not isomorphic to the Schläfli model")
    return iso


@cache
def schlafli_labels() -> tuple[str, ...]:
    """Schläfli name of each line, indexed by line index."""
    names = build_omega_X().labels
    return tuple(names[v] for v in schlafli_isomorphism())


def model_perm_to_lines(model_perm) -> tuple[int, ...]:
    """Transport a model automorphism to a permutation of line indices."""
    iso = schlafli_isomorphism()
    inv = {v: i for i, v in enumerate(iso)}
    return tuple(inv[model_perm[iso[i]]] for i in range(27))


# --- exports ------------------------------------------------------------------------

def _export_order():
    """Lines ordered as x_1..x_6, x'_1..x'_6, then pairs (lexicographic)."""
    iso = schlafli_isomorphism()
    inv = {v: i for i, v in enumerate(iso)}
    return [inv[v] for v in range(27)]


def graph_dot() -> str:
    g = build_omega()
    order = _export_order()
    pos = {line: k for k, line in enumerate(order)}
    labels = schlafli_labels()
    out = ["graph Omega {"]
    for k, line in enumerate(order):
        out.append(f'  v{k} [label="{labels[line]}"];')
    for a, b in sorted(tuple(sorted((pos[u], pos[v]))) for u, v in g.edges()):
        out.append(f"  v{a} -- v{b};")
    out.append("}")
    return "\n".join(out) + "\n"


def graph_json() -> str:
    g = build_omega()
    order = _export_order()
    pos = {line: k for k, line in enumerate(order)}
    labels = schlafli_labels()
    data = {
        "schema": "e6v.graph/1",
        "vertices": [
            {"index": k, "label": labels[line], "line": line} for k, line in enumerate(order)
        ],
        "adjacency": [sorted(pos[u] for u in g.neighbors(line)) for line in order],
    }
    return json.dumps(data, indent=1, sort_keys=True) + "\n"
