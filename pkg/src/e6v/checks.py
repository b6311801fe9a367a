"""Named verification checks.

Each check takes a :class:`Context` and returns ``(passed, details)`` with
JSON-friendly details.  Names are stable and used by ``e6v verify``.
"""

from __future__ import annotations

import itertools
import random
import time
from collections import Counter
from dataclasses import dataclass, field
from functools import cache

import numpy as np

from . import lattice, qforms, schlafli, sw, twisting, weyl


@dataclass(frozen=True)
class Context:
    trials: int = 25
    seed: int = 0


@dataclass
class CheckResult:
    check: str
    passed: bool
    details: dict
    duration: float = field(default=0.0, compare=False)

    @property
    def status(self) -> str:
        return "pass" if self.passed else "fail"

    def record(self) -> dict:
        return {"check": self.check, "status": self.status, "details": self.details}


REGISTRY: dict = {}


def check(name):
    def deco(fn):
        if name in REGISTRY:
            raise ValueError(f"duplicate check {name}")
        REGISTRY[name] = fn
        return fn
    return deco


def check_names() -> list[str]:
    return list(REGISTRY)


def run_check(name: str, ctx: Context | None = None) -> CheckResult:
    if name not in REGISTRY:
        raise KeyError(name)
    ctx = ctx or Context()
    t0 = time.perf_counter()
    passed, details = REGISTRY[name](ctx)
    return CheckResult(name, bool(passed), _plain(details), time.perf_counter() - t0)


def run_checks(names, ctx: Context | None = None) -> list[CheckResult]:
    return [run_check(n, ctx) for n in names]


def _plain(x):
    """Make details JSON-friendly and deterministic."""
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    if isinstance(x, (set, frozenset)):
        return sorted(_plain(v) for v in x)
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, (np.bool_,)):
        return bool(x)
    return x


# --- lattice ------------------------------------------------------------------------------

@check("roots")
def _roots(ctx):
    roots = set(lattice.build_root_system())
    closed = all(tuple(-v for v in r) in roots for r in roots)
    closed &= all(lattice.reflect_root(r, s) in roots for r in roots for s in lattice.simple_roots())
    has = all(s in roots for s in lattice.simple_roots()) and lattice.lowest_root() in roots
    ok = len(roots) == 72 and closed and has
    return ok, {"roots": len(roots), "closed": closed, "simple_and_lowest": has}


@check("class_map")
def _class_map(ctx):
    c = lattice.class_coefficients()
    on_roots = all(lattice.class_mod_Q(lattice.root_to_weight(r)) == 0 for r in lattice.simple_roots())
    # kernel: weights with e = 0 in a box are exactly those in Q
    box = itertools.product(range(-1, 2), repeat=lattice.RANK)
    kernel_ok = True
    for p in box:
        in_q = not np.any((lattice.inverse_cartan_times3() @ np.array(p)) % 3)
        kernel_ok &= in_q == (lattice.class_mod_Q(p) == 0)
    ok = c[0] == 1 and on_roots and kernel_ok
    return ok, {"e_omega": c, "kills_roots": on_roots, "kernel_is_Q": kernel_ok}


@check("lattice_unimodular")
def _unimodular(ctx):
    g = lattice.gram_matrix_L()
    det = round(np.linalg.det(g.astype(float)))
    sig = lattice.gram_signature(g)
    return det in (1, -1) and sig == (1, 6), {"det": det, "signature": sig}


@check("theorem1")
def _theorem1(ctx):
    roots = set(lattice.build_root_system())
    rule = lattice.roots_by_lattice_rule()
    lines = lattice.enumerate_lines()
    H = lattice.H
    on_lines = all(lattice.q_L(H, l.point) == 1 and lattice.q_L(l.point, l.point) == -1 for l in lines)
    pairs = Counter(lattice.q_L(a.point, b.point) for a, b in itertools.combinations(lines, 2))
    ok = rule == roots and len(lines) == 27 and on_lines and set(pairs) <= {0, 1}
    return ok, {
        "roots_match_rule": rule == roots,
        "lines": len(lines),
        "line_conditions": on_lines,
        "pair_values": dict(sorted(pairs.items())),
    }


# --- graph --------------------------------------------------------------------------------

@check("graph_census")
def _graph_census(ctx):
    g = schlafli.build_omega()
    census = schlafli.clique_census(g)
    unique = schlafli.edges_in_unique_triangle(g)
    return tuple(census) == (27, 135, 45, 0) and unique, {"census": census, "unique_triangle": unique}


@check("schlafli_model")
def _schlafli_model(ctx):
    g, gx = schlafli.build_omega(), schlafli.build_omega_X()
    iso = schlafli.find_isomorphism(g, gx)
    not_complement = schlafli.find_isomorphism(g, g.complement()) is None
    ok = iso is not None and schlafli.is_isomorphism(g, gx, iso) and not_complement
    return ok, {"isomorphic": iso is not None, "complement_rejected": not_complement}


@check("model_symmetries")
def _model_symmetries(ctx):
    g = schlafli.build_omega()
    rng = random.Random(ctx.seed)
    ok = True
    for _ in range(20):
        sigma = list(range(1, 7))
        rng.shuffle(sigma)
        perm = schlafli.model_perm_to_lines(schlafli.model_automorphism(tuple(sigma), rng.random() < 0.5))
        ok &= g.is_automorphism(perm)
    return ok, {"samples": 20, "automorphisms": ok}


@check("automorphisms")
def _automorphisms(ctx):
    n = schlafli.automorphism_count(schlafli.build_omega())
    return n == 51840, {"order": n}


@check("double_sixes")
def _double_sixes(ctx):
    ds = schlafli.all_double_sixes()
    return len(ds) == 36, {"distinct": len(ds)}


# --- group --------------------------------------------------------------------------------

@check("weyl_order")
def _weyl_order(ctx):
    G = weyl.weyl_group()
    rng = random.Random(ctx.seed)
    sample = [G.element(rng.randrange(len(G))) for _ in range(50)]
    consistent = all(g.consistent() and g.preserves_form() for g in sample)
    return len(G) == 51840 and consistent, {"order": len(G), "perm_matrix_consistent": consistent}


@check("involutions")
def _involutions(ctx):
    c = weyl.involution_census()
    ok = c.counts == (1, 36, 270, 540, 45)
    return ok, {"counts": c.counts}


@check("involution_conjugacy")
def _involution_conjugacy(ctx):
    c = weyl.involution_census()
    ok = all(c.conjugate_by_degree.values()) and c.degree2_are_commuting_products
    return ok, {"conjugate_by_degree": c.conjugate_by_degree, "degree2_commuting": c.degree2_are_commuting_products}


@check("cubes")
def _cubes(ctx):
    cubes = weyl.enumerate_maximal_cubes()
    profiles = Counter(c.degree_profile() for c in cubes)
    ok = len(cubes) == 135 and set(profiles) == {(1, 4, 6, 4, 1)} and all(c.rank == 4 for c in cubes)
    return ok, {"maximal": len(cubes), "profiles": {str(k): v for k, v in profiles.items()}}


@check("normalizer")
def _normalizer(ctx):
    cube = weyl.canonical_cube()
    N = weyl.normalizer_image(cube)
    cube_idx = sorted(weyl.weyl_group().index_of(g) for g in cube.elements().values())
    ok = (
        N.order == 384
        and len(N.image) == 24
        and sorted(N.kernel) == cube_idx
        and sorted(N.centralizer) == cube_idx
    )
    return ok, {"order": N.order, "image": len(N.image), "kernel": len(N.kernel), "centralizer": len(N.centralizer)}


@check("extremities")
def _extremities(ctx):
    a = weyl.cubes_with_same_extremity_conjugate()
    b = weyl.every_involution_is_extremity()
    return a and b, {"same_extremity_conjugate": a, "every_involution_extremity": b}


def lemma1_data():
    lines = twisting.cube_orbits(weyl.lines_gset())
    tri = twisting.cube_orbits(weyl.triangle_gset())
    pairs = {
        frozenset({frozenset(), frozenset({i}), frozenset({j}), frozenset({i, j})})
        for i, j in itertools.combinations(range(1, 5), 2)
    }
    stabs = {frozenset(o.stabilizer) for o in lines if o.size == 4}
    return {
        "lines": dict(sorted(Counter(o.size for o in lines).items())),
        "triangles": dict(sorted(Counter(o.size for o in tri).items())),
        "line_stabilizers_are_subcubes": stabs == pairs,
    }


@check("lemma1")
def _lemma1(ctx):
    d = lemma1_data()
    ok = d["lines"] == {1: 3, 4: 6} and d["triangles"] == {1: 1, 2: 6, 8: 4} and d["line_stabilizers_are_subcubes"]
    return ok, d


# --- quadratic forms ----------------------------------------------------------------------

HILBERT_VALUES = (1, -1, 2, -2, 3, -3, 5, -5, 7, -7)
HILBERT_PLACES = (qforms.INF, 2, 3, 5, 7)


@check("hilbert_oracle")
def _hilbert_oracle(ctx):
    bad = [
        (a, b, str(p))
        for a in HILBERT_VALUES for b in HILBERT_VALUES for p in HILBERT_PLACES
        if qforms.hilbert_symbol(a, b, p) != qforms.hilbert_oracle(a, b, p)
    ]
    return not bad, {"pairs": len(HILBERT_VALUES) ** 2, "places": len(HILBERT_PLACES), "mismatches": bad}


@check("reciprocity")
def _reciprocity(ctx):
    bad = []
    for a in HILBERT_VALUES:
        for b in HILBERT_VALUES:
            places = (qforms.INF,) + tuple(sorted(qforms.primes_of(2 * a * b)))
            if np.prod([qforms.hilbert_symbol(a, b, p) for p in places]) != 1:
                bad.append((a, b))
    return not bad, {"failures": bad}


@check("twist_oracle")
def _twist_oracle(ctx):
    els = weyl.canonical_cube_elements()
    gens = [els[frozenset({i})] for i in range(1, 5)]
    q6_gram = [[qforms.Fraction(int(x), 2) for x in row] for row in lattice.cartan_matrix()]
    bad = []
    for t in twisting.random_twists(ctx.seed, min(ctx.trials, 10)):
        q4 = twisting.twist_cform(twisting.q4_cform(), t)
        ok = qforms.is_isometric(q4, qforms.diag(*t.classes))
        ok &= qforms.is_isometric(
            twisting.fixed_space_twist(q6_gram, [g.mat for g in gens], t),
            twisting.twist_cform(twisting.q6_cform(), t),
        )
        if not ok:
            bad.append(t.classes)
    return not bad, {"failures": bad}


@check("thm2")
def _thm2(ctx):
    iso = {
        "q6": qforms.cform_isometric(twisting.q6_cform(), twisting.expected_q6_cform()),
        "q7": qforms.cform_isometric(twisting.q7_cform(), twisting.expected_q7_cform()),
        "q27": qforms.cform_isometric(twisting.q27_cform(), twisting.expected_q27_cform()),
    }
    reps = [r for r in suite(ctx.seed, ctx.trials) if r.name.startswith("THM2")]
    twisted = all(r.verdict for r in reps)
    return all(iso.values()) and twisted, {"isotypic": iso, "twisted_trials": len(reps), "twisted_pass": twisted}


@check("eq42")
def _eq42(ctx):
    rep = twisting.verify_identity("EQ_42", twisting.TwistSpec.trivial())
    inv = qforms.witt_invariants(twisting.untwisted_q7())
    ok = rep.verdict and inv.disc == 1 and inv.signature == (1, 6)
    return ok, {"verdict": rep.verdict, "q7_disc": inv.disc, "q7_signature": inv.signature}


@check("trace_form_shape")
def _trace_form_shape(ctx):
    expected = {
        "lines": [qforms.ones(9), qforms.ones(3), qforms.ones(1), qforms.ZERO, qforms.ZERO],
        "triangles": [qforms.ones(11), qforms.diag(1, 1, 2), qforms.diag(1, 1, 2), qforms.diag(2), qforms.ZERO],
    }
    details = {}
    ok = True
    for name, gs in (("lines", weyl.lines_gset()), ("triangles", weyl.triangle_gset())):
        coeffs = [twisting.normalize_coefficient(c) for c in twisting.trace_form_coefficients(gs)]
        match = all(qforms.is_isometric(a, b) for a, b in zip(coeffs, expected[name]))
        for t in twisting.random_twists(ctx.seed, min(ctx.trials, 5)):
            q4 = twisting.twist_cform(twisting.q4_cform(), t)
            match &= qforms.is_isometric(
                twisting.expand_coefficients(coeffs, q4), twisting.twisted_trace_form(gs, t)
            )
        details[name] = {"coefficients": [str(c) for c in coeffs], "ok": match}
        ok &= match
    return ok, details


@cache
def suite(seed: int, trials: int):
    return tuple(twisting.randomized_suite(seed, trials))


def _identity_check(*names):
    def run(ctx):
        reps = [r for r in suite(ctx.seed, ctx.trials) if r.name in names]
        bad = [{"identity": r.name, "classes": r.spec.classes} for r in reps if not r.verdict]
        return not bad and bool(reps), {"identities": names, "reports": len(reps), "failures": bad}
    return run


for _name, _ids in {
    "thm3": ("THM3",),
    "cor51": ("COR_51",),
    "cor52": ("COR_52",),
    "cor53": ("COR_53",),
    "thm4": ("THM4_55",),
    "eq56": ("EQ_56",),
    "eq57": ("EQ_57",),
    "eq61": ("EQ_61",),
    "eq62": ("EQ_62",),
    "eq63": ("EQ_63",),
    "eq64": ("EQ_64",),
    "eq65": ("EQ_65",),
    "eq66": ("EQ_66",),
    "eq67": ("EQ_67",),
    "eq610": ("EQ_610",),
    "eq611": ("EQ_611",),
    "q27_consistency": ("Q27_CONSISTENCY",),
    "q45_consistency": ("Q45_CONSISTENCY",),
}.items():
    check(_name)(_identity_check(*_ids))


# --- Stiefel-Whitney ----------------------------------------------------------------------

SW_TABLES = {
    (1, 2, 3, 4): ([0], [0], [0], [0]),
    (6, 10, 12, 12): ([1, 3, 5], [0, 6, 8], [3, 7, 9], [0, 4, 8]),
    (15, 20, 19, 16): (
        list(range(15)), [2, 14, 18], list(range(2, 13)) + list(range(14, 18)), [12],
    ),
}


@check("sw_examples")
def _sw_examples(ctx):
    out = {}
    ok = True
    for m, exps in SW_TABLES.items():
        got = [p.exponents() for p in sw.solve_p(m)]
        out[str(m)] = got
        ok &= got == [list(e) for e in exps]
    mv = {name: sw.m_values(f()).m for name, f in sw.GSETS.items()}
    ok &= mv == {"lines": (6, 10, 12, 12), "triangles": (15, 20, 19, 16)}
    return ok, {"p_exponents": out, "m_values": mv}


@check("sw_graded")
def _sw_graded(ctx):
    B = sw.InvElement.basis
    p27 = sw.graded_expansion((6, 10, 12, 12))
    p45 = sw.graded_expansion((15, 20, 19, 16))
    p6 = sw.graded_expansion((1, 2, 3, 4))
    ok = p27[2] == B(1, sw.E) + B(2)
    ok &= all(n % 2 == 0 and n <= 12 for n in p27)
    ok &= p45[20] == B(2, sw.e_power(18)) + B(3, sw.e_power(17)) and max(p45) == 20
    ok &= max(p6) <= 4
    return ok, {
        "rho27": {n: str(p) for n, p in p27.items()},
        "rho45_top": str(p45[max(p45)]),
        "rho6_top_degree": max(p6),
    }


@check("sw_factorized")
def _sw_factorized(ctx):
    ok = sw.theorem9_expand((6, 10, 12, 12)) == sw.rho27_factorized()
    return ok, {"rho27": str(sw.rho27_factorized())}


@check("sw_e_zero")
def _sw_e_zero(ctx):
    rng = random.Random(ctx.seed)
    ms = [(1, 2, 3, 4), (6, 10, 12, 12), (15, 20, 19, 16), (0, 0, 0, 0)]
    ms += [sw.m_values_characters(sw.random_symmetric_multiset(rng)).m for _ in range(20)]
    bad = [
        m for m in ms
        if not (sw.corollary_specialize(m) == sw.corollary_product(m) == sw.corollary_binomial(m))
    ]
    return not bad, {"tested": len(ms), "failures": bad}


@check("sw_interpolation")
def _sw_interpolation(ctx):
    bad = sw.interpolation_check(ctx.seed, 200)
    return not bad, {"samples": 200, "failures": len(bad)}


@check("a15")
def _a15(ctx):
    rng = random.Random(ctx.seed)
    ms = [sw.m_values(f()) for f in sw.GSETS.values()]
    ms += [sw.m_values_characters(sw.random_symmetric_multiset(rng)) for _ in range(50)]
    ok = all(m.congruences_hold() for m in ms)
    for m in ms:
        sw.solve_p(m)
    try:
        sw.solve_p((1, 1, 0, 0))
        witness = False
    except sw.DivisibilityError:
        witness = True
    return ok and witness, {"tested": len(ms), "witness_rejected": witness}


@check("kahn")
def _kahn(ctx):
    w27 = sw.theorem9_expand((6, 10, 12, 12))
    w45 = sw.theorem9_expand((15, 20, 19, 16))
    k27 = sw.kahn_trace_class(weyl.lines_gset())
    k45 = sw.kahn_trace_class(weyl.triangle_gset())
    a27 = k27 == w27
    a28 = k45 == w45 + sw.InvElement.basis(1, sw.T)
    return a27 and a28, {"lines_unchanged": a27, "triangles_2w1": a28, "triangles": str(k45)}


@check("inv_ring")
def _inv_ring(ctx):
    rng = random.Random(ctx.seed)

    def rand():
        return sw.InvElement(tuple(
            sw.CoeffRing(sw.F2Poly(rng.getrandbits(4)), rng.getrandbits(1)) for _ in range(5)
        ))

    ok = True
    for _ in range(100):
        a, b, c = rand(), rand(), rand()
        ok &= sw.inv_multiply(a, b) == sw.inv_multiply(b, a)
        ok &= sw.inv_multiply(sw.inv_multiply(a, b), c) == sw.inv_multiply(a, sw.inv_multiply(b, c))
    B = sw.InvElement.basis
    table = B(1) * B(2) == B(3) and B(4) * B(4) == B(4, sw.e_power(4)) and B(2) * B(3) == B(3, sw.e_power(2))
    return ok and table, {"assoc_commut": ok, "table": table}


@check("substitution_rule")
def _substitution(ctx):
    ok = all(sw.substitution_rule_holds(sw.F2Poly(b), n) for b in range(128) for n in range(1, 5))
    return ok, {"polys": 128, "powers": 4}


@check("restriction_basis")
def _restriction_basis(ctx):
    chars = sw.characters_of_cform(twisting.q6_cform())
    w = sw.hcprime_total_class(chars)
    expected = sw.HCPrimeElement.one()
    for k in range(1, 5):
        expected = expected + sw.elementary_symmetric(k)
    supports = [frozenset(I for I, _ in sw.elementary_symmetric(k).terms) for k in range(5)]
    independent = all(not (a & b) for a, b in itertools.combinations(supports, 2))
    return w == expected and independent, {"q6_class": str(w), "independent": independent}


@check("m_routes")
def _m_routes(ctx):
    out = {}
    for name, cf in (("lines", twisting.q27_cform()), ("triangles", twisting.q45_cform())):
        a = sw.m_values(sw.GSETS[name]())
        b = sw.m_values_characters(sw.characters_of_cform(cf))
        out[name] = {"gset": a.m, "characters": b.m}
    return all(v["gset"] == v["characters"] for v in out.values()), out
