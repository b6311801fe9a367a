"""Acceptance criteria, one test each, with wall-clock budgets.

Every criterion runs its checks through ``e6v verify`` in a fresh interpreter,
so caches start cold and the measured time is honest.  Budgets are applied
to the summed check durations (interpreter start-up and imports excluded).
Each test prints a single PASS/FAIL line.
"""

import json
import subprocess
import sys
import time

import pytest

TRIALS = 50
SEED = 0

CRITERIA = [
    # (id, title, checks, budget in seconds or None)
    (1, "lattice and graph census", ["roots", "theorem1", "graph_census", "schlafli_model", "automorphisms"], 5),
    (2, "involutions, cubes, normalizer", ["weyl_order", "involutions", "involution_conjugacy", "cubes", "normalizer", "extremities"], 30),
    (3, "cube orbits on lines and triangles", ["lemma1"], None),
    (4, "isotypic decompositions of q6, q7, q27", ["thm2"], None),
    (5, "twisted identities and isotropy of q7", ["thm3", "cor51", "cor52", "cor53", "thm4", "eq56", "eq57", "eq61", "eq62",
                                               "eq63", "eq64", "eq65", "eq66", "eq67", "eq610", "eq611"], 60),
    (6, "character twist vs etale trace form", ["q27_consistency"], None),
    (7, "Stiefel-Whitney polynomial tables", ["sw_examples", "sw_graded", "sw_factorized"], 1),
    (8, "interpolation over symmetric multisets", ["sw_interpolation"], 10),
    (9, "congruences and the divisibility witness", ["a15"], None),
    (10, "trace form correction by (2)", ["kahn"], None),
    (11, "Hilbert symbol oracle and reciprocity", ["hilbert_oracle", "reciprocity"], None),
]


def verify(names, trials=TRIALS, seed=SEED):
    """Run ``e6v verify`` in a subprocess; names may be ["all"]."""
    argv = [sys.executable, "-m", "e6v.cli", "verify", "--json", "--trials", str(trials), "--rng-seed", str(seed)]
    argv += list(names)
    t0 = time.perf_counter()
    proc = subprocess.run(argv, capture_output=True, text=True)
    wall = time.perf_counter() - t0
    doc = json.loads(proc.stdout)
    return proc.returncode, doc, wall


def report(capsys, label, ok, detail):
    with capsys.disabled():
        print(f"\n[{label}] {'PASS' if ok else 'FAIL'}  {detail}")


@pytest.mark.parametrize("cid,title,names,budget", CRITERIA, ids=[f"criterion{c[0]}" for c in CRITERIA])
def test_criterion(capsys, cid, title, names, budget):
    code, doc, wall = verify(names)
    failed = [r["check"] for r in doc["results"] if r["status"] != "pass"]
    elapsed = sum(doc["timing"].values())
    in_budget = budget is None or elapsed < budget
    ok = code == 0 and not failed and in_budget
    limit = f" < {budget}s" if budget else ""
    detail = f"{title}: {elapsed:.2f}s{limit}"
    if failed:
        detail += f"; failing checks: {', '.join(failed)}"
    report(capsys, f"criterion {cid:2d}", ok, detail)
    assert code == 0 and not failed, doc
    assert in_budget, f"{title} took {elapsed:.2f}s, budget {budget}s"


def test_criterion_details(capsys):
    """Spot the exact numbers behind the criteria, not only the verdicts."""
    _, doc, _ = verify(["graph_census", "involutions", "cubes", "normalizer", "lemma1", "sw_examples", "hilbert_oracle"], trials=1)
    d = {r["check"]: r["details"] for r in doc["results"]}
    ok = (
        d["graph_census"]["census"] == [27, 135, 45, 0]
        and d["involutions"]["counts"] == [1, 36, 270, 540, 45]
        and d["cubes"]["maximal"] == 135
        and d["normalizer"] == {"order": 384, "image": 24, "kernel": 16, "centralizer": 16}
        and d["lemma1"]["lines"] == {"1": 3, "4": 6}
        and d["lemma1"]["triangles"] == {"1": 1, "2": 6, "8": 4}
        and d["sw_examples"]["m_values"] == {"lines": [6, 10, 12, 12], "triangles": [15, 20, 19, 16]}
        and d["hilbert_oracle"]["mismatches"] == []
    )
    report(capsys, "criteria data", ok, "census, cube, orbit, m-value and oracle numbers")
    assert ok, d


def test_full_verify_budget(capsys):
    code, doc, wall = verify(["all"])
    n = len(doc["results"])
    ok = code == 0 and n >= 30 and wall < 180
    report(capsys, "budget     ", ok, f"verify all --trials {TRIALS}: {n} checks, {wall:.1f}s wall < 180s")
    assert code == 0 and n >= 30
    assert wall < 180

