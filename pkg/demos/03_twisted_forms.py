"""Twisting restricted quadratic forms by a cube torsor."""
from e6v import qforms, twisting

t = twisting.TwistSpec((-1, 2, 3, 5))
print("twist classes a_1..a_4 =", t.classes)

fam = twisting.build_twisted_family(t)
for name in ("q4", "q5", "q6", "q7", "q27", "q45"):
    f = getattr(fam, name)
    inv = qforms.witt_invariants(f)
    print(f"{name:4s} rank {inv.rank:2d}  disc {inv.disc:5d}  signature {inv.signature}")

print("q7 isotropic:", qforms.is_isotropic(fam.q7))

# every closed form, checked on this twist
for name in twisting.IDENTITY_NAMES:
    r = twisting.verify_identity(name, t, fam)
    print(f"  {name:16s} {'ok' if r.verdict else 'FAIL'}")

# and on random twists
reports = twisting.randomized_suite(seed=1, trials=10)
print(sum(r.verdict for r in reports), "/", len(reports), "random comparisons hold")
