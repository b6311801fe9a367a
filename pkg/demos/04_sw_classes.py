"""Total Stiefel-Whitney classes of permutation representations, from m-values."""
from e6v import sw, weyl

for name, gs in (("lines", weyl.lines_gset()), ("triangles", weyl.triangle_gset())):
    m = sw.m_values(gs)
    print(name, "m =", m.m, "congruences hold:", m.congruences_hold())
    for i, p in enumerate(sw.solve_p(m), 1):
        print(f"  p_{i} = {p.format('x')}")
    w = sw.theorem9_expand(m)
    print("  w =", w)
    for n, piece in sorted(sw.graded_expansion(m).items()):
        print(f"  degree {n:2d}: {piece}")

print("factorized rho27 agrees:", sw.theorem9_expand((6, 10, 12, 12)) == sw.rho27_factorized())

# divisibility is weaker than the congruences
m = sw.MVector((0, 0, 0, 4))
print("m = (0,0,0,4): congruences", m.congruences_hold(), "| p =", [p.format("x") for p in sw.solve_p(m)])
