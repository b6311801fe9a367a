"""W(E6) acting on the lines: involutions, cubes, and the normalizer of a cube."""
from e6v import weyl

G = weyl.weyl_group()
print("|W(E6)| =", len(G))

c = weyl.involution_census()
for d in range(5):
    print(f"degree {d}: {c.counts[d]:4d} involutions, fixing {sorted(c.fixed_vertices_by_degree[d])} lines")

cubes = weyl.enumerate_maximal_cubes()
print(len(cubes), "maximal cubes, degree profiles", {cb.degree_profile() for cb in cubes})

cube = weyl.canonical_cube()
N = weyl.normalizer_image(cube)
print("normalizer order", N.order, "| image in GL4(F2)", len(N.image), "| kernel", len(N.kernel))

# orbits of the canonical cube on lines and on tritangent triangles
gens = [weyl.canonical_cube_elements()[frozenset({i})] for i in range(1, 5)]
for name, gs in (("lines", weyl.lines_gset()), ("triangles", weyl.triangle_gset())):
    orbits = weyl.orbit_decomposition(gs, gens)
    print(name, dict(sorted(weyl.orbit_profile(orbits).items())))
