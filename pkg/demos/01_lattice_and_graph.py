"""The 27 lines as weights of E6, and the graph they span."""
import numpy as np

from e6v import lattice, schlafli

A = lattice.cartan_matrix()
print("Cartan matrix, det =", round(np.linalg.det(A)))
print(A)

roots = lattice.build_root_system()
print(len(roots), "roots,", len(lattice.positive_roots()), "positive")

# lines are the orbit of the first fundamental weight, lifted to L
weights = lattice.line_weights()
print(len(weights), "lines; first few weights:")
for w in weights[:5]:
    print("  ", tuple(int(x) for x in w))

G = lattice.gram_matrix_L()
print("Gram of L, det =", round(np.linalg.det(np.array(G, dtype=float))), "signature", lattice.gram_signature(G))

g = schlafli.build_omega()
print("clique census (vertices, edges, triangles, K4):", tuple(schlafli.clique_census(g)))
print("every edge in a unique triangle:", schlafli.edges_in_unique_triangle(g))

gx = schlafli.build_omega_X()
iso = schlafli.find_isomorphism(g, gx)
print("isomorphic to the x_i, x_i', {i,j} model:", iso is not None and schlafli.is_isomorphism(g, gx, iso))
print("automorphisms:", schlafli.automorphism_count(g))
print("double sixes:", len(schlafli.all_double_sixes()))
