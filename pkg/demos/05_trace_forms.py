"""Trace forms of the twisted etale algebras of lines and triangles."""
from e6v import qforms, sw, twisting, weyl

t = twisting.TwistSpec((2, 3, 5, 7))
for name, gs in (("lines", weyl.lines_gset()), ("triangles", weyl.triangle_gset())):
    print(name, "cube orbits:")
    for o in twisting.cube_orbits(gs):
        print(f"  size {o.size:2d}, characters {sorted(sorted(c) for c in o.characters)}")
    print("  coefficients by character weight:", twisting.trace_form_coefficients(gs))
    f = twisting.twisted_trace_form(gs, t)
    print("  trace form invariants:", qforms.witt_invariants(f))

# the trace form class differs from w(rho) only by the Kahn term in odd degree
for name, gs in (("lines", weyl.lines_gset()), ("triangles", weyl.triangle_gset())):
    w = sw.theorem9_expand(sw.m_values(gs))
    print(name, "trace class = w + correction:", sw.kahn_trace_class(gs), "| changed:", sw.kahn_trace_class(gs) != w)
