"""Where the flat form max(1, gl A(U), gl A(U^c)) of the source/sink bound fails.

Flatness over a corner A(U) is tested as projectivity of every nonzero corner
part e_U A v (v outside U) over A(U), on both sides.  For the commutative
square and the diamond poset the algebra passes this test for a source/sink U
whose corners are hereditary, so the flat form gives 1, while resolving the
simples gives 2.  This is why analyze() only applies the flat form on request.

    python3 scripts/flat_sharpening.py
"""
from itertools import combinations

from pierce_gldim.algebra import corner_algebra
from pierce_gldim.engine import AnalyzeConfig, analyze
from pierce_gldim.generators import gallery
from pierce_gldim.graph import build_graph, quotient_graph, vertex_role
from pierce_gldim.modules import gldim_oracle, is_flat_over_corner


def scan(name):
    a = gallery(name)
    g = build_graph(a)
    true_dim = gldim_oracle(a).value
    print(f"{name}: oracle gl.dim {true_dim}")
    verts = list(a.vertices)
    for k in range(1, len(verts)):
        for u in combinations(verts, k):
            rest = [v for v in verts if v not in u]
            role = vertex_role(quotient_graph(g, u))
            if role == "neither":
                continue
            if not (is_flat_over_corner(a, u, "both") and is_flat_over_corner(a, rest, "both")):
                continue
            du = gldim_oracle(corner_algebra(a, u)).value
            dc = gldim_oracle(corner_algebra(a, rest)).value
            flat_form = max(1, du, dc)
            mark = "  <-- below the true value" if flat_form < true_dim else ""
            print(f"  U={{{','.join(u)}}} ({role}): corners {du}, {dc}; "
                  f"flat form {flat_form}, general form {1 + du + dc}{mark}")
    plain = analyze(a).overall
    sharp = analyze(a, AnalyzeConfig(sharpen_flat=True)).overall
    print(f"  analyze: {plain} by default, {sharp} with sharpen_flat\n")


def main():
    for name in ("ladder1", "incidence_diamond", "incidence_chain3", "anick_green"):
        scan(name)


if __name__ == "__main__":
    main()
