"""
Checking a claim from both sides
================================

The graph of M = [[1,0],[0,1],[3,4]] is the distance graph Cay(Z, {+-1,+-3,+-4}).
The classification says it needs 4 colors.  A finite ball around the
identity proves at least 4; a coloring of the mod-8 quotient proves at most 4.
"""

from cayley_chroma import IntMatrix, SandwichConfig, chi, lower_bound, sandwich_verify, upper_bound

M = IntMatrix([[1, 0], [0, 1], [3, 4]])
result = chi(M)
print(result, "via", type(result.certificate).__name__, "family", result.certificate.family)

###############################################################################
# Lower bound from the radius-5 ball (41 vertices).

lo = lower_bound(M, radii=(5,))
print(f"ball of radius {lo.radius}: {lo.ball_vertices} vertices, needs {lo.value} colors")

###############################################################################
# Upper bound: X maps onto the 8-vertex quotient, and a 4-coloring pulls back.

hi = upper_bound(M, moduli=(8,))
print(f"mod {hi.modulus} quotient: {hi.vertices} vertices, colored with {hi.value}: {hi.coloring.colors}")

###############################################################################
# Both at once.

print(sandwich_verify(M, result, SandwichConfig(radii=(5,), moduli=(8,))))
