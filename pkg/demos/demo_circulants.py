"""
Chromatic numbers of 4-regular circulants
=========================================

Every graph Cay(Z_n, {+-a, +-b}) falls into one of five cases.  Here we
tabulate the formula against an exact coloring search for small n.
"""

from cayley_chroma.cayley import circulant_graph
from cayley_chroma.chromatic import CirculantParams, chi_circulant, circulant_case
from cayley_chroma.oracle import exact_chromatic

###############################################################################
# The two famous exceptions: K_5 and the 13-vertex circulant needing 4 colors.

for n, a, b in [(5, 1, 2), (13, 5, 1)]:
    case, k = circulant_case(CirculantParams(n, a, b))
    print(f"C_{n}({a},{b}): case {case}, chi = {k}, search says {exact_chromatic(circulant_graph(n, a, b))}")

###############################################################################
# A small table.  Rows are n, columns the pair (a, b); "-" marks a
# disconnected or looped parameter choice.

for n in range(5, 11):
    cells = []
    for a, b in [(1, 2), (1, 3), (2, 3)]:
        p = CirculantParams(n, a, b)
        cells.append("-" if p.violation() else str(chi_circulant(p).k))
    print(f"n={n:2d}  " + "  ".join(cells))
