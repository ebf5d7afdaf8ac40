"""
Same graph, different matrix
============================

Permuting or negating rows and applying unimodular column operations does
not change the graph, so it cannot change the answer.  Neither does a zero
row.
"""

import random

from cayley_chroma import IntMatrix, chi
from cayley_chroma.intmat import random_signed_permutation, random_unimodular

rng = random.Random(1)
M = IntMatrix([[1, 0], [1, 1], [1, 2], [0, 1]])
print("original    ", M.tolist(), "->", chi(M))

for _ in range(3):
    N = random_signed_permutation(4, rng) @ M @ random_unimodular(2, rng)
    print("conjugate   ", N.tolist(), "->", chi(N))

###############################################################################
# The certificate for the 4x2 case names the normalizing moves.

cert = chi(M).certificate
print("witness (a, b, c) =", (cert.a, cert.b, cert.c))

padded = IntMatrix(M.tolist() + [[0, 0]])
print("with zero row", padded.tolist(), "->", chi(padded))
