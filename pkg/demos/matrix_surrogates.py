"""
Matrix rings as test beds
=========================

Matrix rings M_n(F) satisfy the same degree bound as division algebras of
dimension n^2, which makes them convenient surrogates: ``g_n`` vanishes on
them, and block-diagonal companion matrices admit commutators of full
degree.
"""

import numpy as np

from divring import GF, QQ, UPoly, matrix_algebra, multiquadratic
from divring.identities import eval_gd_batch
from divring.linalg import companion, direct_sum
from divring.maxsubfield import build_l33_basis, search_l34

# g_n on 10^4 random tuples over small prime fields, evaluated in one batch
for p, n in ((3, 2), (5, 2), (2, 3)):
    M = matrix_algebra(GF(p), n)
    rng = np.random.default_rng(p)
    X = rng.integers(0, p, size=(10_000, n * n))
    Ys = rng.integers(0, p, size=(n, 10_000, n * n))
    print(f"g_{n} on M_{n}(F_{p}): nonzero rows =", int(eval_gd_batch(M, X, Ys).any(axis=1).sum()))

# multiplication by sqrt(2) on Q(sqrt 2, sqrt 3) is two companion blocks
L = multiquadratic(QQ, [2, 3])
_, A = build_l33_basis(L, L.b1, L.b2)
print("multiplication by sqrt(2):")
print(A)

# C = C_{t^2+1} + C_{t^2-2}: find A, B with C A C^-1 A^-1 and B C - C B of degree 4
C = direct_sum([companion(UPoly(QQ, [1, 0, 1])), companion(UPoly(QQ, [-2, 0, 1]))])
r = search_l34(C, budget=500, seed=0)
print("multiplicative witness minpoly:", r.mult_minpoly.format("t"))
print("additive witness minpoly:      ", r.add_minpoly.format("t"))
