"""
Degrees, identities and commutators in the rational quaternions
================================================================

Hamilton's quaternions (-1, -1 / Q) form a division algebra of dimension 4
over its centre Q.  Every non-central element has a quadratic minimal
polynomial, so the alternating polynomial ``g_2`` vanishes on it, and
commutators of degree 2 generate maximal subfields.
"""

from divring import quaternion, QQ, build_subfield, regular_rep
from divring.identities import is_alg_bounded, left_minpoly, minpoly_element
from divring.maxsubfield import search_add_commutator, search_mult_commutator, verify_case1_identity

H = quaternion(QQ, -1, -1)
i, j, k = H.i, H.j, H.k

# minimal polynomials over the centre: t^2 - 2 Re(x) t + N(x)
x = H.one() + i + j + k
print("minpoly of", x, "=", minpoly_element(x).format("t"))

# g_d vanishes for x exactly when its degree is at most d
for d in (1, 2):
    print(f"g_{d} vanishes on {x}:", is_alg_bounded(x, d))

# K = Q(i) is a maximal subfield; H is a 2-dimensional K-space and
# every element acts by a 2x2 matrix over K
K = build_subfield(H, i, var="i")
print("regular representation of j:")
print(regular_rep(K, j))
print("left minpoly of j over K:", left_minpoly(K, j).format("t"))

# commutators of full degree: a b a^-1 b^-1 and a c - c a
m = search_mult_commutator(i)
a = search_add_commutator(i)
print("multiplicative:", m.partner, "->", m.commutator, "minpoly", m.minpoly.format("t"))
print("additive:      ", a.partner, "->", a.commutator, "minpoly", a.minpoly.format("t"))

# an exact identity relating the two conjugation patterns
print("case-1 identity value for (i, j):", verify_case1_identity(i, j))
