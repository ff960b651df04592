"""
Rewriting long words into short ones
=====================================

Words in generators that are algebraic of degree at most ``d`` over a
maximal subfield ``K`` can be rewritten as K-combinations of words of
bounded length.  Long words contain either a d-th power or a "dominant"
factor ``u_1 ... u_d``; each kind is removed by an exact identity.
"""

from divring import quaternion, QQ, build_subfield
from divring.rewrite import rewrite_word, verify_span_dim
from divring.words import bell_decompose, estimate_bound_n, undecomposable_words, word

# decompositions of a few words for d = 2
for text in ("x1 x2 x1 x2", "x2 x1 x1", "x1 x2 x1", "x2 x1"):
    print(f"{text:>12}:", bell_decompose(word(text), 2))

# the empirical length bound on two letters: every longer word decomposes
n = estimate_bound_n(2, 2, 12)
print("n(2, 2) =", n, "; undecomposable words of that length:",
      [str(w) for w in undecomposable_words(2, 2, n)])

# rewrite in the quaternions with generators i, j over K = Q(i)
H = quaternion(QQ, -1, -1)
K = build_subfield(H, H.i, var="i")
gens = [H.i, H.j]
for text in ("x1 x2 x1 x2", "x1 x2 x2 x1", "x2 x1 x2 x2 x1 x2 x1"):
    w = word(text)
    out = rewrite_word(K, gens, w, 2, check=True)
    ok = out.evaluate(gens, K.embed) == w.evaluate(gens)
    print(f"{text} = {out}   (exact: {ok})")

# the span of all short words is 2-dimensional over K, as it must be
print("span dimensions:", [verify_span_dim(K, gens, m) for m in range(5)])
