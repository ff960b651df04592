"""Rewriting words in generators into ``K``-combinations of short words.

Both reductions rely on the generators (and their conjugates) being left
algebraic of degree at most ``d`` over the maximal subfield ``K``:

* a factor ``u^d`` (``w = v1 u^d v2``) is removed using the left minimal
  polynomial of ``p q p^-1`` (``p = v1(gens)``, ``q = u(gens)``), padded to
  degree ``d``;
* a dominant split ``w = v1 u1 ... ud v2`` is expanded by polarization into
  powers of subset sums (each power-reduced) and permuted products, all
  strictly smaller in degree-lex order.
"""

from __future__ import annotations

import itertools

from .algebra import alg_inverse
from .errors import DegreeTooLarge, IdentityViolation, NotInvertible, StepBudgetExceeded, Undecomposable
from .identities import left_minpoly
from .linalg import DependenceTracker
from .words import FormalSum, Power, Shirshov, Word, all_words, bell_decompose, estimate_bound_n, polarization_terms

_BOUND_CACHE = {}


def default_length_cap(m, d, max_len=12):
    """The empirical ``n(m, d)`` from exhaustive enumeration (cached)."""
    key = (m, d, max_len)
    if key not in _BOUND_CACHE:
        _BOUND_CACHE[key] = estimate_bound_n(m, d, max_len)
    return _BOUND_CACHE[key]


def _padded_relation(ctx, p, q, d):
    """Coefficients ``beta_0 .. beta_d`` (``beta_d = 1``) over ``K`` with
    ``sum beta_i p q^i p^-1 = 0``.

    The left minimal polynomial of ``p q p^-1`` has degree ``k <= d``; it is
    multiplied on the right by ``p q^{d-k} p^-1``, which shifts its
    coefficients up by ``d - k`` and leaves the low ones zero.
    """
    p_inv = None if p.is_zero() else alg_inverse(p)
    if p_inv is None:
        raise NotInvertible(f"{p} is not invertible")
    f = left_minpoly(ctx, p * q * p_inv)
    k = f.degree
    if k > d:
        raise DegreeTooLarge(f"left degree {k} of the conjugate exceeds d = {d}")
    K = ctx.K
    return [K.zero] * (d - k) + list(f.c)


def reduce_power_case(ctx, gens, w, decomp, d=None):
    """``p q^d r = -sum_{i<d} beta_i p q^i r``, returned as a :class:`FormalSum`."""
    d = decomp.d if d is None else d
    if not isinstance(decomp, Power):
        raise TypeError("expected a Power decomposition")
    p = decomp.v1.evaluate(gens)
    q = decomp.u.evaluate(gens)
    beta = _padded_relation(ctx, p, q, d)
    K = ctx.K
    out = FormalSum(K)
    for i in range(d):
        if not K.is_zero(beta[i]):
            out._add(decomp.v1 * decomp.u ** i * decomp.v2, K.neg(beta[i]))
    return out


def _expand_power(seq_words, i, m):
    """Words of ``(sum seq_words)^i``: all length-``i`` sequences, concatenated."""
    for choice in itertools.product(seq_words, repeat=i):
        acc = Word((), m)
        for u in choice:
            acc = acc * u
        yield acc


def reduce_shirshov_case(ctx, gens, w, decomp, d):
    """Polarization expansion of a dominant split, with each subset-sum power reduced."""
    if not isinstance(decomp, Shirshov):
        raise TypeError("expected a Shirshov decomposition")
    K = ctx.K
    if d == 1:
        return FormalSum.of(K, w)
    v1, us, v2 = decomp.v1, decomp.us, decomp.v2
    m = w.m
    p = v1.evaluate(gens)
    subsets, perms = polarization_terms(d)
    out = FormalSum(K)
    minus_one = K.neg(K.one)
    for T, sign in subsets:
        members = [us[t - 1] for t in T]
        q = members[0].evaluate(gens)
        for u in members[1:]:
            q = q + u.evaluate(gens)
        if q.is_zero():
            continue  # the whole term vanishes
        beta = _padded_relation(ctx, p, q, d)
        s = K.one if sign > 0 else minus_one
        for i in range(d):
            if K.is_zero(beta[i]):
                continue
            coef = K.mul(s, K.neg(beta[i]))
            for mid in _expand_power(members, i, m):
                out._add(v1 * mid * v2, coef)
    for perm in perms:
        acc = v1
        for t in perm:
            acc = acc * us[t - 1]
        out._add(acc * v2, minus_one)
    return out


def rewrite_word(ctx, gens, w, d, length_cap=None, step_cap=10_000, check=False):
    """Reduce ``w`` to a combination of words of length at most ``length_cap``.

    Always attacks the degree-lex greatest over-length word; every step
    replaces it by strictly smaller words, so the loop terminates.  With
    ``check=True`` the evaluation is compared after every step.
    """
    if length_cap is None:
        length_cap = default_length_cap(w.m, d)
    K = ctx.K
    total = FormalSum.of(K, w)
    target = w.evaluate(gens) if check else None
    steps = 0
    while True:
        over = [u for u in total.terms if len(u) > length_cap]
        if not over:
            return total
        steps += 1
        if steps > step_cap:
            raise StepBudgetExceeded(f"more than {step_cap} steps")
        u = max(over, key=Word.key)
        decomp = bell_decompose(u, d)
        if decomp is None:
            raise Undecomposable(f"{u} has no decomposition for d = {d}")
        if isinstance(decomp, Power):
            repl = reduce_power_case(ctx, gens, u, decomp, d)
        else:
            repl = reduce_shirshov_case(ctx, gens, u, decomp, d)
        if any(v.key() >= u.key() for v in repl.terms):
            raise IdentityViolation(f"reduction of {u} did not decrease")
        c = total.terms.pop(u)
        total = total + repl.scale(c)
        if check and total.evaluate(gens, ctx.embed) != target:
            raise IdentityViolation(f"evaluation changed while reducing {u}")


def verify_span_dim(ctx, gens, max_len):
    """Left ``K``-dimension of the span of ``{w(gens) : len(w) <= max_len}``."""
    tracker = DependenceTracker(ctx.K)
    m = len(gens)
    for length in range(max_len + 1):
        for w in all_words(m, length):
            coords = ctx.coordinates(w.evaluate(gens), "left")
            tracker.add([c for c in coords])
    return tracker.rank
