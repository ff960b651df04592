"""Algebraicity machinery: minimal polynomials, the alternating polynomial g_d,
bounded-degree tests, one-sided inverses and cyclic vectors.

``g_d(x, y_1, ..., y_d)`` is the alternating sum over permutations ``s`` of
``{0..d}`` of ``sign(s) x^{s(0)} y_1 x^{s(1)} ... y_d x^{s(d)}``.  An element
``x`` has degree at most ``d`` over the centre exactly when ``g_d(x, ...)``
vanishes for every choice of the ``y``'s, and by multilinearity it suffices
to check basis tuples.
"""

from __future__ import annotations

import itertools
import random as _random
from dataclasses import dataclass, field
from math import gcd

import numpy as np

from .algebra import AlgebraElem, element_minpoly_coeffs
from .errors import (
    AlgebraMismatch,
    CenterNotField,
    IdentityViolation,
    NotMaximalGenerator,
    SearchExhausted,
    ZeroConstantTerm,
    ZeroElement,
)
from .exactfield import PrimeField, RationalField, UPoly
from .linalg import DependenceTracker, Matrix, rank

_INT64_SAFE = 1 << 62


def _require_central_field(alg):
    if alg.is_commutative:
        return
    if len(alg.center_basis) != 1:
        raise CenterNotField(f"center of {alg!r} has dimension {len(alg.center_basis)}")


def minpoly_element(x):
    """Monic minimal polynomial of ``x`` over the base field."""
    _require_central_field(x.alg)
    return UPoly(x.alg.ctx, element_minpoly_coeffs(x))


def degree_F(x):
    return len(element_minpoly_coeffs(x)) - 1


def left_minpoly(ctx, x):
    """Left minimal polynomial over ``K``: least ``d`` with
    ``x^d + k_{d-1} x^{d-1} + ... + k_0 = 0``, coefficients multiplying on the left."""
    K = ctx.K
    tracker = DependenceTracker(K)
    power = x.alg.one()
    while True:
        coords = ctx.coordinates(power, "left")
        rel = tracker.add(list(coords))
        if rel is not None:
            return UPoly(K, rel)
        power = power * x


def ldeg_K(ctx, x):
    return left_minpoly(ctx, x).degree


# -- g_d --------------------------------------------------------------------


def lex_permutations_with_sign(n):
    """Permutations of ``range(n)`` in lexicographic order, each with its sign.

    The sign is updated incrementally: a next-permutation step is one swap
    followed by reversing a suffix of length ``L`` (``L // 2`` swaps).
    """
    a = list(range(n))
    sign = 1
    while True:
        yield tuple(a), sign
        i = n - 2
        while i >= 0 and a[i] > a[i + 1]:
            i -= 1
        if i < 0:
            return
        j = n - 1
        while a[j] < a[i]:
            j -= 1
        a[i], a[j] = a[j], a[i]
        suffix = n - 1 - i
        a[i + 1:] = reversed(a[i + 1:])
        if (1 + suffix // 2) % 2:
            sign = -sign


def eval_gd(x, ys):
    """Exact value of ``g_d(x, y_1, ..., y_d)`` with ``d = len(ys)``."""
    d = len(ys)
    if d < 1:
        raise ValueError("g_d needs d >= 1")
    for y in ys:
        if y.alg != x.alg:
            raise AlgebraMismatch("all arguments must live in one algebra")
    alg = x.alg
    ctx = alg.ctx
    powers = [alg.unit]
    for _ in range(d):
        powers.append(alg._mul(powers[-1], x.coords))
    total = [ctx.zero] * alg.dim
    for perm, sign in lex_permutations_with_sign(d + 1):
        term = powers[perm[0]]
        for t in range(d):
            term = alg._mul(alg._mul(term, ys[t].coords), powers[perm[t + 1]])
        op = ctx.add if sign > 0 else ctx.sub
        total = [op(a, b) for a, b in zip(total, term)]
    return AlgebraElem(alg, tuple(total))


# -- array kernels ------------------------------------------------------------


class _Backend:
    """How coordinate arrays are stored: int64 modulo p, int64, or Python objects."""

    def __init__(self, kind, modulus=None):
        self.kind = kind
        self.modulus = modulus

    def reduce(self, arr):
        if self.kind == "mod":
            return arr % self.modulus
        return arr

    def is_zero_rows(self, arr):
        if self.kind == "object":
            return np.array([all(not v for v in row) for row in arr], dtype=bool)
        return ~arr.any(axis=1)


def _int_array(values):
    arr = np.empty(len(values), dtype=object)
    arr[:] = [int(v) for v in values]
    return arr


def _obj_array(shape, fill):
    arr = np.empty(shape, dtype=object)
    arr[...] = fill
    return arr


def _right_mul(C, y):
    """``R[i, k]`` = coefficient of ``e_k`` in ``e_i y``; ``C`` dense constants."""
    dim = C.shape[0]
    R = _obj_array((dim, dim), 0)
    for j, yj in enumerate(y):
        if yj:
            R = R + C[:, j, :] * yj
    return R


def _gd_basis_sweep(x, d):
    """Evaluate ``g_d(x, e_{b_1}, ..., e_{b_d})`` for all basis tuples at once.

    Dynamic programming over the set ``S`` of exponents already placed: the
    partial sums ``V_S`` (one row per prefix tuple) extend by
    ``V_S e_b x^e`` with sign ``(-1)^{#{s in S : s > e}}``, which reproduces
    the permutation sign.  Returns the first failing tuple, or ``None``.
    """
    alg = x.alg
    ctx = alg.ctx
    dim = alg.dim
    C_raw = alg.constants_array
    if isinstance(ctx, PrimeField):
        backend = _Backend("mod", ctx.modulus)
        C = np.vectorize(int, otypes=[object])(C_raw)
        xs = [int(v) for v in x.coords]
        unit = [int(v) for v in alg.unit]
    elif isinstance(ctx, RationalField) and all(v.denominator == 1 for v in C_raw.flat) \
            and all(v.denominator == 1 for v in alg.unit):
        # g_d(l x, ...) = l^{d(d+1)/2} g_d(x, ...): clear denominators of x
        lam = 1
        for v in x.coords:
            lam = lam * int(v.denominator) // gcd(lam, int(v.denominator))
        backend = _Backend("int")
        C = np.vectorize(int, otypes=[object])(C_raw)
        xs = [int(v * lam) for v in x.coords]
        unit = [int(v) for v in alg.unit]
    else:
        return _gd_basis_sweep_generic(x, d)

    powers = [np.array(unit, dtype=object)]
    R_x = _right_mul(C, xs)
    for _ in range(d):
        powers.append(backend.reduce(powers[-1].dot(R_x)))
    # A[e] maps a row vector v to the (b, k) block of v e_b x^e
    A = []
    for e in range(d + 1):
        R_e = _right_mul(C, powers[e])
        blocks = [backend.reduce(C[:, b, :].dot(R_e)) for b in range(dim)]
        A.append(np.concatenate(blocks, axis=1))  # (dim, dim_b * dim)

    if backend.kind == "mod":
        ok = dim * (backend.modulus - 1) ** 2 < _INT64_SAFE
    else:
        colsum = [max(int(np.abs(A[e]).sum(axis=0).max()), 1) for e in range(d + 1)]
        bound = {1 << e: max(max(abs(int(v)) for v in powers[e]), 1) for e in range(d + 1)}
        for mask in sorted(range(1, 1 << (d + 1)), key=lambda m: bin(m).count("1")):
            if mask in bound:
                continue
            bound[mask] = sum(bound[mask ^ (1 << e)] * colsum[e]
                              for e in range(d + 1) if mask & (1 << e))
        ok = max(bound.values()) < _INT64_SAFE and max(colsum) < _INT64_SAFE
    dtype = np.int64 if ok else object
    A = [a.astype(dtype) for a in A]
    states = {1 << e: powers[e].astype(dtype).reshape(1, dim) for e in range(d + 1)}
    full = (1 << (d + 1)) - 1
    for size in range(1, d + 1):
        nxt = {}
        for mask, V in states.items():
            for e in range(d + 1):
                if mask & (1 << e):
                    continue
                contrib = (V @ A[e]).reshape(-1, dim)
                if bin(mask >> (e + 1)).count("1") % 2:
                    contrib = -contrib
                m2 = mask | (1 << e)
                nxt[m2] = contrib if m2 not in nxt else nxt[m2] + contrib
        states = {m: backend.reduce(v) for m, v in nxt.items()}
    final = states[full]
    zero_rows = backend.is_zero_rows(final)
    if zero_rows.all():
        return None
    idx = int(np.argmin(zero_rows))
    digits = []
    for _ in range(d):
        idx, r = divmod(idx, dim)
        digits.append(r)
    return tuple(reversed(digits))


def _gd_basis_sweep_generic(x, d):
    basis = x.alg.basis()
    for tup in itertools.product(range(x.alg.dim), repeat=d):
        if not eval_gd(x, [basis[b] for b in tup]).is_zero():
            return tup
    return None


def is_alg_bounded(x, d, witness=False):
    """Whether ``x`` is algebraic of degree at most ``d`` over the centre, decided
    by ``g_d(x, b_1, ..., b_d) = 0`` on every tuple of basis elements.

    With ``witness=True`` returns ``(flag, tuple_or_None)``.
    """
    _require_central_field(x.alg)
    if d < 1:
        raise ValueError("d must be >= 1")
    bad = _gd_basis_sweep(x, d)
    return (bad is None, bad) if witness else bad is None


def batch_backend(ctx):
    if isinstance(ctx, PrimeField):
        return _Backend("mod", ctx.modulus)
    return _Backend("object")


def batch_mul(alg, U, W, backend=None):
    """Row-wise products of two ``(N, dim)`` coordinate arrays."""
    backend = backend or batch_backend(alg.ctx)
    dim = alg.dim
    C = alg.constants_array
    if backend.kind != "object":
        C = C.astype(np.int64)
    T = (U @ C.reshape(dim, dim * dim)).reshape(-1, dim, dim)
    T = backend.reduce(T)
    return backend.reduce((T * W[:, :, None]).sum(axis=1))


def eval_gd_batch(alg, X, Ys):
    """``g_d`` on ``N`` argument tuples at once.

    ``X`` has shape ``(N, dim)`` and ``Ys`` shape ``(d, N, dim)`` (raw
    coordinates; int64 residues for prime fields, objects otherwise).  Uses
    the same subset recursion as the basis sweep, one row per tuple.
    """
    backend = batch_backend(alg.ctx)
    d = len(Ys)
    N = X.shape[0]
    unit = np.array([alg.unit] * N, dtype=np.int64 if backend.kind == "mod" else object)
    powers = [unit]
    for _ in range(d):
        powers.append(batch_mul(alg, powers[-1], X, backend))
    states = {1 << e: powers[e] for e in range(d + 1)}
    for t in range(d):
        nxt = {}
        for mask, V in states.items():
            Vy = batch_mul(alg, V, Ys[t], backend)
            for e in range(d + 1):
                if mask & (1 << e):
                    continue
                contrib = batch_mul(alg, Vy, powers[e], backend)
                if bin(mask >> (e + 1)).count("1") % 2:
                    contrib = -contrib
                m2 = mask | (1 << e)
                nxt[m2] = contrib if m2 not in nxt else nxt[m2] + contrib
        states = {m: backend.reduce(v) for m, v in nxt.items()}
    return states[(1 << (d + 1)) - 1]


# -- one-sided structure over K ---------------------------------------------


def left_inverse_from_minpoly(ctx, a):
    """Inverse of ``a`` read off its left minimal polynomial over ``K``.

    From ``a^n + k_{n-1} a^{n-1} + ... + k_0 = 0`` with ``k_0 != 0``:
    ``(-k_0^{-1}) (a^{n-1} + k_{n-1} a^{n-2} + ... + k_1) a = 1``.
    The result is checked to be a two-sided inverse.
    """
    if a.is_zero():
        raise ZeroElement("zero has no inverse")
    K = ctx.K
    f = left_minpoly(ctx, a)
    k = f.c
    if K.is_zero(k[0]):
        raise ZeroConstantTerm(f"left minimal polynomial {f.format('t')} has zero constant term")
    acc = a.alg.zero()
    for coef in reversed(k[1:]):  # Horner: ((a + k_{n-1}) a + k_{n-2}) ...; coefficients stay on the left
        acc = acc * a + ctx.embed(coef)
    u = ctx.embed(K.neg(K.inv(k[0]))) * acc
    one = a.alg.one()
    if u * a != one or a * u != one:
        raise IdentityViolation("inverse formula did not produce a two-sided inverse")
    return u


def _small_combinations(alg, max_coeff=2):
    dim = alg.dim
    basis = alg.basis()
    yield from basis
    for s in (1, -1):
        for a, b in itertools.combinations(range(dim), 2):
            yield basis[a] + basis[b].scale(alg.ctx.from_int(s))
    for c in range(1, max_coeff + 1):
        rng = range(-c, c + 1)
        for coeffs in itertools.product(rng, repeat=dim):
            if max(abs(v) for v in coeffs) == c:
                yield alg.element(coeffs)


def cyclic_certificate(ctx, alpha, u):
    """The ``n x n`` matrix over ``K`` of left coordinates of ``u, u alpha, ...``."""
    n = ctx.k_degree
    rows = []
    v = u
    for _ in range(n):
        rows.append(list(ctx.coordinates(v, "left")))
        v = v * alpha
    return Matrix.raw(ctx.K, rows)


def cyclic_vector(ctx, alpha, max_candidates=20_000):
    """Some ``u != 0`` with ``{u, u alpha, ..., u alpha^{n-1}}`` left independent over ``K``.

    Deterministic scan: basis elements, then ``e_a +- e_b``, then integer
    combinations of growing height.  Each candidate is checked by a rank
    computation; the scan is bounded and never silently widened.
    """
    n = ctx.k_degree
    if degree_F(alpha) != n:
        raise NotMaximalGenerator(f"{alpha} has degree {degree_F(alpha)} != {n}")
    tried = 0
    for u in _small_combinations(ctx.alg):
        if u.is_zero():
            continue
        tried += 1
        if rank(cyclic_certificate(ctx, alpha, u)) == n:
            return u
        if tried >= max_candidates:
            break
    raise SearchExhausted("no cyclic vector in the bounded scan", tried=tried)


@dataclass
class DegreeProfile:
    sample_size: int
    max_deg_F: int
    max_ldeg_K: int
    argmax_deg_F: AlgebraElem | None = None
    argmax_ldeg_K: AlgebraElem | None = None
    cyclic_witness: AlgebraElem | None = None
    sampled: bool = True  # maxima are over a finite sample, not a supremum over D*
    notes: list = field(default_factory=list)


def degree_profile(alg, ctx, sampler, size, alpha=None):
    """Sampled maxima of ``deg_F`` and ``ldeg_K``.

    ``sampler`` is a callable ``i -> element`` or an iterable.  When a
    maximal generator ``alpha`` is given, the conjugate ``u alpha u^{-1}``
    built from :func:`cyclic_vector` is added to the sample and both maxima
    are asserted to equal ``n``.
    """
    if callable(sampler):
        sample = [sampler(i) for i in range(size)]
    else:
        sample = list(itertools.islice(sampler, size))
    witness = None
    if alpha is not None:
        u = cyclic_vector(ctx, alpha)
        witness = u * alpha * u.inverse()
        sample.append(witness)
    prof = DegreeProfile(len(sample), 0, 0, cyclic_witness=witness)
    for x in sample:
        df = degree_F(x)
        dk = ldeg_K(ctx, x)
        if df > prof.max_deg_F:
            prof.max_deg_F, prof.argmax_deg_F = df, x
        if dk > prof.max_ldeg_K:
            prof.max_ldeg_K, prof.argmax_ldeg_K = dk, x
    n = ctx.k_degree
    if not 1 <= prof.max_ldeg_K <= prof.max_deg_F <= n:
        raise IdentityViolation(f"degree chain violated: {prof}")
    if witness is not None and not (prof.max_deg_F == prof.max_ldeg_K == n):
        raise IdentityViolation(f"cyclic witness did not reach degree {n}")
    return prof


def sampler_from_seed(alg, height, seed):
    """A callable sampler drawing from one seeded stream."""
    from .algebra import random_element

    rng = _random.Random(seed)
    return lambda i: random_element(alg, height, rng)
