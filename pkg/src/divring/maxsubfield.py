"""Maximal subfields generated by commutators, and the supporting block-matrix constructions.

In a central division algebra of dimension ``n^2`` an element generates a
maximal subfield exactly when its degree over the centre is ``n``.  The
searches here look for multiplicative commutators ``a b a^-1 b^-1`` and
additive commutators ``a c - c a`` of full degree, returning certificates
that are re-verified from scratch.  For ``n > 2`` the same searches run on
matrix rings ``M_n(F)``, which serve as surrogates (reported as such).
"""

from __future__ import annotations

import itertools
import json
import random as _random
from dataclasses import dataclass, field

import gmpy2

from .algebra import alg_inverse, element_minpoly_coeffs, is_certified_division, random_element
from .errors import (
    BadBlockStructure,
    CentralElement,
    DimensionNotSquare,
    IdentityViolation,
    NotAField,
    NotGenerating,
    NotInvertible,
    NotSeparable,
    SearchExhausted,
    UnsupportedDegree,
)
from .exactfield import UPoly, is_irreducible, is_separable
from .linalg import Matrix, companion, direct_sum, inverse, is_nonderogatory, minpoly_matrix, minpoly_over_base


def _sqrt_dim(alg):
    n = int(gmpy2.isqrt(alg.dim))
    if n * n != alg.dim:
        raise DimensionNotSquare(f"dimension {alg.dim} is not a square")
    return n


def _minpoly(x):
    return UPoly(x.alg.ctx, element_minpoly_coeffs(x))


def is_max_subfield_gen(alpha):
    """Whether ``F(alpha)`` is a maximal subfield: degree ``sqrt(dim)``, and the
    minimal polynomial irreducible whenever that can be decided."""
    n = _sqrt_dim(alpha.alg)
    f = _minpoly(alpha)
    if f.degree != n:
        return False
    try:
        return is_irreducible(f)
    except UnsupportedDegree:
        return True


@dataclass
class CommutatorWitness:
    partner: object  # b (multiplicative) or c (additive)
    commutator: object
    minpoly: UPoly
    kind: str
    tried: int
    phase: str  # "scan" or "random"


def _candidates(alg, budget, seed, height=3):
    """Basis elements, then pairwise sums, then seeded random elements."""
    basis = alg.basis()
    count = 0
    for b in basis:
        if count >= budget:
            return
        count += 1
        yield b, "scan"
    for x, y in itertools.combinations(basis, 2):
        if count >= budget:
            return
        count += 1
        yield x + y, "scan"
    rng = _random.Random(seed)
    while count < budget:
        count += 1
        yield random_element(alg, height, rng), "random"


def _search_commutator(a, budget, seed, kind):
    alg = a.alg
    if a.is_central():
        raise CentralElement(f"{a} is central")
    n = _sqrt_dim(alg)
    a_inv = alg_inverse(a) if kind == "mult" else None
    if kind == "mult" and a_inv is None:
        raise NotInvertible(f"{a} is not invertible")
    tried = 0
    for cand, phase in _candidates(alg, budget, seed):
        tried += 1
        if kind == "mult":
            b_inv = alg_inverse(cand)
            if b_inv is None:
                continue
            comm = a * cand * a_inv * b_inv
        else:
            comm = a * cand - cand * a
            if comm.is_zero():
                continue
        f = _minpoly(comm)
        if f.degree == n:
            # certificate: recompute independently and check the relation
            g = _minpoly(alg.element(comm.coords))
            if g != f or not f(comm).is_zero():
                raise IdentityViolation("commutator certificate failed re-verification")
            return CommutatorWitness(cand, comm, f, kind, tried, phase)
    raise SearchExhausted(f"no {kind} commutator of degree {n} within budget", tried=tried, budget=budget)


def search_mult_commutator(a, budget=200, seed=0):
    """First ``b`` with ``a b a^-1 b^-1`` of degree ``n`` (deterministic scan, then seeded random)."""
    return _search_commutator(a, budget, seed, "mult")


def search_add_commutator(a, budget=200, seed=0):
    """First ``c`` with ``a c - c a`` of degree ``n``."""
    return _search_commutator(a, budget, seed, "add")


def verify_case1_identity(a, alpha):
    """Check ``(alpha+1)((alpha+1)^-1 a (alpha+1) a^-1 - alpha^-1 a alpha a^-1) = 1 - alpha^-1 a alpha a^-1``
    and return the common value."""
    one = a.alg.one()
    inv = {}
    for name, x in (("a", a), ("alpha", alpha), ("alpha+1", alpha + one)):
        xi = None if x.is_zero() else alg_inverse(x)
        if xi is None:
            raise NotInvertible(f"{name} = {x} is not invertible")
        inv[name] = xi
    beta = alpha + one
    conj = inv["alpha"] * a * alpha * inv["a"]
    lhs = beta * (inv["alpha+1"] * a * beta * inv["a"] - conj)
    rhs = one - conj
    if lhs != rhs:
        raise IdentityViolation(f"{lhs} != {rhs}")
    return rhs


# -- block bases in a commutative extension ---------------------------------


def _certify_field(L, alpha, beta, tries=20):
    """Find a primitive element ``alpha + c beta`` with irreducible minimal
    polynomial of degree ``dim L``; that makes ``L`` a field."""
    ctx = L.ctx
    for c in range(tries):
        gamma = alpha + beta.scale(ctx.from_int(c))
        f = _minpoly(gamma)
        if f.degree != L.dim:
            continue
        try:
            if is_irreducible(f):
                return gamma, f
        except UnsupportedDegree:
            break
        raise NotAField(f"{gamma} has reducible minimal polynomial {f}")
    raise NotAField("could not certify that the algebra is a field")


def build_l33_basis(L, alpha, beta):
    """Ordered basis ``alpha^i beta^j`` (``i`` fastest) and the matrix of
    multiplication by ``alpha`` in it, entry ``(r, s)`` the coefficient of
    basis ``r`` in ``alpha * basis_s``.  The matrix is checked to be
    ``k`` copies of the companion matrix of the minimal polynomial of ``alpha``.
    """
    if not L.is_commutative:
        raise NotAField("algebra is not commutative")
    if L.dim > 1:
        _certify_field(L, alpha, beta)
    p = _minpoly(alpha)
    if not is_separable(p):
        raise NotSeparable(f"{p} is not separable")
    d = p.degree
    if L.dim % d:
        raise NotGenerating(f"degree {d} does not divide {L.dim}")
    k = L.dim // d
    basis = []
    bj = L.one()
    for _ in range(k):
        ai = bj
        for _ in range(d):
            basis.append(ai)
            ai = alpha * ai
        bj = bj * beta
    ctx = L.ctx
    frame = Matrix.raw(ctx, [list(col) for col in zip(*(b.coords for b in basis))])
    frame_inv = inverse(frame)
    if frame_inv is None:
        raise NotGenerating("alpha^i beta^j do not span the algebra")
    images = Matrix.raw(ctx, [list(col) for col in zip(*((alpha * b).coords for b in basis))])
    mat = frame_inv @ images
    expected = direct_sum([companion(p)] * k)
    if mat != expected:
        raise IdentityViolation("multiplication matrix is not a repeated companion block")
    return basis, mat


# -- matrix-ring search -------------------------------------------------------


def companion_blocks(C):
    """Split ``C`` into diagonal companion blocks; returns the block polynomials."""
    ctx = C.ctx
    n = C.shape[0]
    polys = []
    start = 0
    while start < n:
        end = start + 1
        while end < n and C.data[end][end - 1] == ctx.one:
            end += 1
        size = end - start
        coeffs = [ctx.neg(C.data[start + r][end - 1]) for r in range(size)] + [ctx.one]
        f = UPoly(ctx, coeffs)
        block = Matrix.raw(ctx, [list(row[start:end]) for row in C.data[start:end]])
        if block != companion(f):
            raise BadBlockStructure(f"block at {start} is not a companion matrix")
        polys.append(f)
        start = end
    if direct_sum([companion(f) for f in polys]) != C:
        raise BadBlockStructure("nonzero entries outside the diagonal blocks")
    return polys


@dataclass
class L34Result:
    A: Matrix
    B: Matrix
    mult_witness: Matrix
    add_witness: Matrix
    mult_minpoly: UPoly
    add_minpoly: UPoly
    tries_A: int
    tries_B: int
    B_field: str  # "F" or "K"


def _full_degree(M, n):
    if M.ctx is not None and hasattr(M.ctx, "base"):
        return minpoly_over_base(M).degree == n
    return minpoly_matrix(M).degree == n


def search_l34(C, budget=500, seed=0, K=None, height=2):
    """Seeded search for invertible ``A`` over ``F`` with ``C A C^-1 A^-1`` of degree
    ``n`` and ``B`` with ``B C - C B`` of degree ``n``.  ``B`` is tried over
    ``F`` first and, if that fails and ``K`` is given, over ``K``.
    """
    polys = companion_blocks(C)
    n = C.shape[0]
    if n <= 2 or any(f.degree < 2 for f in polys):
        raise BadBlockStructure(f"block sizes {[f.degree for f in polys]} violate n > 2 and sizes > 1")
    C_inv = inverse(C)
    if C_inv is None:
        raise NotInvertible("C is singular")
    ctx = C.ctx
    rng = _random.Random(seed)
    A = W = None
    tries_A = 0
    for tries_A in range(1, budget + 1):
        cand = Matrix.random(ctx, n, rng, height)
        cand_inv = inverse(cand)
        if cand_inv is None:
            continue
        W = C @ cand @ C_inv @ cand_inv
        if minpoly_matrix(W).degree == n:
            A = cand
            break
    if A is None:
        raise SearchExhausted("no A found", tried=tries_A, budget=budget)
    # structural check: W = C * (A C^-1 A^-1), an element times a conjugate of its inverse
    if W != C @ (A @ C_inv @ inverse(A)) or not is_nonderogatory(W):
        raise IdentityViolation("multiplicative witness failed its structural check")

    B = V = None
    tries_B = 0
    B_field = "F"
    phases = [("F", ctx, C)]
    if K is not None:
        CK = Matrix.raw(K, [[K.embed(v) for v in row] for row in C.data])
        phases.append(("K", K, CK))
    for label, fctx, CC in phases:
        for t in range(1, budget + 1):
            tries_B += 1
            cand = Matrix.random(fctx, n, rng, height)
            V = cand @ CC - CC @ cand
            deg = minpoly_over_base(V).degree if label == "K" else minpoly_matrix(V).degree
            if deg == n:
                B, B_field = cand, label
                break
        if B is not None:
            break
    if B is None:
        raise SearchExhausted("no B found", tried=tries_B, budget=budget)
    mult_f = minpoly_matrix(W)
    add_f = minpoly_over_base(V) if B_field == "K" else minpoly_matrix(V)
    if B_field == "F" and not is_nonderogatory(V):
        raise IdentityViolation("additive witness is derogatory")
    return L34Result(A, B, W, V, mult_f, add_f, tries_A, tries_B, B_field)


# -- dimension-bound report ---------------------------------------------------

MODES = ("normal_subgroup", "mult_comm", "add_comm")


@dataclass
class BoundReport:
    mode: str
    d: int
    n: int
    witness: object
    certificate: object
    dim_over_center: int
    bound_holds: bool
    sampled_d: int
    surrogate: bool
    failures: list = field(default_factory=list)

    def as_dict(self):
        return {
            "mode": self.mode,
            "d": self.d,
            "n": self.n,
            "witness": None if self.witness is None else str(self.witness),
            "certificate": None if self.certificate is None else str(self.certificate),
            "dim_over_center": self.dim_over_center,
            "bound_holds": self.bound_holds,
            "sampled_d": self.sampled_d,
            "surrogate": self.surrogate,
            "failures": list(self.failures),
        }

    def to_json(self):
        return json.dumps(self.as_dict())

    def to_text(self):
        return "\n".join(f"{k}: {v}" for k, v in self.as_dict().items())


def verify_bound_d2(alg, ctx, mode, sample):
    """Sampled degree ``d`` of the mode's element family, a full-degree witness,
    and the check ``[D:F] <= d^2``.  Failures become report entries."""
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}")
    sample = list(sample)
    failures = []
    if alg.is_commutative:
        # the algebra is its own centre
        return BoundReport(mode, 1, 1, None, None, 1, True, 1, False, failures)
    n = _sqrt_dim(alg)
    if mode == "normal_subgroup":
        family = [x for x in sample if not x.is_zero()]
    elif mode == "mult_comm":
        family = []
        for x, y in zip(sample, sample[1:]):
            xi, yi = alg_inverse(x), alg_inverse(y)
            if xi is not None and yi is not None:
                family.append(x * y * xi * yi)
    else:
        family = [x * y - y * x for x, y in zip(sample, sample[1:])]
    sampled_d = max((_minpoly(x).degree for x in family), default=0)
    a = next(b for b in alg.basis() if not b.is_central())
    witness = certificate = None
    try:
        if mode == "normal_subgroup":
            witness, certificate = a, _minpoly(a)
            if certificate.degree != n:
                witness = next((x for x in family if _minpoly(x).degree == n), None)
                certificate = None if witness is None else _minpoly(witness)
        elif mode == "mult_comm":
            w = search_mult_commutator(a)
            witness, certificate = w.commutator, w.minpoly
        else:
            w = search_add_commutator(a)
            witness, certificate = w.commutator, w.minpoly
    except SearchExhausted as exc:
        failures.append(f"witness search exhausted: {exc}")
    d = max(sampled_d, certificate.degree if certificate is not None else 0)
    holds = alg.dim <= d * d
    if not holds:
        failures.append(f"[D:F] = {alg.dim} exceeds d^2 = {d * d}")
    surrogate = is_certified_division(alg) is not True
    return BoundReport(mode, d, n, witness, certificate, alg.dim, holds, sampled_d, surrogate, failures)
