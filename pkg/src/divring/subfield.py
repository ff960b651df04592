"""A maximal subfield ``K = F(u)`` of an algebra and one-sided ``K``-structure.

``K`` values are carried as elements of an :class:`ExtensionField` whose
modulus is the minimal polynomial of ``u``; the embedding ``K -> D`` sends
``sum c_j u^j`` to ``sum c_j u^j`` computed in ``D``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import gmpy2

from .algebra import AlgebraElem, element_minpoly_coeffs
from .errors import CentralGenerator, NotIrreducible, UnsupportedDegree, WrongDegree
from .exactfield import ExtensionField, UPoly, is_irreducible
from .linalg import Matrix, inverse, rank


@dataclass(frozen=True)
class KCoordinates:
    ctx: "SubfieldCtx"
    side: str
    coords: tuple  # raw K values

    def elements(self):
        return [self.ctx.K.elem(c) for c in self.coords]

    def reassemble(self):
        return self.ctx.reassemble(self.coords, self.side)


class SubfieldCtx:
    """Result of :func:`build_subfield`; immutable once built."""

    def __init__(self, alg, generator, minpoly_u, right_basis, left_basis, var="u"):
        self.alg = alg
        self.generator = generator
        self.minpoly_u = minpoly_u
        self.k_degree = minpoly_u.degree
        self.K = ExtensionField(minpoly_u, var=var)
        self.right_basis = right_basis
        self.left_basis = left_basis
        n = self.k_degree
        ctx = alg.ctx
        self._u_powers = [alg.one()]
        for _ in range(n - 1):
            self._u_powers.append(self._u_powers[-1] * generator)
        # F-bases {B_s u^j} and {u^j B_s}; columns ordered (s, j)
        self._frames = {}
        for side, basis in (("right", right_basis), ("left", left_basis)):
            vecs = []
            for b in basis:
                for up in self._u_powers:
                    vecs.append((b * up if side == "right" else up * b).coords)
            mat = Matrix.raw(ctx, [list(r) for r in zip(*vecs)])
            self._frames[side] = inverse(mat)
        self._cache = {}

    @property
    def dim_over_k(self):
        return len(self.right_basis)

    def embed(self, kappa):
        """Image in ``D`` of a raw ``K`` value."""
        acc = self.alg.zero()
        for c, up in zip(kappa, self._u_powers):
            acc = acc + up.scale(c)
        return acc

    def embed_base(self, raw):
        return self.K.embed(raw)

    def coordinates(self, x, side="right"):
        key = (x.coords, side)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        inv = self._frames[side]
        ctx = self.alg.ctx
        flat = []
        for row in inv.data:
            s = ctx.zero
            for a, b in zip(row, x.coords):
                if not ctx.is_zero(a) and not ctx.is_zero(b):
                    s = ctx.add(s, ctx.mul(a, b))
            flat.append(s)
        n = self.k_degree
        coords = tuple(tuple(flat[s * n:(s + 1) * n]) for s in range(len(flat) // n))
        if len(self._cache) < 100_000:
            self._cache[key] = coords
        return coords

    def reassemble(self, coords, side="right"):
        basis = self.right_basis if side == "right" else self.left_basis
        acc = self.alg.zero()
        for b, kappa in zip(basis, coords):
            k = self.embed(kappa)
            acc = acc + (b * k if side == "right" else k * b)
        return acc

    def contains(self, x):
        """Whether ``x`` lies in ``K``."""
        coords = self.coordinates(x, "left")
        return all(self.K.is_zero(c) for c in coords[1:]) and self.left_basis[0] == self.alg.one()

    def __repr__(self):
        return f"SubfieldCtx({self.alg!r}, u={self.generator}, minpoly={self.minpoly_u})"


def _extend_basis(alg, u_powers, side):
    """Greedy scan of the distinguished basis, starting from ``{1}``."""
    chosen = []
    span = []  # F-vectors spanning the current one-sided K-span
    current_rank = 0

    def candidates():
        yield alg.one()
        yield from alg.basis()

    for b in candidates():
        vecs = [(b * up if side == "right" else up * b).coords for up in u_powers]
        trial = span + vecs
        r = rank(Matrix.raw(alg.ctx, [list(v) for v in trial]))
        if r > current_rank:
            chosen.append(b)
            span = trial
            current_rank = r
        if current_rank == alg.dim:
            break
    return chosen


def build_subfield(alg, u, var="u"):
    """``K = F(u)`` with greedy right and left ``K``-bases of the algebra.

    Only maximal subfields are accepted: ``deg minpoly(u)`` must equal
    ``sqrt(dim)``.
    """
    if u.is_central():
        raise CentralGenerator(f"{u} is central")
    ctx = alg.ctx
    mp = UPoly(ctx, element_minpoly_coeffs(u))
    n = mp.degree
    try:
        irreducible = is_irreducible(mp)
    except UnsupportedDegree:
        irreducible = None
    if irreducible is False:
        raise NotIrreducible(f"minimal polynomial {mp} of {u} is reducible")
    root = gmpy2.isqrt(alg.dim)
    if root * root != alg.dim or n != root:
        raise WrongDegree(f"deg {n} of {u} is not sqrt(dim {alg.dim}); only maximal subfields are built")
    if irreducible is None:
        raise NotIrreducible(f"cannot certify irreducibility of {mp}")
    u_powers = [alg.one()]
    for _ in range(n - 1):
        u_powers.append(u_powers[-1] * u)
    right = _extend_basis(alg, u_powers, "right")
    left = _extend_basis(alg, u_powers, "left")
    return SubfieldCtx(alg, u, mp, right, left, var=var)


def k_coordinates(ctx, x, side="right"):
    """Unique ``K``-coordinates of ``x``: ``x = sum B_s k_s`` (right) or ``sum k_s B_s`` (left)."""
    if side not in ("left", "right"):
        raise ValueError("side must be 'left' or 'right'")
    return KCoordinates(ctx, side, ctx.coordinates(x, side))


def regular_rep(ctx, alpha):
    """Matrix over ``K`` of ``x -> alpha x`` in the right ``K``-basis.

    Column ``s`` holds the right coordinates of ``alpha B_s``.
    """
    cols = [ctx.coordinates(alpha * b, "right") for b in ctx.right_basis]
    n = len(cols)
    return Matrix.raw(ctx.K, [[cols[s][r] for s in range(n)] for r in range(n)])
