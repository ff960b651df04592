"""Finite-dimensional algebras given by structure constants.

An :class:`AlgebraDef` stores ``c[i][j][k]`` (coefficient of ``e_k`` in
``e_i e_j``) sparsely and checks associativity and the unit on construction.
Elements are coordinate vectors in the distinguished basis.
"""

from __future__ import annotations

import random as _random
from functools import cached_property

import numpy as np

from .errors import (
    AlgebraMismatch,
    CharacteristicTwo,
    NotAssociative,
    NotInvertible,
    ShapeMismatch,
    ZeroElement,
    ZeroParameter,
)
from .exactfield import QQ, FieldElem, RationalField, UPoly
from .linalg import DependenceTracker, Matrix, nullspace


class AlgebraDef:
    """An associative unital algebra over ``ctx`` with basis ``e_0 .. e_{dim-1}``.

    ``constants`` may be a ``dim x dim x dim`` nested sequence or a dict
    ``{(i, j, k): value}``; missing entries are zero.
    """

    def __init__(self, ctx, dim, constants, basis_names=None, unit=None, kind="table", params=None,
                 check=True):
        if dim < 1:
            raise ShapeMismatch("dimension must be positive")
        self.ctx = ctx
        self.dim = dim
        self.kind = kind
        self.params = dict(params or {})
        self.basis_names = list(basis_names) if basis_names else [f"b{i}" for i in range(dim)]
        if len(self.basis_names) != dim:
            raise ShapeMismatch("wrong number of basis names")
        table = [[[] for _ in range(dim)] for _ in range(dim)]
        if isinstance(constants, dict):
            items = constants.items()
        else:
            items = (((i, j, k), constants[i][j][k])
                     for i in range(dim) for j in range(dim) for k in range(dim))
        for (i, j, k), v in items:
            v = ctx.coerce(v)
            if not ctx.is_zero(v):
                table[i][j].append((k, v))
        self._table = table
        if unit is None:
            unit = [ctx.one] + [ctx.zero] * (dim - 1)
        self.unit = tuple(ctx.coerce(u) for u in unit)
        if len(self.unit) != dim:
            raise ShapeMismatch("unit has the wrong length")
        if check:
            self._check_unit()
            self._check_associative()

    # construction checks ------------------------------------------------
    def _basis(self, i):
        v = [self.ctx.zero] * self.dim
        v[i] = self.ctx.one
        return tuple(v)

    def _check_unit(self):
        for i in range(self.dim):
            e = self._basis(i)
            if self._mul(self.unit, e) != e or self._mul(e, self.unit) != e:
                raise NotAssociative(f"unit is not a two-sided identity on {self.basis_names[i]}")

    def _check_associative(self):
        basis_products = [[self._mul(self._basis(i), self._basis(j)) for j in range(self.dim)]
                          for i in range(self.dim)]
        for i in range(self.dim):
            for j in range(self.dim):
                ij = basis_products[i][j]
                for l in range(self.dim):
                    left = self._mul(ij, self._basis(l))
                    right = self._mul(self._basis(i), basis_products[j][l])
                    if left != right:
                        n = self.basis_names
                        raise NotAssociative(f"({n[i]}{n[j]}){n[l]} != {n[i]}({n[j]}{n[l]})")

    # raw arithmetic -----------------------------------------------------
    def _mul(self, x, y):
        ctx = self.ctx
        add, mul, is_zero = ctx.add, ctx.mul, ctx.is_zero
        out = [ctx.zero] * self.dim
        table = self._table
        ynz = [(j, b) for j, b in enumerate(y) if not is_zero(b)]
        for i, a in enumerate(x):
            if is_zero(a):
                continue
            row = table[i]
            for j, b in ynz:
                entries = row[j]
                if not entries:
                    continue
                ab = mul(a, b)
                for k, c in entries:
                    out[k] = add(out[k], mul(ab, c))
        return tuple(out)

    def constant(self, i, j, k):
        for kk, v in self._table[i][j]:
            if kk == k:
                return v
        return self.ctx.zero

    @cached_property
    def constants_array(self):
        """Dense ``dim^3`` numpy object array of raw structure constants."""
        arr = np.empty((self.dim,) * 3, dtype=object)
        arr[...] = self.ctx.zero
        for i in range(self.dim):
            for j in range(self.dim):
                for k, v in self._table[i][j]:
                    arr[i, j, k] = v
        return arr

    # elements -----------------------------------------------------------
    def element(self, coords):
        coords = tuple(self.ctx.coerce(c) for c in coords)
        if len(coords) != self.dim:
            raise ShapeMismatch(f"expected {self.dim} coordinates")
        return AlgebraElem(self, coords)

    def basis(self, i=None):
        if i is None:
            return [AlgebraElem(self, self._basis(k)) for k in range(self.dim)]
        if isinstance(i, str):
            i = self.basis_names.index(i)
        return AlgebraElem(self, self._basis(i))

    def __getattr__(self, name):
        # quaternion-style access: Q.i, Q.j, M.e12
        names = self.__dict__.get("basis_names")
        if names and name in names:
            return self.basis(name)
        raise AttributeError(name)

    def one(self):
        return AlgebraElem(self, self.unit)

    def zero(self):
        return AlgebraElem(self, (self.ctx.zero,) * self.dim)

    def scalar(self, value):
        v = self.ctx.coerce(value)
        return AlgebraElem(self, tuple(self.ctx.mul(v, u) for u in self.unit))

    def right_mul_matrix(self, y):
        """Row ``i`` holds the coordinates of ``e_i * y``."""
        return [self._mul(self._basis(i), y) for i in range(self.dim)]

    def left_mul_matrix(self, y):
        """Row ``i`` holds the coordinates of ``y * e_i``."""
        return [self._mul(y, self._basis(i)) for i in range(self.dim)]

    @cached_property
    def is_commutative(self):
        for i in range(self.dim):
            for j in range(i + 1, self.dim):
                if self._mul(self._basis(i), self._basis(j)) != self._mul(self._basis(j), self._basis(i)):
                    return False
        return True

    @cached_property
    def center_basis(self):
        return center(self)

    # matrix algebras ----------------------------------------------------
    def to_matrix(self, x):
        if self.kind != "matrix":
            raise AlgebraMismatch("not a matrix algebra")
        n = self.params["n"]
        return Matrix.raw(self.ctx, [x.coords[r * n:(r + 1) * n] for r in range(n)])

    def from_matrix(self, m):
        if self.kind != "matrix":
            raise AlgebraMismatch("not a matrix algebra")
        return AlgebraElem(self, tuple(m.vec()))

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, AlgebraDef):
            return NotImplemented
        return (self.ctx == other.ctx and self.dim == other.dim and self.unit == other.unit
                and self._table == other._table)

    def __hash__(self):
        return hash((self.ctx, self.dim, self.kind))

    def __repr__(self):
        if self.kind == "quaternion":
            a, b = (self.ctx.format(self.params[k]) for k in ("a", "b"))
            return f"QuaternionAlgebra({a}, {b} / {self.ctx!r})"
        if self.kind == "matrix":
            return f"MatrixAlgebra({self.params['n']}, {self.ctx!r})"
        return f"AlgebraDef(dim={self.dim}, {self.ctx!r}, kind={self.kind!r})"


class AlgebraElem:
    __slots__ = ("alg", "coords")

    def __init__(self, alg, coords):
        self.alg = alg
        self.coords = coords

    def _same(self, other):
        if other.alg is not self.alg and other.alg != self.alg:
            raise AlgebraMismatch("elements live in different algebras")

    def _lift(self, other):
        if isinstance(other, AlgebraElem):
            self._same(other)
            return other
        return self.alg.scalar(other)

    def __add__(self, other):
        other = self._lift(other)
        add = self.alg.ctx.add
        return AlgebraElem(self.alg, tuple(add(a, b) for a, b in zip(self.coords, other.coords)))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._lift(other)
        sub = self.alg.ctx.sub
        return AlgebraElem(self.alg, tuple(sub(a, b) for a, b in zip(self.coords, other.coords)))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __neg__(self):
        neg = self.alg.ctx.neg
        return AlgebraElem(self.alg, tuple(neg(a) for a in self.coords))

    def __mul__(self, other):
        if isinstance(other, AlgebraElem):
            self._same(other)
            return AlgebraElem(self.alg, self.alg._mul(self.coords, other.coords))
        return self.scale(self.alg.ctx.coerce(other))

    def __rmul__(self, other):
        return self.scale(self.alg.ctx.coerce(other))

    def scale(self, raw):
        mul = self.alg.ctx.mul
        return AlgebraElem(self.alg, tuple(mul(raw, a) for a in self.coords))

    def __truediv__(self, other):
        if isinstance(other, AlgebraElem):
            return self * other.inverse()
        return self.scale(self.alg.ctx.inv(self.alg.ctx.coerce(other)))

    def __pow__(self, e):
        if e < 0:
            return self.inverse() ** (-e)
        result = self.alg.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def identity_like(self):
        return self.alg.one()

    def inverse(self):
        inv = alg_inverse(self)
        if inv is None:
            raise NotInvertible(f"{self} is a zero divisor")
        return inv

    def is_zero(self):
        return all(self.alg.ctx.is_zero(a) for a in self.coords)

    def __bool__(self):
        return not self.is_zero()

    def is_central(self):
        return all(self * e == e * self for e in self.alg.basis())

    def __getitem__(self, i):
        return FieldElem(self.alg.ctx, self.coords[i])

    def __eq__(self, other):
        if isinstance(other, AlgebraElem):
            return self.alg == other.alg and self.coords == other.coords
        try:
            return self == self.alg.scalar(other)
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        return hash(self.coords)

    def __str__(self):
        return format_element(self)

    def __repr__(self):
        return f"<{self.alg!r}: {format_element(self)}>"


def format_element(x):
    """Canonical text: ``1/2 + 3*i - j``; parses back with :func:`cli.parse_element`."""
    ctx = x.alg.ctx
    parts = []
    for name, a in zip(x.alg.basis_names, x.coords):
        if ctx.is_zero(a):
            continue
        s = ctx.format(a)
        neg = s.startswith("-")
        body = s[1:] if neg else s
        if name == "1":
            mono = body
        else:
            mono = name if body == "1" else f"{body}*{name}"
        if not parts:
            parts.append(("-" if neg else "") + mono)
        else:
            parts.append(("- " if neg else "+ ") + mono)
    return " ".join(parts) if parts else "0"


# -- constructors -----------------------------------------------------------


def quaternion(ctx, a, b):
    """The quaternion algebra ``(a, b / F)``: ``i^2 = a, j^2 = b, ij = k = -ji``."""
    if ctx.characteristic == 2:
        raise CharacteristicTwo("quaternion algebras need characteristic != 2")
    a, b = ctx.coerce(a), ctx.coerce(b)
    if ctx.is_zero(a) or ctx.is_zero(b):
        raise ZeroParameter("quaternion parameters must be nonzero")
    mul, neg, one = ctx.mul, ctx.neg, ctx.one
    ab = mul(a, b)
    c = {}
    for x in range(4):
        c[(0, x, x)] = one
        c[(x, 0, x)] = one
    c[(1, 1, 0)] = a
    c[(2, 2, 0)] = b
    c[(3, 3, 0)] = neg(ab)
    c[(1, 2, 3)] = one
    c[(2, 1, 3)] = neg(one)
    c[(1, 3, 2)] = a
    c[(3, 1, 2)] = neg(a)
    c[(2, 3, 1)] = neg(b)
    c[(3, 2, 1)] = b
    return AlgebraDef(ctx, 4, c, ["1", "i", "j", "k"], kind="quaternion", params={"a": a, "b": b})


def matrix_algebra(ctx, n):
    """``M_n(F)`` on matrix units ``e_{rs}`` (row-major), ``e_rs e_uv = delta_su e_rv``."""
    if n < 1:
        raise ShapeMismatch("n must be >= 1")
    c = {}
    for r in range(n):
        for s in range(n):
            for v in range(n):
                c[(r * n + s, s * n + v, r * n + v)] = ctx.one
    sep = "" if n <= 9 else "_"
    names = [f"e{r + 1}{sep}{s + 1}" for r in range(n) for s in range(n)]
    unit = [ctx.one if r == s else ctx.zero for r in range(n) for s in range(n)]
    return AlgebraDef(ctx, n * n, c, names, unit=unit, kind="matrix", params={"n": n}, check=n <= 4)


def multiquadratic(ctx, squares):
    """Commutative algebra ``F(sqrt(s_1), ..., sqrt(s_r))`` on square-root monomials.

    Basis element ``e_S`` (``S`` a subset, bitmask index) is the product of
    the chosen roots, so ``e_S e_T = prod_{i in S & T} s_i * e_{S ^ T}``.
    Whether the result is a field depends on the ``s_i``.
    """
    squares = [ctx.coerce(s) for s in squares]
    r = len(squares)
    dim = 1 << r
    c = {}
    for S in range(dim):
        for T in range(dim):
            coef = ctx.one
            for i in range(r):
                if S & T & (1 << i):
                    coef = ctx.mul(coef, squares[i])
            c[(S, T, S ^ T)] = coef
    names = ["1"] + [f"b{S}" for S in range(1, dim)]
    return AlgebraDef(ctx, dim, c, names, kind="multiquadratic", params={"squares": squares})


def simple_extension(f, var="b1"):
    """``F[t]/(f)`` as an algebra on the power basis ``1, t, ..., t^{n-1}``."""
    ctx = f.ctx
    n = f.degree
    from .exactfield import _pdivmod
    c = {}
    for i in range(n):
        for j in range(n):
            prod = [ctx.zero] * (i + j) + [ctx.one]
            r = _pdivmod(ctx, prod, list(f.c))[1]
            for k, v in enumerate(r):
                c[(i, j, k)] = v
    names = ["1"] + [f"b{i}" for i in range(1, n)]
    return AlgebraDef(ctx, n, c, names, kind="extension", params={"modulus": f})


def from_table(ctx, dim, constants, basis_names=None, unit=None):
    """User-supplied structure constants (untrusted: associativity is checked)."""
    return AlgebraDef(ctx, dim, constants, basis_names, unit=unit, kind="table")


# -- operations -------------------------------------------------------------


def alg_mul(x, y):
    if x.alg != y.alg:
        raise AlgebraMismatch("elements live in different algebras")
    return x * y


def element_minpoly_coeffs(x):
    """Raw coefficients (lowest first, monic) of the first F-dependence of 1, x, x^2, ..."""
    alg = x.alg
    tracker = DependenceTracker(alg.ctx)
    power = alg.unit
    while True:
        rel = tracker.add(power)
        if rel is not None:
            return rel
        power = alg._mul(power, x.coords)


def alg_inverse(x):
    """Inverse from the minimal polynomial, or ``None`` if ``x`` is a zero divisor.

    With ``x^n + a_{n-1} x^{n-1} + ... + a_0 = 0`` and ``a_0 != 0``,
    ``x^{-1} = -(x^{n-1} + a_{n-1} x^{n-2} + ... + a_1) / a_0``.
    """
    if x.is_zero():
        raise ZeroElement("zero has no inverse")
    ctx = x.alg.ctx
    c = element_minpoly_coeffs(x)
    if ctx.is_zero(c[0]):
        return None
    acc = x.alg.zero()
    for a in reversed(c[1:]):  # Horner on x^{n-1} + ... + a_1
        acc = acc * x + x.alg.scalar(FieldElem(ctx, a))
    return acc.scale(ctx.neg(ctx.inv(c[0])))


def center(alg):
    """Basis of the center, as the null space of ``z e_b - e_b z = 0`` for all ``b``."""
    ctx = alg.ctx
    rows = []
    for b in range(alg.dim):
        eb = alg._basis(b)
        right = alg.right_mul_matrix(eb)  # row i: e_i e_b
        left = alg.left_mul_matrix(eb)  # row i: e_b e_i
        for k in range(alg.dim):
            rows.append([ctx.sub(right[i][k], left[i][k]) for i in range(alg.dim)])
    ns = nullspace(Matrix.raw(ctx, rows))
    return [AlgebraElem(alg, tuple(v)) for v in ns]


def commutators(a, b):
    """``(a b a^{-1} b^{-1}, a b - b a)``."""
    if a.alg != b.alg:
        raise AlgebraMismatch("elements live in different algebras")
    ab = a * b
    return ab * a.inverse() * b.inverse(), ab - b * a


def random_element(alg, height=5, seed=0):
    """Uniform integer coordinates in ``[-height, height]`` (rationals) or uniform
    residues (finite fields).  ``seed`` is an int or a ``random.Random``."""
    if height < 1:
        raise ValueError("height must be >= 1")
    rng = seed if isinstance(seed, _random.Random) else _random.Random(seed)
    return AlgebraElem(alg, tuple(alg.ctx.random(rng, height) for _ in range(alg.dim)))


# -- Hilbert symbols --------------------------------------------------------


def _square_class_integer(q):
    q = QQ.coerce(q)
    return int(q.numerator) * int(q.denominator)


def _split_p(n, p):
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    return e, n


def hilbert_symbol(a, b, p):
    """Local Hilbert symbol ``(a, b)_p`` of nonzero rationals; ``p`` a prime or ``"inf"``."""
    import gmpy2

    a, b = _square_class_integer(a), _square_class_integer(b)
    if a == 0 or b == 0:
        raise ZeroParameter("Hilbert symbol of zero")
    if p == "inf":
        return -1 if a < 0 and b < 0 else 1
    alpha, u = _split_p(a, p)
    beta, v = _split_p(b, p)
    if p == 2:
        eps = lambda x: ((x - 1) // 2) % 2  # noqa: E731
        omega = lambda x: ((x * x - 1) // 8) % 2  # noqa: E731
        e = eps(u) * eps(v) + alpha * omega(v) + beta * omega(u)
        return -1 if e % 2 else 1
    sign = -1 if (alpha * beta * ((p - 1) // 2)) % 2 else 1
    return sign * int(gmpy2.legendre(u, p)) ** beta * int(gmpy2.legendre(v, p)) ** alpha


def hilbert_places(a, b):
    """Places where ``(a, b)_v`` can be nontrivial: infinity, 2, primes dividing ``a`` or ``b``."""
    from sympy import primefactors

    primes = {2}
    for q in (a, b):
        q = QQ.coerce(q)
        primes.update(primefactors(int(q.numerator)))
        primes.update(primefactors(int(q.denominator)))
    return ["inf"] + sorted(primes)


def local_symbols(a, b):
    return {v: hilbert_symbol(a, b, v) for v in hilbert_places(a, b)}


def is_division_quaternion(a, b):
    """Whether ``(a, b / Q)`` is a division algebra (some local symbol is ``-1``)."""
    return any(s == -1 for s in local_symbols(a, b).values())


def is_certified_division(alg):
    """``True``/``False`` when decidable here, ``None`` otherwise.

    Rational quaternion algebras are decided by Hilbert symbols; a
    one-dimensional algebra is the field itself.  Nothing else is certified.
    """
    if alg.dim == 1:
        return True
    if alg.kind == "quaternion" and isinstance(alg.ctx, RationalField):
        return is_division_quaternion(alg.params["a"], alg.params["b"])
    if alg.kind == "quaternion" or alg.kind == "matrix":
        # finite fields split every quaternion algebra; M_n (n > 1) has zero divisors
        return False
    return None


def minpoly_of(x):
    """Convenience wrapper returning a :class:`UPoly` (no center check)."""
    return UPoly(x.alg.ctx, element_minpoly_coeffs(x))
