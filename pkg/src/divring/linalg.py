"""Dense exact matrices over any field context.

Everything is plain Gaussian elimination (first nonzero pivot in row
order) except :func:`charpoly`, which uses the division-free Berkowitz
recurrence so that it stays valid in every characteristic.
"""

from __future__ import annotations

import random as _random
from itertools import combinations, product as _cartesian

from .errors import (
    ContextMismatch,
    NotMonic,
    NotNonderogatory,
    NotSquare,
    ShapeMismatch,
)
from .exactfield import ExtensionField, FieldElem, UPoly


class Matrix:
    """Immutable ``nrows x ncols`` matrix; ``data`` is a tuple of row tuples of raw values."""

    __slots__ = ("ctx", "nrows", "ncols", "data")

    def __init__(self, ctx, rows, _raw=False):
        if _raw:
            data = tuple(tuple(r) for r in rows)
        else:
            data = tuple(tuple(ctx.coerce(x) for x in r) for r in rows)
        if not data or not data[0]:
            raise ShapeMismatch("matrices must have positive dimensions")
        ncols = len(data[0])
        if any(len(r) != ncols for r in data):
            raise ShapeMismatch("ragged rows")
        self.ctx = ctx
        self.data = data
        self.nrows = len(data)
        self.ncols = ncols

    # constructors -------------------------------------------------------
    @classmethod
    def raw(cls, ctx, rows):
        return cls(ctx, rows, _raw=True)

    @classmethod
    def zeros(cls, ctx, nrows, ncols=None):
        ncols = nrows if ncols is None else ncols
        return cls(ctx, [[ctx.zero] * ncols for _ in range(nrows)], _raw=True)

    @classmethod
    def identity(cls, ctx, n):
        return cls(ctx, [[ctx.one if i == j else ctx.zero for j in range(n)] for i in range(n)], _raw=True)

    @classmethod
    def unit(cls, ctx, n, i, j):
        """Matrix unit ``e_{ij}`` (0-based indices)."""
        rows = [[ctx.zero] * n for _ in range(n)]
        rows[i][j] = ctx.one
        return cls(ctx, rows, _raw=True)

    @classmethod
    def diag(cls, ctx, entries):
        entries = [ctx.coerce(e) for e in entries]
        n = len(entries)
        return cls(ctx, [[entries[i] if i == j else ctx.zero for j in range(n)] for i in range(n)], _raw=True)

    @classmethod
    def column(cls, ctx, entries):
        return cls(ctx, [[e] for e in entries])

    @classmethod
    def random(cls, ctx, n, rng, height=5, ncols=None):
        ncols = n if ncols is None else ncols
        return cls(ctx, [[ctx.random(rng, height) for _ in range(ncols)] for _ in range(n)], _raw=True)

    # basic protocol -----------------------------------------------------
    @property
    def shape(self):
        return self.nrows, self.ncols

    def is_square(self):
        return self.nrows == self.ncols

    def __getitem__(self, idx):
        i, j = idx
        return FieldElem(self.ctx, self.data[i][j])

    def row(self, i):
        return list(self.data[i])

    def col(self, j):
        return [r[j] for r in self.data]

    def vec(self):
        """Row-major flattening of the raw entries."""
        return [x for r in self.data for x in r]

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.ctx == other.ctx and self.data == other.data

    def __hash__(self):
        return hash((self.ctx, self.data))

    def _check(self, other):
        if self.ctx != other.ctx:
            raise ContextMismatch(f"{self.ctx!r} vs {other.ctx!r}")

    def __add__(self, other):
        self._check(other)
        if self.shape != other.shape:
            raise ShapeMismatch(f"{self.shape} + {other.shape}")
        ad = self.ctx.add
        return Matrix.raw(self.ctx, [[ad(a, b) for a, b in zip(r, s)] for r, s in zip(self.data, other.data)])

    def __sub__(self, other):
        self._check(other)
        if self.shape != other.shape:
            raise ShapeMismatch(f"{self.shape} - {other.shape}")
        sb = self.ctx.sub
        return Matrix.raw(self.ctx, [[sb(a, b) for a, b in zip(r, s)] for r, s in zip(self.data, other.data)])

    def __neg__(self):
        ng = self.ctx.neg
        return Matrix.raw(self.ctx, [[ng(a) for a in r] for r in self.data])

    def scale(self, raw):
        mul = self.ctx.mul
        return Matrix.raw(self.ctx, [[mul(raw, a) for a in r] for r in self.data])

    def __mul__(self, other):
        if isinstance(other, Matrix):
            return self.matmul(other)
        if isinstance(other, FieldElem):
            return self.scale(self.ctx.coerce(other))
        return self.scale(self.ctx.coerce(other))

    def __rmul__(self, other):
        return self.scale(self.ctx.coerce(other))

    def __matmul__(self, other):
        return self.matmul(other)

    def matmul(self, other):
        self._check(other)
        if self.ncols != other.nrows:
            raise ShapeMismatch(f"{self.shape} @ {other.shape}")
        ctx = self.ctx
        add, mul, zero, is_zero = ctx.add, ctx.mul, ctx.zero, ctx.is_zero
        cols = list(zip(*other.data))
        out = []
        for r in self.data:
            nz = [(k, a) for k, a in enumerate(r) if not is_zero(a)]
            row = []
            for c in cols:
                acc = zero
                for k, a in nz:
                    b = c[k]
                    if not is_zero(b):
                        acc = add(acc, mul(a, b))
                row.append(acc)
            out.append(row)
        return Matrix.raw(ctx, out)

    def __pow__(self, e):
        if not self.is_square():
            raise NotSquare("power of a non-square matrix")
        if e < 0:
            return self.inverse() ** (-e)
        result = Matrix.identity(self.ctx, self.nrows)
        base = self
        while e:
            if e & 1:
                result = result @ base
            base = base @ base
            e >>= 1
        return result

    def identity_like(self):
        return Matrix.identity(self.ctx, self.nrows)

    def transpose(self):
        return Matrix.raw(self.ctx, list(zip(*self.data)))

    @property
    def T(self):
        return self.transpose()

    def is_zero(self):
        return all(self.ctx.is_zero(a) for r in self.data for a in r)

    def map(self, ctx, fn):
        return Matrix.raw(ctx, [[fn(a) for a in r] for r in self.data])

    def rank(self):
        return rank(self)

    def det(self):
        return FieldElem(self.ctx, det_raw(self))

    def inverse(self):
        inv = inverse(self)
        if inv is None:
            raise ZeroDivisionError("singular matrix")
        return inv

    def format(self):
        return format_matrix(self)

    def __str__(self):
        width = [max(len(self.ctx.format(self.data[i][j])) for i in range(self.nrows)) for j in range(self.ncols)]
        lines = []
        for r in self.data:
            lines.append("[" + "  ".join(self.ctx.format(a).rjust(w) for a, w in zip(r, width)) + "]")
        return "\n".join(lines)

    def __repr__(self):
        return f"Matrix({self.ctx!r}, {format_matrix(self)!r})"


# -- elimination ------------------------------------------------------------


def _rref(ctx, rows, ncols_to_reduce=None):
    """Reduced row echelon form in place; returns the pivot columns."""
    rows_n = len(rows)
    if rows_n == 0:
        return []
    ncols = len(rows[0]) if ncols_to_reduce is None else ncols_to_reduce
    is_zero, mul, sub, inv = ctx.is_zero, ctx.mul, ctx.sub, ctx.inv
    pivots = []
    r = 0
    for c in range(ncols):
        if r == rows_n:
            break
        p = next((i for i in range(r, rows_n) if not is_zero(rows[i][c])), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        piv_inv = inv(rows[r][c])
        rows[r] = [mul(piv_inv, a) for a in rows[r]]
        pr = rows[r]
        for i in range(rows_n):
            if i != r and not is_zero(rows[i][c]):
                f = rows[i][c]
                rows[i] = [sub(a, mul(f, b)) for a, b in zip(rows[i], pr)]
        pivots.append(c)
        r += 1
    return pivots


def rank(A):
    rows = [list(r) for r in A.data]
    return len(_rref(A.ctx, rows))


def nullspace(A):
    """Basis of ``{x : A x = 0}`` as a list of raw column vectors."""
    ctx = A.ctx
    rows = [list(r) for r in A.data]
    pivots = _rref(ctx, rows)
    free = [c for c in range(A.ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [ctx.zero] * A.ncols
        v[f] = ctx.one
        for r, pc in enumerate(pivots):
            v[pc] = ctx.neg(rows[r][f])
        basis.append(v)
    return basis


def solve_linear(A, b):
    """Some ``x`` with ``A x = b`` (``b`` a column), or ``None`` if inconsistent."""
    if A.nrows != b.nrows or b.ncols != 1:
        raise ShapeMismatch(f"A is {A.shape}, b is {b.shape}")
    if A.ctx != b.ctx:
        raise ContextMismatch(f"{A.ctx!r} vs {b.ctx!r}")
    x = solve_raw(A.ctx, [list(r) for r in A.data], [r[0] for r in b.data])
    if x is None:
        return None
    return Matrix.raw(A.ctx, [[v] for v in x])


def solve_raw(ctx, rows, rhs):
    """Solve on raw lists; ``rows`` is an ``m x n`` list, ``rhs`` length ``m``."""
    n = len(rows[0]) if rows else 0
    aug = [list(r) + [v] for r, v in zip(rows, rhs)]
    pivots = _rref(ctx, aug, n)
    for r in range(len(pivots), len(aug)):
        if not ctx.is_zero(aug[r][n]):
            return None
    x = [ctx.zero] * n
    for r, pc in enumerate(pivots):
        x[pc] = aug[r][n]
    return x


def det_raw(A):
    if not A.is_square():
        raise NotSquare("determinant of a non-square matrix")
    ctx = A.ctx
    rows = [list(r) for r in A.data]
    n = A.nrows
    d = ctx.one
    for c in range(n):
        p = next((i for i in range(c, n) if not ctx.is_zero(rows[i][c])), None)
        if p is None:
            return ctx.zero
        if p != c:
            rows[c], rows[p] = rows[p], rows[c]
            d = ctx.neg(d)
        piv = rows[c][c]
        d = ctx.mul(d, piv)
        piv_inv = ctx.inv(piv)
        for i in range(c + 1, n):
            if not ctx.is_zero(rows[i][c]):
                f = ctx.mul(rows[i][c], piv_inv)
                rows[i] = [ctx.sub(a, ctx.mul(f, b)) for a, b in zip(rows[i], rows[c])]
    return d


def inverse(A):
    """Inverse of a square matrix, or ``None`` when singular."""
    if not A.is_square():
        raise NotSquare("inverse of a non-square matrix")
    ctx = A.ctx
    n = A.nrows
    aug = [list(r) + [ctx.one if i == j else ctx.zero for j in range(n)] for i, r in enumerate(A.data)]
    pivots = _rref(ctx, aug, n)
    if len(pivots) < n:
        return None
    return Matrix.raw(ctx, [r[n:] for r in aug])


class DependenceTracker:
    """Feed vectors one at a time; detects the first linear dependence.

    ``add(v)`` returns ``None`` while the vectors stay independent and
    otherwise the coefficient list ``c`` (length = number of vectors fed,
    last entry 1) with ``sum c_i v_i = 0``.
    """

    def __init__(self, ctx):
        self.ctx = ctx
        self._rows = []  # (pivot, reduced vector, combination)
        self.count = 0

    def reduce(self, v):
        ctx = self.ctx
        v = list(v)
        combo = [ctx.zero] * self.count
        for piv, r, comb in self._rows:
            f = v[piv]
            if ctx.is_zero(f):
                continue
            v = [ctx.sub(a, ctx.mul(f, b)) for a, b in zip(v, r)]
            for i, c in enumerate(comb):
                if not ctx.is_zero(c):
                    combo[i] = ctx.sub(combo[i], ctx.mul(f, c))
        return v, combo

    def add(self, v):
        ctx = self.ctx
        v, combo = self.reduce(v)
        k = self.count
        self.count += 1
        pivot = next((i for i, a in enumerate(v) if not ctx.is_zero(a)), None)
        if pivot is None:
            # v_k + sum(combo_i v_i) = 0 after reduction: v_k - sum ... = 0
            return combo + [ctx.one]
        inv = ctx.inv(v[pivot])
        v = [ctx.mul(inv, a) for a in v]
        combo = [ctx.mul(inv, c) for c in combo] + [inv]
        self._rows.append((pivot, v, combo))
        return None

    @property
    def rank(self):
        return len(self._rows)


# -- polynomials attached to matrices ---------------------------------------


def _require_square(A):
    if not A.is_square():
        raise NotSquare(f"matrix of shape {A.shape} is not square")


def charpoly(A):
    """``det(tI - A)`` by the Berkowitz recurrence (no divisions)."""
    _require_square(A)
    ctx = A.ctx
    add, mul, neg, zero = ctx.add, ctx.mul, ctx.neg, ctx.zero
    a = A.data
    n = A.nrows
    vect = [ctx.one]  # coefficients, highest degree first
    for r in range(n - 1, -1, -1):
        size = n - r
        R = a[r][r + 1:]
        C = [a[i][r] for i in range(r + 1, n)]
        M = [row[r + 1:] for row in a[r + 1:]]
        col = [ctx.one, neg(a[r][r])]
        v = C
        for _ in range(size - 1):
            s = zero
            for x, y in zip(R, v):
                s = add(s, mul(x, y))
            col.append(neg(s))
            v = [_dot(ctx, row, v) for row in M]
        new = []
        for i in range(size + 1):
            s = zero
            for j in range(min(i + 1, len(vect))):
                s = add(s, mul(col[i - j], vect[j]))
            new.append(s)
        vect = new
    return UPoly(ctx, list(reversed(vect)))


def _dot(ctx, u, v):
    s = ctx.zero
    for x, y in zip(u, v):
        s = ctx.add(s, ctx.mul(x, y))
    return s


def minpoly_matrix(A):
    """Monic minimal polynomial: first dependence among vec(I), vec(A), vec(A^2), ..."""
    _require_square(A)
    tracker = DependenceTracker(A.ctx)
    power = Matrix.identity(A.ctx, A.nrows)
    while True:
        rel = tracker.add(power.vec())
        if rel is not None:
            return UPoly(A.ctx, rel)
        power = power @ A


def minpoly_over_base(A):
    """Minimal polynomial over the base field of a matrix with extension-field entries.

    Each entry is expanded into its base coordinates, so the dependence is
    found over the base field rather than over the extension.
    """
    _require_square(A)
    K = A.ctx
    if not isinstance(K, ExtensionField):
        return minpoly_matrix(A)
    tracker = DependenceTracker(K.base)
    power = Matrix.identity(K, A.nrows)
    while True:
        flat = [c for x in power.vec() for c in x]
        rel = tracker.add(flat)
        if rel is not None:
            return UPoly(K.base, rel)
        power = power @ A


def evaluate_poly(f, A):
    """``f(A)`` for a polynomial over ``A``'s field (or its base, for extensions)."""
    ctx = A.ctx
    if f.ctx == ctx:
        conv = lambda a: a  # noqa: E731
    elif isinstance(ctx, ExtensionField) and f.ctx == ctx.base:
        conv = ctx.embed
    else:
        raise ContextMismatch(f"{f.ctx!r} vs {ctx!r}")
    acc = Matrix.zeros(ctx, A.nrows)
    ident = Matrix.identity(ctx, A.nrows)
    for a in reversed(f.c):
        acc = acc @ A + ident.scale(conv(a))
    return acc


def companion(f):
    """Frobenius companion matrix: ones on the subdiagonal, last column ``-a_0 .. -a_{n-1}``."""
    if f.is_zero() or f.degree < 1:
        raise NotMonic("companion needs degree >= 1")
    if not f.is_monic():
        raise NotMonic(f"{f} is not monic")
    ctx = f.ctx
    n = f.degree
    rows = [[ctx.zero] * n for _ in range(n)]
    for i in range(n - 1):
        rows[i + 1][i] = ctx.one
    for i in range(n):
        rows[i][n - 1] = ctx.neg(f.c[i])
    return Matrix.raw(ctx, rows)


def direct_sum(blocks):
    """Block-diagonal matrix ``A_1 (+) A_2 (+) ...``."""
    blocks = list(blocks)
    if not blocks:
        raise ShapeMismatch("direct sum of no blocks")
    ctx = blocks[0].ctx
    for b in blocks:
        if b.ctx != ctx:
            raise ContextMismatch(f"{b.ctx!r} vs {ctx!r}")
        _require_square(b)
    n = sum(b.nrows for b in blocks)
    rows = [[ctx.zero] * n for _ in range(n)]
    off = 0
    for b in blocks:
        for i, r in enumerate(b.data):
            rows[off + i][off:off + b.ncols] = r
        off += b.nrows
    return Matrix.raw(ctx, rows)


def is_nonderogatory(A):
    return minpoly_matrix(A) == charpoly(A)


def krylov_matrix(A, v):
    """Columns ``v, Av, ..., A^{n-1} v`` for a raw vector ``v``."""
    n = A.nrows
    cols = [list(v)]
    for _ in range(n - 1):
        cols.append([_dot(A.ctx, row, cols[-1]) for row in A.data])
    return Matrix.raw(A.ctx, [list(r) for r in zip(*cols)])


def _candidate_vectors(ctx, n, seed=0, random_tries=200):
    one, zero = ctx.one, ctx.zero
    for i in range(n):
        yield [one if k == i else zero for k in range(n)]
    for i, j in combinations(range(n), 2):
        yield [one if k in (i, j) else zero for k in range(n)]
    yield [one] * n
    rng = _random.Random(seed)
    for _ in range(random_tries):
        yield [ctx.random(rng, 3) for _ in range(n)]
    if ctx.is_finite:
        elems = list(ctx.elements())
        if len(elems) ** n <= 10 ** 5:
            for v in _cartesian(elems, repeat=n):
                yield list(v)


def cyclic_vector_matrix(A, seed=0):
    """A vector whose Krylov matrix under ``A`` is invertible, or ``None``."""
    for v in _candidate_vectors(A.ctx, A.nrows, seed):
        K = krylov_matrix(A, v)
        if rank(K) == A.nrows:
            return v
    return None


def similarity_transform(A, B, seed=0):
    """An invertible ``P`` with ``A = P^{-1} B P``, for nonderogatory ``B``.

    Returns ``None`` when the characteristic or minimal polynomials differ.
    Raises :class:`NotNonderogatory` when ``B`` is derogatory (the answer is
    then decided by the polynomial comparison only, no transform emitted).
    """
    _require_square(A)
    _require_square(B)
    if A.shape != B.shape:
        raise ShapeMismatch(f"{A.shape} vs {B.shape}")
    if A.ctx != B.ctx:
        raise ContextMismatch(f"{A.ctx!r} vs {B.ctx!r}")
    chi_a, chi_b = charpoly(A), charpoly(B)
    if chi_a != chi_b:
        return None
    mu_b = minpoly_matrix(B)
    if mu_b != chi_b:
        raise NotNonderogatory("B is derogatory; similarity decided by polynomials only")
    if minpoly_matrix(A) != mu_b:
        return None
    va = cyclic_vector_matrix(A, seed)
    vb = cyclic_vector_matrix(B, seed)
    if va is None or vb is None:  # pragma: no cover - nonderogatory guarantees existence
        return None
    ka, kb = krylov_matrix(A, va), krylov_matrix(B, vb)
    # A K_A = K_A C_f and B K_B = K_B C_f, so A = P^{-1} B P with P = K_B K_A^{-1}
    return kb @ ka.inverse()


def are_similar(A, B):
    """Similarity decided by polynomials; exact whenever ``B`` is nonderogatory."""
    try:
        return similarity_transform(A, B) is not None
    except NotNonderogatory:
        return charpoly(A) == charpoly(B) and minpoly_matrix(A) == minpoly_matrix(B)


# -- text format ------------------------------------------------------------


def parse_matrix(ctx, text):
    """``"0,-1;1,0"`` -> 2x2 matrix (rows by ``;``, entries by ``,``)."""
    rows = [r for r in text.strip().split(";")]
    parsed = [[ctx.parse(x) for x in r.split(",")] for r in rows]
    return Matrix.raw(ctx, parsed)


def format_matrix(A):
    return ";".join(",".join(A.ctx.format(a) for a in r) for r in A.data)
