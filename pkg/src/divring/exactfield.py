"""Exact scalar fields and univariate polynomials over them.

Three kinds of field context are provided:

* :class:`RationalField` -- the rationals, values are ``gmpy2.mpq``;
* :class:`PrimeField` -- ``GF(p)``, values are Python ints in ``[0, p)``;
* :class:`ExtensionField` -- ``F[u]/(f)`` for an irreducible ``f`` over a
  base context, values are coefficient tuples of length ``deg f``.

Internally every algorithm works on *raw* values and calls the context's
methods (``ctx.add``, ``ctx.mul``, ...).  :class:`FieldElem` and
:class:`UPoly` are the value types handed to users; they carry their context
and overload the arithmetic operators.
"""

from __future__ import annotations

import re
from fractions import Fraction
from itertools import product as _cartesian

import gmpy2
from gmpy2 import mpq

from .errors import (
    ContextMismatch,
    DivisionByZero,
    NotMonic,
    UnsupportedDegree,
    ZeroPolynomial,
)

_RATIONAL_LITERAL = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*$")


class FieldCtx:
    """Common interface of the field contexts.

    Subclasses implement the raw operations; equality of contexts is
    structural, so two ``GF(7)`` objects are interchangeable.
    """

    kind = None
    characteristic = 0

    # raw-value protocol -------------------------------------------------
    zero = None
    one = None

    def add(self, a, b):
        raise NotImplementedError

    def sub(self, a, b):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def is_zero(self, a):
        return a == self.zero

    def is_one(self, a):
        return a == self.one

    def from_int(self, n):
        raise NotImplementedError

    def coerce(self, value):
        """Turn ints, fractions, literals or :class:`FieldElem` into a raw value."""
        raise NotImplementedError

    def random(self, rng, height=1):
        raise NotImplementedError

    def format(self, a):
        raise NotImplementedError

    def parse(self, text):
        return self.coerce(text)

    def pow(self, a, e):
        if e < 0:
            a, e = self.inv(a), -e
        result = self.one
        while e:
            if e & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            e >>= 1
        return result

    # user-facing helpers ------------------------------------------------
    def __call__(self, value):
        return FieldElem(self, self.coerce(value))

    def elem(self, raw):
        return FieldElem(self, raw)

    def poly(self, coeffs):
        """Polynomial with the given coefficients, lowest degree first."""
        return UPoly(self, [self.coerce(c) for c in coeffs])

    @property
    def is_finite(self):
        return False


class RationalField(FieldCtx):
    kind = "rational"
    characteristic = 0
    zero = mpq(0)
    one = mpq(1)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if not a:
            raise DivisionByZero("inverse of zero")
        return 1 / a

    def div(self, a, b):
        if not b:
            raise DivisionByZero("division by zero")
        return a / b

    def is_zero(self, a):
        return not a

    def from_int(self, n):
        return mpq(n)

    def coerce(self, value):
        if isinstance(value, FieldElem):
            if value.ctx != self:
                raise ContextMismatch(f"{value.ctx!r} is not {self!r}")
            return value.value
        if isinstance(value, str):
            m = _RATIONAL_LITERAL.match(value)
            if not m:
                raise ValueError(f"not a rational literal: {value!r}")
            num, den = int(m.group(1)), int(m.group(2) or 1)
            if den == 0:
                raise DivisionByZero(f"zero denominator in {value!r}")
            return mpq(num, den)
        if isinstance(value, Fraction):
            return mpq(value.numerator, value.denominator)
        if isinstance(value, bool):
            raise TypeError("bool is not a field value")
        return mpq(value)

    def random(self, rng, height=1):
        return mpq(rng.randint(-height, height))

    def format(self, a):
        if a.denominator == 1:
            return str(a.numerator)
        return f"{a.numerator}/{a.denominator}"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")

    def __repr__(self):
        return "QQ"


class PrimeField(FieldCtx):
    kind = "prime"

    def __init__(self, p):
        p = int(p)
        if p < 2 or not gmpy2.is_prime(p):
            raise ValueError(f"modulus {p} is not prime")
        self.modulus = p
        self.characteristic = p
        self.zero = 0
        self.one = 1

    def add(self, a, b):
        s = a + b
        return s - self.modulus if s >= self.modulus else s

    def sub(self, a, b):
        s = a - b
        return s + self.modulus if s < 0 else s

    def mul(self, a, b):
        return a * b % self.modulus

    def neg(self, a):
        return (-a) % self.modulus

    def inv(self, a):
        if a == 0:
            raise DivisionByZero("inverse of zero")
        return pow(a, -1, self.modulus)

    def is_zero(self, a):
        return a == 0

    def from_int(self, n):
        return int(n) % self.modulus

    def coerce(self, value):
        if isinstance(value, FieldElem):
            if value.ctx != self:
                raise ContextMismatch(f"{value.ctx!r} is not {self!r}")
            return value.value
        if isinstance(value, str):
            m = _RATIONAL_LITERAL.match(value)
            if not m:
                raise ValueError(f"not a residue literal: {value!r}")
            num, den = int(m.group(1)), int(m.group(2) or 1)
            return self.div(num % self.modulus, self.from_int(den))
        if isinstance(value, (Fraction, type(mpq(0)))):
            return self.div(int(value.numerator) % self.modulus,
                            self.from_int(int(value.denominator)))
        if isinstance(value, bool):
            raise TypeError("bool is not a field value")
        return int(value) % self.modulus

    def random(self, rng, height=1):
        return rng.randrange(self.modulus)

    def format(self, a):
        return str(a)

    def elements(self):
        return range(self.modulus)

    @property
    def is_finite(self):
        return True

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.modulus == self.modulus

    def __hash__(self):
        return hash(("GF", self.modulus))

    def __repr__(self):
        return f"GF({self.modulus})"


QQ = RationalField()


def GF(p):
    return PrimeField(p)


def field_from_spec(kind, modulus=None):
    if kind == "rational":
        return QQ
    if kind == "prime":
        return PrimeField(modulus)
    raise ValueError(f"unknown field kind {kind!r}")


# ---------------------------------------------------------------------------
# raw polynomial helpers (coefficient lists, lowest degree first)


def _trim(ctx, c):
    c = list(c)
    while c and ctx.is_zero(c[-1]):
        c.pop()
    return c


def _padd(ctx, f, g):
    if len(f) < len(g):
        f, g = g, f
    out = list(f)
    for i, b in enumerate(g):
        out[i] = ctx.add(out[i], b)
    return _trim(ctx, out)


def _psub(ctx, f, g):
    n = max(len(f), len(g))
    out = []
    for i in range(n):
        a = f[i] if i < len(f) else ctx.zero
        b = g[i] if i < len(g) else ctx.zero
        out.append(ctx.sub(a, b))
    return _trim(ctx, out)


def _pmul(ctx, f, g):
    if not f or not g:
        return []
    out = [ctx.zero] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if ctx.is_zero(a):
            continue
        for j, b in enumerate(g):
            out[i + j] = ctx.add(out[i + j], ctx.mul(a, b))
    return _trim(ctx, out)


def _pdivmod(ctx, f, g):
    if not g:
        raise DivisionByZero("polynomial division by zero")
    r = list(f)
    dg = len(g) - 1
    lead_inv = ctx.inv(g[-1])
    if len(r) - 1 < dg:
        return [], _trim(ctx, r)
    q = [ctx.zero] * (len(r) - dg)
    for k in range(len(r) - 1 - dg, -1, -1):
        coef = ctx.mul(r[k + dg], lead_inv)
        q[k] = coef
        if ctx.is_zero(coef):
            continue
        for j in range(dg + 1):
            r[k + j] = ctx.sub(r[k + j], ctx.mul(coef, g[j]))
    return _trim(ctx, q), _trim(ctx, r[:dg])


def _pmonic(ctx, f):
    if not f:
        return []
    inv = ctx.inv(f[-1])
    return [ctx.mul(a, inv) for a in f]


def _pgcd(ctx, f, g):
    f, g = _trim(ctx, f), _trim(ctx, g)
    while g:
        f, g = g, _pdivmod(ctx, f, g)[1]
    return _pmonic(ctx, f)


def _pxgcd(ctx, f, g):
    """Return (d, s, t) with s*f + t*g = d, d monic."""
    r0, r1 = _trim(ctx, f), _trim(ctx, g)
    s0, s1 = [ctx.one], []
    t0, t1 = [], [ctx.one]
    while r1:
        q, r = _pdivmod(ctx, r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _psub(ctx, s0, _pmul(ctx, q, s1))
        t0, t1 = t1, _psub(ctx, t0, _pmul(ctx, q, t1))
    if not r0:
        return [], s0, t0
    inv = ctx.inv(r0[-1])
    scale = lambda p: [ctx.mul(a, inv) for a in p]  # noqa: E731
    return scale(r0), scale(s0), scale(t0)


def _peval(ctx, f, x):
    acc = ctx.zero
    for a in reversed(f):
        acc = ctx.add(ctx.mul(acc, x), a)
    return acc


# ---------------------------------------------------------------------------


class ExtensionField(FieldCtx):
    """The field ``base[u]/(modulus)``; elements are length-``n`` coefficient tuples.

    The modulus must be monic and irreducible over the base; irreducibility is
    the caller's responsibility (``build_subfield`` checks it before building
    one of these).
    """

    kind = "extension"

    def __init__(self, modulus, var="u"):
        if not isinstance(modulus, UPoly):
            raise TypeError("modulus must be a UPoly")
        if modulus.degree < 1 or not modulus.is_monic():
            raise NotMonic("extension modulus must be monic of degree >= 1")
        self.base = modulus.ctx
        self.modulus = modulus
        self.var = var
        self.degree = modulus.degree
        self.characteristic = self.base.characteristic
        b = self.base
        self.zero = (b.zero,) * self.degree
        self.one = (b.one,) + (b.zero,) * (self.degree - 1)
        self._mod = list(modulus.c)

    def _pad(self, c):
        c = list(c)
        return tuple(c + [self.base.zero] * (self.degree - len(c)))

    def add(self, a, b):
        ad = self.base.add
        return tuple(ad(x, y) for x, y in zip(a, b))

    def sub(self, a, b):
        sb = self.base.sub
        return tuple(sb(x, y) for x, y in zip(a, b))

    def neg(self, a):
        ng = self.base.neg
        return tuple(ng(x) for x in a)

    def mul(self, a, b):
        base = self.base
        prod = _pmul(base, _trim(base, a), _trim(base, b))
        if len(prod) > self.degree:
            prod = _pdivmod(base, prod, self._mod)[1]
        return self._pad(prod)

    def inv(self, a):
        base = self.base
        f = _trim(base, a)
        if not f:
            raise DivisionByZero("inverse of zero")
        d, s, _ = _pxgcd(base, f, self._mod)
        if len(d) != 1:
            raise DivisionByZero("element is not invertible (modulus reducible?)")
        return self._pad(s)

    def is_zero(self, a):
        return all(self.base.is_zero(x) for x in a)

    def embed(self, base_raw):
        """Image of a base-field value in this field."""
        return (base_raw,) + (self.base.zero,) * (self.degree - 1)

    def gen(self):
        if self.degree == 1:
            return self._pad([self.base.neg(self._mod[0])])
        return self._pad([self.base.zero, self.base.one])

    def from_int(self, n):
        return self.embed(self.base.from_int(n))

    def coerce(self, value):
        if isinstance(value, FieldElem):
            if value.ctx == self:
                return value.value
            if value.ctx == self.base:
                return self.embed(value.value)
            raise ContextMismatch(f"{value.ctx!r} is not {self!r}")
        if isinstance(value, UPoly):
            if value.ctx != self.base:
                raise ContextMismatch("polynomial over the wrong base")
            return self._pad(_pdivmod(self.base, list(value.c), self._mod)[1])
        if isinstance(value, tuple):
            if len(value) != self.degree:
                raise ValueError("wrong coefficient-tuple length")
            return tuple(self.base.coerce(x) for x in value)
        if isinstance(value, list):
            return self._pad(_pdivmod(self.base, _trim(self.base, [self.base.coerce(x) for x in value]), self._mod)[1])
        return self.embed(self.base.coerce(value))

    def random(self, rng, height=1):
        return tuple(self.base.random(rng, height) for _ in range(self.degree))

    def format(self, a):
        return _format_poly(self.base, list(a), self.var)

    def elements(self):
        if not self.base.is_finite:
            raise ValueError("infinite field")
        return (tuple(c) for c in _cartesian(self.base.elements(), repeat=self.degree))

    @property
    def is_finite(self):
        return self.base.is_finite

    def __eq__(self, other):
        return isinstance(other, ExtensionField) and other.modulus == self.modulus

    def __hash__(self):
        return hash(("ext", self.modulus))

    def __repr__(self):
        return f"{self.base!r}[{self.var}]/({self.modulus.format(self.var)})"


# ---------------------------------------------------------------------------


class FieldElem:
    """An immutable field value tagged with its context."""

    __slots__ = ("ctx", "value")

    def __init__(self, ctx, value):
        self.ctx = ctx
        self.value = value

    def _other(self, other):
        if isinstance(other, FieldElem):
            if other.ctx is not self.ctx and other.ctx != self.ctx:
                raise ContextMismatch(f"{self.ctx!r} vs {other.ctx!r}")
            return other.value
        return self.ctx.coerce(other)

    def __add__(self, other):
        return FieldElem(self.ctx, self.ctx.add(self.value, self._other(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return FieldElem(self.ctx, self.ctx.sub(self.value, self._other(other)))

    def __rsub__(self, other):
        return FieldElem(self.ctx, self.ctx.sub(self._other(other), self.value))

    def __mul__(self, other):
        return FieldElem(self.ctx, self.ctx.mul(self.value, self._other(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._other(other)
        if self.ctx.is_zero(o):
            raise DivisionByZero("division by zero")
        return FieldElem(self.ctx, self.ctx.div(self.value, o))

    def __rtruediv__(self, other):
        if self.ctx.is_zero(self.value):
            raise DivisionByZero("division by zero")
        return FieldElem(self.ctx, self.ctx.div(self._other(other), self.value))

    def __neg__(self):
        return FieldElem(self.ctx, self.ctx.neg(self.value))

    def __pow__(self, e):
        return FieldElem(self.ctx, self.ctx.pow(self.value, e))

    def inverse(self):
        return FieldElem(self.ctx, self.ctx.inv(self.value))

    def is_zero(self):
        return self.ctx.is_zero(self.value)

    def __bool__(self):
        return not self.ctx.is_zero(self.value)

    def __eq__(self, other):
        if isinstance(other, FieldElem):
            return self.ctx == other.ctx and self.value == other.value
        try:
            return self.value == self.ctx.coerce(other)
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        return hash((self.ctx, self.value))

    def __str__(self):
        return self.ctx.format(self.value)

    def __repr__(self):
        return f"FieldElem({self.ctx!r}, {self})"


def field_arithmetic(x, y, op):
    """Apply ``op`` (one of ``add, sub, mul, div``) to two field elements."""
    if x.ctx != y.ctx:
        raise ContextMismatch(f"{x.ctx!r} vs {y.ctx!r}")
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "div":
        return x / y
    raise ValueError(f"unknown op {op!r}")


# ---------------------------------------------------------------------------


def _format_poly(ctx, c, var="t"):
    c = _trim(ctx, c)
    if not c:
        return "0"
    parts = []
    for i in range(len(c) - 1, -1, -1):
        a = c[i]
        if ctx.is_zero(a):
            continue
        s = ctx.format(a)
        if isinstance(ctx, ExtensionField) and sum(not ctx.base.is_zero(x) for x in a) > 1:
            s = f"({s})"
        negative = s.startswith("-") and not s.startswith("(")
        body = s[1:] if negative else s
        if i == 0:
            mono = body
        else:
            power = var if i == 1 else f"{var}^{i}"
            mono = power if body == "1" else f"{body}*{power}"
        if not parts:
            parts.append(("-" if negative else "") + mono)
        else:
            parts.append(("- " if negative else "+ ") + mono)
    return " ".join(parts)


class UPoly:
    """Univariate polynomial; ``c`` holds raw coefficients, lowest degree first."""

    __slots__ = ("ctx", "c")

    def __init__(self, ctx, coeffs):
        self.ctx = ctx
        self.c = tuple(_trim(ctx, [ctx.coerce(a) for a in coeffs]))

    @classmethod
    def from_roots(cls, ctx, roots):
        p = cls(ctx, [ctx.one])
        for r in roots:
            p = p * cls(ctx, [ctx.neg(ctx.coerce(r)), ctx.one])
        return p

    @classmethod
    def monomial(cls, ctx, n, coeff=None):
        coeff = ctx.one if coeff is None else ctx.coerce(coeff)
        return cls(ctx, [ctx.zero] * n + [coeff])

    @property
    def coeffs(self):
        return [FieldElem(self.ctx, a) for a in self.c]

    @property
    def degree(self):
        return len(self.c) - 1

    def is_zero(self):
        return not self.c

    def is_monic(self):
        return bool(self.c) and self.ctx.is_one(self.c[-1])

    def leading(self):
        return FieldElem(self.ctx, self.c[-1]) if self.c else FieldElem(self.ctx, self.ctx.zero)

    def _other(self, other):
        if isinstance(other, UPoly):
            if other.ctx != self.ctx:
                raise ContextMismatch(f"{self.ctx!r} vs {other.ctx!r}")
            return list(other.c)
        return _trim(self.ctx, [self.ctx.coerce(other)])

    def __add__(self, other):
        return UPoly(self.ctx, _padd(self.ctx, list(self.c), self._other(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return UPoly(self.ctx, _psub(self.ctx, list(self.c), self._other(other)))

    def __rsub__(self, other):
        return UPoly(self.ctx, _psub(self.ctx, self._other(other), list(self.c)))

    def __neg__(self):
        return UPoly(self.ctx, [self.ctx.neg(a) for a in self.c])

    def __mul__(self, other):
        return UPoly(self.ctx, _pmul(self.ctx, list(self.c), self._other(other)))

    __rmul__ = __mul__

    def __pow__(self, e):
        result = UPoly(self.ctx, [self.ctx.one])
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __divmod__(self, other):
        g = self._other(other)
        if not g:
            raise DivisionByZero("polynomial division by zero")
        q, r = _pdivmod(self.ctx, list(self.c), g)
        return UPoly(self.ctx, q), UPoly(self.ctx, r)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def gcd(self, other):
        return UPoly(self.ctx, _pgcd(self.ctx, list(self.c), self._other(other)))

    def monic(self):
        if not self.c:
            raise ZeroPolynomial("zero polynomial has no monic form")
        return UPoly(self.ctx, _pmonic(self.ctx, list(self.c)))

    def derivative(self):
        ctx = self.ctx
        return UPoly(ctx, [ctx.mul(ctx.from_int(i), a) for i, a in enumerate(self.c)][1:])

    def __call__(self, x):
        """Evaluate at a field value (raw or :class:`FieldElem`), or at any
        object supporting ``+``, ``*`` and scalar multiplication by FieldElem
        (matrices, algebra elements)."""
        if isinstance(x, FieldElem) or not hasattr(x, "identity_like"):
            raw = self.ctx.coerce(x)
            return FieldElem(self.ctx, _peval(self.ctx, list(self.c), raw))
        acc = x.identity_like().scale(self.ctx.zero)
        for a in reversed(self.c):
            acc = acc * x + x.identity_like().scale(a)
        return acc

    def map(self, ctx, fn):
        """Coefficientwise image in another context."""
        return UPoly(ctx, [fn(a) for a in self.c])

    def __eq__(self, other):
        if isinstance(other, UPoly):
            return self.ctx == other.ctx and self.c == other.c
        return NotImplemented

    def __hash__(self):
        return hash((self.ctx, self.c))

    def format(self, var="t"):
        return _format_poly(self.ctx, list(self.c), var)

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"UPoly({self.ctx!r}, {self.format()})"


def poly_arithmetic(f, g, op):
    """``add``, ``mul``, ``divmod`` (returns ``(q, r)``) or ``gcd`` (monic)."""
    if f.ctx != g.ctx:
        raise ContextMismatch(f"{f.ctx!r} vs {g.ctx!r}")
    if op == "add":
        return f + g
    if op == "mul":
        return f * g
    if op == "divmod":
        return divmod(f, g)
    if op == "gcd":
        return f.gcd(g)
    raise ValueError(f"unknown op {op!r}")


def is_separable(f):
    """True iff ``gcd(f, f')`` is a nonzero constant."""
    if f.is_zero():
        raise ZeroPolynomial("separability of the zero polynomial")
    if f.degree < 1:
        raise ValueError("separability needs degree >= 1")
    return f.gcd(f.derivative()).degree == 0


# -- irreducibility ---------------------------------------------------------


def _int_divisors(n):
    n = abs(int(n))
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def _monic_integer_model(f):
    """Monic integer polynomial with the same irreducibility as monic ``f``.

    With ``D`` the lcm of the denominators, ``D^n f(t/D)`` is monic with
    integer coefficients.
    """
    n = f.degree
    D = 1
    for a in f.c:
        D = gmpy2.lcm(D, a.denominator)
    return [int(a * D ** (n - i)) for i, a in enumerate(f.c)]


def _has_int_root(c):
    # monic integer polynomial: rational roots are integer divisors of c[0]
    if c[0] == 0:
        return True
    for r in _int_divisors(c[0]):
        for s in (r, -r):
            acc = 0
            for a in reversed(c):
                acc = acc * s + a
            if acc == 0:
                return True
    return False


def _has_quadratic_factor(c):
    # (t^2 + b t + e)(t^2 + b' t + e') with integers (Gauss) against monic quartic c
    a0, a1, a2, a3 = c[0], c[1], c[2], c[3]
    for e in _int_divisors(a0):
        for e1 in (e, -e):
            e2 = a0 // e1
            # b + b' = a3, e2 + b b' + e1 = a2  ->  b^2 - a3 b + (a2 - e1 - e2) = 0
            disc = a3 * a3 - 4 * (a2 - e1 - e2)
            if disc < 0 or not gmpy2.is_square(disc):
                continue
            s = int(gmpy2.isqrt(disc))
            for num in (a3 + s, a3 - s):
                if num % 2:
                    continue
                b = num // 2
                b2 = a3 - b
                if b * e2 + b2 * e1 == a1:
                    return True
    return False


def _irreducible_mod_p(f):
    ctx = f.ctx
    p = ctx.modulus
    n = f.degree
    fc = list(f.c)
    for k in range(1, n // 2 + 1):
        for tail in _cartesian(range(p), repeat=k):
            g = list(tail) + [1]
            if not _pdivmod(ctx, fc, g)[1]:
                return False
    return True


def is_irreducible(f):
    """Irreducibility of a monic polynomial of degree >= 1.

    Over GF(p) any degree is accepted (trial division by every monic
    polynomial of degree at most ``deg f // 2``).  Over the rationals only
    degree <= 4 is supported: rational-root test plus an exact search for a
    quadratic factor.
    """
    if f.is_zero() or f.degree < 1:
        raise ValueError("irreducibility needs degree >= 1")
    if not f.is_monic():
        raise NotMonic("is_irreducible expects a monic polynomial")
    n = f.degree
    if n == 1:
        return True
    ctx = f.ctx
    if isinstance(ctx, PrimeField):
        return _irreducible_mod_p(f)
    if isinstance(ctx, RationalField):
        if n > 4:
            raise UnsupportedDegree(f"degree {n} > 4 over the rationals")
        c = _monic_integer_model(f)
        if _has_int_root(c):
            return False
        if n == 4 and _has_quadratic_factor(c):
            return False
        return True
    if isinstance(ctx, ExtensionField) and ctx.is_finite:
        fc = list(f.c)
        elems = list(ctx.elements())
        for k in range(1, n // 2 + 1):
            for tail in _cartesian(elems, repeat=k):
                if not _pdivmod(ctx, fc, list(tail) + [ctx.one])[1]:
                    return False
        return True
    raise UnsupportedDegree(f"irreducibility over {ctx!r} is not supported")
