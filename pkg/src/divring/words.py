"""Words in the free monoid on ``x1 .. xm``, degree-lex order, and the
power / dominant-split decompositions of long words.

Order convention: shorter words are smaller; words of equal length compare
letterwise with ``x1 > x2 > ... > xm``.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from functools import total_ordering

from .errors import AlphabetMismatch, NotFoundUpTo, ParseError

_LETTER = re.compile(r"\s*x(\d)")


@total_ordering
class Word:
    """Immutable word; ``letters`` are indices in ``1..m``."""

    __slots__ = ("m", "letters")

    def __init__(self, letters=(), m=2):
        letters = tuple(int(a) for a in letters)
        for a in letters:
            if not 1 <= a <= m:
                raise ValueError(f"letter x{a} outside alphabet of size {m}")
        self.m = m
        self.letters = letters

    @classmethod
    def parse(cls, text, m=None):
        """``"x1 x2 x1"`` or ``"x1x2x1"``; ``""``, ``"1"`` and ``"ε"`` are the empty word."""
        t = text.strip()
        if t in ("", "1", "ε"):
            return cls((), m or 1)
        letters = []
        pos = 0
        while pos < len(t):
            mt = _LETTER.match(t, pos)
            if not mt:
                if t[pos:].strip() == "":
                    break
                raise ParseError(f"bad word syntax at {t[pos:]!r}", 1, pos + 1)
            letters.append(int(mt.group(1)))
            pos = mt.end()
        if any(a < 1 for a in letters):
            raise ParseError("letters start at x1", 1, 1)
        return cls(letters, m or max(letters))

    def key(self):
        return (len(self.letters), tuple(-a for a in self.letters))

    def _same(self, other):
        if not isinstance(other, Word):
            return NotImplemented
        if other.m != self.m:
            raise AlphabetMismatch(f"alphabets of size {self.m} and {other.m}")
        return True

    def __eq__(self, other):
        if not isinstance(other, Word):
            return NotImplemented
        return self.m == other.m and self.letters == other.letters

    def __lt__(self, other):
        if self._same(other) is NotImplemented:
            return NotImplemented
        return self.key() < other.key()

    def __hash__(self):
        return hash((self.m, self.letters))

    def __len__(self):
        return len(self.letters)

    def __getitem__(self, idx):
        if isinstance(idx, slice):
            return Word(self.letters[idx], self.m)
        return self.letters[idx]

    def __mul__(self, other):
        self._same(other)
        return Word(self.letters + other.letters, self.m)

    def __pow__(self, e):
        return Word(self.letters * e, self.m)

    def evaluate(self, gens, one=None):
        """Product of the generators; ``one`` is used for the empty word."""
        if len(gens) < self.m:
            raise AlphabetMismatch(f"{len(gens)} generators for an alphabet of size {self.m}")
        if not self.letters:
            return gens[0].alg.one() if one is None else one
        acc = gens[self.letters[0] - 1]
        for a in self.letters[1:]:
            acc = acc * gens[a - 1]
        return acc

    def __str__(self):
        return " ".join(f"x{a}" for a in self.letters) if self.letters else "1"

    def __repr__(self):
        return f"Word({str(self)!r})"


def word(text, m=2):
    return Word.parse(text, m)


def deglex_cmp(u, v):
    """``-1``, ``0`` or ``1``."""
    if u.m != v.m:
        raise AlphabetMismatch(f"alphabets of size {u.m} and {v.m}")
    ku, kv = u.key(), v.key()
    return (ku > kv) - (ku < kv)


def all_words(m, length):
    for letters in itertools.product(range(1, m + 1), repeat=length):
        yield Word(letters, m)


# -- decompositions -----------------------------------------------------------


@dataclass(frozen=True)
class Power:
    v1: Word
    u: Word
    v2: Word
    d: int
    variant: str = "Power"

    def word(self):
        return self.v1 * self.u ** self.d * self.v2

    def __str__(self):
        return f"Power(v1={self.v1}, u={self.u}, d={self.d}, v2={self.v2})"


@dataclass(frozen=True)
class Shirshov:
    v1: Word
    us: tuple
    v2: Word
    variant: str = "Shirshov"

    @property
    def d(self):
        return len(self.us)

    def word(self):
        w = self.v1
        for u in self.us:
            w = w * u
        return w * self.v2

    def __str__(self):
        parts = ", ".join(f"u{i + 1}={u}" for i, u in enumerate(self.us))
        return f"Shirshov(v1={self.v1}, {parts}, v2={self.v2})"


def power_factorization(w, d):
    """Leftmost, then shortest, factor of ``w`` that is a ``d``-th power."""
    if d < 2:
        raise ValueError("d must be >= 2")
    L = w.letters
    n = len(L)
    for start in range(n):
        for p in range(1, (n - start) // d + 1):
            u = L[start:start + p]
            if L[start:start + p * d] == u * d:
                return Power(w[:start], w[start:start + p], w[start + p * d:], d)
    return None


def is_dominant(us):
    """``u_1 ... u_d`` strictly above every nontrivially permuted product, and
    ``(d-1) len(u_i) < len(u_1 ... u_d)`` for all ``i``."""
    d = len(us)
    total = sum(len(u) for u in us)
    if any((d - 1) * len(u) >= total for u in us):
        return False
    base = tuple(-a for u in us for a in u.letters)
    for perm in itertools.permutations(range(d)):
        if perm == tuple(range(d)):
            continue
        other = tuple(-a for i in perm for a in us[i].letters)
        if not other < base:
            return False
    return True


def shirshov_split(w, d):
    """First dominant split in the canonical order: ``len(v1)`` ascending, then
    ``len(v2)`` ascending, then cut points lexicographically."""
    if d < 2:
        raise ValueError("d must be >= 2")
    n = len(w)
    for a in range(n - d + 1):
        for b in range(n - a - d + 1):
            mid = w[a:n - b]
            for cuts in itertools.combinations(range(1, len(mid)), d - 1):
                bounds = (0,) + cuts + (len(mid),)
                us = tuple(mid[bounds[i]:bounds[i + 1]] for i in range(d))
                if is_dominant(us):
                    return Shirshov(w[:a], us, w[n - b:])
    return None


def bell_decompose(w, d):
    """Power factorization if there is one, otherwise a dominant split."""
    return power_factorization(w, d) or shirshov_split(w, d)


def estimate_bound_n(m, d, max_len):
    """Smallest ``n <= max_len`` such that every word of length in ``(n, max_len]``
    decomposes; found by exhaustive enumeration."""
    worst = 0
    for length in range(max_len, -1, -1):
        if any(bell_decompose(w, d) is None for w in all_words(m, length)):
            worst = length
            break
    if worst == max_len:
        raise NotFoundUpTo(max_len)
    return worst


def undecomposable_words(m, d, length):
    return [w for w in all_words(m, length) if bell_decompose(w, d) is None]


def polarization_terms(d):
    """Terms of ``u_1 ... u_d = sum_T (-1)^{d-|T|} u_T^d - sum_{s != id} u_{s(1)} ... u_{s(d)}``.

    Returns ``(subsets, permutations)``: subsets as 1-based index tuples
    ordered by size then lexicographically, each with its sign; permutations
    as 1-based tuples in lexicographic order, identity excluded.
    """
    if d < 1:
        raise ValueError("d must be >= 1")
    idx = range(1, d + 1)
    subsets = [(T, (-1) ** (d - size)) for size in idx for T in itertools.combinations(idx, size)]
    perms = [p for p in itertools.permutations(idx) if p != tuple(idx)]
    return subsets, perms


# -- formal sums ----------------------------------------------------------------


class FormalSum:
    """Finite combination ``sum c_w w`` with coefficients in ``field`` (raw values)."""

    def __init__(self, field, terms=None):
        self.field = field
        self.terms = {}
        for w, c in (terms or {}).items():
            self._add(w, field.coerce(c))

    @classmethod
    def of(cls, field, w, coeff=None):
        return cls(field, {w: field.one if coeff is None else coeff})

    def _add(self, w, c):
        f = self.field
        s = f.add(self.terms.get(w, f.zero), c)
        if f.is_zero(s):
            self.terms.pop(w, None)
        else:
            self.terms[w] = s

    def copy(self):
        out = FormalSum(self.field)
        out.terms = dict(self.terms)
        return out

    def __add__(self, other):
        out = self.copy()
        for w, c in other.terms.items():
            out._add(w, c)
        return out

    def __sub__(self, other):
        return self + other.scale(self.field.neg(self.field.one))

    def __neg__(self):
        return self.scale(self.field.neg(self.field.one))

    def scale(self, c):
        f = self.field
        out = FormalSum(f)
        if not f.is_zero(c):
            out.terms = {w: f.mul(c, v) for w, v in self.terms.items()}
        return out

    def __eq__(self, other):
        return isinstance(other, FormalSum) and self.field == other.field and self.terms == other.terms

    def __len__(self):
        return len(self.terms)

    def __iter__(self):
        return iter(sorted(self.terms.items(), key=lambda kv: kv[0].key(), reverse=True))

    def support(self):
        return sorted(self.terms, key=Word.key, reverse=True)

    def max_length(self):
        return max((len(w) for w in self.terms), default=0)

    def evaluate(self, gens, embed=None):
        """``sum embed(c) * w(gens)``; ``embed`` maps coefficients into the algebra
        (defaults to scalars)."""
        alg = gens[0].alg
        acc = alg.zero()
        for w, c in self.terms.items():
            coef = embed(c) if embed is not None else alg.scalar(c)
            acc = acc + coef * w.evaluate(gens)
        return acc

    def format(self):
        if not self.terms:
            return "0"
        parts = []
        for w, c in self:
            cs = self.field.format(c)
            parts.append(f"({cs})*[{w}]")
        return " + ".join(parts)

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"FormalSum({self.format()})"
