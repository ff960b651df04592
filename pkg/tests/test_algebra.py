import itertools
import math
import random
from fractions import Fraction

import pytest
import sympy

from divring.algebra import (
    alg_inverse, center, commutators, element_minpoly_coeffs, from_table, hilbert_symbol,
    is_certified_division, is_division_quaternion, local_symbols, matrix_algebra, multiquadratic,
    quaternion, random_element, simple_extension,
)
from divring.errors import AlgebraMismatch, CharacteristicTwo, NotAssociative, ZeroParameter
from divring.exactfield import GF, QQ, UPoly


def hamilton_product(x, y, a, b):
    """Quaternion product for (a, b): i^2 = a, j^2 = b, k = ij, written out by hand."""
    x0, x1, x2, x3 = x
    y0, y1, y2, y3 = y
    return (
        x0 * y0 + a * x1 * y1 + b * x2 * y2 - a * b * x3 * y3,
        x0 * y1 + x1 * y0 - b * x2 * y3 + b * x3 * y2,
        x0 * y2 + x2 * y0 + a * x1 * y3 - a * x3 * y1,
        x0 * y3 + x3 * y0 + x1 * y2 - x2 * y1,
    )


def test_quaternion_relations(H):
    assert H.i * H.j == H.k
    assert H.j * H.i == -H.k
    assert H.k * H.k == -H.one()
    assert (H.one() + H.i) * (H.one() - H.i) == H.scalar(2)


@pytest.mark.parametrize("ab", [(-1, -1), (2, 3), (-2, 5), (3, -7)])
def test_quaternion_product_matches_formula(ab):
    a, b = ab
    Q = quaternion(QQ, a, b)
    rng = random.Random(0)
    for _ in range(200):
        x, y = random_element(Q, 5, rng), random_element(Q, 5, rng)
        assert (x * y).coords == hamilton_product(x.coords, y.coords, a, b)


def test_quaternion_errors():
    with pytest.raises(CharacteristicTwo):
        quaternion(GF(2), 1, 1)
    with pytest.raises(ZeroParameter):
        quaternion(QQ, 0, 1)


def test_quaternion_f5_associative():
    Q = quaternion(GF(5), -1, -1)  # construction checks all 64 triples
    basis = Q.basis()
    for x, y, z in itertools.product(basis, repeat=3):
        assert (x * y) * z == x * (y * z)


def test_matrix_units():
    M = matrix_algebra(QQ, 2)
    assert M.e12 * M.e21 == M.e11
    assert (M.e12 * M.e12).is_zero()
    assert matrix_algebra(GF(2), 3).dim == 9


def test_matrix_algebra_matches_sympy():
    M = matrix_algebra(QQ, 3)
    rng = random.Random(1)
    for _ in range(50):
        x, y = random_element(M, 4, rng), random_element(M, 4, rng)
        X = sympy.Matrix(3, 3, [int(v) for v in x.coords])
        Y = sympy.Matrix(3, 3, [int(v) for v in y.coords])
        # basis e11, e12, ... is row-major
        assert [int(v) for v in (x * y).coords] == list(X * Y)


@pytest.mark.parametrize("make", [
    lambda: quaternion(QQ, -1, -1),
    lambda: quaternion(GF(7), 3, 5),
    lambda: matrix_algebra(GF(3), 2),
    lambda: multiquadratic(QQ, [2, 3]),
])
def test_associativity_random(make):
    A = make()
    rng = random.Random(2)
    for _ in range(300):
        x, y, z = (random_element(A, 3, rng) for _ in range(3))
        assert (x * y) * z == x * (y * z)
        assert x * A.one() == x == A.one() * x


def test_bad_table_rejected():
    # e1 * e1 = e0 + e1 style table that breaks associativity
    consts = {(0, 0, 0): 1, (0, 1, 1): 1, (1, 0, 1): 1, (1, 1, 0): 1, (1, 1, 1): 1}
    from_table(QQ, 2, consts)  # t^2 = t + 1: commutative, fine
    bad = {(0, 0, 0): 1, (0, 1, 1): 1, (1, 0, 1): 1, (1, 1, 1): 1, (1, 1, 0): 1,
           (0, 0, 1): 1}
    with pytest.raises(NotAssociative):
        from_table(QQ, 2, bad)


def test_mismatched_algebras(H):
    with pytest.raises(AlgebraMismatch):
        H.i * matrix_algebra(QQ, 2).e11


def test_inverse_examples(H, M2):
    assert alg_inverse(H.i) == -H.i
    assert alg_inverse(M2.e11) is None
    x = H.one() + H.i + H.j + H.k
    assert alg_inverse(x) == (H.one() - H.i - H.j - H.k) / 4
    assert list(element_minpoly_coeffs(x)) == [4, -2, 1]


def test_inverse_random_division(H):
    rng = random.Random(3)
    for _ in range(2000):
        x = random_element(H, 5, rng)
        if x.is_zero():
            continue
        y = alg_inverse(x)
        assert y is not None
        assert x * y == H.one() == y * x


def test_inverse_matrix_ring_matches_sympy():
    M = matrix_algebra(QQ, 3)
    rng = random.Random(4)
    for _ in range(100):
        x = random_element(M, 1, rng)
        X = sympy.Matrix(3, 3, [int(v) for v in x.coords])
        y = alg_inverse(x)
        assert (y is None) == (X.det() == 0)
        if y is not None:
            assert x * y == M.one()


def test_center(H, M2):
    assert center(H) == [H.one()]
    z = center(M2)
    assert len(z) == 1 and z[0] == M2.e11 + M2.e22
    L = simple_extension(UPoly(QQ, [-2, 0, 1]))
    assert len(center(L)) == 2


def test_commutators(H):
    assert commutators(H.i, H.j) == (-H.one(), 2 * H.k)
    x = H.one() + 2 * H.j
    assert commutators(x, x) == (H.one(), H.zero())
    m, _ = commutators(H.i, H.one() + H.j)
    assert m == -H.j
    rng = random.Random(5)
    for _ in range(100):
        a, b = random_element(H, 3, rng), random_element(H, 3, rng)
        if a.is_zero() or b.is_zero():
            continue
        m, _ = commutators(a, b)
        assert alg_inverse(m) is not None


def test_random_element_deterministic(H):
    assert random_element(H, 5, 42) == random_element(H, 5, 42)
    M = matrix_algebra(GF(2), 2)
    seen = {random_element(M, 1, s).coords[0] for s in range(20)}
    assert seen == {0, 1}


# -- Hilbert symbols ----------------------------------------------------------


def isotropic_witness(a, b, height):
    """Nontrivial integer solution of a x^2 + b y^2 = z^2 with |x|, |y| <= height."""
    for x in range(0, height + 1):
        for y in range(-height, height + 1):
            if x == 0 and y == 0:
                continue
            v = a * x * x + b * y * y
            if v >= 0 and math.isqrt(v) ** 2 == v:
                return x, y, math.isqrt(v)
    return None


def test_division_examples():
    assert is_division_quaternion(-1, -1)
    assert not is_division_quaternion(1, 7)
    assert is_division_quaternion(2, 3)
    assert local_symbols(2, 3) == {"inf": 1, 2: -1, 3: -1}
    assert isotropic_witness(2, 3, 50) is None


def test_product_formula_and_isotropy():
    vals = [v for v in range(-10, 11) if v] + [Fraction(1, 2), Fraction(-3, 5)]
    for a, b in itertools.product(vals, repeat=2):
        syms = local_symbols(a, b)
        assert math.prod(syms.values()) == 1, (a, b)
        if a.__class__ is int and b.__class__ is int:
            w = isotropic_witness(a, b, 30)
            if w is not None:
                assert not is_division_quaternion(a, b), (a, b, w)
            if not is_division_quaternion(a, b):
                assert w is not None, (a, b)


def test_hilbert_symbol_odd_prime_matches_legendre():
    # for units u, v at p: (u, v)_p = 1, (u, p)_p = Legendre(u | p)
    for p in (3, 5, 7, 11, 13):
        for u in range(1, 40):
            if u % p == 0:
                continue
            assert hilbert_symbol(u, p, p) == sympy.legendre_symbol(u % p, p)
            assert hilbert_symbol(u, u + p * 3 if (u + 3 * p) % p else u, p) == 1


def test_certified_division(H, M2):
    assert is_certified_division(H) is True
    assert is_certified_division(quaternion(QQ, 1, 5)) is False
    assert is_certified_division(M2) is False
