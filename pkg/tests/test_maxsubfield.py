import itertools
import random

import pytest
import sympy

from divring.algebra import matrix_algebra, multiquadratic, quaternion, random_element, simple_extension
from divring.errors import (
    BadBlockStructure, CentralElement, DimensionNotSquare, NotInvertible, SearchExhausted,
)
from divring.exactfield import GF, QQ, ExtensionField, UPoly
from divring.linalg import Matrix, companion, direct_sum, minpoly_matrix
from divring.maxsubfield import (
    build_l33_basis, companion_blocks, is_max_subfield_gen, search_add_commutator, search_l34,
    search_mult_commutator, verify_bound_d2, verify_case1_identity,
)


def C(ctx, *coeffs):
    return companion(UPoly(ctx, list(coeffs)))


def sympy_minpoly_degree(M):
    S = sympy.Matrix([[sympy.Rational(int(a.numerator), int(a.denominator)) for a in row] for row in M.data])
    n = S.shape[0]
    powers = [sympy.eye(n)]
    while True:
        powers.append(powers[-1] * S)
        if sympy.Matrix.hstack(*[p.reshape(n * n, 1) for p in powers]).rank() < len(powers):
            return len(powers) - 1


def test_max_subfield_gen_examples(H):
    assert is_max_subfield_gen(H.j)
    assert not is_max_subfield_gen(H.scalar(3))
    Q = quaternion(QQ, 2, 3)
    assert is_max_subfield_gen(2 * Q.k)
    with pytest.raises(DimensionNotSquare):
        is_max_subfield_gen(simple_extension(UPoly(QQ, [-2, 0, 0, 1])).basis(1))


def test_every_noncentral_small_quaternion_is_maximal(H):
    for c in itertools.product(range(-3, 4), repeat=4):
        x = H.element(c)
        assert is_max_subfield_gen(x) == (not x.is_central())


def test_mult_commutator_example(H):
    w = search_mult_commutator(H.i, 50, 0)
    assert w.partner == H.one() + H.j
    assert w.commutator == -H.j
    assert w.minpoly == UPoly(QQ, [1, 0, 1])
    # the scan rejects b = j first: its commutator is central
    assert (H.i * H.j * H.i.inverse() * H.j.inverse()) == -H.one()
    with pytest.raises(CentralElement):
        search_mult_commutator(H.scalar(2))


def test_add_commutator_example(H):
    w = search_add_commutator(H.i, 50, 0)
    assert w.partner == H.j and w.commutator == 2 * H.k
    assert w.minpoly == UPoly(QQ, [4, 0, 1])
    with pytest.raises(CentralElement):
        search_add_commutator(H.one())


def test_commutator_search_surrogates():
    M5 = matrix_algebra(GF(5), 3)
    a = M5.e11 + 2 * M5.e22 + 3 * M5.e33
    w = search_mult_commutator(a, 200, 0)
    assert w.commutator == a * w.partner * a.inverse() * w.partner.inverse()
    assert minpoly_matrix(M5.to_matrix(w.commutator)).degree == 3
    M4 = matrix_algebra(QQ, 4)
    a = M4.from_matrix(direct_sum([C(QQ, 1, 0, 1), C(QQ, -2, 0, 1)]))
    w = search_add_commutator(a, 200, 0)
    assert sympy_minpoly_degree(M4.to_matrix(w.commutator)) == 4


def test_search_exhausted_reports_stats(H):
    with pytest.raises(SearchExhausted) as exc:
        search_mult_commutator(H.i, 3, 0)
    assert exc.value.stats["tried"] == 3


def test_case1_examples(H):
    assert verify_case1_identity(H.i, H.j) == H.scalar(2)
    assert verify_case1_identity(H.i, H.one()).is_zero()
    with pytest.raises(NotInvertible):
        verify_case1_identity(H.i, -H.one())  # alpha + 1 = 0


def test_case1_random(H):
    rng = random.Random(0)
    checked = 0
    while checked < 200:
        a, alpha = random_element(H, 4, rng), random_element(H, 4, rng)
        if a.is_zero() or alpha.is_zero() or (alpha + H.one()).is_zero():
            continue
        value = verify_case1_identity(a, alpha)
        assert value == H.one() - alpha.inverse() * a * alpha * a.inverse()
        checked += 1


def test_l33_q_sqrt2_sqrt3():
    L = multiquadratic(QQ, [2, 3])
    basis, mat = build_l33_basis(L, L.b1, L.b2)
    assert mat == direct_sum([C(QQ, -2, 0, 1)] * 2)
    # oracle: Q[s, t] / (s^2 - 2, t^2 - 3) with basis 1, s, t, st; column s = coords of s * basis_s
    s, t = sympy.symbols("s t")
    sym_basis = [sympy.Integer(1), s, t, s * t]
    rows = [[0] * 4 for _ in range(4)]
    for col, b in enumerate(sym_basis):
        _, rem = sympy.reduced(sympy.expand(s * b), [s**2 - 2, t**2 - 3], s, t)
        poly = sympy.Poly(rem, s, t)
        for r, mono in enumerate([(0, 0), (1, 0), (0, 1), (1, 1)]):
            rows[r][col] = poly.coeff_monomial(mono)
    assert [[int(v) for v in row] for row in mat.data] == rows


def test_l33_degenerate_cases():
    L = multiquadratic(QQ, [2])
    _, mat = build_l33_basis(L, L.b1, L.one())
    assert mat == C(QQ, -2, 0, 1)
    L4 = multiquadratic(QQ, [2, 3])
    _, mat = build_l33_basis(L4, L4.one(), L4.b1 + L4.b2)
    assert mat == Matrix.identity(QQ, 4)


def test_companion_blocks():
    M = direct_sum([C(QQ, 1, 0, 1), C(QQ, -2, 0, 1)])
    assert companion_blocks(M) == [UPoly(QQ, [1, 0, 1]), UPoly(QQ, [-2, 0, 1])]


def test_l34_rational():
    Cm = direct_sum([C(QQ, 1, 0, 1), C(QQ, -2, 0, 1)])
    r = search_l34(Cm, 500, 0)
    assert r.mult_minpoly.degree == r.add_minpoly.degree == 4
    assert r.mult_witness == Cm @ r.A @ Cm.inverse() @ r.A.inverse()
    assert r.add_witness == r.B @ Cm - Cm @ r.B
    assert sympy_minpoly_degree(r.mult_witness) == 4 and sympy_minpoly_degree(r.add_witness) == 4
    assert r.B_field == "F"


def test_l34_bad_blocks():
    with pytest.raises(BadBlockStructure):
        search_l34(direct_sum([C(QQ, -1, 1), C(QQ, 1, 0, 1)]), 10, 0)
    with pytest.raises(BadBlockStructure):
        search_l34(C(QQ, 1, 0, 1), 10, 0)


def test_l34_f5():
    F = GF(5)
    Cm = direct_sum([C(F, 1, 1, 1), C(F, 1, 0, 1)])
    r = search_l34(Cm, 500, 0)
    assert minpoly_matrix(r.mult_witness).degree == 4
    assert minpoly_matrix(r.add_witness).degree == 4


def test_l34_k_phase_runs():
    # with a tiny F-budget the K phase is reached and its certificate is over the base field
    K = ExtensionField(UPoly(QQ, [1, 0, 1]), var="i")
    Cm = direct_sum([C(QQ, 1, 0, 1), C(QQ, -2, 0, 1)])
    r = search_l34(Cm, 500, 0, K=K)
    assert r.B_field in ("F", "K") and r.add_minpoly.ctx is QQ


def test_bound_report(H):
    sample = [random_element(H, 3, s) for s in range(30)]
    rep = verify_bound_d2(H, None, "normal_subgroup", sample)
    assert (rep.d, rep.n, rep.dim_over_center, rep.bound_holds) == (2, 2, 4, True)
    rep = verify_bound_d2(H, None, "add_comm", sample)
    assert rep.witness == 2 * H.k and rep.d == 2
    rep = verify_bound_d2(H, None, "mult_comm", sample)
    assert rep.d == 2 and rep.certificate == UPoly(QQ, [1, 0, 1])
    assert list(rep.as_dict())[:5] == ["mode", "d", "n", "witness", "certificate"]
    L = simple_extension(UPoly(QQ, [-2, 0, 1]))
    rep = verify_bound_d2(L, None, "normal_subgroup", L.basis())
    assert (rep.d, rep.dim_over_center) == (1, 1)
