from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given

from octopara import octonion as O
from octopara.errors import DimensionMismatch, NotParaLinear, ShapeMismatch
from octopara.omodule import OVector, inner_product, re_project, scale
from octopara.paralinear import (
    ParaLinearOperator,
    adjoint,
    apply,
    composition_associator,
    distance,
    o_linear_defect,
    op_real_part,
    operator_B_p,
    operator_norm,
    paralinear_defect,
    regular_compose,
    scalar_action,
    triple_associator,
)
from octopara.sampling import make_rng, random_operator, random_real_vector, random_vector
from octopara.spectral import slice_projection
from octopara.sampling import random_slice

from conftest import assert_small, dims, octonions, seeds

e = O.basis
I = ParaLinearOperator.identity


def _olinear(rng, n):
    # an O-linear operator: real n x n matrix acting on every coefficient
    A = rng.standard_normal((n, n))
    return ParaLinearOperator.octonion_matrix(np.einsum("kl,c->klc", A, e(0)))


def test_from_core_examples():
    n = 2
    core = np.zeros((n, 8 * n))
    for k in range(n):
        core[k, 8 * k] = 1.0
    assert np.array_equal(ParaLinearOperator(core).matrix, np.eye(8 * n))
    assert np.array_equal(ParaLinearOperator.zero(n).matrix, np.zeros((16, 16)))
    with pytest.raises(ShapeMismatch):
        ParaLinearOperator(np.zeros((2, 15)))


@given(seeds, dims, octonions)
def test_left_mult_matches_componentwise(seed, n, p):
    x = random_vector(make_rng(seed), n)
    assert_small(apply(ParaLinearOperator.left_mult(p, n), x).flat - scale(x, p, "left").flat, 1e-12 * (1 + np.abs(p).max()))


def test_from_real_matrix_examples():
    assert ParaLinearOperator.from_real_matrix(np.eye(8)).allclose(I(1), 0.0)
    L = ParaLinearOperator.left_mult(e(1), 2)
    assert ParaLinearOperator.from_real_matrix(L.matrix).allclose(L, 0.0)
    M = np.zeros((8, 8))
    M[1, 0] = 1.0  # one real coefficient sent to e1, nothing else
    with pytest.raises(NotParaLinear) as info:
        ParaLinearOperator.from_real_matrix(M)
    assert info.value.residual > 0.1
    assert paralinear_defect(M) > 0.1


@given(seeds, dims)
def test_built_operators_are_paralinear(seed, n):
    T = random_operator(make_rng(seed), n)
    for k in range(n):
        for i in range(8):
            x = OVector.basis_vector(n, k, i)
            for j in range(1, 8):
                assert_small(operator_B_p(T, x, e(j)).components[:, 0], 1e-12)
    assert paralinear_defect(T.matrix) <= 1e-12


@given(seeds, dims)
def test_characterizations_agree(seed, n):
    rng = make_rng(seed)
    T = random_operator(rng, n)
    x, p = random_vector(rng, n), rng.standard_normal(8)
    # core formula: B_p(T, x) = sum_i f_R([x, p, e_i]) e_i
    acc = np.zeros((n, 8))
    for i in range(1, 8):
        a = scale(scale(x, p, "right"), e(i), "right") - scale(x, O.mul(p, e(i)), "right")
        fr = T.core @ a.flat
        acc += np.outer(fr, e(i))
    assert_small(operator_B_p(T, x, p).components - acc, 1e-11)
    # the restriction to Re H determines T
    images = np.stack([T(OVector.basis_vector(n, k, 0)).components for k in range(n)], axis=0)
    assert distance(ParaLinearOperator.from_restriction(images), T) <= 1e-12


def test_apply_examples():
    rng = make_rng(1)
    x = random_vector(rng, 2)
    assert apply(I(2), x) == x
    u = OVector.basis_vector(2, 1, 0)
    assert_small(apply(slice_projection(u), u).flat - u.flat, 1e-15)
    with pytest.raises(DimensionMismatch):
        apply(I(2), random_vector(rng, 3))


@given(seeds, dims)
def test_B_p_examples(seed, n):
    rng = make_rng(seed)
    T, x, p = random_operator(rng, n), random_vector(rng, n), rng.standard_normal(8)
    assert_small(operator_B_p(I(n), x, p).flat, 1e-12)
    assert_small(operator_B_p(T, random_real_vector(rng, n), p).flat, 1e-11)
    r = rng.standard_normal(8)
    b = operator_B_p(T, x, r)
    assert_small(operator_B_p(T, scale(x, r, "right"), r).flat - scale(b, O.conj(r), "right").flat, 1e-10)
    assert_small(scale(b, O.conj(r), "right").flat - scale(b, r, "left").flat, 1e-10)


@given(seeds, dims, octonions)
def test_regular_compose_examples(seed, n, p):
    rng = make_rng(seed)
    T, S = random_operator(rng, n), random_operator(rng, n)
    assert distance(regular_compose(I(n), T), T) <= 1e-12
    G = _olinear(rng, n)
    assert_small(regular_compose(S, G).matrix - S.matrix @ G.matrix, 1e-11)
    s = 1 + np.abs(p).max()
    L = ParaLinearOperator.left_mult(p, n)
    assert distance(regular_compose(L, T), scalar_action(T, p, "left")) <= 1e-11 * s
    # right multiplication counterpart
    assert distance(regular_compose(T, L), scalar_action(T, p, "right")) <= 1e-11 * s
    x = random_vector(rng, n)
    assert_small(re_project((S @ T)(x)).flat - re_project(S(T(x))).flat, 1e-11)


def test_left_mult_compose_is_not_left_action():
    # T (*) L_p equals T . p, not p . T
    rng = make_rng(2)
    T, p = random_operator(rng, 2), rng.standard_normal(8)
    TL = regular_compose(T, ParaLinearOperator.left_mult(p, 2))
    assert distance(TL, scalar_action(T, p, "left")) > 1e-3


@given(seeds, dims)
def test_composition_associator_examples(seed, n):
    rng = make_rng(seed)
    f, g, x, p = random_operator(rng, n), random_operator(rng, n), random_vector(rng, n), rng.standard_normal(8)
    assert_small(composition_associator(f, _olinear(rng, n), x).flat, 1e-11)
    assert_small(composition_associator(f, g, random_real_vector(rng, n)).flat, 1e-11)
    L = ParaLinearOperator.left_mult(p, n)
    assert_small(composition_associator(L, f, x).flat - operator_B_p(f, x, p).flat, 1e-10)
    # literal formula
    acc = np.zeros((n, 8))
    for i in range(1, 8):
        acc += np.outer(re_project(f(operator_B_p(g, x, e(i)))).components[:, 0], e(i))
    assert_small(composition_associator(f, g, x).components - acc, 1e-10)


@given(seeds, dims)
def test_triple_associator(seed, n):
    rng = make_rng(seed)
    T, x, y = random_operator(rng, n), random_vector(rng, n), random_vector(rng, n)
    assert_small(triple_associator(y, I(n), x).coeffs, 1e-12)
    assert_small(triple_associator(random_real_vector(rng, n), T, x).coeffs, 1e-12)
    t = triple_associator(y, T, x).coeffs
    assert abs(t[0]) <= 1e-12
    assert_small(t - triple_associator(x, adjoint(T), y).coeffs, 1e-11)


@given(seeds, dims)
def test_adjoint_contract(seed, n):
    rng = make_rng(seed)
    T, x, y = random_operator(rng, n), random_vector(rng, n), random_vector(rng, n)
    lhs = inner_product(x, adjoint(T)(y)).coeffs
    rhs = inner_product(T(x), y).coeffs - triple_associator(y, T, x).coeffs
    assert_small(lhs - rhs, 1e-11)


def test_adjoint_contract_with_plus_sign_fails():
    # The "+ [y,T,x]" form cannot hold for any adjoint: its real part forces the
    # transpose, and the transpose then satisfies the "-" form instead.
    rng = make_rng(9)
    T, x, y = random_operator(rng, 2), random_vector(rng, 2), random_vector(rng, 2)
    lhs = inner_product(x, adjoint(T)(y)).coeffs
    trip = triple_associator(y, T, x).coeffs
    assert np.abs(trip).max() > 1e-2
    assert np.abs(lhs - inner_product(T(x), y).coeffs - trip).max() > 1e-2


@given(seeds, dims, octonions)
def test_adjoint_involution(seed, n, r):
    rng = make_rng(seed)
    S, T = random_operator(rng, n), random_operator(rng, n)
    s = 1 + np.abs(r).max()
    assert distance(adjoint(adjoint(T)), T) == 0.0
    assert operator_norm(adjoint(T)) == pytest.approx(operator_norm(T), rel=1e-12)
    assert distance(adjoint(S @ T), adjoint(T) @ adjoint(S)) <= 1e-11
    assert distance(adjoint(scalar_action(T, r, "left")), scalar_action(adjoint(T), O.conj(r), "right")) <= 1e-11 * s
    assert paralinear_defect(adjoint(T).matrix) <= 1e-12


def test_adjoint_examples():
    rng = make_rng(10)
    p = rng.standard_normal(8)
    assert distance(adjoint(I(2)), I(2)) == 0
    assert distance(adjoint(ParaLinearOperator.left_mult(p, 2)), ParaLinearOperator.left_mult(O.conj(p), 2)) <= 1e-14
    P = slice_projection(random_slice(rng, 3))
    assert distance(adjoint(P), P) <= 1e-14


@given(seeds, dims, octonions)
def test_scalar_action(seed, n, r):
    rng = make_rng(seed)
    T, x = random_operator(rng, n), random_vector(rng, n)
    s = 1 + np.abs(r).max()
    assert distance(scalar_action(T, O.real(1.0), "left"), T) <= 1e-13
    assert distance(scalar_action(I(n), r, "left"), ParaLinearOperator.left_mult(r, n)) <= 1e-12 * s
    left = scalar_action(T, r, "left")(x).flat
    assert_small(left - (scale(T(x), r, "left") + operator_B_p(T, x, r)).flat, 1e-10 * s * s)
    right = scalar_action(T, r, "right")(x).flat
    assert_small(right - (T(scale(x, r, "left")) - operator_B_p(T, x, r)).flat, 1e-10 * s * s)
    if O.norm(r) > 1e-3:
        nT = operator_norm(T)
        assert operator_norm(scalar_action(T, r, "left")) == pytest.approx(O.norm(r) * nT, rel=1e-11)
        assert operator_norm(scalar_action(T, r, "right")) == pytest.approx(O.norm(r) * nT, rel=1e-11)
    with pytest.raises(ValueError):
        scalar_action(T, r, "up")


def test_operator_class_sugar():
    rng = make_rng(11)
    T, r = random_operator(rng, 2), rng.standard_normal(8)
    assert distance(T * O.Octonion(r), scalar_action(T, r, "right")) <= 1e-14
    assert distance(O.Octonion(r) * T, scalar_action(T, r, "left")) <= 1e-14
    assert distance(2.0 * T, T + T) <= 1e-14
    assert distance(T - T, ParaLinearOperator.zero(2)) == 0
    assert distance(T.T, adjoint(T)) == 0


@given(seeds, dims)
def test_operator_norm(seed, n):
    rng = make_rng(seed)
    p = rng.standard_normal(8)
    assert operator_norm(I(n)) == pytest.approx(1.0)
    assert operator_norm(ParaLinearOperator.left_mult(p, n)) == pytest.approx(O.norm(p), rel=1e-12)
    S, T = random_operator(rng, n), random_operator(rng, n)
    assert operator_norm(S @ T) <= 8 * operator_norm(S) * operator_norm(T)


@given(seeds, dims)
def test_op_real_part(seed, n):
    rng = make_rng(seed)
    T = random_operator(rng, n)
    assert distance(op_real_part(I(n)), I(n)) <= 1e-13
    assert operator_norm(op_real_part(ParaLinearOperator.left_mult(e(1), n))) <= 1e-13
    R = op_real_part(T)
    assert distance(op_real_part(R), R) <= 1e-12
    assert o_linear_defect(R) <= 1e-12
