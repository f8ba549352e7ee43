from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings

from octopara import octonion as O
from octopara.errors import DimensionMismatch, NotRealPart
from octopara.omodule import OVector, inner_product
from octopara.paralinear import ParaLinearOperator, distance
from octopara.polarization import (
    QuadraticFormProbe,
    abc_terms,
    is_self_adjoint,
    m_form,
    reconstruct_operator,
    reconstruct_re,
    sesquilinear,
)
from octopara.sampling import make_rng, random_operator, random_real_vector, random_self_adjoint, random_slice, random_vector
from octopara.spectral import slice_projection

from conftest import assert_small, dims, seeds

I = ParaLinearOperator.identity


def probe(T):
    return QuadraticFormProbe.from_operator(T)


def test_m_form_identity_examples():
    Q = probe(I(2))
    u0, u1 = OVector.basis_vector(2, 0), OVector.basis_vector(2, 1)
    assert_small(m_form(Q, u0, u1).coeffs, 1e-15)
    assert_small(m_form(Q, u0, u0).coeffs - 2 * O.real(1.0), 1e-15)
    with pytest.raises(DimensionMismatch):
        m_form(Q, u0, OVector.basis_vector(3, 0))


@given(seeds, dims)
def test_m_form_symmetric(seed, n):
    rng = make_rng(seed)
    T, x, y = random_operator(rng, n), random_vector(rng, n), random_vector(rng, n)
    Q = probe(T)
    m = m_form(Q, x, y).coeffs
    assert_small(m - m_form(Q, y, x).coeffs, 1e-11)
    want = inner_product(T(x), y).coeffs + inner_product(T(y), x).coeffs
    assert_small(m - want, 1e-11)


def test_abc_identity_and_zero():
    rng = make_rng(1)
    x, y = random_real_vector(rng, 3), random_real_vector(rng, 3)
    alpha = inner_product(x, y).coeffs[0]
    for i in range(1, 8):
        for j in range(1, 8):
            t = abc_terms(probe(I(3)), x, y, i, j)
            assert_small(t["A"].coeffs - 2 * alpha * O.real(1.0), 1e-12)
            assert_small(t["B"].coeffs, 1e-12)
            assert_small(t["C"].coeffs, 1e-12)
            z = abc_terms(probe(ParaLinearOperator.zero(3)), x, y, i, j)
            assert all(np.abs(v.coeffs).max() == 0 for v in z.values())
    with pytest.raises(NotRealPart):
        abc_terms(probe(I(3)), random_vector(rng, 3), y, 1, 2)
    with pytest.raises(ValueError):
        abc_terms(probe(I(3)), x, y, 0, 2)


@given(seeds, dims)
def test_abc_conjugate_symmetry_for_self_adjoint(seed, n):
    rng = make_rng(seed)
    Q = probe(random_self_adjoint(rng, n))
    x, y = random_real_vector(rng, n), random_real_vector(rng, n)
    i, j = (int(v) for v in rng.integers(1, 8, size=2))
    assert_small(O.conj(abc_terms(Q, y, x, i, j)["A"].coeffs) - abc_terms(Q, x, y, i, j)["A"].coeffs, 1e-10)


def test_reconstruct_re_identity_bookkeeping():
    rng = make_rng(2)
    x, y = random_real_vector(rng, 2), random_real_vector(rng, 2)
    alpha = inner_product(x, y).coeffs[0]
    value, terms = reconstruct_re(probe(I(2)), x, y, return_terms=True)
    # mixed 168/56 = 3, diagonal 98/98 = 1, half of m = 1; 3 - 1 - 1 = 1
    assert terms["mixed"].coeffs[0] == pytest.approx(3 * alpha, abs=1e-13)
    assert terms["diag"].coeffs[0] == pytest.approx(alpha, abs=1e-13)
    assert terms["half_m"].coeffs[0] == pytest.approx(alpha, abs=1e-13)
    assert_small(value.coeffs - alpha * O.real(1.0), 1e-13)
    assert_small(reconstruct_re(probe(ParaLinearOperator.zero(2)), x, y).coeffs, 0.0)


@given(seeds, dims)
def test_reconstruct_re_matches_operator(seed, n):
    rng = make_rng(seed)
    T, x, y = random_operator(rng, n), random_real_vector(rng, n), random_real_vector(rng, n)
    assert_small(reconstruct_re(probe(T), x, y).coeffs - inner_product(T(x), y).coeffs, 1e-10)


@settings(max_examples=12)
@given(seeds, dims)
def test_sesquilinear_on_general_vectors(seed, n):
    rng = make_rng(seed)
    T, x, y = random_operator(rng, n), random_vector(rng, n), random_vector(rng, n)
    assert_small(sesquilinear(probe(T), x, y).coeffs - inner_product(T(x), y).coeffs, 1e-9)


def test_reconstruct_operator_examples():
    zero = QuadraticFormProbe(lambda x: np.zeros(8), 2)
    assert np.abs(reconstruct_operator(zero).matrix).max() == 0.0
    assert distance(reconstruct_operator(probe(I(2))), I(2)) <= 1e-10


@settings(max_examples=12)
@given(seeds, dims)
def test_reconstruct_operator_round_trip(seed, n):
    T = random_operator(make_rng(seed), n)
    assert distance(reconstruct_operator(probe(T)), T) <= 1e-9


def test_probe_counts_calls():
    Q = probe(I(1))
    Q(OVector.basis_vector(1, 0))
    Q(OVector.basis_vector(1, 0))
    assert Q.calls == 2


def test_self_adjoint_examples():
    rng = make_rng(3)
    P = slice_projection(random_slice(rng, 3))
    L = ParaLinearOperator.left_mult(O.basis(1), 2)
    for mode in ("exact", "sampled"):
        assert is_self_adjoint(P, mode=mode)
        assert not is_self_adjoint(L, mode=mode)
    with pytest.raises(ValueError):
        is_self_adjoint(P, mode="guess")


@given(seeds, dims)
def test_self_adjoint_modes_agree(seed, n):
    rng = make_rng(seed)
    T = random_operator(rng, n)
    S = 0.5 * (T + T.T)
    for op in (T, S):
        assert is_self_adjoint(op, "exact", tol=1e-8) == is_self_adjoint(op, "sampled", tol=1e-8, seed=seed)
    assert is_self_adjoint(S)
