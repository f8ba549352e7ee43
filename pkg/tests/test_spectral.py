from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from octopara import octonion as O
from octopara.errors import NotSelfAdjoint, NotSlice, NotStandardStrong, NotUnit
from octopara.jacobi import jacobi_eigh
from octopara.omodule import OVector, SliceParavector, inner_product, is_weak_orthonormal, second_associator
from octopara.paralinear import ParaLinearOperator, distance, operator_norm, regular_compose
from octopara.sampling import (
    make_rng,
    random_operator,
    random_self_adjoint,
    random_slice,
    random_slice_system,
    random_spectral_operator,
)
from octopara.spectral import (
    SpectralDecomposition,
    StrongEigenpair,
    decompose,
    eigen_commutation_residual,
    reconstruct,
    slice_projection,
    strong_eigencheck,
)

from conftest import assert_small, dims, seeds

I = ParaLinearOperator.identity


def _real_unit(n, k):
    return SliceParavector(np.eye(n)[k], np.zeros(n), O.basis(1))


# Jacobi ------------------------------------------------------------------


@given(seeds, st.integers(1, 32))
def test_jacobi_matches_numpy(seed, N):
    rng = make_rng(seed)
    A = rng.standard_normal((N, N))
    A = A + A.T
    w, V = jacobi_eigh(A)
    assert np.all(np.diff(w) >= 0)
    assert_small(w - np.linalg.eigvalsh(A), 1e-12 * max(1.0, np.abs(A).max()) * N)
    assert_small(V.T @ V - np.eye(N), 1e-12)
    assert_small(A @ V - V * w, 1e-11 * max(1.0, np.abs(A).max()) * N)


def test_jacobi_degenerate_and_trivial():
    w, V = jacobi_eigh(np.zeros((3, 3)))
    assert np.array_equal(w, np.zeros(3))
    w, V = jacobi_eigh(np.diag([3.0, 1.0, 1.0, 2.0]))
    assert np.allclose(w, [1, 1, 2, 3])
    with pytest.raises(ValueError):
        jacobi_eigh(np.zeros((2, 3)))


# slice projections ---------------------------------------------------------


def test_slice_projection_examples():
    rng = make_rng(1)
    u = OVector.basis_vector(3, 1)
    assert_small(slice_projection(u)(u).flat - u.flat, 1e-15)
    z = random_slice(rng, 3)
    P = slice_projection(z)
    assert distance(regular_compose(P, P), P) <= 1e-12
    bad = OVector(np.array([O.basis(1), O.basis(2)]) / np.sqrt(2))
    with pytest.raises(NotSlice):
        slice_projection(bad)
    with pytest.raises(NotUnit):
        slice_projection(2.0 * u)


@given(seeds, dims)
def test_slice_projection_properties(seed, n):
    rng = make_rng(seed)
    z = random_slice(rng, n)
    P = slice_projection(z)
    assert distance(P.T, P) <= 1e-13
    assert_small(P.matrix @ P.matrix - P.matrix, 1e-12)
    x = OVector(rng.standard_normal((n, 8)))
    want = O.mul(z.components, inner_product(z.value, x).coeffs)
    assert_small(P(x).components - want, 1e-12)
    assert np.linalg.matrix_rank(P.matrix, tol=1e-9) == 8


# eigen checks ----------------------------------------------------------------


def test_strong_eigencheck_examples():
    rng = make_rng(2)
    zs = random_slice_system(rng, 3)
    assert strong_eigencheck(I(3), zs[0].value, 1.0)
    P = slice_projection(zs[0])
    assert strong_eigencheck(P, zs[0].value, 1.0)
    assert strong_eigencheck(P, zs[1].value, 0.0)
    assert not strong_eigencheck(P, zs[1].value, 1.0)


def test_eigen_commutation_examples():
    rng = make_rng(3)
    z = random_slice(rng, 2)
    assert eigen_commutation_residual(I(2), StrongEigenpair(1.0, z)) <= 1e-13
    T, lams, zs = random_spectral_operator(rng, 3, zero_prob=0.0)
    pair = StrongEigenpair(float(lams[0]), zs[0])
    assert eigen_commutation_residual(T, pair) <= 1e-10 * operator_norm(T)
    off = eigen_commutation_residual(T, StrongEigenpair(float(lams[0]) + 0.1, zs[0]))
    assert off == pytest.approx(0.1, rel=1e-8)


# decompose -----------------------------------------------------------------


def test_decompose_real_diagonal():
    P1 = slice_projection(_real_unit(2, 0))
    P2 = slice_projection(_real_unit(2, 1))
    T = 2.0 * P1 - P2
    d = decompose(T)
    assert d.eigenvalues == pytest.approx([2.0, -1.0])
    for p, k in zip(d.pairs, (0, 1)):
        # eigenvector is u_k times a unit-modulus phase in its slice
        c = p.z.components
        assert np.abs(c[1 - k]).max() <= 1e-12
        assert O.norm(c[k]) == pytest.approx(1.0)
    assert d.residual <= 1e-12
    assert d.kernel == ()


@given(seeds, st.floats(-3, 3), st.floats(-3, 3), st.floats(-2, 2), st.floats(-2, 2))
def test_decompose_hermitian_two_by_two(seed, t, s, a, b):
    rng = make_rng(seed)
    J = O.random_unit_imaginary(rng)
    p = a * O.basis(0) + b * J
    A = np.zeros((2, 2, 8))
    A[0, 0, 0], A[1, 1, 0], A[0, 1], A[1, 0] = t, s, p, O.conj(p)
    T = ParaLinearOperator.octonion_matrix(A)
    disc = np.hypot(t - s, 2 * np.hypot(a, b))
    ls = ((t + s + disc) / 2, (t + s - disc) / 2)
    want = sorted(l for l in ls if abs(l) > 1e-8 * max(abs(v) for v in ls))
    d = decompose(T)
    assert sorted(d.eigenvalues) == pytest.approx(want, abs=1e-9)
    assert d.residual <= 1e-8
    for pair in d.pairs:
        c = pair.z.components
        # eigenvectors live in C_J^2
        imag = c[:, 1:]
        assert_small(imag - np.outer(imag @ J[1:], J[1:]), 1e-8)


@pytest.mark.parametrize("scale", [1e-300, 1e-150, 1.0, 1e150, 1e300])
def test_decompose_is_scale_invariant(scale):
    p = 0.7 * O.basis(0) + 1.2 * O.basis(3)
    A = np.zeros((2, 2, 8))
    A[0, 0, 0], A[1, 1, 0], A[0, 1], A[1, 0] = 1.5, -0.5, p, O.conj(p)
    base = decompose(ParaLinearOperator.octonion_matrix(A))
    d = decompose(ParaLinearOperator.octonion_matrix(A * scale))
    assert np.array(d.eigenvalues) / scale == pytest.approx(base.eigenvalues, rel=1e-12)
    assert d.residual <= 1e-12 * scale


def test_decompose_single_real_pair_and_empty():
    z = _real_unit(2, 1)
    d = SpectralDecomposition(2, (StrongEigenpair(1.0, z),), ())
    assert distance(reconstruct(d), slice_projection(z)) == 0.0
    assert np.abs(reconstruct(SpectralDecomposition(2)).matrix).max() == 0.0


@settings(max_examples=40)
@given(seeds, dims)
def test_decompose_round_trip(seed, n):
    rng = make_rng(seed)
    T, lams, _ = random_spectral_operator(rng, n)
    d = decompose(T, seed=seed)
    got = np.sort(d.eigenvalues)
    want = np.sort([l for l in lams if l != 0.0])
    assert got.shape == want.shape
    assert_small(got - want, 1e-9)
    assert d.residual <= 1e-8
    zs = d.basis()
    assert len(zs) == n
    assert is_weak_orthonormal(zs) <= 1e-10
    for i, zi in enumerate(zs):
        for j, zj in enumerate(zs):
            ip = inner_product(zi.value, zj.value).coeffs
            assert_small(ip - (i == j) * O.real(1.0), 1e-10)
            for k in range(1, 8):
                assert_small(second_associator(zi.value, zj.value, O.basis(k)).coeffs, 1e-10)
    nT = operator_norm(T)
    for p in d.pairs:
        assert strong_eigencheck(T, p.z.value, p.lam, tol=1e-10)
        assert eigen_commutation_residual(T, p) <= 1e-10 * max(1.0, nT)
    assert [abs(l) for l in d.eigenvalues] == sorted((abs(l) for l in d.eigenvalues), reverse=True)


def test_decompose_is_seeded():
    T, _, _ = random_spectral_operator(make_rng(4), 3)
    assert decompose(T, seed=5).to_json() == decompose(T, seed=5).to_json()


def test_decompose_errors():
    rng = make_rng(5)
    with pytest.raises(NotSelfAdjoint):
        decompose(random_operator(rng, 2))
    # symmetrized random operators in dimension 3 have eigenspaces of real
    # dimension 4, which cannot be spanned by slice paravectors
    with pytest.raises(NotStandardStrong) as info:
        decompose(random_self_adjoint(make_rng(6), 3))
    assert "multiple of 8" in str(info.value)


def test_decomposition_json_shape():
    T, _, _ = random_spectral_operator(make_rng(7), 2, zero_prob=0.0)
    js = decompose(T).to_json()
    assert set(js) == {"pairs", "kernel", "residual"}
    for p in js["pairs"]:
        assert set(p) == {"lambda", "z", "axis"}
        assert len(p["axis"]) == 7
