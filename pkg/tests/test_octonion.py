from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given

from octopara import octonion as O
from octopara.octonion import ImaginaryUnit, Octonion, unary_algebra

from conftest import assert_small, octonions, seeds

e = O.basis


def test_unit_products_from_triples():
    assert np.array_equal(O.mul(e(1), e(2)), e(3))
    assert np.array_equal(O.mul(e(1), e(6)), -e(7))
    assert np.array_equal(O.mul(e(2), e(4)), e(6))
    assert np.array_equal(O.mul(e(3), e(3)), -e(0))
    assert np.array_equal(O.mul(e(5), e(1)), e(4))


@given(octonions)
def test_unit_is_neutral(x):
    assert np.array_equal(O.mul(O.real(1.0), x), x)
    assert np.array_equal(O.mul(x, O.real(1.0)), x)


def test_mult_table_is_read_only():
    with pytest.raises(ValueError):
        O.MULT_TABLE[0, 0, 0] = 2.0


def test_unary_examples():
    assert np.array_equal(O.conj(e(1)), -e(1))
    assert np.array_equal(O.inverse(O.real(1.0)), O.real(1.0))
    assert O.norm(np.ones(8)) == pytest.approx(math.sqrt(8))
    with pytest.raises(ZeroDivisionError):
        O.inverse(np.zeros(8))


@given(octonions)
def test_unary_algebra_consistent(a):
    u = unary_algebra(a)
    assert_small(O.real(u["re"]) + u["im"].coeffs - a, 1e-12)
    assert u["norm"] == pytest.approx(math.sqrt(O.mul(a, O.conj(a))[0]), rel=1e-12, abs=1e-12)
    if u["norm"] > 1e-3:
        assert_small(O.mul(a, u["inverse"].coeffs) - O.real(1.0), 1e-10)


def test_associator_examples():
    assert np.allclose(O.associator(e(1), e(2), e(4)), 2 * e(7))
    rng = np.random.Generator(np.random.Philox(0))
    y, z = O.random_octonion(rng, 2)
    assert_small(O.associator(O.real(1.0), y, z), 0.0)
    assert_small(O.associator(y, y, z), 1e-12)


@given(octonions, octonions, octonions)
def test_moufang_identities(x, y, z):
    m = O.mul
    s = (1 + np.abs(x).max()) ** 2 * (1 + np.abs(y).max()) * (1 + np.abs(z).max())
    assert_small(m(m(m(x, y), x), z) - m(x, m(y, m(x, z))), 1e-13 * s)
    assert_small(m(z, m(m(x, y), x)) - m(m(m(z, x), y), x), 1e-13 * s)
    assert_small(m(m(x, m(y, z)), x) - m(m(x, y), m(z, x)), 1e-13 * s)


@given(octonions, octonions, octonions)
def test_associator_alternating(x, y, z):
    s = (1 + np.abs(x).max()) * (1 + np.abs(y).max()) * (1 + np.abs(z).max())
    a = O.associator(x, y, z)
    assert_small(a + O.associator(y, x, z), 1e-13 * s)
    assert_small(a + O.associator(x, z, y), 1e-13 * s)
    assert_small(a - O.associator(y, z, x), 1e-13 * s)


@given(octonions, octonions)
def test_norm_multiplicative(x, y):
    assert O.norm(O.mul(x, y)) == pytest.approx(O.norm(x) * O.norm(y), rel=1e-12, abs=1e-12)


def test_im_via_associator_examples():
    assert_small(O.im_via_associator(O.real(1.0)), 1e-15)
    assert_small(O.im_via_associator(e(1)) - e(1), 1e-15)


@given(octonions)
def test_im_via_associator_matches_coefficients(p):
    assert_small(O.im_via_associator(p) - O.im(p), 1e-13 * (1 + np.abs(p).max()))


@given(octonions, octonions)
def test_multiplication_matrices(p, x):
    assert_small(O.left_matrix(p) @ x - O.mul(p, x), 1e-12 * (1 + np.abs(p).max() * np.abs(x).max()))
    assert_small(O.right_matrix(p) @ x - O.mul(x, p), 1e-12 * (1 + np.abs(p).max() * np.abs(x).max()))


def test_octonion_class_arithmetic():
    a, b = Octonion.unit(1), Octonion.unit(2)
    assert a * b == Octonion.unit(3)
    assert b * a == -Octonion.unit(3)
    assert (a + 2) == Octonion([2, 1, 0, 0, 0, 0, 0, 0])
    assert (a / a).is_close(Octonion.real(1.0))
    assert a.conj() == -a
    assert Octonion.unit(4).to_json() == [0, 0, 0, 0, 1, 0, 0, 0]


@given(seeds)
def test_imaginary_unit(seed):
    rng = np.random.Generator(np.random.Philox(seed))
    J = ImaginaryUnit(O.random_unit_imaginary(rng))
    assert_small(O.mul(J.coeffs, J.coeffs) + O.real(1.0), 1e-12)
    with pytest.raises(Exception):
        ImaginaryUnit(e(0))
    with pytest.raises(Exception):
        ImaginaryUnit(2 * e(1))
    assert ImaginaryUnit.normalized(3 * e(5)).is_close(Octonion.unit(5))
