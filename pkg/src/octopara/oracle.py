"""Slow, literal twins of the optimized operations.

Every function here evaluates a defining formula vector by vector on the
``8n`` real basis vectors ``e_i u_k``, using only octonion products and
inner products.  Nothing is cached and no matrix shortcut (transposes,
Kronecker products, core slicing) is taken, so agreement with the fast path
is an independent check.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import octonion as O
from .octonion import FANO_TRIPLES
from .omodule import OVector, inner_product, scale
from .paralinear import ParaLinearOperator


@dataclass(frozen=True)
class DenseOracle:
    dim: int
    matrix: np.ndarray

    def max_diff(self, T) -> float:
        other = T.matrix if hasattr(T, "matrix") else np.asarray(T)
        return float(np.abs(self.matrix - other).max())


def _basis(n: int):
    for k in range(n):
        for i in range(8):
            yield OVector.basis_vector(n, k, i)


def dense(fn: Callable[[OVector], OVector], n: int) -> DenseOracle:
    cols = [fn(x).flat for x in _basis(n)]
    return DenseOracle(n, np.array(cols).T)


def _apply(T: ParaLinearOperator, x: OVector) -> OVector:
    # plain matrix-vector product; the matrix itself is what is under test
    return OVector(T.matrix @ x.flat)


def _re(x: OVector) -> OVector:
    X = np.array(x.components)
    X[:, 1:] = 0.0
    return OVector(X)


def _ebar(i: int) -> np.ndarray:
    return O.conj(O.basis(i))


def oracle_from_core(core: np.ndarray) -> DenseOracle:
    """``T(x) = sum_i e_i f_R(x conj(e_i))`` with ``f_R`` the given core."""
    core = np.asarray(core, dtype=float)
    n = core.shape[0]

    def fR(x: OVector) -> OVector:
        return OVector.from_real(core @ x.flat)

    def T(x: OVector) -> OVector:
        acc = OVector.zeros(n)
        for i in range(8):
            acc = acc + scale(fR(scale(x, _ebar(i), "right")), O.basis(i), "left")
        return acc

    return dense(T, n)


def oracle_regular_compose(f: ParaLinearOperator, g: ParaLinearOperator) -> DenseOracle:
    """``(f (*) g)(x) = sum_i e_i Re(f(g(x conj(e_i))))``."""
    n = f.dim

    def fg(x: OVector) -> OVector:
        acc = OVector.zeros(n)
        for i in range(8):
            y = _apply(f, _apply(g, scale(x, _ebar(i), "right")))
            acc = acc + scale(_re(y), O.basis(i), "left")
        return acc

    return dense(fg, n)


def oracle_B_p(T: ParaLinearOperator, x: OVector, p) -> OVector:
    """``B_p(T, x) = sum_i f_R([x, p, e_i]) e_i``."""
    n = T.dim
    acc = OVector.zeros(n)
    p = O.as_array(p)
    for i in range(1, 8):
        ei = O.basis(i)
        assoc = scale(scale(x, p, "right"), ei, "right") - scale(x, O.mul(p, ei), "right")
        acc = acc + scale(_re(_apply(T, assoc)), ei, "right")
    return acc


def oracle_left_action(T: ParaLinearOperator, r) -> DenseOracle:
    """``(r . T)(x) = r T(x r^-1) r`` (valid for r != 0)."""
    r = O.as_array(r)
    rinv = O.inverse(r)

    def fn(x):
        return scale(scale(_apply(T, scale(x, rinv, "right")), r, "left"), r, "right")

    return dense(fn, T.dim)


def oracle_right_action(T: ParaLinearOperator, r) -> DenseOracle:
    """``(T . r)(x) = T(r x r) r^-1`` (valid for r != 0)."""
    r = O.as_array(r)
    rinv = O.inverse(r)

    def fn(x):
        return scale(_apply(T, scale(scale(x, r, "left"), r, "right")), rinv, "right")

    return dense(fn, T.dim)


def oracle_adjoint(T: ParaLinearOperator) -> DenseOracle:
    """``T*`` from ``<x, T* y>_R = <T x, y>_R`` summed over the real basis."""
    n = T.dim
    basis = list(_basis(n))
    images = [_apply(T, b) for b in basis]

    def fn(y: OVector) -> OVector:
        acc = OVector.zeros(n)
        for b, Tb in zip(basis, images):
            acc = acc + b * inner_product(Tb, y).re
        return acc

    return dense(fn, n)


def oracle_adjoint_contract(T: ParaLinearOperator, trials: int = 100, seed: int = 0) -> float:
    """Largest ``|<x, T* y> - <T x, y> + [y, T, x]|`` over random x, y.

    With ``<x, y> = sum_k conj(x_k) y_k`` the contract reads
    ``<x, T* y> = <T x, y> - [y, T, x]``; the opposite sign cannot hold,
    because the real parts already force ``T*`` to be the real transpose.

    ``T*`` is the literal adjoint above and ``[y, T, x]`` is evaluated from
    its definition ``sum_i e_i <y, B_{e_i}(T, x)>_R``.
    """
    rng = np.random.Generator(np.random.Philox(seed))
    n = T.dim
    Ts = oracle_adjoint(T).matrix
    worst = 0.0
    for _ in range(trials):
        x = OVector(rng.standard_normal((n, 8)))
        y = OVector(rng.standard_normal((n, 8)))
        lhs = inner_product(x, OVector(Ts @ y.flat)).coeffs
        rhs = inner_product(_apply(T, x), y).coeffs
        trip = oracle_triple_associator(y, T, x)
        worst = max(worst, float(np.abs(lhs - rhs + trip).max()))
    return worst


def oracle_triple_associator(y: OVector, T: ParaLinearOperator, x: OVector) -> np.ndarray:
    out = np.zeros(8)
    for i in range(1, 8):
        ei = O.basis(i)
        B = scale(_apply(T, x), ei, "right") - _apply(T, scale(x, ei, "right"))
        out = out + ei * inner_product(y, B).re
    return out


def oracle_slice_projection(z: OVector) -> DenseOracle:
    """``P_z(x) = z <z, x>``."""
    return dense(lambda x: scale(z, inner_product(z, x), "right"), z.dim)


def oracle_op_real_part(T: ParaLinearOperator) -> DenseOracle:
    """``(5/12) T - (1/12) sum_i e_i . T . e_i`` through the Moufang forms
    of the two scalar actions, applied one after the other."""
    n = T.dim

    def fn(x: OVector) -> OVector:
        acc = _apply(T, x) * (5.0 / 12.0)
        for i in range(1, 8):
            e = O.basis(i)
            einv = O.inverse(e)
            # right action first: (T . e)(y) = T(e y e) e^-1, then left: e S(x e^-1) e
            y = scale(x, einv, "right")
            s = scale(_apply(T, scale(scale(y, e, "left"), e, "right")), einv, "right")
            acc = acc - scale(scale(s, e, "left"), e, "right") * (1.0 / 12.0)
        return acc

    return dense(fn, n)


def expected_unit_product(a: int, b: int) -> tuple[int, float]:
    """``e_a e_b`` as (index, sign) from the triple rules alone."""
    if a == 0:
        return b, 1.0
    if b == 0:
        return a, 1.0
    if a == b:
        return 0, -1.0
    for t in FANO_TRIPLES:
        if a in t and b in t:
            c = next(k for k in t if k not in (a, b))
            ia, ib = t.index(a), t.index(b)
            return c, 1.0 if (ib - ia) % 3 == 1 else -1.0
    raise AssertionError(f"no triple contains e{a}, e{b}")


def oracle_fano_table() -> bool:
    """Check all 64 unit products against the triple, delta and unit rules."""
    for a in range(8):
        for b in range(8):
            c, sgn = expected_unit_product(a, b)
            want = sgn * O.basis(c)
            if not np.array_equal(O.mul(O.basis(a), O.basis(b)), want):
                return False
    return True
