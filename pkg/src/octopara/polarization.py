"""Octonionic polarization and slice-cone self-adjointness.

Reconstruction only ever sees a quadratic form ``Q(x) = <Tx, x>`` through a
black-box evaluator; it never reads the operator behind it.

For ``x, y`` in Re H with ``m(x, y) = (Q(x+y) - Q(x-y)) / 2``:

    A_ij = m(x, y) + e_i m(x, y conj(e_i)) + m(x, y conj(e_j)) e_j
    B_ij = (e_i m(x, y conj(e_i e_j))) e_j          (i != j)
    C_ij = e_i (m(x, y conj(e_i e_j)) e_j)          (i != j)

    <Tx, y> = (1/56) sum_{i!=j} (2A + B + C)_ij - (1/98) sum_ij A_ij - m(x, y)/2

The quaternionic analogue needs no B/C correction; it is not implemented here.
"""

from __future__ import annotations

from typing import Callable

import numpy as np

from . import octonion as O
from .errors import DimensionMismatch, NotRealPart
from .octonion import Octonion
from .omodule import OVector, as_ovector
from .paralinear import ParaLinearOperator, operator_norm


class QuadraticFormProbe:
    """Black-box evaluator ``x -> Q(x)`` (octonion valued) on an n-dimensional H."""

    def __init__(self, fn: Callable[[np.ndarray], np.ndarray], dim: int):
        self._fn = fn
        self.dim = int(dim)
        self.calls = 0

    @classmethod
    def from_operator(cls, T: ParaLinearOperator) -> QuadraticFormProbe:
        M = T.matrix.copy()
        n = T.dim

        def q(xf: np.ndarray) -> np.ndarray:
            Tx = (M @ xf).reshape(n, 8)
            return O.mul(O.conj(Tx), xf.reshape(n, 8)).sum(axis=0)

        return cls(q, n)

    def __call__(self, x) -> np.ndarray:
        x = as_ovector(x)
        if x.dim != self.dim:
            raise DimensionMismatch(f"probe dim {self.dim} != vector dim {x.dim}")
        self.calls += 1
        return np.asarray(self._fn(x.flat), dtype=float)


def _m(Q: QuadraticFormProbe, xf: np.ndarray, yf: np.ndarray) -> np.ndarray:
    return 0.5 * (Q(xf + yf) - Q(xf - yf))


def m_form(Q: QuadraticFormProbe, x, y) -> Octonion:
    """``m(x, y) = (Q(x+y) - Q(x-y)) / 2 = <Tx, y> + <Ty, x>``."""
    x, y = as_ovector(x), as_ovector(y)
    if x.dim != y.dim:
        raise DimensionMismatch(f"dimension {x.dim} != {y.dim}")
    return Octonion(_m(Q, x.flat, y.flat))


def _require_real(*vs: OVector) -> None:
    for v in vs:
        if not v.is_real():
            raise NotRealPart("polarization arguments must lie in Re H")


def _rmul(y: OVector, p: np.ndarray) -> np.ndarray:
    return O.mul(y.components, p).reshape(-1)


class _MTable:
    """Values ``m(x, y e_c)`` for c = 0..7, from which every needed ``m(x, y q)``
    with ``q`` a signed basis unit follows by real linearity in ``y``."""

    def __init__(self, Q: QuadraticFormProbe, x: OVector, y: OVector):
        self.vals = np.stack([_m(Q, x.flat, _rmul(y, O.basis(c))) for c in range(8)])

    def at(self, q: np.ndarray) -> np.ndarray:
        return q @ self.vals


def _abc(tab: _MTable, i: int, j: int):
    ei, ej = O.basis(i), O.basis(j)
    m0 = tab.at(O.basis(0))
    A = m0 + O.mul(ei, tab.at(O.conj(ei))) + O.mul(tab.at(O.conj(ej)), ej)
    if i == j:
        z = np.zeros(8)
        return A, z, z
    mm = tab.at(O.conj(O.mul(ei, ej)))
    B = O.mul(O.mul(ei, mm), ej)
    C = O.mul(ei, O.mul(mm, ej))
    return A, B, C


def abc_terms(Q: QuadraticFormProbe, x, y, i: int, j: int) -> dict:
    """``A_ij, B_ij, C_ij`` for ``x, y`` in Re H; ``B = C = 0`` when ``i == j``."""
    x, y = as_ovector(x), as_ovector(y)
    _require_real(x, y)
    if not (1 <= i <= 7 and 1 <= j <= 7):
        raise ValueError("indices must be in 1..7")
    A, B, C = _abc(_MTable(Q, x, y), i, j)
    return {"A": Octonion(A), "B": Octonion(B), "C": Octonion(C)}


def reconstruct_re(Q: QuadraticFormProbe, x, y, return_terms: bool = False):
    """``<Tx, y>`` for ``x, y`` in Re H, from ``Q`` alone.

    With ``return_terms`` the three summands (before the signs are applied)
    are returned as well: ``(value, {"mixed": ..., "diag": ..., "half_m": ...})``.
    """
    x, y = as_ovector(x), as_ovector(y)
    if x.dim != y.dim:
        raise DimensionMismatch(f"dimension {x.dim} != {y.dim}")
    _require_real(x, y)
    tab = _MTable(Q, x, y)
    mixed = np.zeros(8)
    diag = np.zeros(8)
    for i in range(1, 8):
        for j in range(1, 8):
            A, B, C = _abc(tab, i, j)
            diag += A
            if i != j:
                mixed += 2.0 * A + B + C
    terms = {"mixed": mixed / 56.0, "diag": diag / 98.0, "half_m": 0.5 * tab.at(O.basis(0))}
    value = Octonion(terms["mixed"] - terms["diag"] - terms["half_m"])
    if return_terms:
        return value, {k: Octonion(v) for k, v in terms.items()}
    return value


def _real_parts(x: OVector) -> list[OVector]:
    X = x.components
    return [OVector.from_real(X[:, i]) for i in range(8)]


def sesquilinear(Q: QuadraticFormProbe, x, y) -> Octonion:
    """``<Tx, y>`` for arbitrary ``x, y`` via ``sum_ij (conj(e_i) phi(x_i, y_j)) e_j``,
    where ``x = sum_i e_i x_i`` with ``x_i`` in Re H and ``phi`` is reconstruct_re."""
    x, y = as_ovector(x), as_ovector(y)
    xs, ys = _real_parts(x), _real_parts(y)
    out = np.zeros(8)
    for i, xi in enumerate(xs):
        if not np.any(xi.components):
            continue
        for j, yj in enumerate(ys):
            if not np.any(yj.components):
                continue
            phi = reconstruct_re(Q, xi, yj).coeffs
            out += O.mul(O.mul(O.conj(O.basis(i)), phi), O.basis(j))
    return Octonion(out)


def reconstruct_operator(Q: QuadraticFormProbe) -> ParaLinearOperator:
    """Rebuild ``T`` from its quadratic form.

    The core entry ``f_R(e_i u_k)_l = Re <T(e_i u_k), u_l>`` is read off the
    general polarization sum for the basis pair ``(e_i u_k, u_l)``.
    """
    n = Q.dim
    core = np.zeros((n, 8 * n))
    for k in range(n):
        for i in range(8):
            x = OVector.basis_vector(n, k, i)
            for l in range(n):
                core[l, 8 * k + i] = sesquilinear(Q, x, OVector.basis_vector(n, l)).re
    return ParaLinearOperator(core)


def random_slice_vectors(rng: np.random.Generator, n: int, count: int) -> list[OVector]:
    out = []
    for _ in range(count):
        J = O.random_unit_imaginary(rng)
        u = rng.standard_normal(n)
        v = rng.standard_normal(n)
        out.append(OVector(np.outer(u, O.basis(0)) + np.outer(v, J)))
    return out


def is_self_adjoint(
    T: ParaLinearOperator,
    mode: str = "exact",
    samples: int = 64,
    tol: float = 1e-10,
    seed: int = 0,
) -> bool:
    """Self-adjointness by matrix symmetry (``exact``) or by reality of
    ``<Tz, z>`` on random slice paravectors (``sampled``)."""
    nrm = operator_norm(T)
    if mode == "exact":
        M = T.matrix
        return bool(np.linalg.norm(M - M.T, 2) <= tol * max(1.0, nrm))
    if mode == "sampled":
        rng = np.random.Generator(np.random.Philox(seed))
        Q = QuadraticFormProbe.from_operator(T)
        for z in random_slice_vectors(rng, T.dim, samples):
            q = Q(z)
            if np.linalg.norm(q[1:]) > tol * nrm * float(z.flat @ z.flat):
                return False
        return True
    raise ValueError(f"mode must be 'exact' or 'sampled', got {mode!r}")
