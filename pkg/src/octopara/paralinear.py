"""Right para-linear operators on H.

An operator is stored through its real core map ``f_R : H -> Re H`` as an
``n x 8n`` matrix.  The full ``8n x 8n`` real matrix is derived from it with

    T(x) = sum_i e_i f_R(x conj(e_i)),

so every instance is para-linear by construction.  Row ``8k + i`` of the full
matrix is the ``e_i`` coefficient of the ``k``-th output component, hence the
core is simply ``matrix[0::8]``.
"""

from __future__ import annotations

import os
from functools import lru_cache

import numpy as np

from . import octonion as O
from .errors import DimensionMismatch, NotParaLinear, ShapeMismatch
from .octonion import Octonion
from .omodule import OVector, as_ovector

DEBUG = bool(os.environ.get("OCTOPARA_DEBUG"))


@lru_cache(maxsize=None)
def _right_blocks(i: int) -> np.ndarray:
    m = O.right_matrix(O.conj(O.basis(i)))
    m.setflags(write=False)
    return m


def kron_eye(n: int, A: np.ndarray) -> np.ndarray:
    return np.kron(np.eye(n), A)


def _full_from_core(core: np.ndarray) -> np.ndarray:
    n = core.shape[0]
    C = core.reshape(n, n, 8)
    M = np.empty((8 * n, 8 * n))
    for i in range(8):
        # core @ kron(I_n, R_{conj e_i}), one 8x8 block per input component
        M[i::8, :] = np.einsum("rka,ab->rkb", C, _right_blocks(i)).reshape(n, 8 * n)
    return M


class ParaLinearOperator:
    """A right para-linear operator on an ``n``-dimensional Hilbert O-bimodule."""

    __slots__ = ("_core", "_matrix")
    __array_ufunc__ = None  # numpy defers to our reflected operators

    def __init__(self, core, _matrix=None):
        core = np.array(core, dtype=float)
        if core.ndim != 2 or core.shape[1] != 8 * core.shape[0] or core.shape[0] == 0:
            raise ShapeMismatch(f"core must have shape (n, 8n), got {core.shape}")
        M = _full_from_core(core) if _matrix is None else np.array(_matrix, dtype=float)
        core.setflags(write=False)
        M.setflags(write=False)
        self._core = core
        self._matrix = M

    # construction ---------------------------------------------------------

    @classmethod
    def from_core(cls, core) -> ParaLinearOperator:
        return cls(core)

    @classmethod
    def from_real_matrix(cls, M, tol: float = 1e-10) -> ParaLinearOperator:
        """Validate ``M`` as right para-linear and keep its Re-component rows."""
        M = np.asarray(M, dtype=float)
        if M.ndim != 2 or M.shape[0] != M.shape[1] or M.shape[0] % 8 or M.shape[0] == 0:
            raise ShapeMismatch(f"expected a square 8n x 8n matrix, got {M.shape}")
        n = M.shape[0] // 8
        worst = (0.0, 1, 0)
        for i in range(1, 8):
            R = kron_eye(n, O.right_matrix(O.basis(i)))
            # Re B_p(M, x) for every basis x at once
            D = (R @ M - M @ R)[0::8]
            col_res = np.linalg.norm(D, axis=0)
            k = int(np.argmax(col_res))
            if col_res[k] > worst[0]:
                worst = (float(col_res[k]), i, k)
        if worst[0] > tol:
            raise NotParaLinear(worst[1], worst[2], worst[0])
        return cls(M[0::8, :])

    @classmethod
    def from_restriction(cls, images) -> ParaLinearOperator:
        """Operator determined by its values ``T(u_k)`` on the real basis.

        ``images`` is an ``(n, n, 8)`` array; ``images[k]`` are the components
        of ``T(u_k)``.
        """
        Y = np.asarray(images, dtype=float)
        n = Y.shape[0]
        if Y.shape != (n, n, 8):
            raise ShapeMismatch(f"expected images of shape (n, n, 8), got {Y.shape}")
        sign = -np.ones(8)
        sign[0] = 1.0
        core = np.empty((n, 8 * n))
        for k in range(n):
            # f_R(e_i u_k) = Re(conj(e_i) T(u_k)) = s_i * (e_i coefficient of T(u_k))
            core[:, 8 * k : 8 * k + 8] = Y[k] * sign
        return cls(core)

    @classmethod
    def identity(cls, n: int) -> ParaLinearOperator:
        core = np.zeros((n, 8 * n))
        core[np.arange(n), 8 * np.arange(n)] = 1.0
        return cls(core)

    @classmethod
    def zero(cls, n: int) -> ParaLinearOperator:
        return cls(np.zeros((n, 8 * n)))

    @classmethod
    def left_mult(cls, p, n: int) -> ParaLinearOperator:
        """``L_p : x -> p x`` (componentwise)."""
        return cls.from_real_matrix(kron_eye(n, O.left_matrix(O.as_array(p))), tol=1e-9)

    @classmethod
    def octonion_matrix(cls, A) -> ParaLinearOperator:
        """``x -> A x`` for an ``(n, n, 8)`` octonion matrix, ``(Ax)_k = sum_l A_kl x_l``."""
        A = np.asarray(A, dtype=float)
        n = A.shape[0]
        if A.shape != (n, n, 8):
            raise ShapeMismatch(f"expected an (n, n, 8) octonion matrix, got {A.shape}")
        M = np.zeros((8 * n, 8 * n))
        for k in range(n):
            for l in range(n):
                M[8 * k : 8 * k + 8, 8 * l : 8 * l + 8] = O.left_matrix(A[k, l])
        scale = max(1.0, float(np.abs(A).max()))
        return cls.from_real_matrix(M, tol=1e-9 * scale)

    # data ------------------------------------------------------------------

    @property
    def dim(self) -> int:
        return self._core.shape[0]

    @property
    def core(self) -> np.ndarray:
        return self._core

    @property
    def matrix(self) -> np.ndarray:
        return self._matrix

    def __repr__(self):
        return f"ParaLinearOperator(dim={self.dim})"

    def __call__(self, x) -> OVector:
        return apply(self, x)

    def _check(self, other: ParaLinearOperator):
        if self.dim != other.dim:
            raise DimensionMismatch(f"operator dimensions {self.dim} != {other.dim}")

    def __add__(self, other: ParaLinearOperator) -> ParaLinearOperator:
        self._check(other)
        return ParaLinearOperator(self._core + other._core, self._matrix + other._matrix)

    def __sub__(self, other: ParaLinearOperator) -> ParaLinearOperator:
        self._check(other)
        return ParaLinearOperator(self._core - other._core, self._matrix - other._matrix)

    def __neg__(self):
        return ParaLinearOperator(-self._core, -self._matrix)

    def __mul__(self, t):
        if isinstance(t, (int, float, np.floating)):
            return ParaLinearOperator(self._core * float(t), self._matrix * float(t))
        return scalar_action(self, t, "right")

    def __rmul__(self, t):
        if isinstance(t, (int, float, np.floating)):
            return self.__mul__(t)
        return scalar_action(self, t, "left")

    def __matmul__(self, other: ParaLinearOperator) -> ParaLinearOperator:
        return regular_compose(self, other)

    def adjoint(self) -> ParaLinearOperator:
        return adjoint(self)

    @property
    def T(self) -> ParaLinearOperator:
        return adjoint(self)

    def norm(self) -> float:
        return operator_norm(self)

    def allclose(self, other: ParaLinearOperator, atol: float) -> bool:
        return distance(self, other) <= atol

    def to_json(self) -> dict:
        return {"dim": self.dim, "core": self._core.tolist()}


def _vec(T: ParaLinearOperator, x) -> np.ndarray:
    x = as_ovector(x)
    if x.dim != T.dim:
        raise DimensionMismatch(f"operator dim {T.dim} != vector dim {x.dim}")
    return x.flat


def apply(T: ParaLinearOperator, x) -> OVector:
    return OVector(T.matrix @ _vec(T, x))


def operator_B_p(T: ParaLinearOperator, x, p) -> OVector:
    """``B_p(T, x) = T(x) p - T(x p)``."""
    xf = _vec(T, x)
    p = O.as_array(p)
    n = T.dim
    Tx = (T.matrix @ xf).reshape(n, 8)
    xp = O.mul(xf.reshape(n, 8), p).reshape(-1)
    return OVector(O.mul(Tx, p) - (T.matrix @ xp).reshape(n, 8))


def regular_compose(f: ParaLinearOperator, g: ParaLinearOperator) -> ParaLinearOperator:
    """``f (*) g``: the para-linear map with core ``Re(f(g(.)))``."""
    f._check(g)
    return ParaLinearOperator(f.core @ g.matrix)


def composition_associator(f: ParaLinearOperator, g: ParaLinearOperator, x) -> OVector:
    """``(f (*) g)(x) - f(g(x))``."""
    xf = _vec(f, x)
    f._check(g)
    fg = regular_compose(f, g)
    return OVector(fg.matrix @ xf - f.matrix @ (g.matrix @ xf))


def triple_associator(y, T: ParaLinearOperator, x) -> Octonion:
    """``[y, T, x] = sum_i e_i <y, B_{e_i}(T, x)>_R``."""
    yf = _vec(T, y)
    out = np.zeros(8)
    for i in range(1, 8):
        out[i] = float(yf @ operator_B_p(T, x, O.basis(i)).flat)
    return Octonion(out)


def adjoint(T: ParaLinearOperator) -> ParaLinearOperator:
    """Real transpose; it is again para-linear."""
    Mt = T.matrix.T
    return ParaLinearOperator(Mt[0::8, :], Mt)


def _lr(n: int, r) -> tuple[np.ndarray, np.ndarray]:
    r = O.as_array(r)
    return kron_eye(n, O.left_matrix(r)), kron_eye(n, O.right_matrix(r))


def scalar_action(T: ParaLinearOperator, r, side: str = "left") -> ParaLinearOperator:
    """``r . T`` (left) or ``T . r`` (right).

    ``(r.T)(x) = r T(x) + B_r(T, x)`` and ``(T.r)(x) = T(r x) - B_r(T, x)``.
    """
    n = T.dim
    L, R = _lr(n, r)
    M = T.matrix
    if side == "left":
        out = L @ M + R @ M - M @ R
    elif side == "right":
        out = M @ L - R @ M + M @ R
    else:
        raise ValueError(f"side must be 'left' or 'right', got {side!r}")
    if DEBUG:
        scale = max(1.0, float(np.abs(out).max()))
        ParaLinearOperator.from_real_matrix(out, tol=1e-10 * scale)
    return ParaLinearOperator(out[0::8, :])


def operator_norm(T: ParaLinearOperator) -> float:
    M = T.matrix
    try:
        return float(np.linalg.norm(M, 2))
    except np.linalg.LinAlgError:
        return _power_norm(M)


def _power_norm(M: np.ndarray, iters: int = 1000, rtol: float = 1e-10) -> float:
    rng = np.random.default_rng(0)
    v = rng.standard_normal(M.shape[1])
    v /= np.linalg.norm(v)
    est = 0.0
    for _ in range(iters):
        w = M.T @ (M @ v)
        nw = np.linalg.norm(w)
        if nw == 0.0:
            return 0.0
        v = w / nw
        new = np.sqrt(nw)
        if abs(new - est) <= rtol * new:
            return float(new)
        est = new
    return float(est)


def distance(S: ParaLinearOperator, T: ParaLinearOperator) -> float:
    """Operator norm of ``S - T``."""
    S._check(T)
    return float(np.linalg.norm(S.matrix - T.matrix, 2))


def op_real_part(T: ParaLinearOperator) -> ParaLinearOperator:
    """``Re T = (5/12) T - (1/12) sum_i e_i . T . e_i``; an O-linear operator."""
    acc = np.zeros_like(T.core)
    for i in range(1, 8):
        ei = O.basis(i)
        acc = acc + scalar_action(scalar_action(T, ei, "left"), ei, "right").core
    return ParaLinearOperator(5.0 / 12.0 * T.core - acc / 12.0)


def o_linear_defect(T: ParaLinearOperator) -> float:
    """Largest ``|B_p(T, x)|`` over basis ``x`` and ``p`` in ``e1..e7`` (0 iff O-linear)."""
    n = T.dim
    M = T.matrix
    worst = 0.0
    for i in range(1, 8):
        R = kron_eye(n, O.right_matrix(O.basis(i)))
        D = R @ M - M @ R
        worst = max(worst, float(np.linalg.norm(D, axis=0).max()))
    return worst


def paralinear_defect(M) -> float:
    """Largest ``|Re B_p(M, x)|`` for a raw real matrix ``M``."""
    M = np.asarray(M, dtype=float)
    n = M.shape[0] // 8
    worst = 0.0
    for i in range(1, 8):
        R = kron_eye(n, O.right_matrix(O.basis(i)))
        D = (R @ M - M @ R)[0::8]
        worst = max(worst, float(np.linalg.norm(D, axis=0).max()))
    return worst
