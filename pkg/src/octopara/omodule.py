"""Finite-dimensional Hilbert O-bimodules H = Re H (x) O.

A vector with octonionic dimension ``n`` is stored as an ``(n, 8)`` array of
components: row ``k`` holds the octonion coefficient of the real basis vector
``u_k``, so ``x = sum_k sum_i X[k, i] e_i u_k``.  The flat real coordinate
vector (length ``8n``) uses index ``8k + i``.  Because ``{e_i u_k}`` is real
orthonormal, the real inner product is the Euclidean dot product.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import octonion as O
from .errors import (
    BasisNotOrthonormal,
    DimensionMismatch,
    NotSlice,
    ShapeMismatch,
    ZeroVector,
)
from .octonion import ImaginaryUnit, Octonion


class OVector:
    """Element of H with ``dim`` octonion components."""

    __slots__ = ("_X",)
    __array_ufunc__ = None  # numpy defers to our reflected operators

    def __init__(self, components):
        X = np.array(components, dtype=float)
        if X.ndim == 1:
            if X.size % 8:
                raise ShapeMismatch(f"flat vector length {X.size} is not a multiple of 8")
            X = X.reshape(-1, 8)
        if X.ndim != 2 or X.shape[1] != 8 or X.shape[0] == 0:
            raise ShapeMismatch(f"expected components of shape (n, 8), got {X.shape}")
        X.setflags(write=False)
        self._X = X

    @classmethod
    def from_real(cls, r) -> OVector:
        """Embed a real n-vector into Re H."""
        r = np.asarray(r, dtype=float).reshape(-1)
        X = np.zeros((r.size, 8))
        X[:, 0] = r
        return cls(X)

    @classmethod
    def basis_vector(cls, n: int, k: int, i: int = 0) -> OVector:
        """``e_i u_k``."""
        X = np.zeros((n, 8))
        X[k, i] = 1.0
        return cls(X)

    @classmethod
    def zeros(cls, n: int) -> OVector:
        return cls(np.zeros((n, 8)))

    @property
    def dim(self) -> int:
        return self._X.shape[0]

    @property
    def components(self) -> np.ndarray:
        return self._X

    @property
    def flat(self) -> np.ndarray:
        return self._X.reshape(-1)

    def __len__(self):
        return self.dim

    def __repr__(self):
        return f"OVector(dim={self.dim}, components={self._X.tolist()})"

    def __eq__(self, other):
        if not isinstance(other, OVector):
            return NotImplemented
        return self._X.shape == other._X.shape and bool(np.array_equal(self._X, other._X))

    def __add__(self, other: OVector) -> OVector:
        _check_dims(self, other)
        return OVector(self._X + other._X)

    def __sub__(self, other: OVector) -> OVector:
        _check_dims(self, other)
        return OVector(self._X - other._X)

    def __neg__(self):
        return OVector(-self._X)

    def __mul__(self, t):
        # right action; a real t is the common case
        if isinstance(t, (int, float, np.floating)):
            return OVector(self._X * float(t))
        return scale(self, t, "right")

    def __rmul__(self, t):
        if isinstance(t, (int, float, np.floating)):
            return OVector(self._X * float(t))
        return scale(self, t, "left")

    def norm(self) -> float:
        return float(np.linalg.norm(self._X))

    def is_real(self, atol: float = 0.0) -> bool:
        return bool(np.all(np.abs(self._X[:, 1:]) <= atol))

    def to_json(self) -> dict:
        return {"dim": self.dim, "components": self._X.tolist()}

    @classmethod
    def from_json(cls, obj: dict) -> OVector:
        X = np.asarray(obj["components"], dtype=float)
        if X.shape != (int(obj["dim"]), 8):
            raise ShapeMismatch(f"components shape {X.shape} does not match dim {obj['dim']}")
        return cls(X)


def as_ovector(x) -> OVector:
    if isinstance(x, OVector):
        return x
    if isinstance(x, SliceParavector):
        return x.value
    return OVector(x)


def _check_dims(x: OVector, y: OVector) -> None:
    if x.dim != y.dim:
        raise DimensionMismatch(f"dimension {x.dim} != {y.dim}")


def inner_product(x, y) -> Octonion:
    """``<x, y> = sum_k conj(x_k) y_k``; O-Hermitian, real-valued on the diagonal."""
    x, y = as_ovector(x), as_ovector(y)
    _check_dims(x, y)
    return Octonion(_ip(x.components, y.components))


def _ip(X: np.ndarray, Y: np.ndarray) -> np.ndarray:
    return O.mul(O.conj(X), Y).sum(axis=0)


def real_inner(x, y) -> float:
    x, y = as_ovector(x), as_ovector(y)
    _check_dims(x, y)
    return float(np.dot(x.flat, y.flat))


def scale(x, p, side: str = "right") -> OVector:
    """Componentwise ``p x`` (left) or ``x p`` (right)."""
    x = as_ovector(x)
    p = O.as_array(p)
    if side == "left":
        return OVector(O.mul(p, x.components))
    if side == "right":
        return OVector(O.mul(x.components, p))
    raise ValueError(f"side must be 'left' or 'right', got {side!r}")


def second_associator(u, v, p) -> Octonion:
    """``B_p(u, v) = <u, v> p - <u, v p>``."""
    u, v = as_ovector(u), as_ovector(v)
    _check_dims(u, v)
    p = O.as_array(p)
    U, V = u.components, v.components
    return Octonion(O.mul(_ip(U, V), p) - _ip(U, O.mul(V, p)))


def re_project(x) -> OVector:
    X = np.array(as_ovector(x).components)
    X[:, 1:] = 0.0
    return OVector(X)


def re_project_formula(x) -> OVector:
    """Real part as ``(5/12) x - (1/12) sum_i e_i x e_i``."""
    X = as_ovector(x).components
    acc = np.zeros_like(X)
    for i in range(1, 8):
        ei = O.basis(i)
        acc += O.mul(O.mul(ei, X), ei)
    return OVector(5.0 / 12.0 * X - acc / 12.0)


def _fix_sign(j: np.ndarray) -> np.ndarray:
    nz = np.flatnonzero(np.abs(j) > 1e-12)
    if nz.size and j[nz[0]] < 0:
        return -j
    return j


def slice_membership(x, tol: float = 1e-9) -> ImaginaryUnit | None:
    """Imaginary axis J with ``x`` in ``Re H + J Re H``, or None.

    The imaginary parts of the components are stacked into a 7 x n matrix; x
    is a slice paravector iff that matrix has numerical rank at most one.  A
    vector in Re H gets ``e1`` by convention.
    """
    X = as_ovector(x).components
    total = np.linalg.norm(X)
    if total == 0.0:
        raise ZeroVector("slice membership of the zero vector")
    imag = X[:, 1:].T
    s = np.linalg.svd(imag, compute_uv=False)
    # rank 0 only at rounding level; a small but genuine imaginary part still
    # fixes the axis
    if s[0] <= 64 * np.finfo(float).eps * total:
        return ImaginaryUnit(O.basis(1))
    if s.size > 1 and s[1] > tol * s[0]:
        return None
    U, _, _ = np.linalg.svd(imag)
    j = np.zeros(8)
    j[1:] = U[:, 0]
    return ImaginaryUnit(_fix_sign(j))


@dataclass(frozen=True)
class SliceParavector:
    """``z = u + J v`` with ``u, v`` real n-vectors and ``J`` a unit imaginary."""

    u: np.ndarray
    v: np.ndarray
    j: ImaginaryUnit

    def __post_init__(self):
        u = np.array(self.u, dtype=float).reshape(-1)
        v = np.array(self.v, dtype=float).reshape(-1)
        if u.shape != v.shape:
            raise DimensionMismatch(f"u has {u.size} entries, v has {v.size}")
        if not isinstance(self.j, ImaginaryUnit):
            object.__setattr__(self, "j", ImaginaryUnit(O.as_array(self.j)))
        u.setflags(write=False)
        v.setflags(write=False)
        object.__setattr__(self, "u", u)
        object.__setattr__(self, "v", v)

    @property
    def dim(self) -> int:
        return self.u.size

    @property
    def value(self) -> OVector:
        X = np.outer(self.u, O.basis(0)) + np.outer(self.v, self.j.coeffs)
        return OVector(X)

    @property
    def components(self) -> np.ndarray:
        return self.value.components

    @property
    def flat(self) -> np.ndarray:
        return self.value.flat

    def norm(self) -> float:
        return float(np.sqrt(self.u @ self.u + self.v @ self.v))

    def normalized(self) -> SliceParavector:
        nrm = self.norm()
        if nrm == 0.0:
            raise ZeroVector("cannot normalize the zero slice paravector")
        return SliceParavector(self.u / nrm, self.v / nrm, self.j)

    @classmethod
    def from_vector(cls, x, tol: float = 1e-9) -> SliceParavector:
        x = as_ovector(x)
        j = slice_membership(x, tol)
        if j is None:
            raise NotSlice("imaginary parts of the components are not parallel")
        X = x.components
        return cls(X[:, 0].copy(), X[:, 1:] @ j.coeffs[1:], j)


def is_weak_orthonormal(vectors: Sequence, tol: float = 1e-10) -> float:
    """Largest deviation from ``<z_a, z_b> = delta_ab`` and ``B_p(z_a, z_b) = 0``."""
    Z = [as_ovector(z).components for z in vectors]
    worst = 0.0
    for a, Za in enumerate(Z):
        for b, Zb in enumerate(Z):
            g = _ip(Za, Zb)
            g[0] -= 1.0 if a == b else 0.0
            worst = max(worst, float(np.abs(g).max()))
            if a < b:
                for i in range(1, 8):
                    ei = O.basis(i)
                    B = O.mul(_ip(Za, Zb), ei) - _ip(Za, O.mul(Zb, ei))
                    worst = max(worst, float(np.abs(B).max()))
    return worst


def parseval_expand(x, basis: Sequence, tol: float = 1e-9) -> list[Octonion]:
    """Coefficients ``<z_a, x>`` of ``x`` in a weak associative orthonormal basis."""
    x = as_ovector(x)
    if not basis:
        raise BasisNotOrthonormal("empty basis")
    for z in basis:
        if as_ovector(z).dim != x.dim:
            raise DimensionMismatch("basis vector dimension differs from x")
    dev = is_weak_orthonormal(basis)
    if dev > tol:
        raise BasisNotOrthonormal(f"basis deviates from weak associative orthonormality by {dev:.3e}")
    return [inner_product(z, x) for z in basis]


def parseval_sum(basis: Sequence, coeffs: Sequence) -> OVector:
    """``sum_a z_a c_a``."""
    X = None
    for z, c in zip(basis, coeffs):
        term = O.mul(as_ovector(z).components, O.as_array(c))
        X = term if X is None else X + term
    return OVector(X)
