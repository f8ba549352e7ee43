"""Right and left functional calculi over a spectral decomposition.

    Phi(f) = P_0 . f(0) + sum_i P_{z_i} . f(lam_i)     (right)
    Psi(f) = f(0) . P_0 + sum_i f(lam_i) . P_{z_i}     (left)

``P_0`` is the sum of the kernel projections; it is zero when ``T`` is
injective, so ``f(0)`` is then inert but must still be tabulated.
"""

from __future__ import annotations

from typing import Callable, Iterable

import numpy as np

from . import octonion as O
from .errors import SpectrumMismatch
from .paralinear import ParaLinearOperator, regular_compose, scalar_action
from .spectral import SpectralDecomposition, slice_projection


def _same(a: float, b: float) -> bool:
    return abs(a - b) <= 1e-9 * max(1.0, abs(a), abs(b))


class SpectrumFunction:
    """Finite table ``lam -> f(lam)`` with octonion values."""
    __array_ufunc__ = None  # numpy defers to our reflected operators

    def __init__(self, table: Iterable[tuple[float, object]]):
        pts: list[float] = []
        vals: list[np.ndarray] = []
        for lam, val in table:
            lam = float(lam)
            v = O.real(float(val)) if np.isscalar(val) else np.array(O.as_array(val), dtype=float)
            for q in pts:
                if _same(q, lam):
                    raise ValueError(f"spectrum point {lam!r} tabulated twice")
            pts.append(lam)
            vals.append(v)
        self._pts = np.array(pts, dtype=float)
        self._vals = np.array(vals, dtype=float).reshape(-1, 8)

    @classmethod
    def from_callable(cls, fn: Callable[[float], object], points: Iterable[float]) -> SpectrumFunction:
        return cls((lam, fn(lam)) for lam in points)

    @classmethod
    def polynomial(cls, coeffs, points: Iterable[float]) -> SpectrumFunction:
        """``f(q) = sum_k q^k c_k``; coefficients may be reals or octonions."""
        cs = [O.real(float(c)) if np.isscalar(c) else O.as_array(c) for c in coeffs]

        def f(lam):
            return sum((lam**k) * c for k, c in enumerate(cs)) if cs else np.zeros(8)

        return cls.from_callable(f, points)

    @classmethod
    def monomial(cls, k: int, points: Iterable[float]) -> SpectrumFunction:
        return cls.from_callable(lambda lam: lam**k, points)

    @property
    def points(self) -> np.ndarray:
        return self._pts

    @property
    def values(self) -> np.ndarray:
        return self._vals

    def __len__(self):
        return self._pts.size

    def __call__(self, lam: float) -> np.ndarray:
        for q, v in zip(self._pts, self._vals):
            if _same(q, lam):
                return v
        raise SpectrumMismatch(f"no value tabulated for spectrum point {lam!r}")

    def covers(self, lam: float) -> bool:
        return any(_same(q, lam) for q in self._pts)

    @property
    def sup_norm(self) -> float:
        return float(np.max(np.linalg.norm(self._vals, axis=1))) if len(self) else 0.0

    def is_real(self) -> bool:
        return bool(np.all(self._vals[:, 1:] == 0.0))

    def conj(self) -> SpectrumFunction:
        return SpectrumFunction(zip(self._pts, O.conj(self._vals)))

    def _zip(self, other: SpectrumFunction, op) -> SpectrumFunction:
        return SpectrumFunction((lam, op(v, other(lam))) for lam, v in zip(self._pts, self._vals))

    def __add__(self, other: SpectrumFunction) -> SpectrumFunction:
        return self._zip(other, lambda a, b: a + b)

    def __mul__(self, other) -> SpectrumFunction:
        """Pointwise product ``(fg)(lam) = f(lam) g(lam)``, or ``f p`` for an octonion p."""
        if isinstance(other, SpectrumFunction):
            return self._zip(other, O.mul)
        p = O.as_array(other) if not np.isscalar(other) else O.real(float(other))
        return SpectrumFunction(zip(self._pts, O.mul(self._vals, p)))

    def __rmul__(self, other) -> SpectrumFunction:
        p = O.as_array(other) if not np.isscalar(other) else O.real(float(other))
        return SpectrumFunction(zip(self._pts, O.mul(p, self._vals)))

    def to_json(self) -> dict:
        return {"values": [{"lambda": float(l), "f": v.tolist()} for l, v in zip(self._pts, self._vals)]}


def _check_cover(f: SpectrumFunction, d: SpectralDecomposition) -> None:
    missing = [lam for lam in d.spectrum() if not f.covers(lam)]
    if missing:
        raise SpectrumMismatch(f"spectrum function misses spectrum points {missing}")


def _assemble(f: SpectrumFunction, d: SpectralDecomposition, side: str) -> ParaLinearOperator:
    _check_cover(f, d)
    acc = ParaLinearOperator.zero(d.dim)
    terms = [(p.lam, slice_projection(p.z)) for p in d.pairs]
    if d.kernel:
        terms.append((0.0, d.kernel_projection()))
    for lam, P in terms:
        acc = acc + scalar_action(P, f(lam), side)
    return acc


def phi(f: SpectrumFunction, d: SpectralDecomposition) -> ParaLinearOperator:
    """Right functional calculus ``Phi(f)``."""
    return _assemble(f, d, "right")


def psi(f: SpectrumFunction, d: SpectralDecomposition) -> ParaLinearOperator:
    """Left functional calculus ``Psi(f)``."""
    return _assemble(f, d, "left")


def power_op(T: ParaLinearOperator, k: int) -> ParaLinearOperator:
    """``T^k`` under regular composition, associated from the left."""
    if k < 0:
        raise ValueError("power must be a nonnegative integer")
    out = ParaLinearOperator.identity(T.dim)
    for _ in range(k):
        out = regular_compose(out, T)
    return out
