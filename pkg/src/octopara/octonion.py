"""Octonion arithmetic.

Octonions are stored as float64 arrays whose last axis has length 8, holding
the coefficients of ``1, e1, ..., e7``.  The module-level functions work on
arrays of any leading shape; :class:`Octonion` wraps a single value for
user-facing code.

The product is generated from the seven oriented Fano triples

    (123), (145), (176), (246), (257), (347), (365)

with ``e_i e_j = eps_ijk e_k - delta_ij``.
"""

from __future__ import annotations

from typing import Iterable

import numpy as np

FANO_TRIPLES: tuple[tuple[int, int, int], ...] = (
    (1, 2, 3),
    (1, 4, 5),
    (1, 7, 6),
    (2, 4, 6),
    (2, 5, 7),
    (3, 4, 7),
    (3, 6, 5),
)


def _build_table() -> np.ndarray:
    # table[a, b, c] = coefficient of e_c in e_a e_b
    table = np.zeros((8, 8, 8))
    for a in range(8):
        table[0, a, a] = 1.0
        table[a, 0, a] = 1.0
    for i in range(1, 8):
        table[i, i, 0] = -1.0
    for i, j, k in FANO_TRIPLES:
        for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
            table[a, b, c] = 1.0
            table[b, a, c] = -1.0
    return table


MULT_TABLE = _build_table()
MULT_TABLE.setflags(write=False)


def _check_table() -> None:
    # every unit product lands on a single signed unit, and [x, x, y] = 0
    nz = np.count_nonzero(MULT_TABLE, axis=2)
    if not np.all(nz == 1):
        raise RuntimeError("octonion table is not a signed permutation table")
    eye = np.eye(8)
    for a in range(8):
        for b in range(8):
            if np.any(associator(eye[a], eye[a], eye[b]) != 0):
                raise RuntimeError(f"table fails alternativity at e{a}, e{b}")


def as_array(x) -> np.ndarray:
    if isinstance(x, Octonion):
        return x.coeffs
    arr = np.asarray(x, dtype=float)
    if arr.shape[-1:] != (8,):
        raise ValueError(f"expected trailing axis of length 8, got shape {arr.shape}")
    return arr


def basis(i: int) -> np.ndarray:
    e = np.zeros(8)
    e[i] = 1.0
    return e


def real(r: float) -> np.ndarray:
    return r * basis(0)


def mul(a, b) -> np.ndarray:
    """Product ``a b`` (broadcasting over leading axes)."""
    a = as_array(a)
    b = as_array(b)
    return np.einsum("...a,...b,abc->...c", a, b, MULT_TABLE)


def conj(a) -> np.ndarray:
    out = np.array(as_array(a), dtype=float, copy=True)
    out[..., 1:] *= -1.0
    return out


def norm(a) -> np.ndarray | float:
    return np.sqrt(np.sum(as_array(a) ** 2, axis=-1))


def inverse(a) -> np.ndarray:
    a = as_array(a)
    n2 = np.sum(a**2, axis=-1)
    if np.any(n2 == 0.0):
        raise ZeroDivisionError("octonion inverse of 0")
    return conj(a) / n2[..., None]


def re(a) -> np.ndarray | float:
    return as_array(a)[..., 0]


def im(a) -> np.ndarray:
    out = np.array(as_array(a), dtype=float, copy=True)
    out[..., 0] = 0.0
    return out


def associator(x, y, z) -> np.ndarray:
    """``(xy)z - x(yz)``."""
    return mul(mul(x, y), z) - mul(x, mul(y, z))


def commutator(x, y) -> np.ndarray:
    return mul(x, y) - mul(y, x)


def im_via_associator(p) -> np.ndarray:
    """Imaginary part computed as ``-(1/48) sum_ij [e_i, e_j, (e_i e_j) p]``."""
    p = as_array(p)
    acc = np.zeros_like(p)
    for i in range(1, 8):
        ei = basis(i)
        for j in range(1, 8):
            ej = basis(j)
            acc = acc + associator(ei, ej, mul(mul(ei, ej), p))
    return -acc / 48.0


def left_matrix(p) -> np.ndarray:
    """8x8 real matrix of ``x -> p x``."""
    return np.einsum("a,abc->cb", as_array(p), MULT_TABLE)


def right_matrix(p) -> np.ndarray:
    """8x8 real matrix of ``x -> x p``."""
    return np.einsum("b,abc->ca", as_array(p), MULT_TABLE)


def random_octonion(rng: np.random.Generator, size=None) -> np.ndarray:
    shape = (8,) if size is None else tuple(np.atleast_1d(size)) + (8,)
    return rng.standard_normal(shape)


def random_unit_imaginary(rng: np.random.Generator) -> np.ndarray:
    """Uniform sample from the unit 6-sphere of imaginary octonions."""
    v = rng.standard_normal(7)
    j = np.zeros(8)
    j[1:] = v / np.linalg.norm(v)
    return j


class Octonion:
    """Immutable octonion value.

    Supports ``+``, ``-``, ``*`` (octonion product, or scaling by a real),
    ``/`` by a real, and unary negation.

    >>> e1, e2 = Octonion.unit(1), Octonion.unit(2)
    >>> e1 * e2 == Octonion.unit(3)
    True
    """

    __slots__ = ("_c",)
    __array_ufunc__ = None  # numpy defers to our reflected operators

    def __init__(self, coeffs: Iterable[float] = (0.0,) * 8):
        c = np.array(coeffs, dtype=float).reshape(-1)
        if c.shape != (8,):
            raise ValueError(f"an octonion needs 8 coefficients, got {c.shape[0]}")
        c.setflags(write=False)
        self._c = c

    @classmethod
    def unit(cls, i: int) -> Octonion:
        return cls(basis(i))

    @classmethod
    def real(cls, r: float) -> Octonion:
        return cls(real(r))

    @property
    def coeffs(self) -> np.ndarray:
        return self._c

    def __iter__(self):
        return iter(self._c.tolist())

    def __getitem__(self, i):
        return self._c[i]

    def __repr__(self) -> str:
        return f"Octonion({self._c.tolist()})"

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, float)):
            other = Octonion.real(other)
        if not isinstance(other, Octonion):
            return NotImplemented
        return bool(np.array_equal(self._c, other._c))

    def __hash__(self):
        return hash(self._c.tobytes())

    def __add__(self, other):
        if isinstance(other, (int, float)):
            return Octonion(self._c + real(other))
        return Octonion(self._c + as_array(other))

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, (int, float)):
            return Octonion(self._c - real(other))
        return Octonion(self._c - as_array(other))

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return Octonion(-self._c)

    def __mul__(self, other):
        if isinstance(other, (int, float, np.floating)):
            return Octonion(self._c * float(other))
        if isinstance(other, Octonion):
            return Octonion(mul(self._c, other._c))
        if isinstance(other, np.ndarray) and other.shape == (8,):
            return Octonion(mul(self._c, other))
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, float, np.floating)):
            return Octonion(self._c * float(other))
        if isinstance(other, np.ndarray) and other.shape == (8,):
            return Octonion(mul(other, self._c))
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, (int, float, np.floating)):
            return Octonion(self._c / float(other))
        if isinstance(other, Octonion):
            return self * other.inverse()
        return NotImplemented

    def conj(self) -> Octonion:
        return Octonion(conj(self._c))

    def norm(self) -> float:
        return float(norm(self._c))

    def inverse(self) -> Octonion:
        return Octonion(inverse(self._c))

    @property
    def re(self) -> float:
        return float(self._c[0])

    @property
    def im(self) -> Octonion:
        return Octonion(im(self._c))

    def is_close(self, other, atol: float = 1e-12) -> bool:
        return bool(np.allclose(self._c, as_array(other), rtol=0.0, atol=atol))

    def to_json(self) -> list[float]:
        return self._c.tolist()


def unary_algebra(a) -> dict:
    """Conjugate, norm, inverse (None when |a|^2 underflows to 0), real and imaginary part of ``a``."""
    a = as_array(a)
    try:
        inv = inverse(a)
    except ZeroDivisionError:
        inv = None
    return {
        "conj": Octonion(conj(a)),
        "norm": float(norm(a)),
        "inverse": None if inv is None else Octonion(inv),
        "re": float(a[0]),
        "im": Octonion(im(a)),
    }


class ImaginaryUnit(Octonion):
    """A unit imaginary octonion J (so that J^2 = -1)."""

    __slots__ = ()

    def __init__(self, coeffs: Iterable[float], atol: float = 1e-9):
        c = np.array(coeffs, dtype=float).reshape(-1)
        if c.shape != (8,):
            raise ValueError("an imaginary unit needs 8 coefficients")
        if abs(c[0]) > atol or abs(np.linalg.norm(c) - 1.0) > atol:
            raise ValueError(f"not a unit imaginary octonion: {c.tolist()}")
        c = c.copy()
        c[0] = 0.0
        super().__init__(c / np.linalg.norm(c))

    @classmethod
    def normalized(cls, v) -> ImaginaryUnit:
        """Unit imaginary octonion along the imaginary part of ``v``."""
        w = im(as_array(v))
        n = np.linalg.norm(w)
        if n == 0.0:
            raise ZeroDivisionError("zero imaginary part has no direction")
        return cls(w / n)


_check_table()
