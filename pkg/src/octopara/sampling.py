"""Seeded random generators for octonions, vectors, operators and slice systems."""

from __future__ import annotations

import numpy as np

from . import octonion as O
from .omodule import OVector, SliceParavector
from .paralinear import ParaLinearOperator


def make_rng(seed: int, stream: int = 0) -> np.random.Generator:
    """Counter-based generator; ``stream`` selects an independent substream."""
    bg = np.random.Philox(key=seed)
    if stream:
        bg = bg.jumped(stream)
    return np.random.Generator(bg)


def random_vector(rng, n: int) -> OVector:
    return OVector(rng.standard_normal((n, 8)))


def random_real_vector(rng, n: int) -> OVector:
    return OVector.from_real(rng.standard_normal(n))


def random_operator(rng, n: int) -> ParaLinearOperator:
    return ParaLinearOperator(rng.standard_normal((n, 8 * n)))


def random_self_adjoint(rng, n: int) -> ParaLinearOperator:
    M = random_operator(rng, n).matrix
    S = 0.5 * (M + M.T)
    return ParaLinearOperator(S[0::8], S)


def random_slice(rng, n: int) -> SliceParavector:
    J = O.random_unit_imaginary(rng)
    return SliceParavector(rng.standard_normal(n), rng.standard_normal(n), J).normalized()


def random_orthogonal(rng, n: int) -> np.ndarray:
    Q, R = np.linalg.qr(rng.standard_normal((n, n)))
    return Q * np.sign(np.diag(R))


def random_unitary(rng, m: int) -> np.ndarray:
    A = rng.standard_normal((m, m)) + 1j * rng.standard_normal((m, m))
    Q, R = np.linalg.qr(A)
    d = np.diag(R)
    return Q * (d / np.abs(d))


def random_slice_system(rng, n: int, blocks: list[int] | None = None) -> list[SliceParavector]:
    """A complete weak associative orthonormal family of ``n`` slice paravectors.

    A random real rotation is split into blocks; each block gets its own axis
    and a random complex unitary over ``C_J``.
    """
    if blocks is None:
        sizes = []
        left = n
        while left:
            m = int(rng.integers(1, left + 1))
            sizes.append(m)
            left -= m
    else:
        sizes = list(blocks)
        if sum(sizes) != n:
            raise ValueError("block sizes must sum to n")
    R = random_orthogonal(rng, n)
    out, start = [], 0
    for m in sizes:
        Rb = R[:, start : start + m]
        start += m
        if m == 1 and rng.random() < 0.3:
            # a purely real member
            out.append(SliceParavector(Rb[:, 0], np.zeros(n), O.basis(1)))
            continue
        J = O.random_unit_imaginary(rng)
        Ub = random_unitary(rng, m)
        for c in range(m):
            out.append(SliceParavector(Rb @ Ub[:, c].real, Rb @ Ub[:, c].imag, J))
    return out


def random_spectral_operator(rng, n: int, max_distinct: int | None = None, zero_prob: float = 0.2):
    """``(T, eigenvalues, slice family)`` with ``T = sum lam_k P_{z_k}``.

    Eigenvalues are drawn from a small pool so that degenerate eigenspaces
    mixing several axes occur often.
    """
    from .spectral import slice_projection

    zs = random_slice_system(rng, n)
    k = n if max_distinct is None else max_distinct
    pool = rng.uniform(-3.0, 3.0, size=max(1, int(rng.integers(1, k + 1))))
    pool = np.where(np.abs(pool) < 0.1, pool + 0.5, pool)
    lams = rng.choice(pool, size=n)
    lams = np.where(rng.random(n) < zero_prob, 0.0, lams)
    M = np.zeros((8 * n, 8 * n))
    for lam, z in zip(lams, zs):
        M += lam * slice_projection(z).matrix
    return ParaLinearOperator(M[0::8], M), lams, zs
