"""Strong eigenpairs, slice projections and spectral decomposition.

``decompose`` works on the real ``8n x 8n`` matrix of a self-adjoint operator:

1. a cyclic Jacobi sweep gives the real eigenvalues and eigenvectors;
2. eigenvalues are clustered and each cluster's real eigenspace ``V`` is
   searched for unit slice paravectors ``z`` with ``z O`` inside ``V``;
3. ``V`` must be exactly the real span of ``{z e_k}`` for the harvested
   family, otherwise :class:`NotStandardStrong` is raised.

Slice vectors are harvested in this order on what is left of ``V``:

* the part of ``V`` lying in Re H;
* axes read off a commutant splitting of the projector onto ``V`` restricted
  to Re H (this separates degenerate eigenspaces whose slice vectors use
  different axes);
* axes taken from the imaginary directions of ``V``'s basis vectors;
* up to 32 seeded random axes.

For a candidate axis ``J`` and real frame ``U`` the intersection of ``V``
with ``{U a + J U b}`` is complex-orthonormalized over ``C_J``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import octonion as O
from .errors import NotSelfAdjoint, NotSlice, NotStandardStrong, NotUnit
from .jacobi import jacobi_eigh
from .octonion import ImaginaryUnit
from .omodule import (
    OVector,
    SliceParavector,
    as_ovector,
    inner_product,
    is_weak_orthonormal,
    slice_membership,
)
from .paralinear import (
    ParaLinearOperator,
    distance,
    operator_norm,
    regular_compose,
)
from .polarization import is_self_adjoint

N_RANDOM_AXES = 32
ANGLE_TOL = 1e-10  # cosine slack when intersecting subspaces
STRUCT_TOL = 1e-7  # containment / orthonormality slack for harvested vectors
FIT_TOL = 1e-10  # hull misfit that ends the candidate search early


@dataclass(frozen=True)
class StrongEigenpair:
    lam: float
    z: SliceParavector

    @property
    def axis(self) -> ImaginaryUnit:
        return self.z.j

    def to_json(self) -> dict:
        return {
            "lambda": float(self.lam),
            "z": self.z.value.to_json(),
            "axis": self.z.j.coeffs[1:].tolist(),
        }


@dataclass(frozen=True)
class SpectralDecomposition:
    dim: int
    pairs: tuple = ()
    kernel: tuple = ()
    residual: float = field(default=float("nan"), compare=False)

    @property
    def eigenvalues(self) -> list[float]:
        return [p.lam for p in self.pairs]

    def basis(self) -> list[SliceParavector]:
        return [p.z for p in self.pairs] + list(self.kernel)

    def spectrum(self) -> list[float]:
        """Distinct spectrum points, always including 0."""
        pts: list[float] = [0.0]
        for lam in self.eigenvalues:
            if not any(abs(lam - q) <= 1e-9 * max(1.0, abs(lam)) for q in pts):
                pts.append(lam)
        return pts

    def kernel_projection(self) -> ParaLinearOperator:
        P = ParaLinearOperator.zero(self.dim)
        for z in self.kernel:
            P = P + slice_projection(z)
        return P

    def to_json(self) -> dict:
        return {
            "pairs": [p.to_json() for p in self.pairs],
            "kernel": [z.value.to_json() for z in self.kernel],
            "residual": float(self.residual),
        }


# slice projections ---------------------------------------------------------


def _slice_frame(Z: np.ndarray) -> np.ndarray:
    """``8n x 8`` matrix whose column ``k`` is ``z e_k``."""
    return np.concatenate([O.left_matrix(zc) for zc in Z], axis=0)


def slice_projection(z, atol: float = 1e-9) -> ParaLinearOperator:
    """``P_z(x) = z <z, x>`` for a unit slice paravector ``z``."""
    if isinstance(z, SliceParavector):
        x = z.value
    else:
        x = as_ovector(z)
        if slice_membership(x, tol=atol) is None:
            raise NotSlice("P_z is only para-linear for slice paravectors z")
    nrm = x.norm()
    if abs(nrm - 1.0) > atol:
        raise NotUnit(f"slice projection needs |z| = 1, got {nrm:.12g}")
    Z = x.components
    G = np.concatenate([O.left_matrix(O.conj(zc)) for zc in Z], axis=1)
    P = _slice_frame(Z) @ G
    return ParaLinearOperator(P[0::8, :])


def strong_eigencheck(T: ParaLinearOperator, z, lam, tol: float = 1e-10) -> bool:
    """``|Tz - z lam| <= tol |T| |z|``; ``lam`` may be real or octonionic."""
    x = as_ovector(z)
    lam_o = O.real(float(lam)) if np.isscalar(lam) else O.as_array(lam)
    Tz = T.matrix @ x.flat
    zl = O.mul(x.components, lam_o).reshape(-1)
    return bool(np.linalg.norm(Tz - zl) <= tol * operator_norm(T) * x.norm())


def eigen_commutation_residual(T: ParaLinearOperator, pair: StrongEigenpair) -> float:
    """``|T (*) P_z - P_z . lam|`` (the right action of a real lam is scaling)."""
    P = slice_projection(pair.z)
    return distance(regular_compose(T, P), P * float(pair.lam))


def reconstruct(d: SpectralDecomposition) -> ParaLinearOperator:
    M = np.zeros((8 * d.dim, 8 * d.dim))
    for p in d.pairs:
        M += p.lam * slice_projection(p.z).matrix
    return ParaLinearOperator(M[0::8, :])


# subspace helpers -----------------------------------------------------------


def _orth(A: np.ndarray, rtol: float = 1e-8) -> np.ndarray:
    if A.size == 0:
        return A.reshape(A.shape[0], 0)
    U, s, _ = np.linalg.svd(A, full_matrices=False)
    if s.size == 0 or s[0] == 0.0:
        return U[:, :0]
    return U[:, s > rtol * s[0]]


def _intersect(W: np.ndarray, B: np.ndarray) -> np.ndarray:
    """Coordinates (w.r.t. the orthonormal columns of B) of span W ∩ span B."""
    if W.shape[1] == 0 or B.shape[1] == 0:
        return np.zeros((B.shape[1], 0))
    _, s, Vt = np.linalg.svd(W.T @ B, full_matrices=True)
    keep = np.zeros(Vt.shape[0], dtype=bool)
    keep[: s.size] = s >= 1.0 - ANGLE_TOL
    return Vt[keep].T


def _complex_frame(U: np.ndarray, J: np.ndarray) -> np.ndarray:
    """Orthonormal basis ``[U (x) 1, U (x) J]`` of ``{U a + J U b}``."""
    n, m = U.shape
    B = np.zeros((n, 8, 2 * m))
    B[:, 0, :m] = U
    B[:, :, m:] = U[:, None, :] * J[None, :, None]
    return B.reshape(8 * n, 2 * m)


def _harvest_axis(W: np.ndarray, U: np.ndarray, J: np.ndarray) -> list[np.ndarray]:
    """Complex-orthonormal slice vectors with axis J and real frame U inside span W."""
    n, m = U.shape
    Y = _intersect(W, _complex_frame(U, J))
    if Y.shape[1] == 0:
        return []
    # keep the part stable under right multiplication by J: (a, b) -> (-b, a)
    JY = np.concatenate([-Y[m:], Y[:m]], axis=0)
    _, s, Vt = np.linalg.svd(Y.T @ JY)
    Y = Y @ Vt[s >= 1.0 - ANGLE_TOL].T
    if Y.shape[1] == 0:
        return []
    Qc = Y[:m] + 1j * Y[m:]
    Uc, s, _ = np.linalg.svd(Qc, full_matrices=False)
    Uc = Uc[:, s > 0.5 * s[0]]
    out = []
    for q in Uc.T:
        Z = np.outer(U @ q.real, O.basis(0)) + np.outer(U @ q.imag, J)
        out.append(Z)
    return out


def _real_part_vectors(W: np.ndarray, n: int) -> list[np.ndarray]:
    imag = W.reshape(n, 8, -1)[:, 1:, :].reshape(7 * n, -1)
    _, s, Vt = np.linalg.svd(imag, full_matrices=True)
    small = np.ones(Vt.shape[0], dtype=bool)
    small[: s.size] = s <= 1e-7
    if not small.any():
        return []
    R = (W @ Vt[small].T)[0::8]
    R = _orth(R)
    out = []
    for u in R.T:
        Z = np.zeros((n, 8))
        Z[:, 0] = u
        out.append(Z)
    return out


def _commutant_blocks(W: np.ndarray, n: int, rng: np.random.Generator):
    """Real frames U_b and axes J_b from a random element of the commutant of
    the projector onto span W, restricted to Re H."""
    Pr = (W @ W[0::8].T).reshape(n, 8, n)  # Pr[k, i, l] = e_i coeff of (P u_l)_k
    mats = [Pr[:, i, :] for i in range(8)]
    scale = max(float(np.abs(Pr).max()), 1e-300)
    # symmetric X commuting with every Pr[:, i, :]
    sym_basis = []
    for a in range(n):
        for b in range(a, n):
            S = np.zeros((n, n))
            S[a, b] = S[b, a] = 1.0
            sym_basis.append(S)
    cols = [np.concatenate([(S @ A - A @ S).ravel() for A in mats]) for S in sym_basis]
    L = np.array(cols).T
    _, s, Vt = np.linalg.svd(L, full_matrices=True)
    null = np.ones(Vt.shape[0], dtype=bool)
    null[: s.size] = s <= 1e-8 * scale
    coeffs = Vt[null].T @ rng.standard_normal(int(null.sum()))
    X = sum(c * S for c, S in zip(coeffs, sym_basis))
    w, V = np.linalg.eigh(X)
    spread = max(float(np.ptp(w)), 1e-300)
    groups, start = [], 0
    for k in range(1, n + 1):
        if k == n or w[k] - w[k - 1] > 1e-6 * spread:
            groups.append(V[:, start:k])
            start = k
    blocks = []
    for U in groups:
        C = U.T @ mats[0] @ U
        if np.abs(C).max() <= 1e-8 * scale:
            continue
        stack = np.array([(U.T @ mats[j] @ U).ravel() for j in range(1, 8)])
        if np.abs(stack).max() <= 1e-8 * scale:
            continue
        Us, _, _ = np.linalg.svd(stack)
        J = np.zeros(8)
        J[1:] = Us[:, 0]
        blocks.append((U, J))
    return blocks


def _candidate_axes(W: np.ndarray, n: int, rng: np.random.Generator) -> list[np.ndarray]:
    dirs = []
    # projections of the real basis vectors come first: for a single slice
    # eigenvector their components sit exactly in C_J, while raw eigenspace
    # columns only approximate the axis
    proj = W @ W[0::8].T
    vecs = [proj[:, k] for k in range(n)]
    vecs += [W[:, c] for c in range(W.shape[1])]
    for v in vecs:
        for comp in v.reshape(n, 8):
            im = comp[1:]
            nrm = np.linalg.norm(im)
            if nrm > 1e-12 * max(1.0, np.linalg.norm(v)):
                dirs.append(im / nrm)
    for _ in range(N_RANDOM_AXES):
        dirs.append(O.random_unit_imaginary(rng)[1:])
    axes: list[np.ndarray] = []
    for d in dirs:
        if all(abs(d @ a) < 1.0 - 1e-10 for a in axes):
            axes.append(d)
    out = []
    for a in axes:
        J = np.zeros(8)
        J[1:] = a
        out.append(J)
    return out


def _misfit(W: np.ndarray, F: np.ndarray) -> float:
    return float(np.linalg.norm(F - W @ (W.T @ F)))


def _accept(W: np.ndarray, cands: list[np.ndarray], taken: list[np.ndarray]) -> tuple[list[np.ndarray], float]:
    """Candidates whose O-hull lies in span W and that keep the family weak
    orthonormal, with the worst hull misfit among them."""
    good, worst = [], 0.0
    for Z in cands:
        r = _misfit(W, _slice_frame(Z))
        if r > STRUCT_TOL:
            continue
        if is_weak_orthonormal([OVector(x) for x in taken + good + [Z]]) > STRUCT_TOL:
            continue
        good.append(Z)
        worst = max(worst, r)
    return good, worst


def _deflate(W: np.ndarray, new: list[np.ndarray]) -> np.ndarray | None:
    F = np.concatenate([_slice_frame(Z) for Z in new], axis=1)
    R = W - F @ (F.T @ W)
    U, s, _ = np.linalg.svd(R, full_matrices=False)
    keep = s > 0.5
    if int(keep.sum()) != W.shape[1] - F.shape[1]:
        return None
    return U[:, keep]


def _harvest(W: np.ndarray, n: int, lam: float, rng: np.random.Generator) -> list[np.ndarray]:
    d = W.shape[1]
    if d % 8:
        raise NotStandardStrong(lam, f"real eigenspace dimension {d} is not a multiple of 8")
    found: list[np.ndarray] = []
    eye = np.eye(n)
    while W.shape[1] > 0:
        # try the sources in order; stop at the first tight fit, otherwise keep
        # the best loose one (near-degenerate spectra blur real and slice axes)
        sources = [lambda: _real_part_vectors(W, n)]
        sources += [lambda U=U, J=J: _harvest_axis(W, U, J) for U, J in _commutant_blocks(W, n, rng)]
        sources += [lambda J=J: _harvest_axis(W, eye, J) for J in _candidate_axes(W, n, rng)]
        new, best = [], np.inf
        for src in sources:
            got, fit = _accept(W, src(), found)
            if got and fit < best:
                new, best = got, fit
            if best <= FIT_TOL:
                break
        if not new:
            raise NotStandardStrong(
                lam, f"no slice eigenvector found in a remaining {W.shape[1]}-dimensional eigenspace"
            )
        W = _deflate(W, new)
        if W is None:
            raise NotStandardStrong(lam, "slice eigenvectors do not span their O-hull inside the eigenspace")
        found.extend(new)
    if 8 * len(found) != d:
        raise NotStandardStrong(lam, "slice family does not span the eigenspace")
    return found


def _normalize_phase(Z: np.ndarray) -> SliceParavector:
    z = SliceParavector.from_vector(OVector(Z), tol=1e-7)
    c = z.u + 1j * z.v
    k = int(np.flatnonzero(np.abs(c) > 1e-8 * np.linalg.norm(c))[0])
    c = c * (np.conj(c[k]) / abs(c[k]))
    nrm = np.linalg.norm(c)
    return SliceParavector(c.real / nrm, c.imag / nrm, z.j)


# decomposition -------------------------------------------------------------


def _clusters(w: np.ndarray, tau: float) -> list[tuple[int, int]]:
    groups, start = [], 0
    for k in range(1, w.size + 1):
        if k == w.size or w[k] - w[k - 1] > tau:
            groups.append((start, k))
            start = k
    return groups


def decompose(T: ParaLinearOperator, tol: float = 1e-10, seed: int = 0) -> SpectralDecomposition:
    """Spectral decomposition ``T = sum lam_i P_{z_i}`` of a self-adjoint operator."""
    if not is_self_adjoint(T, "exact", tol=tol):
        raise NotSelfAdjoint("operator matrix is not symmetric")
    n = T.dim
    rng = np.random.Generator(np.random.Philox(seed))
    M = 0.5 * (T.matrix + T.matrix.T)
    nrm = operator_norm(T)
    # solve at unit scale so that tiny or huge operators do not underflow
    w, V = jacobi_eigh(M / nrm) if nrm > 0 else (np.zeros(8 * n), np.eye(8 * n))
    w = w * nrm
    tau = max(tol, 1e-8) * nrm
    pairs, kernel = [], []
    for a, b in _clusters(w, tau):
        lam0 = float(np.mean(w[a:b]))
        zs = [_normalize_phase(Z) for Z in _harvest(V[:, a:b], n, lam0, rng)]
        if abs(lam0) <= tau:
            kernel.extend(zs)
            continue
        for z in zs:
            lam = float(inner_product(z, T(z.value)).re)
            pairs.append(StrongEigenpair(lam, z))
    pairs.sort(key=lambda p: (-abs(p.lam), -p.lam))
    family = [p.z for p in pairs] + kernel
    dev = is_weak_orthonormal(family) if family else 0.0
    if dev > STRUCT_TOL:
        raise NotStandardStrong(pairs[0].lam if pairs else 0.0, f"eigenvector family is not weak associative orthonormal ({dev:.2e})")
    d = SpectralDecomposition(n, tuple(pairs), tuple(kernel))
    res = distance(T, reconstruct(d))
    return SpectralDecomposition(n, tuple(pairs), tuple(kernel), res)
