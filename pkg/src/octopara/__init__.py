"""Numerical para-linear operator theory over the octonions."""

from __future__ import annotations

from .errors import (
    BasisNotOrthonormal,
    DimensionMismatch,
    FnDomainError,
    NotParaLinear,
    NotRealPart,
    NotSelfAdjoint,
    NotSlice,
    NotStandardStrong,
    NotUnit,
    OctoparaError,
    ParseError,
    ShapeMismatch,
    SpectrumMismatch,
    UnknownSuite,
    ZeroVector,
)
from .funcalc import SpectrumFunction, phi, power_op, psi
from .octonion import ImaginaryUnit, Octonion, associator, im_via_associator, mul, unary_algebra
from .omodule import (
    OVector,
    SliceParavector,
    inner_product,
    parseval_expand,
    re_project,
    scale,
    second_associator,
    slice_membership,
)
from .paralinear import (
    ParaLinearOperator,
    adjoint,
    apply,
    composition_associator,
    op_real_part,
    operator_B_p,
    operator_norm,
    regular_compose,
    scalar_action,
    triple_associator,
)
from .polarization import (
    QuadraticFormProbe,
    abc_terms,
    is_self_adjoint,
    m_form,
    reconstruct_operator,
    reconstruct_re,
)
from .spectral import (
    SpectralDecomposition,
    StrongEigenpair,
    decompose,
    eigen_commutation_residual,
    reconstruct,
    slice_projection,
    strong_eigencheck,
)

__version__ = "0.1.0"
