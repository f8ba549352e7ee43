"""Exception types raised across the package."""

from __future__ import annotations


class OctoparaError(Exception):
    """Base class for all package errors."""


class DimensionMismatch(OctoparaError, ValueError):
    pass


class ShapeMismatch(OctoparaError, ValueError):
    pass


class ZeroVector(OctoparaError, ValueError):
    pass


class NotRealPart(OctoparaError, ValueError):
    """An argument that must lie in Re H has imaginary coefficients."""


class NotUnit(OctoparaError, ValueError):
    pass


class NotSlice(OctoparaError, ValueError):
    """A vector is not a slice paravector (its imaginary parts are not parallel)."""


class BasisNotOrthonormal(OctoparaError, ValueError):
    pass


class NotParaLinear(OctoparaError, ValueError):
    """A real matrix fails the right para-linearity test.

    ``direction`` is the imaginary unit index p = e_i, ``index`` the real
    basis vector of H where the residual is largest.
    """

    def __init__(self, direction: int, index: int, residual: float):
        self.direction = direction
        self.index = index
        self.residual = residual
        super().__init__(
            f"not right para-linear: |Re B_p(T, x)| = {residual:.3e} "
            f"at p = e{direction}, basis vector {index}"
        )


class NotSelfAdjoint(OctoparaError, ValueError):
    pass


class NotStandardStrong(OctoparaError):
    """The eigenspace of ``eigenvalue`` has no orthonormal slice basis we could find."""

    def __init__(self, eigenvalue: float, reason: str = ""):
        self.eigenvalue = eigenvalue
        self.reason = reason
        msg = f"eigenvalue {eigenvalue:.12g} is not standard strong"
        if reason:
            msg += f": {reason}"
        super().__init__(msg)


class SpectrumMismatch(OctoparaError, ValueError):
    """A spectrum function does not cover every spectrum point."""


class FnDomainError(SpectrumMismatch):
    """Raised by the CLI when a function table misses a spectrum point."""


class UnknownSuite(OctoparaError, KeyError):
    pass


class ParseError(OctoparaError, ValueError):
    pass
