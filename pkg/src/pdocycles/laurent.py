"""Matrix-valued trigonometric polynomials on the circle.

A LaurentPoly is a finitely supported map from the Fourier mode m to a
matrix coefficient: the exact data of a smooth matrix-valued function
with finite Fourier support.
"""

from __future__ import annotations

from .errors import DimensionMismatch
from .matrices import MatrixCoeff


class LaurentPoly:
    """Finitely supported Fourier series with MatrixCoeff coefficients."""

    __slots__ = ("dim", "coeffs")

    def __init__(self, dim: int, coeffs=None):
        self.dim = dim
        pruned: dict[int, MatrixCoeff] = {}
        for m, c in (coeffs or {}).items():
            if c.dim != dim:
                raise DimensionMismatch("coefficient dim differs from poly dim")
            if not c.is_zero():
                pruned[int(m)] = c
        self.coeffs = pruned

    @classmethod
    def zero(cls, dim: int) -> "LaurentPoly":
        return cls(dim)

    @classmethod
    def identity(cls, dim: int) -> "LaurentPoly":
        return cls(dim, {0: MatrixCoeff.identity(dim)})

    @classmethod
    def z_power(cls, m: int, dim: int = 1, coeff: MatrixCoeff | None = None) -> "LaurentPoly":
        """z^m tensor a matrix coefficient (identity by default)."""
        if coeff is None:
            coeff = MatrixCoeff.identity(dim)
        return cls(coeff.dim, {m: coeff})

    def items(self):
        """Coefficients in increasing mode order (deterministic)."""
        return sorted(self.coeffs.items())

    def coefficient(self, m: int) -> MatrixCoeff:
        return self.coeffs.get(m, MatrixCoeff.zero(self.dim))

    def support(self) -> tuple[int, int] | None:
        if not self.coeffs:
            return None
        return min(self.coeffs), max(self.coeffs)

    def degree(self) -> int:
        """Largest |m| in the support; 0 for the zero polynomial."""
        if not self.coeffs:
            return 0
        return max(abs(m) for m in self.coeffs)

    def is_zero(self) -> bool:
        return not self.coeffs

    def _check(self, other: "LaurentPoly"):
        if self.dim != other.dim:
            raise DimensionMismatch(f"laurent dims {self.dim} != {other.dim}")

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        self._check(other)
        out = dict(self.coeffs)
        for m, c in other.coeffs.items():
            out[m] = out[m] + c if m in out else c
        return LaurentPoly(self.dim, out)

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly(self.dim, {m: -c for m, c in self.coeffs.items()})

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        """Pointwise product on the circle: convolution of coefficients."""
        self._check(other)
        out: dict[int, MatrixCoeff] = {}
        for m1, c1 in self.coeffs.items():
            for m2, c2 in other.coeffs.items():
                m = m1 + m2
                term = c1 @ c2
                out[m] = out[m] + term if m in out else term
        return LaurentPoly(self.dim, out)

    def scale(self, lam) -> "LaurentPoly":
        return LaurentPoly(self.dim, {m: c.scale(lam) for m, c in self.coeffs.items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.dim == other.dim and self.coeffs == other.coeffs

    def __repr__(self) -> str:
        if not self.coeffs:
            return "LaurentPoly(0)"
        modes = ",".join(str(m) for m in sorted(self.coeffs))
        return f"LaurentPoly(modes=[{modes}])"
