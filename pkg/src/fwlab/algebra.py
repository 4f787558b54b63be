"""Grading algebra for Dirac-type Hamiltonians.

The grading involution beta = diag(+I, -I) splits operators into an even
sector (commuting with beta, block-diagonal) and an odd sector
(anticommuting with beta, block-off-diagonal).  Hamiltonians are handled
in the decomposed form

    H = beta * m + E + O,        beta E = E beta,   beta O = -O beta,

with E and O Hermitian.  Matrices are plain dense complex ndarrays; the
grading travels alongside them as a small value object.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, NonHermitianInput

# Absolute floor used in relative norms so that 0/0 never occurs.
NORM_FLOOR = 1e-300

# Relative Hermiticity tolerance applied to operator inputs.
HERMITICITY_RTOL = 1e-12


def frobenius(a) -> float:
    return float(np.linalg.norm(a, "fro"))


def relative_norm(num, den) -> float:
    """Frobenius norm of ``num`` relative to that of ``den``, floored."""
    return frobenius(num) / max(frobenius(den), NORM_FLOOR)


def commutator(a, b):
    return a @ b - b @ a


def anticommutator(a, b):
    return a @ b + b @ a


def hermiticity_defect(a) -> float:
    """Relative Frobenius distance of ``a`` from its own adjoint."""
    return relative_norm(a - a.conj().T, a)


@dataclass(frozen=True)
class Grading:
    """Block splitting of the state space, +1 block ordered first.

    Only equal blocks are supported: ``dim`` must be exactly twice
    ``upper_dim``.  Unequal splittings are rejected at construction.
    """

    dim: int
    upper_dim: int

    def __post_init__(self):
        if self.dim <= 0 or self.dim % 2 != 0:
            raise ValueError(f"dim must be positive and even, got {self.dim}")
        if self.upper_dim * 2 != self.dim:
            raise ValueError(
                f"unequal blocks are not supported: dim={self.dim}, upper_dim={self.upper_dim}"
            )

    def check(self, a) -> np.ndarray:
        """Return ``a`` as an ndarray after verifying its shape."""
        a = np.asarray(a)
        if a.shape != (self.dim, self.dim):
            raise DimensionMismatch(
                f"expected a {self.dim}x{self.dim} matrix, got shape {a.shape}"
            )
        return a


def make_beta(grading: Grading) -> np.ndarray:
    """Dense grading involution diag(+1, ..., +1, -1, ..., -1)."""
    signs = np.ones(grading.dim)
    signs[grading.upper_dim:] = -1.0
    return np.diag(signs).astype(complex)


def even_projection(h, grading: Grading) -> np.ndarray:
    """Block-diagonal part of ``h``, equal to (h + beta h beta) / 2."""
    h = grading.check(h)
    u = grading.upper_dim
    out = np.zeros((grading.dim, grading.dim), dtype=complex)
    out[:u, :u] = h[:u, :u]
    out[u:, u:] = h[u:, u:]
    return out


def odd_projection(h, grading: Grading) -> np.ndarray:
    """Block-off-diagonal part of ``h``, equal to (h - beta h beta) / 2."""
    h = grading.check(h)
    u = grading.upper_dim
    out = np.zeros((grading.dim, grading.dim), dtype=complex)
    out[:u, u:] = h[:u, u:]
    out[u:, :u] = h[u:, :u]
    return out


def odd_norm_ratio(h, grading: Grading) -> float:
    """Fraction of ``h`` living in the odd sector.

    Returns ||odd part||_F / max(||h||_F, NORM_FLOOR).  Zero exactly when
    ``h`` is block-diagonal; this is the convergence measure used by the
    iterative scheme and the block-diagonality diagnostic.
    """
    return relative_norm(odd_projection(h, grading), h)


@dataclass(frozen=True)
class DiracDecomposition:
    """Splitting H = beta * mass + even_part + odd_part.

    ``even_part`` commutes with beta and is stored with its off-diagonal
    blocks exactly zero; ``odd_part`` anticommutes and is stored with its
    diagonal blocks exactly zero.  Both parts must be Hermitian to
    relative tolerance 1e-12.
    """

    grading: Grading
    mass: float
    even_part: np.ndarray
    odd_part: np.ndarray

    def __post_init__(self):
        if not self.mass > 0.0:
            raise ValueError(f"mass must be positive, got {self.mass}")
        e = even_projection(np.asarray(self.even_part, dtype=complex), self.grading)
        o = odd_projection(np.asarray(self.odd_part, dtype=complex), self.grading)
        for name, part in (("even", e), ("odd", o)):
            if hermiticity_defect(part) > HERMITICITY_RTOL:
                raise NonHermitianInput(f"{name} part is not Hermitian within 1e-12")
        object.__setattr__(self, "even_part", e)
        object.__setattr__(self, "odd_part", o)

    def hamiltonian(self) -> np.ndarray:
        """Reassemble beta * mass + E + O."""
        return self.mass * make_beta(self.grading) + self.even_part + self.odd_part


def split_even_odd(h, grading: Grading, mass: float) -> DiracDecomposition:
    """Split a Hermitian Hamiltonian into mass, even, and odd pieces.

    Parameters
    ----------
    h : array_like
        Hermitian matrix of shape (grading.dim, grading.dim).
    grading : Grading
        Block structure used for the projections.
    mass : float
        Positive mass parameter; beta * mass is subtracted before
        projecting.

    Returns
    -------
    DiracDecomposition
        Parts such that mass * beta + E + O reproduces ``h`` up to
        floating-point rounding (~1e-16 relative).

    Raises
    ------
    NonHermitianInput
        If ``h`` deviates from Hermiticity by more than 1e-12 relative.
    """
    h = grading.check(np.asarray(h, dtype=complex))
    if hermiticity_defect(h) > HERMITICITY_RTOL:
        raise NonHermitianInput("Hamiltonian is not Hermitian within 1e-12")
    x = h - mass * make_beta(grading)
    return DiracDecomposition(
        grading, mass, even_projection(x, grading), odd_projection(x, grading)
    )
