"""The lattice of closed subspaces of C^d, represented by projectors.

Meet is subspace intersection, join the span of the union, and the
orthocomplement maps P to I - P. The lattice is orthomodular but not
distributive, which is what separates it from a Boolean algebra.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import DimensionMismatch, PreconditionViolation, RankAmbiguous
from .linalg import (
    DEFAULT_TOLERANCE,
    Projector,
    Tolerance,
    commutator,
    frobenius_norm,
    identity_projector,
    projector_from_span,
    zero_projector,
)

__all__ = [
    "Subspace",
    "LatticeContext",
    "meet",
    "join",
    "orthocomplement",
    "leq",
    "compatible",
    "check_orthomodular",
    "subspace_equal",
]

# Eigenvalues of the PSD split matrices in (rank_tol, AMBIG_FACTOR * rank_tol)
# are neither clearly kernel nor clearly range; such spans are rejected
# rather than silently rounded.
_AMBIG_FACTOR = 100.0


@dataclass(frozen=True)
class Subspace:
    """A closed subspace of C^d, carried by its orthogonal projector."""

    projector: Projector
    dim_ambient: int

    def __post_init__(self):
        if self.projector.dim != self.dim_ambient:
            raise DimensionMismatch(
                f"projector dim {self.projector.dim} vs ambient {self.dim_ambient}"
            )

    @property
    def rank(self) -> int:
        return self.projector.rank

    @property
    def matrix(self) -> np.ndarray:
        return self.projector.matrix

    def is_bottom(self) -> bool:
        return self.rank == 0

    def is_top(self) -> bool:
        return self.rank == self.dim_ambient

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim_ambient}, rank={self.rank})"


@dataclass(frozen=True)
class LatticeContext:
    """Ambient dimension plus the two lattice constants and the tolerance."""

    dim_ambient: int
    tol: Tolerance
    bottom: Subspace
    top: Subspace

    @classmethod
    def for_dim(cls, dim: int, tol: Tolerance = DEFAULT_TOLERANCE) -> "LatticeContext":
        if dim < 1:
            raise ValueError(f"ambient dimension must be >= 1, got {dim}")
        return cls(
            dim_ambient=dim,
            tol=tol,
            bottom=Subspace(zero_projector(dim, tol), dim),
            top=Subspace(identity_projector(dim, tol), dim),
        )

    def span(self, vectors: Sequence) -> Subspace:
        """Subspace spanned by ``vectors`` (possibly dependent)."""
        p = projector_from_span(vectors, self.tol, dim=self.dim_ambient)
        return Subspace(p, self.dim_ambient)


def _check_dims(a: Subspace, b: Subspace) -> None:
    if a.dim_ambient != b.dim_ambient:
        raise DimensionMismatch(
            f"subspaces of ambient dimensions {a.dim_ambient} and {b.dim_ambient}"
        )


def _split_psd(matrix: np.ndarray, tol: Tolerance) -> tuple[np.ndarray, np.ndarray]:
    """Split eigenvectors of a PSD matrix into kernel and range blocks.

    Eigenvalues <= rank tol count as kernel; an eigenvalue inside the
    ambiguity window raises RankAmbiguous.
    """
    vals, vecs = np.linalg.eigh((matrix + matrix.conj().T) / 2.0)
    in_window = (vals > tol.rank) & (vals < _AMBIG_FACTOR * tol.rank)
    if np.any(in_window):
        worst = float(vals[in_window][0])
        raise RankAmbiguous(
            f"eigenvalue {worst:.3e} inside ambiguity window "
            f"({tol.rank:.1e}, {_AMBIG_FACTOR * tol.rank:.1e}); span too ill-conditioned"
        )
    small = vals <= tol.rank
    return vecs[:, small], vecs[:, ~small]


def meet(a: Subspace, b: Subspace, tol: Tolerance = DEFAULT_TOLERANCE) -> Subspace:
    """Intersection ran(a) & ran(b), via the kernel of (I-P_a)+(I-P_b)."""
    _check_dims(a, b)
    d = a.dim_ambient
    eye = np.eye(d, dtype=np.complex128)
    s = (eye - a.matrix) + (eye - b.matrix)
    kernel, _ = _split_psd(s, tol)
    if kernel.shape[1] == 0:
        return Subspace(zero_projector(d, tol), d)
    return Subspace(Projector.from_orthonormal(kernel, tol), d)


def join(a: Subspace, b: Subspace, tol: Tolerance = DEFAULT_TOLERANCE) -> Subspace:
    """Closed span of ran(a) | ran(b), via the range of P_a + P_b."""
    _check_dims(a, b)
    d = a.dim_ambient
    _, range_vecs = _split_psd(a.matrix + b.matrix, tol)
    if range_vecs.shape[1] == 0:
        return Subspace(zero_projector(d, tol), d)
    return Subspace(Projector.from_orthonormal(range_vecs, tol), d)


def orthocomplement(a: Subspace, tol: Tolerance = DEFAULT_TOLERANCE) -> Subspace:
    """Orthogonal complement, P -> I - P."""
    d = a.dim_ambient
    m = np.eye(d, dtype=np.complex128) - a.matrix
    return Subspace(Projector._trusted(m, d - a.rank, tol), d)


def leq(a: Subspace, b: Subspace, tol: Tolerance = DEFAULT_TOLERANCE) -> bool:
    """Subspace inclusion: a <= b iff P_b P_a = P_a."""
    _check_dims(a, b)
    return frobenius_norm(b.matrix @ a.matrix - a.matrix) <= tol.eq


def compatible(a: Subspace, b: Subspace, tol: Tolerance = DEFAULT_TOLERANCE) -> bool:
    """True iff the projectors commute (classical reasoning applies)."""
    _check_dims(a, b)
    return frobenius_norm(commutator(a.projector, b.projector)) <= tol.eq


def subspace_equal(a: Subspace, b: Subspace, tol: Tolerance = DEFAULT_TOLERANCE) -> bool:
    """Equality as Frobenius distance of the (basis-free) projectors."""
    _check_dims(a, b)
    return frobenius_norm(a.matrix - b.matrix) <= tol.eq


def check_orthomodular(a: Subspace, b: Subspace, tol: Tolerance = DEFAULT_TOLERANCE) -> bool:
    """Verify b = a v (b & a^perp) for a nested pair a <= b."""
    if not leq(a, b, tol):
        raise PreconditionViolation("check_orthomodular requires a <= b")
    rebuilt = join(a, meet(b, orthocomplement(a, tol), tol), tol)
    return frobenius_norm(rebuilt.matrix - b.matrix) <= tol.proj
