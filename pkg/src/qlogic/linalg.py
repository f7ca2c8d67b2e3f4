"""Dense complex linear algebra for finite-dimensional Hilbert spaces.

Everything is double precision (``complex128``), dense, and deterministic:
identical inputs produce identical bits. Intended scale is dimension <= 256.
All values are immutable after construction and all operations are pure, so
they are safe to share across threads.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import DimensionMismatch, NotHermitian, ZeroProbabilityBranch

__all__ = [
    "Tolerance",
    "DEFAULT_TOLERANCE",
    "StateVector",
    "Projector",
    "HermitianOperator",
    "projector_from_span",
    "spectral_decompose",
    "expectation",
    "commutator",
    "measure_update",
    "tensor_product",
    "frobenius_norm",
    "zero_projector",
    "identity_projector",
]

# Residual norm below which a pivot column is dropped as linearly dependent.
_MGS_DROP = 1e-9

# Eigenvalues closer than this (scaled by 1 + ||A||_F) land in one eigenspace,
# so degenerate spectra yield a single eigenprojector.
_EIG_CLUSTER_GAP = 1e-8


@dataclass(frozen=True)
class Tolerance:
    """Shared tolerance policy for double precision at dimension <= 256.

    ``proj`` bounds projector defects (idempotence, self-adjointness),
    ``herm`` Hermiticity defects, ``norm`` state normalization, ``rank``
    the kernel/range eigenvalue threshold, and ``eq`` scalar equality.
    """

    proj: float = 1e-9
    herm: float = 1e-9
    norm: float = 1e-10
    rank: float = 1e-8
    eq: float = 1e-9

    def __post_init__(self):
        for name, value in (
            ("proj", self.proj),
            ("herm", self.herm),
            ("norm", self.norm),
            ("rank", self.rank),
            ("eq", self.eq),
        ):
            if not (0.0 < value < 1e-3):
                raise ValueError(f"tolerance {name} must lie in (0, 1e-3), got {value}")


DEFAULT_TOLERANCE = Tolerance()


def _as_matrix(a) -> np.ndarray:
    """Coerce ``a`` (array-like, Projector, HermitianOperator) to complex128."""
    if isinstance(a, (Projector, HermitianOperator)):
        return a.matrix
    m = np.asarray(a, dtype=np.complex128)
    if m.ndim != 2:
        raise ValueError(f"expected a matrix, got array of ndim {m.ndim}")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix entries must be finite")
    return m


def _as_square(a) -> np.ndarray:
    m = _as_matrix(a)
    if m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    return m


def frobenius_norm(a) -> float:
    """Frobenius norm sqrt(sum |a_ij|^2)."""
    if isinstance(a, (Projector, HermitianOperator)):
        a = a.matrix
    return float(np.linalg.norm(np.asarray(a, dtype=np.complex128)))


class StateVector:
    """Unit vector in C^d (pure state)."""

    __slots__ = ("_amps",)

    def __init__(self, amplitudes, tol: Tolerance = DEFAULT_TOLERANCE):
        amps = np.array(amplitudes, dtype=np.complex128).reshape(-1)
        if amps.size == 0:
            raise ValueError("state vector needs dimension >= 1")
        if not np.all(np.isfinite(amps)):
            raise ValueError("state amplitudes must be finite")
        norm = float(np.linalg.norm(amps))
        if abs(norm - 1.0) > tol.norm:
            raise ValueError(f"state vector norm {norm!r} is not 1 within {tol.norm}")
        amps.setflags(write=False)
        self._amps = amps

    @classmethod
    def normalized(cls, vector, tol: Tolerance = DEFAULT_TOLERANCE) -> "StateVector":
        """Normalize ``vector`` and wrap it; rejects the zero vector."""
        v = np.asarray(vector, dtype=np.complex128).reshape(-1)
        norm = float(np.linalg.norm(v))
        if norm == 0.0:
            raise ValueError("cannot normalize the zero vector")
        return cls(v / norm, tol)

    @property
    def amplitudes(self) -> np.ndarray:
        return self._amps

    @property
    def dim(self) -> int:
        return self._amps.size

    def __repr__(self) -> str:
        return f"StateVector(dim={self.dim})"


class HermitianOperator:
    """Self-adjoint operator, validated to ||A - A^dagger||_F <= herm tol."""

    __slots__ = ("_matrix",)

    def __init__(self, matrix, tol: Tolerance = DEFAULT_TOLERANCE):
        m = _as_square(matrix)
        defect = frobenius_norm(m - m.conj().T)
        if defect > tol.herm:
            raise NotHermitian(f"Hermiticity defect {defect:.3e} exceeds {tol.herm}")
        m = m.copy()
        m.setflags(write=False)
        self._matrix = m

    @property
    def matrix(self) -> np.ndarray:
        return self._matrix

    @property
    def dim(self) -> int:
        return self._matrix.shape[0]

    def __repr__(self) -> str:
        return f"HermitianOperator(dim={self.dim})"


class Projector:
    """Self-adjoint idempotent matrix, identified with its range subspace."""

    __slots__ = ("_matrix", "_rank")

    def __init__(self, matrix, tol: Tolerance = DEFAULT_TOLERANCE):
        m = _as_square(matrix)
        self._validate(m, tol)
        # Rank per contract: eigenvalues above 1/2. The idempotence bound
        # pins them near {0, 1}, so this equals round(trace).
        eigvals = np.linalg.eigvalsh((m + m.conj().T) / 2.0)
        rank = int(np.count_nonzero(eigvals > 0.5))
        trace = float(np.real(np.trace(m)))
        if abs(trace - rank) > tol.rank:
            raise ValueError(f"trace {trace!r} inconsistent with rank {rank}")
        m = m.copy()
        m.setflags(write=False)
        self._matrix = m
        self._rank = rank

    @staticmethod
    def _validate(m: np.ndarray, tol: Tolerance) -> None:
        herm_defect = frobenius_norm(m - m.conj().T)
        if herm_defect > tol.proj:
            raise ValueError(f"self-adjointness defect {herm_defect:.3e} exceeds {tol.proj}")
        idem_defect = frobenius_norm(m @ m - m)
        if idem_defect > tol.proj:
            raise ValueError(f"idempotence defect {idem_defect:.3e} exceeds {tol.proj}")

    @classmethod
    def _trusted(cls, matrix: np.ndarray, rank: int, tol: Tolerance) -> "Projector":
        """Fast path for internally built matrices with known rank.

        Invariants are still asserted; only the eigenvalue count is skipped.
        """
        obj = object.__new__(cls)
        m = np.ascontiguousarray(matrix, dtype=np.complex128)
        cls._validate(m, tol)
        trace = float(np.real(np.trace(m)))
        if abs(trace - rank) > tol.rank:
            raise ValueError(f"trace {trace!r} inconsistent with rank {rank}")
        m.setflags(write=False)
        obj._matrix = m
        obj._rank = rank
        return obj

    @classmethod
    def from_orthonormal(cls, columns: np.ndarray, tol: Tolerance = DEFAULT_TOLERANCE) -> "Projector":
        """Projector Q Q^dagger onto the column space of orthonormal ``columns``."""
        q = np.asarray(columns, dtype=np.complex128)
        if q.ndim != 2:
            raise ValueError("expected a d x r matrix of orthonormal columns")
        return cls._trusted(q @ q.conj().T, q.shape[1], tol)

    @property
    def matrix(self) -> np.ndarray:
        return self._matrix

    @property
    def rank(self) -> int:
        return self._rank

    @property
    def dim(self) -> int:
        return self._matrix.shape[0]

    def __repr__(self) -> str:
        return f"Projector(dim={self.dim}, rank={self.rank})"


def zero_projector(dim: int, tol: Tolerance = DEFAULT_TOLERANCE) -> Projector:
    return Projector._trusted(np.zeros((dim, dim), dtype=np.complex128), 0, tol)


def identity_projector(dim: int, tol: Tolerance = DEFAULT_TOLERANCE) -> Projector:
    return Projector._trusted(np.eye(dim, dtype=np.complex128), dim, tol)


def _span_columns(vectors: Iterable) -> list[np.ndarray]:
    cols = []
    for v in vectors:
        arr = v.amplitudes if isinstance(v, StateVector) else np.asarray(v, dtype=np.complex128)
        arr = arr.reshape(-1)
        if not np.all(np.isfinite(arr)):
            raise ValueError("span vectors must be finite")
        cols.append(arr.astype(np.complex128))
    return cols


def projector_from_span(
    vectors: Sequence,
    tol: Tolerance = DEFAULT_TOLERANCE,
    dim: int | None = None,
) -> Projector:
    """Orthogonal projector onto the span of ``vectors``.

    Uses modified Gram-Schmidt with column pivoting; columns whose residual
    norm drops below 1e-9 are treated as linearly dependent and dropped, so
    the rank is the numerical rank of the input set. Deterministic for a
    fixed input order. The empty span yields the rank-0 projector, which
    needs an explicit ``dim``.
    """
    cols = _span_columns(vectors)
    if not cols:
        if dim is None:
            raise ValueError("empty span requires an explicit dim")
        return zero_projector(dim, tol)
    d = cols[0].size
    if any(c.size != d for c in cols):
        sizes = sorted({c.size for c in cols})
        raise DimensionMismatch(f"span vectors of mixed dimensions {sizes}")
    if dim is not None and dim != d:
        raise DimensionMismatch(f"span vectors have dimension {d}, expected {dim}")

    remaining = np.column_stack(cols)
    basis: list[np.ndarray] = []
    while remaining.shape[1] > 0:
        norms = np.linalg.norm(remaining, axis=0)
        j = int(np.argmax(norms))
        if norms[j] < _MGS_DROP:
            break
        v = remaining[:, j]
        # One reorthogonalization pass keeps the basis orthonormal to
        # working precision even for ill-conditioned spans.
        for q in basis:
            v = v - q * (q.conj() @ v)
        nv = float(np.linalg.norm(v))
        if nv < _MGS_DROP:
            remaining = np.delete(remaining, j, axis=1)
            continue
        q = v / nv
        basis.append(q)
        remaining = np.delete(remaining, j, axis=1)
        remaining = remaining - np.outer(q, q.conj() @ remaining)
    if not basis:
        return zero_projector(d, tol)
    return Projector.from_orthonormal(np.column_stack(basis), tol)


def spectral_decompose(
    operator,
    tol: Tolerance = DEFAULT_TOLERANCE,
) -> list[tuple[float, Projector]]:
    """Eigenvalues (ascending) with their eigenprojectors.

    Eigenvalues closer than 1e-8 * (1 + ||A||_F) are merged into a single
    eigenspace, so the projectors resolve the identity and reconstruct A.
    """
    if isinstance(operator, HermitianOperator):
        m = operator.matrix
    else:
        m = _as_square(operator)
        defect = frobenius_norm(m - m.conj().T)
        if defect > tol.herm:
            raise NotHermitian(f"Hermiticity defect {defect:.3e} exceeds {tol.herm}")
    vals, vecs = np.linalg.eigh((m + m.conj().T) / 2.0)
    gap = _EIG_CLUSTER_GAP * (1.0 + frobenius_norm(m))
    out: list[tuple[float, Projector]] = []
    start = 0
    for i in range(1, len(vals) + 1):
        if i == len(vals) or vals[i] - vals[i - 1] >= gap:
            cluster = vecs[:, start:i]
            value = float(np.mean(vals[start:i]))
            out.append((value, Projector.from_orthonormal(cluster, tol)))
            start = i
    return out


def expectation(p: Projector, psi: StateVector, tol: Tolerance = DEFAULT_TOLERANCE) -> float:
    """<psi|P|psi>, snapped to 0 or 1 when within the equality tolerance."""
    if p.dim != psi.dim:
        raise DimensionMismatch(f"projector dim {p.dim} vs state dim {psi.dim}")
    value = float(np.real(np.vdot(psi.amplitudes, p.matrix @ psi.amplitudes)))
    if abs(value) <= tol.eq:
        return 0.0
    if abs(value - 1.0) <= tol.eq:
        return 1.0
    return value


def commutator(a, b) -> np.ndarray:
    """AB - BA for square matrices (or Projector/HermitianOperator wrappers)."""
    am = _as_square(a)
    bm = _as_square(b)
    if am.shape != bm.shape:
        raise DimensionMismatch(f"commutator of shapes {am.shape} and {bm.shape}")
    return am @ bm - bm @ am


def measure_update(p: Projector, psi: StateVector, tol: Tolerance = DEFAULT_TOLERANCE) -> StateVector:
    """Projective collapse P|psi> / ||P|psi>|| onto the verified outcome."""
    prob = expectation(p, psi, tol)
    if prob <= tol.eq:
        raise ZeroProbabilityBranch(f"branch probability {prob!r} is not above {tol.eq}")
    projected = p.matrix @ psi.amplitudes
    return StateVector(projected / np.linalg.norm(projected), tol)


def tensor_product(a, b):
    """Kronecker product; the left factor is the slow (row-major) index.

    StateVector x StateVector -> StateVector, Projector x Projector ->
    Projector, anything else -> plain ndarray via ``np.kron``.
    """
    if isinstance(a, StateVector) and isinstance(b, StateVector):
        return StateVector(np.kron(a.amplitudes, b.amplitudes))
    if isinstance(a, Projector) and isinstance(b, Projector):
        return Projector._trusted(
            np.kron(a.matrix, b.matrix), a.rank * b.rank, DEFAULT_TOLERANCE
        )
    am = a.matrix if isinstance(a, (Projector, HermitianOperator)) else np.asarray(a, dtype=np.complex128)
    bm = b.matrix if isinstance(b, (Projector, HermitianOperator)) else np.asarray(b, dtype=np.complex128)
    if isinstance(a, StateVector):
        am = a.amplitudes
    if isinstance(b, StateVector):
        bm = b.amplitudes
    return np.kron(am, bm)
