"""Which-way interference experiment and commutator diagnostics.

The interference setup is N perfectly distinguishable alternatives (paths)
feeding a screen of M discrete cells. The composite space is path x screen
(path is the slow tensor index). The coherent pattern recombines the path
amplitudes on the screen; the mixture pattern is the classical average of
one-path patterns; their cell-wise difference is the interference term.

Sampling uses numpy's PCG64 generator (``np.random.default_rng``), seeded
from the config: named algorithm, 64-bit seeding, splittable, so runs are
bit-reproducible.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Mapping, Sequence

import numpy as np

from .errors import ConfigInvalid, DimensionMismatch, IndexOutOfRange
from .lattice import Subspace
from .linalg import (
    DEFAULT_TOLERANCE,
    HermitianOperator,
    Projector,
    StateVector,
    Tolerance,
    commutator,
    frobenius_norm,
    measure_update,
    spectral_decompose,
    tensor_product,
)
from .mvl import LogicSystem, TruthValue, conj, disj, is_bivalent, neg
from .valuation import Policy, Valuation

__all__ = [
    "DEFAULT_SEED",
    "Region",
    "ExperimentConfig",
    "RegionProbs",
    "PatternReport",
    "WhichWayReport",
    "SpectralIdentityReport",
    "SweepFamily",
    "SweepRow",
    "build_state",
    "conditional_pattern",
    "run_patterns",
    "simulate_which_way",
    "verify_spectral_commutator_identity",
    "commutator_sweep",
    "experiment_from_dict",
    "load_experiment",
]

DEFAULT_SEED = 424242

_EXPERIMENT_KEYS = {
    "n_paths",
    "amplitudes",
    "screen_cells",
    "path_wavefunctions",
    "regions",
    "seed",
}


@dataclass(frozen=True)
class Region:
    """A named set of screen cell indices."""

    name: str
    cells: tuple[int, ...]


@dataclass(frozen=True)
class ExperimentConfig:
    n_paths: int
    amplitudes: np.ndarray
    screen_cells: int
    path_wavefunctions: np.ndarray
    regions: tuple[Region, ...] = ()
    seed: int = DEFAULT_SEED
    tol: Tolerance = DEFAULT_TOLERANCE

    def __post_init__(self):
        if not isinstance(self.n_paths, int) or self.n_paths < 2:
            raise ConfigInvalid("n_paths", f"expected an integer >= 2, got {self.n_paths!r}")
        if not isinstance(self.screen_cells, int) or self.screen_cells < 2:
            raise ConfigInvalid(
                "screen_cells", f"expected an integer >= 2, got {self.screen_cells!r}"
            )
        amps = np.asarray(self.amplitudes, dtype=np.complex128).reshape(-1)
        if amps.size != self.n_paths:
            raise ConfigInvalid(
                "amplitudes", f"expected {self.n_paths} entries, got {amps.size}"
            )
        if not np.all(np.isfinite(amps)):
            raise ConfigInvalid("amplitudes", "entries must be finite")
        total = float(np.sum(np.abs(amps) ** 2))
        if abs(total - 1.0) > self.tol.norm:
            raise ConfigInvalid(
                "amplitudes", f"squared moduli sum to {total!r}, expected 1"
            )
        phi = np.asarray(self.path_wavefunctions, dtype=np.complex128)
        if phi.shape != (self.n_paths, self.screen_cells):
            raise ConfigInvalid(
                "path_wavefunctions",
                f"expected shape ({self.n_paths}, {self.screen_cells}), got {phi.shape}",
            )
        if not np.all(np.isfinite(phi)):
            raise ConfigInvalid("path_wavefunctions", "entries must be finite")
        for i in range(self.n_paths):
            norm = float(np.linalg.norm(phi[i]))
            if abs(norm - 1.0) > self.tol.norm:
                raise ConfigInvalid(
                    f"path_wavefunctions[{i}]", f"norm {norm!r}, expected 1"
                )
        for region in self.regions:
            for cell in region.cells:
                if not isinstance(cell, int) or not (0 <= cell < self.screen_cells):
                    raise ConfigInvalid(
                        f"regions.{region.name}",
                        f"cell index {cell!r} outside [0, {self.screen_cells})",
                    )
        if not isinstance(self.seed, int) or isinstance(self.seed, bool) or not (
            0 <= self.seed < 2**64
        ):
            raise ConfigInvalid("seed", f"expected a 64-bit unsigned integer, got {self.seed!r}")
        amps.setflags(write=False)
        phi.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)
        object.__setattr__(self, "path_wavefunctions", phi)
        object.__setattr__(self, "regions", tuple(self.regions))

    @property
    def composite_dim(self) -> int:
        return self.n_paths * self.screen_cells


@dataclass(frozen=True)
class RegionProbs:
    coherent: float
    mixture: float
    conditional: tuple[float, ...]


@dataclass(frozen=True)
class PatternReport:
    coherent: np.ndarray
    mixture: np.ndarray
    interference_term: np.ndarray
    region_probs: Mapping[str, RegionProbs]


@dataclass(frozen=True)
class WhichWayReport:
    clicks: tuple[int, ...]
    xor_always_true: bool
    post_click_bivalent: bool


def build_state(cfg: ExperimentConfig) -> StateVector:
    """Composite state sum_i c_i |i> x |phi_i> in the n_paths * M space."""
    n, m = cfg.n_paths, cfg.screen_cells
    amps = np.zeros(n * m, dtype=np.complex128)
    for i in range(n):
        amps[i * m : (i + 1) * m] = cfg.amplitudes[i] * cfg.path_wavefunctions[i]
    return StateVector(amps, cfg.tol)


def conditional_pattern(cfg: ExperimentConfig, i: int) -> np.ndarray:
    """One-path screen pattern |phi_i(cell)|^2; sums to 1."""
    if not (0 <= i < cfg.n_paths):
        raise IndexOutOfRange(f"path index {i} outside [0, {cfg.n_paths})")
    return np.abs(cfg.path_wavefunctions[i]) ** 2


def run_patterns(cfg: ExperimentConfig) -> PatternReport:
    """Coherent vs mixture screen patterns plus the interference cross term.

    coherent(cell) = |sum_i c_i phi_i(cell)|^2, mixture(cell) =
    sum_i |c_i|^2 |phi_i(cell)|^2, and the reported interference term is the
    explicit cross formula 2 Re sum_{i<j} c_i conj(c_j) phi_i conj(phi_j),
    which equals coherent - mixture cell-wise by algebra.
    """
    amps = cfg.amplitudes
    phi = cfg.path_wavefunctions
    superposed = amps @ phi
    coherent = np.abs(superposed) ** 2
    weights = np.abs(amps) ** 2
    mixture = weights @ (np.abs(phi) ** 2)
    cross = np.zeros(cfg.screen_cells, dtype=np.float64)
    for i in range(cfg.n_paths):
        for j in range(i + 1, cfg.n_paths):
            cross += 2.0 * np.real(amps[i] * np.conj(amps[j]) * phi[i] * np.conj(phi[j]))
    region_probs: dict[str, RegionProbs] = {}
    for region in cfg.regions:
        cells = list(region.cells)
        region_probs[region.name] = RegionProbs(
            coherent=float(np.sum(coherent[cells])),
            mixture=float(np.sum(mixture[cells])),
            conditional=tuple(
                float(np.sum(np.abs(phi[i, cells]) ** 2)) for i in range(cfg.n_paths)
            ),
        )
    coherent.setflags(write=False)
    mixture.setflags(write=False)
    cross.setflags(write=False)
    return PatternReport(
        coherent=coherent,
        mixture=mixture,
        interference_term=cross,
        region_probs=region_probs,
    )


def _path_subspaces(cfg: ExperimentConfig) -> list[Subspace]:
    """Detector subspaces: path projector tensored with the screen identity."""
    n, m = cfg.n_paths, cfg.screen_cells
    out = []
    for i in range(n):
        path_matrix = np.zeros((n, n), dtype=np.complex128)
        path_matrix[i, i] = 1.0
        p = tensor_product(
            Projector._trusted(path_matrix, 1, cfg.tol),
            Projector._trusted(np.eye(m, dtype=np.complex128), m, cfg.tol),
        )
        out.append(Subspace(p, n * m))
    return out


def _generalized_xor(values: Sequence[TruthValue], system: LogicSystem) -> TruthValue:
    """The compound (X_1 v ... v X_n) & !(X_1 & ... & X_n)."""
    any_true = values[0]
    all_true = values[0]
    for v in values[1:]:
        any_true = disj(any_true, v, system)
        all_true = conj(all_true, v, system)
    return conj(any_true, neg(all_true), system)


def simulate_which_way(
    cfg: ExperimentConfig, trials: int, tol: Tolerance | None = None
) -> WhichWayReport:
    """Sample detector clicks and verify post-collapse bivalence.

    Each trial samples a path with probability |c_i|^2, collapses the
    composite state onto that path's detector subspace, and evaluates every
    path proposition under the eigenstate-bivalent policy: exactly one comes
    out true. ``xor_always_true`` reports whether the exclusive-disjunction
    compound of the detector values was true in every trial.
    """
    if trials < 1:
        raise ConfigInvalid("trials", f"expected an integer >= 1, got {trials!r}")
    tol = cfg.tol if tol is None else tol
    rng = np.random.default_rng(cfg.seed)
    probs = np.abs(cfg.amplitudes) ** 2
    probs = probs / probs.sum()
    draws = rng.choice(cfg.n_paths, size=trials, p=probs)
    psi = build_state(cfg)
    detectors = _path_subspaces(cfg)
    clicks = [0] * cfg.n_paths
    xor_always_true = True
    post_click_bivalent = True
    for t in range(trials):
        i = int(draws[t])
        clicks[i] += 1
        post = measure_update(detectors[i].projector, psi, tol)
        valuation = Valuation(Policy.EIGENSTATE_BIVALENT, post, tol)
        values = [valuation.value_of(d) for d in detectors]
        if not all(is_bivalent(v, tol) for v in values):
            post_click_bivalent = False
        if [v.degree for v in values].count(1.0) != 1:
            xor_always_true = False
        compound = _generalized_xor(values, LogicSystem.BIVALENT)
        if compound.degree != 1.0:
            xor_always_true = False
    return WhichWayReport(
        clicks=tuple(clicks),
        xor_always_true=xor_always_true,
        post_click_bivalent=post_click_bivalent,
    )


@dataclass(frozen=True)
class SpectralIdentityReport:
    residual: float
    holds: bool


def verify_spectral_commutator_identity(
    q, r, tol: Tolerance = DEFAULT_TOLERANCE
) -> SpectralIdentityReport:
    """Check sum_ab q_a r_b [P_qa, P_rb] = [q, r] via spectral decomposition."""
    q_op = q if isinstance(q, HermitianOperator) else HermitianOperator(q, tol)
    r_op = r if isinstance(r, HermitianOperator) else HermitianOperator(r, tol)
    if q_op.dim != r_op.dim:
        raise DimensionMismatch(f"operator dims {q_op.dim} and {r_op.dim}")
    q_spec = spectral_decompose(q_op, tol)
    r_spec = spectral_decompose(r_op, tol)
    lhs = np.zeros((q_op.dim, q_op.dim), dtype=np.complex128)
    for q_val, q_proj in q_spec:
        for r_val, r_proj in r_spec:
            lhs += q_val * r_val * commutator(q_proj, r_proj)
    rhs = commutator(q_op, r_op)
    residual = frobenius_norm(lhs - rhs)
    bound = 1e2 * tol.proj * (1.0 + frobenius_norm(q_op) * frobenius_norm(r_op))
    return SpectralIdentityReport(residual=residual, holds=residual <= bound)


class SweepFamily(Enum):
    CLOCK_SHIFT = "clock-shift"
    DIAGONAL = "diagonal"


@dataclass(frozen=True)
class SweepRow:
    dim: int
    max_projector_commutator_norm: float
    operator_commutator_norm: float


def _clock_shift_pair(dim: int) -> tuple[np.ndarray, np.ndarray]:
    """Angle operator of the clock phases, and its DFT-conjugate analogue."""
    angles = 2.0 * np.pi * np.arange(dim) / dim
    q = np.diag(angles).astype(np.complex128)
    k = np.arange(dim)
    dft = np.exp(2j * np.pi * np.outer(k, k) / dim) / np.sqrt(dim)
    p = dft @ q @ dft.conj().T
    p = (p + p.conj().T) / 2.0
    return q, p


def commutator_sweep(
    family: SweepFamily, dims: Sequence[int], tol: Tolerance = DEFAULT_TOLERANCE
) -> list[SweepRow]:
    """Observational table of projector vs operator commutator norms.

    For each dimension, decomposes the operator pair spectrally and records
    the largest eigenprojector commutator norm next to the operator
    commutator norm. No monotonicity is asserted.
    """
    rows = []
    for dim in dims:
        if not isinstance(dim, int) or dim < 2:
            raise ConfigInvalid("dims", f"expected integers >= 2, got {dim!r}")
        if family is SweepFamily.CLOCK_SHIFT:
            q, r = _clock_shift_pair(dim)
        else:
            k = np.arange(dim, dtype=np.float64)
            q = np.diag(k).astype(np.complex128)
            r = np.diag(k**2).astype(np.complex128)
        q_spec = spectral_decompose(q, tol)
        r_spec = spectral_decompose(r, tol)
        max_norm = 0.0
        for _, q_proj in q_spec:
            for _, r_proj in r_spec:
                max_norm = max(max_norm, frobenius_norm(commutator(q_proj, r_proj)))
        rows.append(
            SweepRow(
                dim=dim,
                max_projector_commutator_norm=max_norm,
                operator_commutator_norm=frobenius_norm(commutator(q, r)),
            )
        )
    return rows


def experiment_from_dict(data: dict, tol: Tolerance = DEFAULT_TOLERANCE) -> ExperimentConfig:
    """Validate the ``experiment`` subtree of a scenario document."""
    if not isinstance(data, dict):
        raise ConfigInvalid("experiment", "expected an object")
    unknown = set(data) - _EXPERIMENT_KEYS
    if unknown:
        raise ConfigInvalid(f"experiment.{sorted(unknown)[0]}", "unknown key")
    n = data.get("n_paths")
    if not isinstance(n, int) or isinstance(n, bool):
        raise ConfigInvalid("experiment.n_paths", f"expected an integer, got {n!r}")
    m = data.get("screen_cells")
    if not isinstance(m, int) or isinstance(m, bool):
        raise ConfigInvalid("experiment.screen_cells", f"expected an integer, got {m!r}")

    def cvec(raw, field, length):
        if not isinstance(raw, list) or len(raw) != length:
            raise ConfigInvalid(field, f"expected a list of {length} [re, im] pairs")
        out = np.zeros(length, dtype=np.complex128)
        for idx, entry in enumerate(raw):
            if (
                not isinstance(entry, (list, tuple))
                or len(entry) != 2
                or not all(
                    isinstance(x, (int, float)) and not isinstance(x, bool) for x in entry
                )
            ):
                raise ConfigInvalid(f"{field}[{idx}]", f"expected a [re, im] pair, got {entry!r}")
            out[idx] = complex(entry[0], entry[1])
        return out

    amplitudes = cvec(data.get("amplitudes"), "experiment.amplitudes", n)
    raw_phi = data.get("path_wavefunctions")
    if not isinstance(raw_phi, list) or len(raw_phi) != n:
        raise ConfigInvalid(
            "experiment.path_wavefunctions", f"expected a list of {n} vectors"
        )
    phi = np.vstack(
        [cvec(row, f"experiment.path_wavefunctions[{i}]", m) for i, row in enumerate(raw_phi)]
    )
    regions: list[Region] = []
    raw_regions = data.get("regions", {})
    if not isinstance(raw_regions, dict):
        raise ConfigInvalid("experiment.regions", "expected an object of cell lists")
    for name, cells in raw_regions.items():
        if not isinstance(cells, list) or not all(
            isinstance(c, int) and not isinstance(c, bool) for c in cells
        ):
            raise ConfigInvalid(f"experiment.regions.{name}", "expected a list of cell indices")
        regions.append(Region(name, tuple(cells)))
    seed = data.get("seed", DEFAULT_SEED)
    return ExperimentConfig(
        n_paths=n,
        amplitudes=amplitudes,
        screen_cells=m,
        path_wavefunctions=phi,
        regions=tuple(regions),
        seed=seed,
        tol=tol,
    )


def load_experiment(path: str | Path, tol: Tolerance = DEFAULT_TOLERANCE) -> ExperimentConfig:
    """Read the ``experiment`` key of a scenario-format JSON document."""
    with open(path, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    if not isinstance(data, dict) or "experiment" not in data:
        raise ConfigInvalid("experiment", "missing top-level key")
    return experiment_from_dict(data["experiment"], tol)
