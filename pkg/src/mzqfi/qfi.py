"""Quantum Fisher information for pure and mixed probes.

For a unitary family rho(theta) = e^{-i theta G} rho e^{i theta G}:

  pure |psi>:  F = 4 (<G^2> - <G>^2)
  mixed rho = sum_i p_i |i><i|:
      F = 2 sum_{i,j} (p_i - p_j)^2 / (p_i + p_j) |<i|G|j>|^2

with the sum restricted to pairs whose combined weight p_i + p_j exceeds
EPS_RANK; zero-weight pairs carry no information and would divide 0 by 0.
The pair form avoids differentiating eigenvectors; the rearrangement from
the derivative form is recorded in docs/formulas.md.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, DomainError, NotDensityMatrix
from .fock import DensityMatrix, FockCutoff, TwoModeState, schwinger_ops

EPS_RANK = 1e-12     # pair weight below this is treated as rank deficient
EIG_FLOOR = -1e-8    # eigenvalues below this mean the matrix is not a state


@dataclass(frozen=True)
class GeneratorChoice:
    """Phase generator selector: J_y (lossless family) or J_z (between splitters).

    The QFI is invariant under sign flip; the sign is carried so pipelines
    can state their convention explicitly.
    """

    which: str = "jy"
    sign: int = 1

    def __post_init__(self):
        if self.which not in ("jy", "jz"):
            raise DomainError(f"generator must be 'jy' or 'jz', got {self.which!r}")
        if self.sign not in (1, -1):
            raise DomainError("generator sign must be +1 or -1")

    def matrix(self, cutoff: FockCutoff) -> np.ndarray:
        ops = schwinger_ops(cutoff)
        base = ops.jy if self.which == "jy" else ops.jz
        return base if self.sign == 1 else -base


def _resolve_generator(gen, cutoff: FockCutoff | None) -> np.ndarray:
    if isinstance(gen, GeneratorChoice):
        if cutoff is None:
            raise DimensionMismatch(
                "GeneratorChoice needs a state/density with a cutoff; "
                "pass an explicit matrix for raw arrays"
            )
        return gen.matrix(cutoff)
    return np.asarray(gen)


@dataclass(frozen=True)
class SpectralDecomposition:
    """Eigenpairs of a density matrix, eigenvalues in decreasing order."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray   # columns match eigenvalues

    def __post_init__(self):
        self.eigenvalues.setflags(write=False)
        self.eigenvectors.setflags(write=False)

    def rank(self, eps: float = EPS_RANK) -> int:
        return int(np.count_nonzero(self.eigenvalues > eps))


def spectral_decomposition(rho: np.ndarray, eig_floor: float = EIG_FLOOR
                           ) -> SpectralDecomposition:
    """Diagonalize a density matrix; negative weight beyond eig_floor is fatal."""
    w, v = np.linalg.eigh(rho)
    if w.min() < eig_floor:
        raise NotDensityMatrix(
            f"eigenvalue {w.min():.3e} below floor {eig_floor:.0e}"
        )
    w = np.clip(w, 0.0, None)
    order = np.argsort(w)[::-1]
    return SpectralDecomposition(w[order], v[:, order])


@dataclass(frozen=True)
class QfiResult:
    """QFI value plus how it was obtained."""

    value: float
    method: str            # "pure" or "spectral"
    tail_mass: float = 0.0
    rank: int | None = None


def _as_matrix(rho) -> tuple[np.ndarray, float, FockCutoff | None]:
    if isinstance(rho, DensityMatrix):
        return rho.matrix, rho.tail_mass, rho.cutoff
    return np.asarray(rho, dtype=complex), 0.0, None


def qfi_pure(state, generator) -> QfiResult:
    """4 Var_psi(G) for a pure probe."""
    if isinstance(state, TwoModeState):
        vec, tail, cutoff = state.amplitudes, state.tail_mass, state.cutoff
    else:
        vec, tail, cutoff = np.asarray(state, dtype=complex), 0.0, None
    gen = _resolve_generator(generator, cutoff)
    if gen.shape != (vec.shape[0], vec.shape[0]):
        raise DimensionMismatch(
            f"generator shape {gen.shape} vs state dim {vec.shape[0]}"
        )
    gv = gen @ vec
    mean = np.vdot(vec, gv).real
    second = np.vdot(gv, gv).real
    return QfiResult(4.0 * (second - mean * mean), "pure", tail_mass=tail, rank=1)


def qfi_mixed(rho, generator, eps_rank: float = EPS_RANK) -> QfiResult:
    """Spectral-sum QFI of a mixed probe under generator G."""
    mat, tail, cutoff = _as_matrix(rho)
    gen = _resolve_generator(generator, cutoff)
    if gen.shape != mat.shape:
        raise DimensionMismatch(
            f"generator shape {gen.shape} vs density shape {mat.shape}"
        )
    dec = spectral_decomposition(mat)
    w, v = dec.eigenvalues, dec.eigenvectors
    diag = np.diagonal(gen)
    if np.count_nonzero(gen - np.diag(diag)) == 0:
        g_rot = (v.conj().T * diag) @ v
    else:
        g_rot = v.conj().T @ gen @ v
    s = w[:, None] + w[None, :]
    d = w[:, None] - w[None, :]
    mask = s > eps_rank
    coef = np.divide(d * d, s, out=np.zeros_like(s), where=mask)
    value = 2.0 * float(np.sum(coef * (g_rot.real**2 + g_rot.imag**2)))
    return QfiResult(value, "spectral", tail_mass=tail, rank=dec.rank(eps_rank))


def qfi_unitary_invariance_check(rho, generator, unitary: np.ndarray) -> float:
    """|F(rho, G) - F(U rho U^dag, U G U^dag)| for a theta-independent U.

    Zero up to roundoff; this is why a fixed second beam splitter can be
    dropped from the lossy pipeline.
    """
    mat, _, cutoff = _as_matrix(rho)
    gen = _resolve_generator(generator, cutoff)
    base = qfi_mixed(mat, gen).value
    rot = qfi_mixed(
        unitary @ mat @ unitary.conj().T,
        unitary @ gen @ unitary.conj().T,
    ).value
    return abs(base - rot)


def _psd_sqrt(mat: np.ndarray) -> np.ndarray:
    w, v = np.linalg.eigh(mat)
    # eigenvalues at roundoff level would inflate to sqrt(eps) under the
    # square root; zero them so they cannot pollute near-unity fidelities
    w[w < np.max(w, initial=0.0) * 1e-13] = 0.0
    return (v * np.sqrt(w)) @ v.conj().T


def uhlmann_fidelity(rho: np.ndarray, sigma: np.ndarray) -> float:
    """(Tr sqrt(sqrt(rho) sigma sqrt(rho)))^2 for PSD rho, sigma.

    Evaluated as the squared nuclear norm of sqrt(sigma) sqrt(rho); the
    singular values are the eigenvalues of the conventional inner square
    root, computed without the accuracy loss of squaring first.
    """
    root_r = _psd_sqrt(np.asarray(rho, dtype=complex))
    root_s = _psd_sqrt(np.asarray(sigma, dtype=complex))
    singular = np.linalg.svd(root_s @ root_r, compute_uv=False)
    return float(np.sum(singular)) ** 2


def qfi_fidelity_estimate(rho, generator, delta: float = 1e-3) -> float:
    """Finite-difference QFI 8 (1 - sqrt(Fid(rho, rho_delta))) / delta^2.

    Independent numerical route: rho_delta = e^{-i delta G} rho e^{i delta G}.
    Agrees with qfi_mixed to O(delta^2) relative; used as a validation
    cross-check, not for production evaluation.
    """
    mat, _, cutoff = _as_matrix(rho)
    gen = _resolve_generator(generator, cutoff)
    w, v = np.linalg.eigh(gen)
    u = (v * np.exp(-1j * delta * w)) @ v.conj().T
    shifted = u @ mat @ u.conj().T
    fid = uhlmann_fidelity(mat, shifted)
    return 8.0 * (1.0 - math.sqrt(max(fid, 0.0))) / (delta * delta)
