"""Optical elements on the truncated Fock space: splitters, phases, loss.

Every unitary here conserves total photon number, so it is exact on the
total-number-truncated basis.  Loss only removes photons, so the Kraus
maps are exact there too; truncation error enters solely through the
input state's tail mass.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, DomainError
from .fock import (
    DensityMatrix,
    FockBasis,
    FockCutoff,
    TwoModeState,
    fock_basis,
    hop_operator,
    schwinger_ops,
    two_mode_basis,
)


def _check_transmission(T: float) -> None:
    if not 0.0 <= T <= 1.0:
        raise DomainError("T must lie in [0,1]")


@dataclass(frozen=True)
class BeamSplitterSpec:
    """Lossless beam splitter of intensity transmission T.

    The unitary is exp(i * mixing_angle * J_x) with
    mixing_angle = 2 arccos(sqrt(T)); on coherent inputs it acts as
    |a, b> -> |a sqrt(T) + i b sqrt(1-T), b sqrt(T) + i a sqrt(1-T)>.
    """

    transmission: float

    def __post_init__(self):
        _check_transmission(self.transmission)

    @property
    def reflection(self) -> float:
        return 1.0 - self.transmission

    @property
    def mixing_angle(self) -> float:
        return 2.0 * math.acos(math.sqrt(self.transmission))


@dataclass(frozen=True)
class LossSpec:
    """Photon loss with per-photon survival probability (transmission) T."""

    transmission: float

    def __post_init__(self):
        _check_transmission(self.transmission)

    @property
    def reflection(self) -> float:
        return 1.0 - self.transmission


def number_conserving_expm(basis: FockBasis, herm: np.ndarray, scale: float = 1.0
                           ) -> np.ndarray:
    """exp(1j * scale * herm) for a Hermitian, number-conserving matrix.

    Exponentiates each fixed-total-photon block by eigendecomposition.
    """
    if herm.shape != (basis.dim, basis.dim):
        raise DimensionMismatch(
            f"operator shape {herm.shape} does not fit basis dim {basis.dim}"
        )
    out = np.zeros_like(herm, dtype=complex)
    for blk in basis.block_slices:
        w, v = np.linalg.eigh(herm[blk, blk])
        out[blk, blk] = (v * np.exp(1j * scale * w)) @ v.conj().T
    return out


def number_conserving_expm_apply(basis: FockBasis, herm: np.ndarray, scale: float,
                                 vec: np.ndarray) -> np.ndarray:
    """Apply exp(1j * scale * herm) to a vector block by block."""
    out = np.empty_like(vec, dtype=complex)
    for blk in basis.block_slices:
        w, v = np.linalg.eigh(herm[blk, blk])
        out[blk] = v @ (np.exp(1j * scale * w) * (v.conj().T @ vec[blk]))
    return out


def pair_jx(basis: FockBasis, mode_i: int, mode_j: int) -> np.ndarray:
    """(a_i^dag a_j + a_j^dag a_i)/2 on an m-mode basis."""
    hop = hop_operator(basis, mode_i, mode_j)
    return 0.5 * (hop + hop.conj().T)


def beam_splitter_unitary(spec: BeamSplitterSpec, cutoff: FockCutoff,
                          modes: tuple[int, int] = (0, 1),
                          n_modes: int = 2) -> np.ndarray:
    basis = fock_basis(n_modes, cutoff.n_max)
    jx = pair_jx(basis, modes[0], modes[1])
    return number_conserving_expm(basis, jx, spec.mixing_angle)


def phase_shift_unitary(theta: float, cutoff: FockCutoff) -> np.ndarray:
    """Differential phase exp(i theta J_z): diagonal e^{i theta (n_A-n_B)/2}."""
    basis = two_mode_basis(cutoff)
    occ = basis.occupations
    jz_diag = 0.5 * (occ[:, 0] - occ[:, 1]).astype(float)
    return np.diag(np.exp(1j * theta * jz_diag))


def mz_unitary(theta: float, cutoff: FockCutoff) -> np.ndarray:
    """Balanced Mach-Zehnder with internal phase theta: exp(-i theta J_y).

    Equal to B exp(i theta J_z) B^dag with B = exp(-i (pi/2) J_x), so J_y
    generates the phase family in the fixed input basis.
    """
    basis = two_mode_basis(cutoff)
    ops = schwinger_ops(cutoff)
    return number_conserving_expm(basis, ops.jy, -theta)


def loss_kraus_coefficients(n_max: int, T: float) -> np.ndarray:
    """coef[k, n] = sqrt(binom(n, k) (1-T)^k T^(n-k)), zero for k > n.

    Amplitudes of the single-mode loss Kraus operators
    K_k = sqrt((1-T)^k / k!) T^{n_hat/2} a^k, which satisfy
    sum_k K_k^dag K_k = 1 exactly (binomial theorem row by row).
    """
    _check_transmission(T)
    R = 1.0 - T
    coef = np.zeros((n_max + 1, n_max + 1))
    for n in range(n_max + 1):
        for k in range(n + 1):
            coef[k, n] = math.sqrt(math.comb(n, k) * R**k * T ** (n - k))
    return coef


def loss_kraus_operators(basis: FockBasis, mode: int, spec: LossSpec
                         ) -> list[np.ndarray]:
    """Dense Kraus matrices of the loss channel on one mode."""
    coef = loss_kraus_coefficients(basis.n_max, spec.transmission)
    ops = []
    for k in range(basis.n_max + 1):
        K = np.zeros((basis.dim, basis.dim), dtype=complex)
        for i, occ in enumerate(basis.states):
            n = occ[mode]
            if n < k:
                continue
            tgt = list(occ)
            tgt[mode] -= k
            K[basis.index[tuple(tgt)], i] = coef[k, n]
        ops.append(K)
    return ops


def _loss_shift_maps(basis: FockBasis, mode: int, T: float):
    """Per-k (source indices, target indices, weights) for the loss Kraus."""
    coef = loss_kraus_coefficients(basis.n_max, T)
    occ_mode = basis.occupations[:, mode]
    maps = []
    for k in range(basis.n_max + 1):
        src = np.nonzero(occ_mode >= k)[0]
        if src.size == 0:
            break
        tgt_occ = basis.occupations[src].copy()
        tgt_occ[:, mode] -= k
        tgt = np.fromiter(
            (basis.index[tuple(row)] for row in tgt_occ), dtype=np.int64, count=src.size
        )
        maps.append((src, tgt, coef[k, occ_mode[src]]))
    return maps


def apply_loss(rho: np.ndarray, basis: FockBasis, mode: int, spec: LossSpec
               ) -> np.ndarray:
    """sum_k K_k rho K_k^dag for photon loss on one mode."""
    if rho.shape != (basis.dim, basis.dim):
        raise DimensionMismatch(
            f"matrix shape {rho.shape} does not fit basis dim {basis.dim}"
        )
    out = np.zeros_like(rho, dtype=complex)
    for src, tgt, w in _loss_shift_maps(basis, mode, spec.transmission):
        out[np.ix_(tgt, tgt)] += (w[:, None] * w[None, :]) * rho[np.ix_(src, src)]
    return out


def loss_channel(dm: DensityMatrix, spec: LossSpec) -> DensityMatrix:
    """Equal photon loss on both arms, Kraus route (the two maps commute)."""
    basis = dm.basis
    out = apply_loss(dm.matrix, basis, 0, spec)
    out = apply_loss(out, basis, 1, spec)
    out = 0.5 * (out + out.conj().T)
    return DensityMatrix(out, dm.cutoff, n_modes=dm.n_modes, tail_mass=dm.tail_mass)


def _partial_trace_raw(rho: np.ndarray, basis: FockBasis, keep: tuple[int, ...]
                       ) -> tuple[np.ndarray, FockBasis]:
    keep = tuple(keep)
    traced = tuple(m for m in range(basis.n_modes) if m not in keep)
    if not traced:
        return rho.copy(), basis
    kept_basis = fock_basis(len(keep), basis.n_max)
    kept_idx = np.fromiter(
        (kept_basis.index[tuple(s[m] for m in keep)] for s in basis.states),
        dtype=np.int64, count=basis.dim,
    )
    groups: dict[tuple[int, ...], list[int]] = {}
    for i, s in enumerate(basis.states):
        groups.setdefault(tuple(s[m] for m in traced), []).append(i)
    out = np.zeros((kept_basis.dim, kept_basis.dim), dtype=complex)
    for idxs in groups.values():
        ii = np.asarray(idxs)
        ki = kept_idx[ii]
        out[np.ix_(ki, ki)] += rho[np.ix_(ii, ii)]
    return out, kept_basis


def partial_trace(dm: DensityMatrix, keep: tuple[int, ...]) -> DensityMatrix:
    """Trace out every mode not in `keep`."""
    if max(keep, default=-1) >= dm.n_modes or min(keep, default=0) < 0:
        raise DimensionMismatch(f"keep modes {keep} out of range for {dm.n_modes} modes")
    out, kept_basis = _partial_trace_raw(dm.matrix, dm.basis, keep)
    return DensityMatrix(out, dm.cutoff, n_modes=kept_basis.n_modes,
                         tail_mass=dm.tail_mass)


def loss_channel_ancilla(state: TwoModeState, spec: LossSpec) -> DensityMatrix:
    """Equal loss on both arms realized as vacuum-ancilla beam splitters.

    Embeds the two-mode state in a four-mode basis (ancillas in vacuum),
    couples arm A to ancilla C and arm B to ancilla D through splitters of
    transmission T, and traces the ancillas out.  Agrees with the Kraus
    route up to roundoff; kept as an independent realization.
    """
    n_max = state.cutoff.n_max
    big = fock_basis(4, n_max)
    psi4 = np.zeros(big.dim, dtype=complex)
    for i, (na, nb) in enumerate(state.basis.states):
        psi4[big.index[(na, nb, 0, 0)]] = state.amplitudes[i]
    angle = BeamSplitterSpec(spec.transmission).mixing_angle
    psi4 = number_conserving_expm_apply(big, pair_jx(big, 0, 2), angle, psi4)
    psi4 = number_conserving_expm_apply(big, pair_jx(big, 1, 3), angle, psi4)
    # partial trace of a pure state, grouped by ancilla occupations
    kept_basis = fock_basis(2, n_max)
    kept_idx = np.fromiter(
        (kept_basis.index[(s[0], s[1])] for s in big.states),
        dtype=np.int64, count=big.dim,
    )
    groups: dict[tuple[int, int], list[int]] = {}
    for i, s in enumerate(big.states):
        groups.setdefault((s[2], s[3]), []).append(i)
    rho = np.zeros((kept_basis.dim, kept_basis.dim), dtype=complex)
    for idxs in groups.values():
        ii = np.asarray(idxs)
        chunk = psi4[ii]
        rho[np.ix_(kept_idx[ii], kept_idx[ii])] += np.outer(chunk, chunk.conj())
    return DensityMatrix(rho, state.cutoff, n_modes=2, tail_mass=state.tail_mass)
