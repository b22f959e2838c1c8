"""Truncated-Fock simulation of the lossy interferometer.

Pipeline for the mixed probe: product input -> balanced splitter
exp(i (pi/2) J_x) -> photon loss of transmittance T on both arms,
realized as a Kraus fan-out of the pure state.  Each Kraus pair (k, l)
(k photons lost from arm A, l from arm B) just shifts occupation numbers
down and reweights, so every branch stays a vector and the density matrix
is assembled once as a Gram matrix of the surviving branches.

The phase generator for the mixed probe is J_z (phase accumulates between
the splitters); for the lossless case the probe stays pure and the QFI is
evaluated directly on the input state with generator J_y.
"""
from __future__ import annotations

import math
from functools import lru_cache

import numpy as np

from .channels import loss_kraus_coefficients, number_conserving_expm
from .fock import (
    EPS_TAIL,
    CatParams,
    DensityMatrix,
    FockCutoff,
    TwoModeState,
    default_cutoff,
    input_state,
    schwinger_ops,
    two_mode_basis,
)
from .qfi import EPS_RANK, QfiResult, qfi_mixed, qfi_pure

PRUNE_NORM = 1e-30   # Kraus branches below this squared norm are dropped


def probe_cutoff(alpha: float) -> FockCutoff:
    """Default cutoff for a probe of per-port amplitude alpha.

    The root-sum-square amplitude over both ports is sqrt(2) alpha.
    """
    return default_cutoff(math.sqrt(2.0) * alpha)


@lru_cache(maxsize=None)
def _first_splitter(n_max: int) -> np.ndarray:
    cutoff = FockCutoff(n_max)
    ops = schwinger_ops(cutoff)
    return number_conserving_expm(two_mode_basis(cutoff), ops.jx, math.pi / 2.0)


@lru_cache(maxsize=None)
def _index_table(n_max: int) -> np.ndarray:
    basis = two_mode_basis(FockCutoff(n_max))
    tab = np.full((n_max + 1, n_max + 1), -1, dtype=np.int64)
    occ = basis.occupations
    tab[occ[:, 0], occ[:, 1]] = np.arange(basis.dim)
    return tab


def probe_state(
    alpha: float,
    phi: float,
    omega: float,
    cutoff: FockCutoff | None = None,
    tol_tail: float = EPS_TAIL,
) -> TwoModeState:
    """Product input |i alpha e^{i phi}> (x) cat(alpha, omega), truncated."""
    if cutoff is None:
        cutoff = probe_cutoff(alpha)
    return input_state(alpha, phi, CatParams(alpha, omega), cutoff, tol_tail)


def lossy_probe_density(
    alpha: float,
    phi: float,
    omega: float,
    transmission: float,
    cutoff: FockCutoff | None = None,
    tol_tail: float = EPS_TAIL,
    prune: float = PRUNE_NORM,
) -> DensityMatrix:
    """Mixed probe after the first splitter and per-arm loss."""
    if cutoff is None:
        cutoff = probe_cutoff(alpha)
    state = probe_state(alpha, phi, omega, cutoff, tol_tail)
    n_max = cutoff.n_max
    psi = _first_splitter(n_max) @ state.amplitudes
    basis = state.basis
    occ = basis.occupations
    na, nb = occ[:, 0], occ[:, 1]
    coef = loss_kraus_coefficients(n_max, transmission)
    tab = _index_table(n_max)
    branches = []
    for k in range(n_max + 1):
        src_k = np.nonzero(na >= k)[0]
        if src_k.size == 0:
            break
        for l in range(n_max + 1):
            src = src_k[nb[src_k] >= l]
            if src.size == 0:
                break
            amp = coef[k, na[src]] * coef[l, nb[src]] * psi[src]
            if float(np.vdot(amp, amp).real) < prune:
                continue
            vec = np.zeros(basis.dim, dtype=complex)
            vec[tab[na[src] - k, nb[src] - l]] = amp
            branches.append(vec)
    mat = np.array(branches)
    rho = mat.T @ mat.conj()
    return DensityMatrix(rho, cutoff, n_modes=2, tail_mass=state.tail_mass)


def qfi_numeric(
    alpha: float,
    phi: float,
    omega: float,
    transmission: float,
    cutoff: FockCutoff | None = None,
    tol_tail: float = EPS_TAIL,
    eps_rank: float = EPS_RANK,
) -> QfiResult:
    """Fock-basis QFI of the probe, pure route at T = 1, spectral otherwise."""
    if cutoff is None:
        cutoff = probe_cutoff(alpha)
    if transmission == 1.0:
        state = probe_state(alpha, phi, omega, cutoff, tol_tail)
        return qfi_pure(state, schwinger_ops(cutoff).jy)
    rho = lossy_probe_density(alpha, phi, omega, transmission, cutoff, tol_tail)
    return qfi_mixed(rho, schwinger_ops(cutoff).jz, eps_rank=eps_rank)
