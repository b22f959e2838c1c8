"""Truncated Fock space: number bases, bosonic operators, probe states.

The working Hilbert space keeps every number state |n_1, ..., n_m> with
n_1 + ... + n_m <= n_max.  Truncating on the *total* photon number (rather
than per mode) keeps number-conserving operators, and the unitaries built
from them, exact on the retained space.

Basis ordering (fixed, so emitted matrices and golden files are
reproducible): blocks of constant total photon number N in increasing N;
inside a block the first mode's occupation runs from N down to 0 (then the
second mode's, and so on).  For two modes the first states are
|00>, |10>, |01>, |20>, |11>, |02>, ...  so J_z starts diag(0, 1/2, -1/2).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations_with_replacement

import numpy as np

from .errors import (
    DegenerateCat,
    DimensionMismatch,
    DomainError,
    NotDensityMatrix,
    TailTooLarge,
)

EPS_TAIL = 1e-10   # default ceiling on truncation tail mass
EPS_CAT = 1e-12    # cat normalization denominator below this is degenerate


@dataclass(frozen=True)
class FockCutoff:
    """Total-photon-number cutoff n_max (inclusive)."""

    n_max: int

    def __post_init__(self):
        if not isinstance(self.n_max, int) or self.n_max < 0:
            raise DomainError("n_max must be a non-negative integer")


def default_cutoff(alpha_scale: float) -> FockCutoff:
    """Cutoff heuristic for coherent-family inputs.

    alpha_scale is the root-sum-square coherent amplitude over all modes;
    ceil(2*a^2 + 10*a + 10) keeps the total-photon tail far below 1e-10
    for the amplitudes this package sweeps (a <= ~2.2).
    """
    a = abs(alpha_scale)
    return FockCutoff(math.ceil(2.0 * a * a + 10.0 * a + 10.0))


class FockBasis:
    """Enumerated number basis of an m-mode space truncated at total n_max."""

    def __init__(self, n_modes: int, n_max: int):
        if n_modes < 1:
            raise DomainError("n_modes must be positive")
        self.n_modes = n_modes
        self.n_max = n_max
        states = []
        for total in range(n_max + 1):
            block = []
            # compositions of `total` into n_modes parts
            for cut in combinations_with_replacement(range(total + 1), n_modes - 1):
                bounds = (0,) + cut + (total,)
                occ = tuple(bounds[i + 1] - bounds[i] for i in range(n_modes))
                block.append(occ)
            block.sort(key=lambda occ: tuple(-n for n in occ))
            states.extend(block)
        self.states: tuple[tuple[int, ...], ...] = tuple(states)
        self.index: dict[tuple[int, ...], int] = {s: i for i, s in enumerate(states)}
        self.dim = len(states)
        self.occupations = np.array(states, dtype=np.int64)
        self.block_slices: list[slice] = []
        start = 0
        for total in range(n_max + 1):
            size = math.comb(total + n_modes - 1, n_modes - 1)
            self.block_slices.append(slice(start, start + size))
            start += size

    def __repr__(self):
        return f"FockBasis(n_modes={self.n_modes}, n_max={self.n_max}, dim={self.dim})"


@lru_cache(maxsize=None)
def fock_basis(n_modes: int, n_max: int) -> FockBasis:
    return FockBasis(n_modes, n_max)


def two_mode_basis(cutoff: FockCutoff) -> FockBasis:
    return fock_basis(2, cutoff.n_max)


def hop_operator(basis: FockBasis, to_mode: int, from_mode: int) -> np.ndarray:
    """Matrix of a_to^dagger a_from.  Number conserving, exact on the basis."""
    if to_mode == from_mode:
        return np.diag(basis.occupations[:, to_mode].astype(float)).astype(complex)
    out = np.zeros((basis.dim, basis.dim), dtype=complex)
    for i, occ in enumerate(basis.states):
        n_from = occ[from_mode]
        if n_from == 0:
            continue
        tgt = list(occ)
        tgt[from_mode] -= 1
        tgt[to_mode] += 1
        j = basis.index[tuple(tgt)]
        out[j, i] = math.sqrt(n_from * (occ[to_mode] + 1))
    return out


def lowering_power(basis: FockBasis, mode: int, k: int) -> np.ndarray:
    """Matrix of a_mode^k.  Lowers total photon number, exact on the basis."""
    out = np.zeros((basis.dim, basis.dim), dtype=complex)
    for i, occ in enumerate(basis.states):
        n = occ[mode]
        if n < k:
            continue
        tgt = list(occ)
        tgt[mode] -= k
        j = basis.index[tuple(tgt)]
        out[j, i] = math.sqrt(math.perm(n, k))
    return out


@dataclass(frozen=True)
class SchwingerOps:
    """Angular-momentum images of the two-mode algebra.

    jx = (a^dag b + b^dag a)/2, jy = (a^dag b - b^dag a)/(2i),
    jz = (a^dag a - b^dag b)/2.  All block diagonal in total photon number.
    """

    cutoff: FockCutoff
    jx: np.ndarray
    jy: np.ndarray
    jz: np.ndarray

    def __post_init__(self):
        for m in (self.jx, self.jy, self.jz):
            m.setflags(write=False)


@lru_cache(maxsize=None)
def _schwinger_cached(n_max: int) -> SchwingerOps:
    basis = fock_basis(2, n_max)
    hop_ab = hop_operator(basis, 0, 1)   # a^dag b
    hop_ba = hop_ab.conj().T
    jx = 0.5 * (hop_ab + hop_ba)
    jy = (hop_ab - hop_ba) / 2j
    occ = basis.occupations
    jz = np.diag(0.5 * (occ[:, 0] - occ[:, 1]).astype(float)).astype(complex)
    return SchwingerOps(FockCutoff(n_max), jx, jy, jz)


def schwinger_ops(cutoff: FockCutoff) -> SchwingerOps:
    return _schwinger_cached(cutoff.n_max)


def coherent_amplitudes(
    gamma: complex, cutoff: FockCutoff, tol_tail: float = EPS_TAIL
) -> tuple[np.ndarray, float]:
    """Number-basis amplitudes of |gamma>, renormalized on 0..n_max.

    c_n = exp(-|gamma|^2/2) gamma^n / sqrt(n!).  Returns (amplitudes, tail)
    where tail is the probability mass beyond the cutoff before
    renormalization.  Raises TailTooLarge when tail > tol_tail.
    """
    n_max = cutoff.n_max
    c = np.zeros(n_max + 1, dtype=complex)
    c[0] = math.exp(-0.5 * abs(gamma) ** 2)
    for n in range(1, n_max + 1):
        c[n] = c[n - 1] * gamma / math.sqrt(n)
    retained = float(np.vdot(c, c).real)
    tail = max(0.0, 1.0 - retained)
    if tail > tol_tail:
        raise TailTooLarge(tail, tol_tail, f"coherent |gamma|={abs(gamma):.4g}, n_max={n_max}")
    c /= math.sqrt(retained)
    c.setflags(write=False)
    return c, tail


@dataclass(frozen=True)
class CatParams:
    """Superposition N_a (|alpha> + e^{i omega} |-alpha>) of opposite coherent states.

    n_alpha_sq is the squared normalization N_a^2 = 1/(2 + 2 e^{-2 alpha^2} cos omega).
    omega may reach pi (odd cat) provided alpha keeps the state normalizable;
    sweep-level interfaces restrict omega to [0, pi).
    """

    alpha: float
    omega: float
    n_alpha_sq: float = field(init=False)

    def __post_init__(self):
        if self.alpha < 0:
            raise DomainError("alpha must be non-negative")
        if not 0.0 <= self.omega <= math.pi:
            raise DomainError("omega must lie in [0, pi]")
        denom = 2.0 + 2.0 * math.exp(-2.0 * self.alpha**2) * math.cos(self.omega)
        if denom <= EPS_CAT:
            raise DegenerateCat(
                f"cat normalization denominator {denom:.3e} below {EPS_CAT:.0e}"
            )
        object.__setattr__(self, "n_alpha_sq", 1.0 / denom)


def cat_state(
    params: CatParams, cutoff: FockCutoff, tol_tail: float = EPS_TAIL
) -> tuple[np.ndarray, float]:
    """Truncated amplitudes of the normalized cat state, plus tail mass."""
    n_max = cutoff.n_max
    alpha, omega = params.alpha, params.omega
    amp = math.exp(-0.5 * alpha * alpha)
    c = np.zeros(n_max + 1, dtype=complex)
    phase = complex(math.cos(omega), math.sin(omega))
    na = math.sqrt(params.n_alpha_sq)
    term = amp
    for n in range(n_max + 1):
        if n > 0:
            term *= alpha / math.sqrt(n)
        c[n] = na * term * (1.0 + phase * (-1.0) ** n)
    retained = float(np.vdot(c, c).real)
    tail = max(0.0, 1.0 - retained)
    if tail > tol_tail:
        raise TailTooLarge(tail, tol_tail, f"cat alpha={alpha:.4g}, n_max={n_max}")
    c = c / math.sqrt(retained)
    c.setflags(write=False)
    return c, tail


@dataclass(frozen=True)
class TwoModeState:
    """Normalized pure state on the truncated two-mode basis."""

    amplitudes: np.ndarray
    cutoff: FockCutoff
    tail_mass: float = 0.0

    def __post_init__(self):
        basis = two_mode_basis(self.cutoff)
        if self.amplitudes.shape != (basis.dim,):
            raise DimensionMismatch(
                f"amplitude vector has shape {self.amplitudes.shape}, basis dim {basis.dim}"
            )
        self.amplitudes.setflags(write=False)

    @property
    def basis(self) -> FockBasis:
        return two_mode_basis(self.cutoff)

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))


@dataclass(frozen=True)
class DensityMatrix:
    """Density operator on the truncated m-mode basis."""

    matrix: np.ndarray
    cutoff: FockCutoff
    n_modes: int = 2
    tail_mass: float = 0.0

    def __post_init__(self):
        basis = fock_basis(self.n_modes, self.cutoff.n_max)
        if self.matrix.shape != (basis.dim, basis.dim):
            raise DimensionMismatch(
                f"matrix shape {self.matrix.shape} does not fit basis dim {basis.dim}"
            )
        self.matrix.setflags(write=False)

    @property
    def basis(self) -> FockBasis:
        return fock_basis(self.n_modes, self.cutoff.n_max)

    def trace(self) -> complex:
        return complex(np.trace(self.matrix))

    def purity(self) -> float:
        return float(np.vdot(self.matrix, self.matrix).real)

    def validate(self, trace_tol: float = 1e-8, herm_tol: float = 1e-8,
                 eig_floor: float = -1e-8) -> None:
        """Raise NotDensityMatrix on trace, Hermiticity, or positivity failure."""
        tr = self.trace()
        if abs(tr - 1.0) > trace_tol:
            raise NotDensityMatrix(f"trace {tr} differs from 1 by more than {trace_tol}")
        if np.max(np.abs(self.matrix - self.matrix.conj().T)) > herm_tol:
            raise NotDensityMatrix("matrix is not Hermitian within tolerance")
        w = np.linalg.eigvalsh(self.matrix)
        if w.min() < eig_floor:
            raise NotDensityMatrix(f"eigenvalue {w.min():.3e} below floor {eig_floor:.0e}")


def pure_density(state: TwoModeState) -> DensityMatrix:
    rho = np.outer(state.amplitudes, state.amplitudes.conj())
    return DensityMatrix(rho, state.cutoff, n_modes=2, tail_mass=state.tail_mass)


def input_state(
    alpha: float,
    phi: float,
    cat: CatParams,
    cutoff: FockCutoff | None = None,
    tol_tail: float = EPS_TAIL,
) -> TwoModeState:
    """Interferometer probe |i alpha e^{i phi}>_A (x) cat_B.

    The product of the exact single-mode amplitude sequences is projected
    onto total photon number <= n_max and renormalized; the discarded mass
    is reported as tail_mass.
    """
    if alpha < 0:
        raise DomainError("alpha must be non-negative")
    if cutoff is None:
        cutoff = default_cutoff(math.hypot(alpha, cat.alpha))
    n_max = cutoff.n_max
    gamma = 1j * alpha * complex(math.cos(phi), math.sin(phi))
    # exact (unrenormalized) single-mode coefficient sequences
    ca = np.zeros(n_max + 1, dtype=complex)
    ca[0] = math.exp(-0.5 * alpha * alpha)
    for n in range(1, n_max + 1):
        ca[n] = ca[n - 1] * gamma / math.sqrt(n)
    phase = complex(math.cos(cat.omega), math.sin(cat.omega))
    na = math.sqrt(cat.n_alpha_sq)
    cb = np.zeros(n_max + 1, dtype=complex)
    term = math.exp(-0.5 * cat.alpha * cat.alpha)
    for n in range(n_max + 1):
        if n > 0:
            term *= cat.alpha / math.sqrt(n)
        cb[n] = na * term * (1.0 + phase * (-1.0) ** n)
    basis = two_mode_basis(cutoff)
    occ = basis.occupations
    psi = ca[occ[:, 0]] * cb[occ[:, 1]]
    retained = float(np.vdot(psi, psi).real)
    tail = max(0.0, 1.0 - retained)
    if tail > tol_tail:
        raise TailTooLarge(tail, tol_tail, f"input alpha={alpha:.4g}, n_max={n_max}")
    psi /= math.sqrt(retained)
    return TwoModeState(psi, cutoff, tail_mass=tail)


def expectation(state_or_density, operator: np.ndarray) -> complex:
    """<O> for a TwoModeState, a DensityMatrix, or a raw vector/matrix."""
    if isinstance(state_or_density, TwoModeState):
        vec = state_or_density.amplitudes
    elif isinstance(state_or_density, DensityMatrix):
        mat = state_or_density.matrix
        if operator.shape != mat.shape:
            raise DimensionMismatch(
                f"operator shape {operator.shape} vs density shape {mat.shape}"
            )
        return complex(np.trace(mat @ operator))
    else:
        arr = np.asarray(state_or_density)
        if arr.ndim == 2:
            if operator.shape != arr.shape:
                raise DimensionMismatch(
                    f"operator shape {operator.shape} vs matrix shape {arr.shape}"
                )
            return complex(np.trace(arr @ operator))
        vec = arr
    if operator.shape != (vec.shape[0], vec.shape[0]):
        raise DimensionMismatch(
            f"operator shape {operator.shape} vs state dim {vec.shape[0]}"
        )
    return complex(np.vdot(vec, operator @ vec))
