"""Unit tests for the truncated Fock layer."""
from __future__ import annotations

import math

import numpy as np
import pytest

from mzqfi import (
    CatParams,
    DegenerateCat,
    DimensionMismatch,
    DomainError,
    FockCutoff,
    TailTooLarge,
    TwoModeState,
    cat_state,
    coherent_amplitudes,
    default_cutoff,
    expectation,
    fock_basis,
    hop_operator,
    input_state,
    lowering_power,
    pure_density,
    schwinger_ops,
    two_mode_basis,
)


def test_basis_ordering_total_number_blocks():
    basis = fock_basis(2, 2)
    assert basis.states == ((0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2))


def test_basis_dim_closed_form():
    for n_max in (0, 1, 3, 7):
        assert fock_basis(2, n_max).dim == (n_max + 1) * (n_max + 2) // 2


def test_cutoff_rejects_bad_values():
    with pytest.raises(DomainError):
        FockCutoff(-1)
    with pytest.raises(DomainError):
        FockCutoff(2.5)


def test_default_cutoff_formula():
    for a in (0.0, 0.42, 1.7, 14.1):
        assert default_cutoff(a).n_max == math.ceil(2 * a * a + 10 * a + 10)


def test_jz_is_diagonal_in_smallest_basis():
    ops = schwinger_ops(FockCutoff(1))
    np.testing.assert_allclose(ops.jz, np.diag([0.0, 0.5, -0.5]))


def test_schwinger_commutators():
    ops = schwinger_ops(FockCutoff(7))
    cyclic = ((ops.jx, ops.jy, ops.jz), (ops.jy, ops.jz, ops.jx),
              (ops.jz, ops.jx, ops.jy))
    for a, b, c in cyclic:
        np.testing.assert_allclose(a @ b - b @ a, 1j * c, atol=1e-13)


def test_hop_operator_matrix_element():
    basis = fock_basis(2, 3)
    adag_b = hop_operator(basis, 0, 1)
    # a† b |0,3> = sqrt(3) sqrt(1) |1,2>
    val = adag_b[basis.index[(1, 2)], basis.index[(0, 3)]]
    assert val == pytest.approx(math.sqrt(3.0))


def test_lowering_power_matrix_element():
    basis = fock_basis(2, 4)
    a2 = lowering_power(basis, 0, 2)
    # a^2 |3,0> = sqrt(3*2) |1,0>
    assert a2[basis.index[(1, 0)], basis.index[(3, 0)]] == pytest.approx(math.sqrt(6.0))


def test_coherent_amplitudes_match_direct_formula():
    rng = np.random.default_rng(42)
    cutoff = FockCutoff(18)
    for _ in range(5):
        gamma = complex(rng.normal(scale=0.4), rng.normal(scale=0.4))
        amps, tail = coherent_amplitudes(gamma, cutoff)
        direct = np.array([
            math.exp(-0.5 * abs(gamma) ** 2) * gamma**n / math.sqrt(math.factorial(n))
            for n in range(cutoff.n_max + 1)
        ])
        direct /= np.linalg.norm(direct)
        np.testing.assert_allclose(amps, direct, atol=1e-13)
        assert 0.0 <= tail < 1e-10


def test_coherent_tail_guard():
    with pytest.raises(TailTooLarge):
        coherent_amplitudes(3.0, FockCutoff(6))


def test_cat_parity():
    even, _ = cat_state(CatParams(0.5, 0.0), FockCutoff(14))
    odd, _ = cat_state(CatParams(0.5, math.pi), FockCutoff(14))
    assert np.all(even[1::2] == 0)
    # sin(pi) roundoff leaves ~1e-16 residue in the suppressed components
    np.testing.assert_allclose(odd[0::2], 0.0, atol=1e-14)
    assert np.linalg.norm(even) == pytest.approx(1.0)
    assert np.linalg.norm(odd) == pytest.approx(1.0)


def test_cat_degenerate_guard():
    with pytest.raises(DegenerateCat):
        CatParams(0.0, math.pi)


def test_cat_params_domain():
    with pytest.raises(DomainError):
        CatParams(-0.2, 0.0)
    with pytest.raises(DomainError):
        CatParams(0.3, -0.1)
    with pytest.raises(DomainError):
        CatParams(0.3, math.pi + 0.1)


def test_input_state_mode_means():
    alpha, phi = 0.6, 0.3
    cat = CatParams(0.5, 1.2)
    state = input_state(alpha, phi, cat)
    basis = state.basis
    n_a = hop_operator(basis, 0, 0)
    n_b = hop_operator(basis, 1, 1)
    e = math.exp(-2.0 * cat.alpha**2)
    cat_mean = cat.alpha**2 * (1 - e * math.cos(cat.omega)) / (1 + e * math.cos(cat.omega))
    assert expectation(state, n_a).real == pytest.approx(alpha**2, abs=1e-9)
    assert expectation(state, n_b).real == pytest.approx(cat_mean, abs=1e-9)
    assert state.tail_mass < 1e-10


def test_input_state_product_structure():
    # amplitude ratios inside one mode-A column reproduce the cat sequence
    cat = CatParams(0.4, 0.7)
    cutoff = FockCutoff(12)
    state = input_state(0.3, 0.0, cat, cutoff)
    cb, _ = cat_state(cat, cutoff)
    basis = state.basis
    a00 = state.amplitudes[basis.index[(0, 0)]]
    a02 = state.amplitudes[basis.index[(0, 2)]]
    assert a02 / a00 == pytest.approx(cb[2] / cb[0], rel=1e-9)


def test_two_mode_state_shape_guard():
    with pytest.raises(DimensionMismatch):
        TwoModeState(np.zeros(5, dtype=complex), FockCutoff(2))


def test_expectation_shape_guard():
    state = input_state(0.3, 0.0, CatParams(0.3, 0.0), FockCutoff(12))
    with pytest.raises(DimensionMismatch):
        expectation(state, np.eye(4))


def test_pure_density_roundtrip():
    state = input_state(0.5, 0.1, CatParams(0.4, 2.0))
    dm = pure_density(state)
    dm.validate()
    assert dm.trace().real == pytest.approx(1.0)
    assert dm.purity() == pytest.approx(1.0)
    assert dm.basis.dim == two_mode_basis(state.cutoff).dim
