"""Unit tests for the truncated-Fock probe pipeline."""
from __future__ import annotations

import math

import numpy as np
import pytest

from mzqfi import (
    CatParams,
    FockCutoff,
    TailTooLarge,
    default_cutoff,
    eigensystem_2x2,
    input_state,
    lossy_probe_density,
    probe_cutoff,
    probe_state,
    pure_density,
    qfi_lossless,
    qfi_lossy,
    qfi_mixed,
    qfi_numeric,
    qfi_pure,
    reduced_density,
    schwinger_ops,
)

OMEGA_67 = 6.0 * math.pi / 7.0


def test_probe_cutoff_tracks_combined_amplitude():
    for alpha in (0.1, 0.3, 1.2):
        assert probe_cutoff(alpha) == default_cutoff(math.sqrt(2.0) * alpha)


def test_probe_state_is_input_state():
    state = probe_state(0.4, 0.2, 1.5)
    ref = input_state(0.4, 0.2, CatParams(0.4, 1.5))
    np.testing.assert_allclose(state.amplitudes, ref.amplitudes, atol=1e-15)
    assert state.cutoff == ref.cutoff


def test_probe_state_tail_guard():
    with pytest.raises(TailTooLarge):
        probe_state(0.8, 0.0, 1.0, FockCutoff(8))


def test_lossy_density_is_valid_state():
    rho = lossy_probe_density(0.3, 0.25, 1.0, 0.6)
    rho.validate()
    assert rho.trace().real == pytest.approx(1.0, abs=1e-12)


def test_lossy_density_rank_two_structure():
    # two coherent branches survive loss, so purity matches the 2x2 model
    alpha, phi, omega, T = 0.3, 0.1, 1.0, 0.5
    rho = lossy_probe_density(alpha, phi, omega, T)
    eig = eigensystem_2x2(reduced_density(alpha, phi, omega, T))
    expected = eig.lam_plus**2 + eig.lam_minus**2
    assert rho.purity() == pytest.approx(expected, abs=1e-10)


def test_full_transmission_pipeline_consistency():
    # at T = 1 the J_z route after the splitter equals the J_y route before it
    alpha, phi, omega = 0.3, 0.2, 2.0
    rho = lossy_probe_density(alpha, phi, omega, 1.0)
    via_jz = qfi_mixed(rho, schwinger_ops(rho.cutoff).jz).value
    state = probe_state(alpha, phi, omega)
    via_jy = qfi_pure(state, schwinger_ops(state.cutoff).jy).value
    assert via_jz == pytest.approx(via_jy, abs=1e-9)


def test_numeric_matches_analytic_lossless():
    for alpha, phi, omega in ((0.3, 0.0, 0.0), (0.3, 0.5, OMEGA_67), (0.9, -0.3, 2.0)):
        numeric = qfi_numeric(alpha, phi, omega, 1.0).value
        assert numeric == pytest.approx(qfi_lossless(alpha, phi, omega), abs=1e-8)


def test_numeric_matches_analytic_lossy():
    for alpha, phi, omega, T in ((0.3, 0.0, OMEGA_67, 0.83), (0.3, 0.4, 1.0, 0.5),
                                 (0.8, 0.2, 2.6, 0.35)):
        numeric = qfi_numeric(alpha, phi, omega, T).value
        assert numeric == pytest.approx(qfi_lossy(alpha, phi, omega, T), abs=1e-8)


def test_numeric_stable_under_cutoff_increase():
    base = qfi_numeric(0.3, 0.1, 1.0, 0.7, FockCutoff(16)).value
    bigger = qfi_numeric(0.3, 0.1, 1.0, 0.7, FockCutoff(22)).value
    assert bigger == pytest.approx(base, abs=1e-10)


def test_pure_density_of_probe_is_reported_pure():
    res = qfi_numeric(0.3, 0.0, 0.0, 1.0)
    assert res.method == "pure"
    lossy = qfi_numeric(0.3, 0.0, 0.0, 0.9)
    assert lossy.method == "spectral"
    assert lossy.rank == 2
