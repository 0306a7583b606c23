"""Finite-difference and shooting cross-checks."""

import math

import numpy as np
import pytest

from boundstates import (
    box_exact_energy,
    fd_box_dispersion,
    fd_box_recurrence_eigenvalues,
    infinite_well,
    poschl_teller,
    poschl_teller_exact_energies,
    shooting_reference,
)
from boundstates.oracle import fd_box_recurrence_vector

CONTINUUM_GROUND = 0.5 * math.pi ** 2


def test_dispersion_reference_value():
    # frozen: (1 - cos(0.02 pi)) / 0.0004
    assert fd_box_dispersion(1, 0.01) == pytest.approx(4.933178929321103, rel=1e-14)


def test_dispersion_approaches_the_continuum_from_below():
    for h in (0.02, 0.01, 0.005):
        assert fd_box_dispersion(1, h) < CONTINUUM_GROUND
    assert fd_box_dispersion(1, 0.001) == pytest.approx(CONTINUUM_GROUND, abs=2e-4)


def test_dispersion_error_is_second_order():
    coarse = CONTINUUM_GROUND - fd_box_dispersion(1, 0.02)
    fine = CONTINUUM_GROUND - fd_box_dispersion(1, 0.01)
    assert coarse / fine == pytest.approx(4.0, abs=0.05)


def test_dispersion_validation():
    with pytest.raises(ValueError):
        fd_box_dispersion(0, 0.01)
    with pytest.raises(ValueError):
        fd_box_dispersion(1.5, 0.01)
    with pytest.raises(ValueError):
        fd_box_dispersion(1, 0.0)
    with pytest.raises(ValueError):
        fd_box_dispersion(1, -0.1)
    with pytest.raises(ValueError):
        fd_box_dispersion(150, 0.01)


def test_recurrence_vector_closes_at_a_dispersion_eigenvalue():
    N = 50
    vec = fd_box_recurrence_vector(N, fd_box_dispersion(3, 1.0 / N))
    assert vec[0] == 0.0
    assert abs(vec[-1]) <= 1e-9 * np.max(np.abs(vec))


def test_recurrence_shooting_matches_the_dispersion_formula():
    N = 12
    roots = fd_box_recurrence_eigenvalues(N, 5)
    for n, root in enumerate(roots, start=1):
        assert abs(root - fd_box_dispersion(n, 1.0 / N)) <= 1e-10


def test_recurrence_eigenvalue_validation():
    with pytest.raises(ValueError):
        fd_box_recurrence_eigenvalues(13, 3)
    with pytest.raises(ValueError):
        fd_box_recurrence_eigenvalues(2, 1)
    with pytest.raises(ValueError):
        fd_box_recurrence_eigenvalues(12, 6)
    with pytest.raises(ValueError):
        fd_box_recurrence_eigenvalues(12, 0)


def test_shooting_reference_box_levels():
    prob = infinite_well(x0=0.5, h=0.005, energy_max=50.0)
    roots = shooting_reference(prob, (1.0, 50.0), n_probe=100)
    assert len(roots) == 3
    for n, root in enumerate(roots, start=1):
        assert abs(root - box_exact_energy(n)) <= 1e-7


def test_shooting_reference_decaying_well():
    prob = poschl_teller(2.5, h=0.01, x_right=10.0)
    roots = shooting_reference(prob, (-2.4, -0.01), n_probe=60)
    exact = poschl_teller_exact_energies(2.5)
    assert len(roots) == 2
    for root, ref in zip(roots, exact):
        assert abs(root - ref) < 1e-5
