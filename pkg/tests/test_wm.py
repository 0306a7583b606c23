"""Boundary-Wronskian quantization: identities, flags, eigenfunction assembly."""

import dataclasses
import math

import numpy as np
import pytest

from boundstates import (
    infinite_well,
    make_grid,
    poschl_teller,
    radial,
    refine_root,
    scan_brackets,
    wm_characteristic,
    wm_characteristic_symmetric,
    wm_eigenfunction,
    wm_endpoint_data,
)
from boundstates.cfm import dirichlet_value
from boundstates.integrate import canonical_pair
from boundstates.wm import _count_nodes, _parity_tag, wm_value, wm_value_symmetric

PT = poschl_teller(2.5, h=0.01, x_right=5.0)
PT_WIDE = poschl_teller(2.5, h=0.01, x_right=10.0)
# same potential integrated across the whole line instead of reflecting
PT_TWO_SIDED = dataclasses.replace(PT, grid=make_grid(0.0, 0.01, 500, 500))


@pytest.mark.parametrize("energy", [3.0, 10.0, 30.0, 55.0])
def test_hard_wall_determinant_reduces_to_dirichlet(energy):
    prob = infinite_well(x0=0.25, h=0.005, energy_max=60.0)
    pair = canonical_pair(prob.potential, energy, prob.grid)
    wm = wm_value(prob, pair)
    di = dirichlet_value(prob, pair)
    assert wm.ok and di.ok
    assert wm.value == pytest.approx(di.value, rel=1e-10, abs=1e-12)


@pytest.mark.parametrize("energy", [-2.0, -1.0, -0.45])
def test_reflection_ties_left_wronskians_to_right_ones(energy):
    pair = canonical_pair(PT_TWO_SIDED.potential, energy, PT_TWO_SIDED.grid)
    assert not pair.reflected
    d = wm_endpoint_data(pair, PT_TWO_SIDED.asymptotics)
    assert d.w_lc_c == pytest.approx(-d.w_rc_c, rel=1e-9, abs=1e-12)
    assert d.w_lc_s == pytest.approx(d.w_rc_s, rel=1e-9, abs=1e-12)


@pytest.mark.parametrize("energy", [-2.0, -1.0, -0.45])
def test_full_determinant_factors_into_parity_pieces(energy):
    pair = canonical_pair(PT.potential, energy, PT.grid)
    assert pair.reflected
    full = wm_value(PT, pair).value
    even = wm_value_symmetric(PT, pair, "even").value
    odd = wm_value_symmetric(PT, pair, "odd").value
    assert full == pytest.approx(-2.0 * even * odd, rel=1e-14)
    # the same factorization holds for honest two-sided integration, up to
    # the accumulated difference between the two sweeps
    pair2 = canonical_pair(PT_TWO_SIDED.potential, energy, PT_TWO_SIDED.grid)
    full2 = wm_value(PT_TWO_SIDED, pair2).value
    even2 = wm_value_symmetric(PT_TWO_SIDED, pair2, "even").value
    odd2 = wm_value_symmetric(PT_TWO_SIDED, pair2, "odd").value
    assert full2 == pytest.approx(-2.0 * even2 * odd2, rel=1e-9)


def test_zero_energy_flags_degenerate_asymptotics():
    pair = canonical_pair(PT.potential, 0.0, PT.grid)
    ev = wm_value(PT, pair)
    assert not ev.ok
    assert ev.flag == "degenerate"
    assert math.isnan(wm_characteristic(PT)(0.0))


def test_symmetric_characteristic_rejects_bad_parity():
    with pytest.raises(ValueError):
        wm_characteristic_symmetric(PT, "both")


def test_symmetric_characteristic_needs_symmetry():
    box = infinite_well(x0=0.25, h=0.005)
    with pytest.raises(ValueError):
        wm_characteristic_symmetric(box, "even")


def _pt_root(parity):
    fn = wm_characteristic_symmetric(PT_WIDE, parity)
    brackets = [b for b in scan_brackets(fn, (-2.5, -0.01), 60) if not b.pole_suspect]
    assert len(brackets) == 1
    return refine_root(fn, brackets[0])


def test_eigenfunction_assembly_ground_state():
    res = wm_eigenfunction(PT_WIDE, _pt_root("even"))
    assert res.parity == "even"
    assert res.node_count == 0
    assert res.residual < 1e-8
    trapz = getattr(np, "trapezoid", None) or np.trapz
    assert trapz(res.psi ** 2, res.x) == pytest.approx(1.0, rel=1e-10)
    # odd contamination is bounded by the root residual, not just the tag
    assert np.allclose(res.psi, res.psi[::-1], atol=1e-7)
    assert res.psi[len(res.x) // 2] > 0
    # the left expansion anchors on its convergent member, so its divergent
    # admixture is roundoff; the right one carries the root error
    assert abs(res.b3) < 1e-6
    assert abs(res.b1) < 1e-12


def test_eigenfunction_assembly_first_excited():
    res = wm_eigenfunction(PT_WIDE, _pt_root("odd"))
    assert res.parity == "odd"
    assert res.node_count == 1
    assert np.allclose(res.psi, -res.psi[::-1], atol=1e-7)


def test_node_count_interior_crossings_only():
    x = np.linspace(0.0, math.pi, 301)
    psi = np.sin(3.0 * x)
    # wall zeros at both ends must not register; the allowed span is everything
    assert _count_nodes(psi, x, lambda xi: 0.0, 4.5) == 2


def test_node_count_ignores_crossings_outside_turning_points():
    x = np.linspace(-3.0, 3.0, 601)
    psi = np.where(np.abs(x) < 2.5, np.exp(-x * x), -1e-4)
    # a nodeless state whose far tail flips sign: v = x^2, eps = 1 puts the
    # turning points at +-1, so the flips at |x| = 2.5 are out of scope
    assert _count_nodes(psi, x, lambda xi: xi * xi, 1.0) == 0
    # counting blindly over the whole span would have seen two crossings
    live = psi[np.abs(psi) > 1e-7 * np.max(np.abs(psi))]
    assert np.count_nonzero(np.sign(live)[1:] != np.sign(live)[:-1]) == 2


def test_parity_tag_thresholds():
    assert _parity_tag(PT, 1.0, 0.0) == "even"
    assert _parity_tag(PT, 1.0, 1e-8) == "even"
    assert _parity_tag(PT, 0.0, -0.7) == "odd"
    assert _parity_tag(PT, 1.0, 0.5) == "none"
    hydrogen = radial(lambda r: -1.0 / r, l=0, h=0.01, r_max=10.0)
    assert _parity_tag(hydrogen, 1.0, 0.0) == "none"
