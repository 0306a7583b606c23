"""Container and primitive tests: grids, wronskians, problem validation."""

import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from boundstates.core import (
    ASYMPTOTIC_LIMIT,
    FINITE_INTERVAL,
    FULL_LINE,
    AsymptoticModel,
    CharacteristicFunction,
    Evaluation,
    PotentialSpec,
    Problem,
    make_grid,
    wronskian,
)

finite = st.floats(min_value=-1e6, max_value=1e6, allow_nan=False)
nonzero = finite.filter(lambda v: abs(v) > 1e-6)


@given(finite, finite, finite, finite)
def test_wronskian_antisymmetric(y1, dy1, y2, dy2):
    assert wronskian(y1, dy1, y2, dy2) == -wronskian(y2, dy2, y1, dy1)


@given(finite, finite, nonzero)
def test_wronskian_vanishes_for_proportional_pairs(y, dy, scale):
    w = wronskian(y, dy, scale * y, scale * dy)
    assert abs(w) <= 1e-9 * max(1.0, abs(scale) * (y * y + dy * dy))


@given(finite, finite, finite, finite, nonzero)
def test_wronskian_scales_linearly(y1, dy1, y2, dy2, scale):
    w = wronskian(y1, dy1, y2, dy2)
    ws = wronskian(scale * y1, scale * dy1, y2, dy2)
    # roundoff lives at the scale of the cross products, not of the
    # (possibly cancelled) result
    floor = 1e-12 * abs(scale) * (abs(y1 * dy2) + abs(dy1 * y2))
    assert ws == pytest.approx(scale * w, abs=max(floor, 1e-9))


def test_wronskian_elementwise_on_arrays():
    x = np.linspace(0.0, 1.0, 11)
    w = wronskian(np.cos(x), -np.sin(x), np.sin(x), np.cos(x))
    assert np.allclose(w, 1.0, atol=1e-15)


@given(st.integers(0, 300), st.integers(0, 300),
       st.floats(1e-4, 1.0), st.floats(-5.0, 5.0))
def test_grid_points_are_uniform(n_left, n_right, h, x0):
    if n_left + n_right < 2:
        n_right = 2
    g = make_grid(x0, h, n_left, n_right)
    pts = g.points()
    assert pts.size == g.size == n_left + n_right + 1
    assert pts[n_left] == x0
    assert g.x_left == pytest.approx(pts[0], rel=1e-12, abs=1e-12)
    assert g.x_right == pytest.approx(pts[-1], rel=1e-12, abs=1e-12)
    assert np.max(np.abs(np.diff(pts) - h)) < 1e-12 * max(1.0, abs(x0))


@pytest.mark.parametrize("h", [0.0, -0.01, math.inf, math.nan])
def test_make_grid_rejects_bad_step(h):
    with pytest.raises(ValueError):
        make_grid(0.0, h, 0, 10)


def test_make_grid_rejects_bad_counts_and_origin():
    with pytest.raises(ValueError):
        make_grid(0.0, 0.1, -1, 10)
    with pytest.raises(ValueError):
        make_grid(0.0, 0.1, 0, 1)
    with pytest.raises(ValueError):
        make_grid(math.nan, 0.1, 0, 10)


def test_potential_spec_validates_domain():
    with pytest.raises(ValueError):
        PotentialSpec(evaluate=lambda x: 0.0, domain="circle")
    with pytest.raises(ValueError):
        PotentialSpec(evaluate=lambda x: 0.0, domain=FINITE_INTERVAL)
    spec = PotentialSpec(evaluate=lambda x: 0.0, domain=FINITE_INTERVAL,
                         interval=(0.0, 1.0))
    assert spec.interval == (0.0, 1.0)


def _flat_model(requires_negative_energy=False):
    member = lambda e, x: (1.0, 0.0)
    return AsymptoticModel(member, member, member, member,
                           requires_negative_energy=requires_negative_energy)


def test_problem_validates_energy_range():
    spec = PotentialSpec(evaluate=lambda x: 0.0)
    grid = make_grid(0.0, 0.1, 10, 10)
    with pytest.raises(ValueError):
        Problem(spec, grid, _flat_model(), energy_range=(1.0, 1.0))
    with pytest.raises(ValueError):
        Problem(spec, grid, _flat_model(), energy_range=(0.0, math.inf))
    # decaying boundary members make sense only below threshold
    with pytest.raises(ValueError):
        Problem(spec, grid, _flat_model(True), energy_range=(-1.0, 0.5))
    Problem(spec, grid, _flat_model(True), energy_range=(-1.0, 0.0))


def test_problem_symmetric_needs_parity_and_centered_origin():
    spec = PotentialSpec(evaluate=lambda x: x * x, parity_invariant=True)
    model = _flat_model()
    assert Problem(spec, make_grid(0.0, 0.1, 0, 10), model, (0.0, 1.0)).symmetric
    assert not Problem(spec, make_grid(0.5, 0.1, 0, 10), model, (0.0, 1.0)).symmetric
    plain = PotentialSpec(evaluate=lambda x: x * x)
    assert not Problem(plain, make_grid(0.0, 0.1, 0, 10), model, (0.0, 1.0)).symmetric


def test_evaluation_ok_flags():
    assert Evaluation(1.5).ok
    assert not Evaluation(1.5, "pole").ok
    assert not Evaluation(math.nan).ok
    assert not Evaluation(math.inf).ok


def test_characteristic_function_call_collapses_flags_to_nan():
    fn = CharacteristicFunction(
        lambda e: Evaluation(e, "pole" if e > 0 else None), label="toy")
    assert fn(-2.0) == -2.0
    assert math.isnan(fn(3.0))
    assert fn.evaluate(3.0).flag == "pole"
    assert "toy" in repr(fn)
