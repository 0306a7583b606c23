"""Canonical-function quantization.

Instead of boundary Wronskians, this route watches the endpoint ratios of the
canonical pair: l- = C/S at the left end and l+ = C/S at the right end. Bound
states sit where F = l+ - l- vanishes. For parity invariant potentials with
x0 = 0 the two endpoint ratios collapse into one and the eigenvalues are the
roots of the plain product C(x_right) * S(x_right): the C factor carries the
even levels, the S factor the odd ones, and no ratio poles get in the way.

The saturation profile quantifies how fast each representation reaches its
large-x limit; the Wronskian ratio W(C, R_c)/W(S, R_c) and the value ratio
C/S share the limit but approach it at different rates.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import (
    ASYMPTOTIC_LIMIT,
    HARD_DIRICHLET,
    CharacteristicFunction,
    Evaluation,
    SolverError,
    wronskian,
)
from .integrate import canonical_pair

# denominators at or below this magnitude are reported as poles
POLE_FLOOR = 1e-300


def cfm_l_ratios(pair, use_derivatives=False):
    """Endpoint ratios (l-, l+) of the canonical pair.

    With use_derivatives the ratios are C'/S' instead of C/S; both converge
    to the same limit for a decaying boundary, which makes the pairing a
    cheap consistency check.

    Returns:
        Two Evaluations. A denominator below 1e-300 in magnitude yields a
        pole-flagged NaN instead of a ratio.
    """
    xl, cl, dcl, sl, dsl = pair.left_values()
    xr, cr, dcr, sr, dsr = pair.right_values()
    if use_derivatives:
        pairs = ((dcl, dsl), (dcr, dsr))
    else:
        pairs = ((cl, sl), (cr, sr))
    out = []
    for num, den in pairs:
        if abs(den) <= POLE_FLOOR:
            out.append(Evaluation(math.nan, "pole"))
        elif not (math.isfinite(num) and math.isfinite(den)):
            out.append(Evaluation(math.nan, "overflow"))
        else:
            out.append(Evaluation(num / den))
    return out[0], out[1]


def cfm_value(problem, pair):
    """CFM characteristic value from an existing canonical pair."""
    if pair.truncated_left or pair.truncated_right:
        return Evaluation(math.nan, "overflow")
    if problem.symmetric:
        _, cr, _, sr, _ = pair.right_values()
        value = cr * sr
        if not math.isfinite(value):
            return Evaluation(value, "overflow")
        return Evaluation(value)
    l_minus, l_plus = cfm_l_ratios(pair)
    if not l_minus.ok or not l_plus.ok:
        return Evaluation(math.nan, l_minus.flag or l_plus.flag)
    return Evaluation(l_plus.value - l_minus.value)


def cfm_characteristic(problem):
    """Characteristic function for the canonical-function route.

    Symmetric problems use the pole-free product form C(x_right)*S(x_right);
    everything else uses the endpoint-ratio difference l+ - l-.
    """

    def fn(energy):
        pair = canonical_pair(problem.potential, energy, problem.grid)
        return cfm_value(problem, pair)

    return CharacteristicFunction(fn, label="cfm")


def dirichlet_value(problem, pair):
    """Two-wall determinant from an existing canonical pair."""
    if pair.truncated_left or pair.truncated_right:
        return Evaluation(math.nan, "overflow")
    _, cl, _, sl, _ = pair.left_values()
    _, cr, _, sr, _ = pair.right_values()
    value = cl * sr - cr * sl
    if not math.isfinite(value):
        return Evaluation(value, "overflow")
    return Evaluation(value)


def dirichlet_determinant(problem):
    """Characteristic function C(xL) S(xR) - C(xR) S(xL) for boxed problems."""
    asym = problem.asymptotics
    if asym.left_kind != HARD_DIRICHLET or asym.right_kind != HARD_DIRICHLET:
        raise ValueError("the two-wall determinant needs hard walls on both sides")

    def fn(energy):
        pair = canonical_pair(problem.potential, energy, problem.grid)
        return dirichlet_value(problem, pair)

    return CharacteristicFunction(fn, label="dirichlet")


def box_characteristic_analytic(energy, x0):
    """Closed-form endpoint-ratio characteristic for the unit box.

    F(eps) = k sin(k) / (sin(k x0) sin(k (1 - x0))) with k = sqrt(2 eps).
    Zeros sit at k = n pi regardless of x0; the poles move with x0.

    Raises:
        ValueError: for energy <= 0 or an origin outside (0, 1).
    """
    if not 0.0 < x0 < 1.0:
        raise ValueError(f"box origin must lie strictly inside (0, 1), got {x0!r}")
    if not energy > 0.0:
        raise ValueError(f"box levels are positive; got energy {energy!r}")
    k = math.sqrt(2.0 * energy)
    s_left = math.sin(k * x0)
    s_right = math.sin(k * (1.0 - x0))
    den = s_left * s_right
    if abs(s_left) <= POLE_FLOOR or abs(s_right) <= POLE_FLOOR:
        return Evaluation(math.nan, "pole")
    return Evaluation(k * math.sin(k) / den)


@dataclass(frozen=True)
class SaturationProfile:
    """How the two endpoint-ratio representations approach their limit.

    x runs from the origin to x_right. wm_ratio is W(C, R_c)/W(S, R_c) and
    cfm_ratio is C/S, NaN where a denominator hit the pole floor. Each
    saturation_x is the smallest grid point beyond which the ratio stays
    inside tol * max(1, |limit|) of its x_right value; pole rows are ignored.
    """

    x: np.ndarray
    wm_ratio: np.ndarray
    cfm_ratio: np.ndarray
    limit_wm: float
    limit_cfm: float
    saturation_x_wm: float
    saturation_x_cfm: float
    tol: float


def _ratio_rows(num_a, den_a):
    out = np.full(len(num_a), math.nan)
    for i, (num, den) in enumerate(zip(num_a, den_a)):
        if abs(den) > POLE_FLOOR and math.isfinite(num) and math.isfinite(den):
            out[i] = num / den
    return out


def _saturation_x(x, ratio, limit, tol):
    band = tol * max(1.0, abs(limit))
    for i in range(len(ratio) - 1, -1, -1):
        if math.isfinite(ratio[i]) and abs(ratio[i] - limit) > band:
            return float(x[i + 1]) if i + 1 < len(x) else float(x[i])
    return float(x[0])


def saturation_profile(problem, energy, tol=1e-6):
    """Profile both ratio representations along the right half of the grid.

    Args:
        problem: needs a decaying (asymptotic-limit) right boundary.
        energy: evaluation energy, typically away from an eigenvalue.
        tol: relative band defining saturation (default 1e-6).

    Raises:
        SolverError: if either ratio is undefined at x_right itself.
    """
    asym = problem.asymptotics
    if asym.right_kind != ASYMPTOTIC_LIMIT:
        raise ValueError("saturation profiling needs a decaying right boundary model")
    pair = canonical_pair(problem.potential, energy, problem.grid)
    keep = pair.x >= problem.grid.x0
    x = pair.x[keep]
    c, dc = pair.c[keep], pair.dc[keep]
    s, ds = pair.s[keep], pair.ds[keep]

    rcv = np.empty(len(x))
    rcd = np.empty(len(x))
    for i, xi in enumerate(x):
        rcv[i], rcd[i] = asym.right_convergent(energy, xi)

    wm_ratio = _ratio_rows(wronskian(c, dc, rcv, rcd), wronskian(s, ds, rcv, rcd))
    cfm_ratio = _ratio_rows(c, s)

    if not (math.isfinite(wm_ratio[-1]) and math.isfinite(cfm_ratio[-1])):
        raise SolverError(f"endpoint ratio undefined at x_right for energy {energy!r}")
    limit_wm = float(wm_ratio[-1])
    limit_cfm = float(cfm_ratio[-1])
    return SaturationProfile(
        x=x, wm_ratio=wm_ratio, cfm_ratio=cfm_ratio,
        limit_wm=limit_wm, limit_cfm=limit_cfm,
        saturation_x_wm=_saturation_x(x, wm_ratio, limit_wm, tol),
        saturation_x_cfm=_saturation_x(x, cfm_ratio, limit_cfm, tol),
        tol=float(tol))
