"""Shared types and primitives for the bound-state solvers.

Everything downstream (the integrator, the two characteristic methods, root
finding) speaks in terms of the containers defined here: a uniform grid with
a distinguished origin, a potential plus the facts the solvers need about it,
reference solutions at the boundaries, and the assembled problem.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

FULL_LINE = "full-line"
HALF_LINE = "half-line"
FINITE_INTERVAL = "finite-interval"

ASYMPTOTIC_LIMIT = "asymptotic-limit"
HARD_DIRICHLET = "hard-dirichlet"

# (energy, x) -> (value, derivative) of one boundary reference solution
BoundaryFunc = Callable[[float, float], tuple[float, float]]


class SolverError(Exception):
    """Base class for solver failures."""


class DegenerateAsymptoticsError(SolverError):
    """The boundary reference pair lost linear independence at an endpoint."""


class DegenerateRootError(SolverError):
    """No usable nullspace direction exists at a claimed root."""


class RefinementError(SolverError):
    """Bracket refinement did not converge; carries the best bracket."""

    def __init__(self, message, lo=None, hi=None):
        super().__init__(message)
        self.lo = lo
        self.hi = hi


def wronskian(y1, dy1, y2, dy2):
    """W(y1, y2) = y1*y2' - y2*y1'. Works elementwise on arrays."""
    return y1 * dy2 - y2 * dy1


@dataclass(frozen=True)
class Grid:
    """Uniform grid around the integration origin.

    Points are x0 + j*h for j in [-n_left, n_right]. The origin is always a
    grid point; the canonical solutions carry their initial data there.
    """

    x0: float
    h: float
    n_left: int
    n_right: int

    @property
    def x_left(self):
        return self.x0 - self.n_left * self.h

    @property
    def x_right(self):
        return self.x0 + self.n_right * self.h

    @property
    def size(self):
        return self.n_left + self.n_right + 1

    def points(self):
        j = np.arange(-self.n_left, self.n_right + 1)
        return self.x0 + j * self.h


def make_grid(x0, h, n_left, n_right):
    """Validated Grid constructor.

    Args:
        x0: origin, must be finite.
        h: step, positive and finite.
        n_left: steps taken leftward from the origin (>= 0).
        n_right: steps taken rightward from the origin (>= 0).

    Raises:
        ValueError: on a nonpositive step, negative counts, or a grid with
            fewer than two steps of total extent.
    """
    if not (h > 0.0 and math.isfinite(h)):
        raise ValueError(f"grid step must be positive and finite, got {h!r}")
    if not math.isfinite(x0):
        raise ValueError(f"grid origin must be finite, got {x0!r}")
    n_left = int(n_left)
    n_right = int(n_right)
    if n_left < 0 or n_right < 0:
        raise ValueError("grid point counts must be nonnegative")
    if n_left + n_right < 2:
        raise ValueError("grid needs at least two steps of total extent")
    return Grid(float(x0), float(h), n_left, n_right)


@dataclass(frozen=True)
class PotentialSpec:
    """A potential plus the facts the solvers need about it.

    Attributes:
        evaluate: v(x), finite on the solver grid.
        domain: FULL_LINE, HALF_LINE, or FINITE_INTERVAL.
        interval: wall positions (x1, x2); FINITE_INTERVAL only.
        parity_invariant: True when v(-x) == v(x). Enables the symmetric
            shortcuts (rightward-only integration, even/odd splitting).
        parameters: named parameters, echoed into output headers.
        name: short label for reports.
    """

    evaluate: Callable[[float], float]
    domain: str = FULL_LINE
    interval: tuple[float, float] | None = None
    parity_invariant: bool = False
    parameters: dict = field(default_factory=dict)
    name: str = "custom"

    def __post_init__(self):
        if self.domain not in (FULL_LINE, HALF_LINE, FINITE_INTERVAL):
            raise ValueError(f"unknown domain kind {self.domain!r}")
        if self.domain == FINITE_INTERVAL and self.interval is None:
            raise ValueError("finite-interval potentials need wall positions")


@dataclass(frozen=True)
class AsymptoticModel:
    """Reference solutions at the two boundaries.

    Each member maps (energy, x) to (value, derivative). The convergent member
    decays toward its boundary (vanishes on a hard wall); the divergent one
    grows there (stays finite on a wall). The pair on each side must remain
    linearly independent over the problem's energy range.
    """

    left_convergent: BoundaryFunc
    left_divergent: BoundaryFunc
    right_convergent: BoundaryFunc
    right_divergent: BoundaryFunc
    left_kind: str = ASYMPTOTIC_LIMIT
    right_kind: str = ASYMPTOTIC_LIMIT
    requires_negative_energy: bool = False


@dataclass(frozen=True)
class Problem:
    """A fully specified eigenproblem.

    energy_range is the default scan window; exact_spectrum, when present,
    maps (lo, hi) to the closed-form levels inside that window.
    """

    potential: PotentialSpec
    grid: Grid
    asymptotics: AsymptoticModel
    energy_range: tuple[float, float]
    exact_spectrum: Callable[[float, float], list] | None = None
    name: str = ""

    def __post_init__(self):
        lo, hi = self.energy_range
        if not (math.isfinite(lo) and math.isfinite(hi) and lo < hi):
            raise ValueError(f"energy range must be a finite ordered pair, got {self.energy_range!r}")
        if self.asymptotics.requires_negative_energy and hi > 0.0:
            raise ValueError("decaying boundary models only hold for energies below 0; cap the range there")

    @property
    def symmetric(self):
        """True when the even/odd machinery applies."""
        return self.potential.parity_invariant and self.grid.x0 == 0.0


@dataclass(frozen=True)
class Evaluation:
    """A characteristic-function value with an optional trouble flag.

    flag is None for a clean value, else one of "pole", "overflow",
    "degenerate". Flagged evaluations are skipped by the bracket scanner.
    """

    value: float
    flag: str | None = None

    @property
    def ok(self):
        return self.flag is None and math.isfinite(self.value)


class CharacteristicFunction:
    """Callable whose zeros are the eigenvalues.

    evaluate() returns the flagged form; plain calls collapse flagged
    evaluations to NaN.
    """

    def __init__(self, fn, label=""):
        self._fn = fn
        self.label = label

    def evaluate(self, energy):
        return self._fn(float(energy))

    def __call__(self, energy):
        ev = self.evaluate(energy)
        return ev.value if ev.ok else math.nan

    def __repr__(self):
        return f"CharacteristicFunction({self.label!r})"


@dataclass(frozen=True)
class EigenResult:
    """One bound state.

    psi = a2*C + b2*S on the sampled points, normalized to unit L2 norm.
    b1 and b3 are the divergent-member admixtures extracted at the left and
    right boundary; at a well-converged root both sit near zero. residual is
    a scale-free smallness measure of the quantization condition at the
    accepted energy (normalized boundary determinant or endpoint-ratio gap).
    """

    energy: float
    index: int
    parity: str
    residual: float
    node_count: int
    x: np.ndarray
    psi: np.ndarray
    dpsi: np.ndarray
    a2: float
    b2: float
    b1: float
    b3: float
