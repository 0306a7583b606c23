"""Canonical-pair integration.

Classical fixed-step RK4 on the first-order form of phi'' = 2(v - eps) phi.
The two canonical solutions C (start 1, 0) and S (start 0, 1) are marched in
one sweep so the potential is evaluated once per step for both. Growth beyond
the overflow cap truncates the sweep and flags the result instead of raising.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import Grid

DEFAULT_CAP = 1e280


@dataclass
class Propagation:
    """Samples of a single solution, in traversal order from the origin."""

    x: np.ndarray
    y: np.ndarray
    dy: np.ndarray
    truncated: bool


def _march(v, energy, x_start, h, n_steps, starts, cap):
    # h carries the direction sign; starts is a list of (y, p) tuples.
    # Plain-float inner loop: this is the hot path for every characteristic
    # evaluation, so everything stays out of numpy until storage.
    ncol = len(starts)
    ys = [np.empty(n_steps + 1) for _ in range(ncol)]
    ps = [np.empty(n_steps + 1) for _ in range(ncol)]
    state = []
    for i, (y0, p0) in enumerate(starts):
        ys[i][0] = y0
        ps[i][0] = p0
        state.append((float(y0), float(p0)))
    e2 = 2.0 * float(energy)
    h2 = h * 0.5
    h6 = h / 6.0
    g2 = 2.0 * v(x_start) - e2
    stored = 1
    truncated = False
    for j in range(n_steps):
        g0 = g2
        xj = x_start + j * h
        g1 = 2.0 * v(xj + h2) - e2
        g2 = 2.0 * v(x_start + (j + 1) * h) - e2
        new = []
        ok = True
        for y, p in state:
            k1p = g0 * y
            k2y = p + h2 * k1p
            k2p = g1 * (y + h2 * p)
            k3y = p + h2 * k2p
            k3p = g1 * (y + h2 * k2y)
            k4y = p + h * k3p
            k4p = g2 * (y + h * k3y)
            y = y + h6 * (p + 2.0 * (k2y + k3y) + k4y)
            p = p + h6 * (k1p + 2.0 * (k2p + k3p) + k4p)
            new.append((y, p))
            if not (abs(y) <= cap and abs(p) <= cap):
                ok = False
        if not ok:
            truncated = True
            break
        state = new
        for i, (y, p) in enumerate(new):
            ys[i][stored] = y
            ps[i][stored] = p
        stored += 1
    cols = [(ys[i][:stored], ps[i][:stored]) for i in range(ncol)]
    return cols, stored, truncated


def propagate(potential, energy, grid, start_value, start_slope, direction, cap=DEFAULT_CAP):
    """Integrate one solution outward from grid.x0.

    Args:
        potential: PotentialSpec (only .evaluate is used).
        energy: eps in phi'' = 2(v - eps) phi.
        grid: Grid; the sweep covers the grid points on the chosen side.
        start_value, start_slope: initial data at grid.x0.
        direction: "rightward" or "leftward".
        cap: magnitude bound; exceeding it stops the sweep with truncated=True.

    Returns:
        Propagation with samples in traversal order (origin first).
    """
    if direction == "rightward":
        n, h = grid.n_right, grid.h
    elif direction == "leftward":
        n, h = grid.n_left, -grid.h
    else:
        raise ValueError(f"direction must be 'rightward' or 'leftward', got {direction!r}")
    cols, stored, truncated = _march(
        potential.evaluate, energy, grid.x0, h, n, [(start_value, start_slope)], cap)
    x = grid.x0 + h * np.arange(stored)
    y, dy = cols[0]
    return Propagation(x=x, y=y, dy=dy, truncated=truncated)


@dataclass
class CanonicalPair:
    """The canonical solutions C and S sampled over one grid.

    Arrays are grid ordered over the points actually reached. For a parity
    invariant potential on a right-half grid (x0 = 0, n_left = 0) the pair is
    built rightward only and `reflected` is set; the left-end accessors then
    apply C(-x) = C(x), S(-x) = -S(x).
    """

    grid: Grid
    energy: float
    x: np.ndarray
    c: np.ndarray
    dc: np.ndarray
    s: np.ndarray
    ds: np.ndarray
    truncated_left: bool
    truncated_right: bool
    reflected: bool

    def right_values(self):
        """(x, C, C', S, S') at the rightmost reached point."""
        i = len(self.x) - 1
        return self.x[i], self.c[i], self.dc[i], self.s[i], self.ds[i]

    def left_values(self):
        """(x, C, C', S, S') at the leftmost reached logical point."""
        if self.reflected:
            xr, c, dc, s, ds = self.right_values()
            return -xr, c, -dc, -s, ds
        return self.x[0], self.c[0], self.dc[0], self.s[0], self.ds[0]

    def full_line(self):
        """Grid-ordered (x, C, C', S, S') over the full logical domain."""
        if not self.reflected:
            return self.x, self.c, self.dc, self.s, self.ds
        x = np.concatenate([-self.x[:0:-1], self.x])
        c = np.concatenate([self.c[:0:-1], self.c])
        dc = np.concatenate([-self.dc[:0:-1], self.dc])
        s = np.concatenate([-self.s[:0:-1], self.s])
        ds = np.concatenate([self.ds[:0:-1], self.ds])
        return x, c, dc, s, ds

    def rescaled(self, factor):
        """Same pair with both solutions scaled by a constant."""
        factor = float(factor)
        return CanonicalPair(
            self.grid, self.energy, self.x,
            self.c * factor, self.dc * factor,
            self.s * factor, self.ds * factor,
            self.truncated_left, self.truncated_right, self.reflected)


def canonical_pair(potential, energy, grid, cap=DEFAULT_CAP):
    """Build the canonical pair for one energy.

    Both solutions share each sweep's potential evaluations. When the
    potential is parity invariant and the grid is the right half line from
    x0 = 0, only the rightward sweep runs and the pair is marked reflected.
    """
    starts = [(1.0, 0.0), (0.0, 1.0)]
    right_cols, nr, trunc_r = _march(
        potential.evaluate, energy, grid.x0, grid.h, grid.n_right, starts, cap)
    (cr, dcr), (sr, dsr) = right_cols
    if grid.n_left == 0:
        reflected = potential.parity_invariant and grid.x0 == 0.0
        x = grid.x0 + grid.h * np.arange(nr)
        return CanonicalPair(grid, float(energy), x, cr, dcr, sr, dsr,
                             truncated_left=trunc_r if reflected else False,
                             truncated_right=trunc_r, reflected=reflected)
    left_cols, nl, trunc_l = _march(
        potential.evaluate, energy, grid.x0, -grid.h, grid.n_left, starts, cap)
    (cl, dcl), (sl, dsl) = left_cols
    x = np.concatenate([(grid.x0 - grid.h * np.arange(nl))[:0:-1],
                        grid.x0 + grid.h * np.arange(nr)])

    def stitch(left, right):
        return np.concatenate([left[:0:-1], right])

    return CanonicalPair(grid, float(energy), x,
                         stitch(cl, cr), stitch(dcl, dcr),
                         stitch(sl, sr), stitch(dsl, dsr),
                         truncated_left=trunc_l, truncated_right=trunc_r,
                         reflected=False)
