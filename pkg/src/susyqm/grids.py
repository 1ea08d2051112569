"""Uniform grids, sampled functions, quadrature, derivatives and root bracketing.

Everything here is deliberately plain: uniform grids only, composite Simpson
quadrature, 4th-order central finite differences, and bisection. These are the
shared numerical primitives the rest of the toolkit builds on.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import cumulative_simpson


class GridError(ValueError):
    """Invalid grid or sampled-function construction."""


class BracketError(ValueError):
    """Root bracket does not actually bracket a sign change."""


@dataclass(frozen=True)
class Grid:
    """Uniform 1D grid on [x_min, x_max] with n_points nodes (endpoints included)."""

    x_min: float
    x_max: float
    n_points: int

    def __post_init__(self):
        if self.n_points < 3:
            raise GridError(f"need at least 3 points, got {self.n_points}")
        if not (np.isfinite(self.x_min) and np.isfinite(self.x_max)):
            raise GridError("grid endpoints must be finite")
        if self.x_max <= self.x_min:
            raise GridError(f"x_max must exceed x_min ({self.x_min}, {self.x_max})")

    @property
    def h(self) -> float:
        return (self.x_max - self.x_min) / (self.n_points - 1)

    @property
    def points(self) -> np.ndarray:
        return np.linspace(self.x_min, self.x_max, self.n_points)

    def refine(self, factor: int = 2) -> "Grid":
        """Grid with the same endpoints and (n-1)*factor + 1 points."""
        return Grid(self.x_min, self.x_max, (self.n_points - 1) * factor + 1)

    def coarsen(self) -> "Grid":
        """Grid using every other point; requires an odd point count."""
        if self.n_points % 2 == 0:
            raise GridError("coarsening needs an odd point count")
        return Grid(self.x_min, self.x_max, (self.n_points - 1) // 2 + 1)


@dataclass(frozen=True)
class SampledFunction:
    """Function values on a uniform grid. Values must be finite everywhere."""

    grid: Grid
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        v = np.asarray(self.values)
        if v.shape != (self.grid.n_points,):
            raise GridError(
                f"value array of length {v.shape} does not match grid "
                f"with {self.grid.n_points} points"
            )
        if not np.all(np.isfinite(v)):
            raise GridError("sampled values contain NaN/Inf")
        object.__setattr__(self, "values", v)

    @property
    def x(self) -> np.ndarray:
        return self.grid.points

    def map(self, fn) -> "SampledFunction":
        return SampledFunction(self.grid, fn(self.values))


def sample(fn, grid: Grid) -> SampledFunction:
    """Sample a callable on a grid."""
    return SampledFunction(grid, np.asarray(fn(grid.points), dtype=float))


@dataclass(frozen=True)
class Bracket:
    """Sign-change interval for root finding: f(lo) and f(hi) have opposite signs."""

    lo: float
    hi: float
    f_lo: float
    f_hi: float

    def __post_init__(self):
        if not self.lo < self.hi:
            raise BracketError(f"need lo < hi, got [{self.lo}, {self.hi}]")
        if self.f_lo * self.f_hi > 0:
            raise BracketError(
                f"no sign change: f({self.lo})={self.f_lo}, f({self.hi})={self.f_hi}"
            )


def simpson_weights(n: int, h: float) -> np.ndarray:
    """Composite Simpson weights; even point counts get a trapezoid tail."""
    if n < 3:
        raise GridError("quadrature needs at least 3 points")
    w = np.zeros(n)
    m = n if n % 2 == 1 else n - 1
    w[0:m] = 2.0
    w[1:m:2] = 4.0
    w[0] = w[m - 1] = 1.0
    w *= h / 3.0
    if n % 2 == 0:
        w[-2] += h / 2.0
        w[-1] += h / 2.0
    return w


def integrate(f: SampledFunction) -> float:
    """Composite Simpson integral of a sampled function."""
    return float(simpson_weights(f.grid.n_points, f.grid.h) @ f.values)


def cumulative_integral(f: SampledFunction) -> SampledFunction:
    """Running integral from x_min, Simpson-based, zero at the left edge."""
    vals = cumulative_simpson(f.values, dx=f.grid.h, initial=0.0)
    return SampledFunction(f.grid, vals)


def derivative(f: SampledFunction) -> SampledFunction:
    """First derivative: 4th-order central stencil, lower order near the edges."""
    v, h, n = f.values, f.grid.h, f.grid.n_points
    d = np.empty_like(v)
    if n >= 5:
        d[2:-2] = (v[:-4] - 8 * v[1:-3] + 8 * v[3:-1] - v[4:]) / (12 * h)
        d[1] = (v[2] - v[0]) / (2 * h)
        d[-2] = (v[-1] - v[-3]) / (2 * h)
        d[0] = (-3 * v[0] + 4 * v[1] - v[2]) / (2 * h)
        d[-1] = (3 * v[-1] - 4 * v[-2] + v[-3]) / (2 * h)
    else:
        d[1:-1] = (v[2:] - v[:-2]) / (2 * h)
        d[0] = (v[1] - v[0]) / h
        d[-1] = (v[-1] - v[-2]) / h
    return SampledFunction(f.grid, d)


def second_derivative(f: SampledFunction) -> SampledFunction:
    """Second derivative via the standard 3-point stencil."""
    v, h = f.values, f.grid.h
    d = np.empty_like(v)
    d[1:-1] = (v[2:] - 2 * v[1:-1] + v[:-2]) / h**2
    d[0] = d[1]
    d[-1] = d[-2]
    return SampledFunction(f.grid, d)


def bisect_root(f, bracket: Bracket, tol: float = 1e-12) -> float:
    """Deterministic bisection down to bracket width <= tol."""
    lo, hi, f_lo = bracket.lo, bracket.hi, bracket.f_lo
    if f_lo == 0.0:
        return lo
    if bracket.f_hi == 0.0:
        return hi
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        f_mid = f(mid)
        if not np.isfinite(f_mid):
            raise BracketError(f"f({mid}) is not finite during bisection")
        if f_mid == 0.0:
            return mid
        if f_lo * f_mid < 0:
            hi = mid
        else:
            lo, f_lo = mid, f_mid
    return 0.5 * (lo + hi)


def find_bracket(f, lo: float, hi: float, n_scan: int = 256) -> Bracket:
    """Scan [lo, hi] for the first sign change of f and return it as a Bracket."""
    xs = np.linspace(lo, hi, n_scan + 1)
    prev_x, prev_f = xs[0], f(xs[0])
    for x in xs[1:]:
        fx = f(x)
        if prev_f * fx <= 0:
            return Bracket(prev_x, x, prev_f, fx)
        prev_x, prev_f = x, fx
    raise BracketError(f"no sign change of f on [{lo}, {hi}]")


def count_nodes(values: np.ndarray, rel_floor: float = 1e-8) -> int:
    """Interior sign changes, ignoring amplitudes below rel_floor * max|values|."""
    v = np.asarray(values)
    floor = rel_floor * np.max(np.abs(v))
    sig = v[np.abs(v) > floor]
    if sig.size < 2:
        return 0
    return int(np.sum(np.signbit(sig[:-1]) != np.signbit(sig[1:])))
