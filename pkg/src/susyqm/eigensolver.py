"""Independent numerical oracle for bound states and band edges.

Discretizes -c^2 d^2/dx^2 + V on a uniform grid (c^2 = hbar^2/2m) with the
symmetric 3-point stencil, solves the tridiagonal eigenproblem, and sharpens
eigenvalues by Richardson extrapolation between the grid and its 2h coarsening.
Dirichlet walls, the reduced radial problem, and Bloch (periodic/antiperiodic)
sectors are all handled here; everything downstream cross-checks against this.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy.linalg import eigh, eigh_tridiagonal

from .grids import Grid, SampledFunction, count_nodes, integrate, sample


class SolverError(ValueError):
    pass


@dataclass(frozen=True)
class EigenPair:
    energy: float
    psi: SampledFunction
    nodes: int
    bound: bool = True


def _c2(hbar: float, mass2: float) -> float:
    return hbar**2 / mass2


def _dirichlet_energies(v: np.ndarray, h: float, c2: float, count: int) -> np.ndarray:
    """Lowest eigenvalues of the 3-point Dirichlet discretization (interior nodes)."""
    d = 2.0 * c2 / h**2 + v[1:-1]
    e = np.full(v.size - 3, -c2 / h**2)
    count = min(count, d.size)
    vals = eigh_tridiagonal(d, e, select="i", select_range=(0, count - 1), eigvals_only=True)
    return vals


def bound_states(
    v: SampledFunction,
    count: int,
    hbar: float = 1.0,
    mass2: float = 1.0,
    richardson: bool = True,
    check_decay: bool = True,
) -> list[EigenPair]:
    """Lowest `count` Dirichlet eigenpairs of -c^2 psi'' + V psi = E psi.

    Eigenvectors come from the fine grid; energies are Richardson-extrapolated
    against the 2h coarsening when the point count allows it. States above the
    smaller of the two edge potential values are flagged as not bound.
    """
    grid, vals = v.grid, v.values
    h = grid.h
    c2 = _c2(hbar, mass2)
    n_int = grid.n_points - 2
    if count > n_int:
        raise SolverError("more states requested than interior grid points")

    d = 2.0 * c2 / h**2 + vals[1:-1]
    e = np.full(n_int - 1, -c2 / h**2)
    energies, vecs = eigh_tridiagonal(d, e, select="i", select_range=(0, count - 1))

    if richardson and grid.n_points % 2 == 1 and grid.n_points >= 9:
        coarse = _dirichlet_energies(vals[::2], 2 * h, c2, count)
        k = min(count, coarse.size)
        energies = energies.copy()
        energies[:k] = (4.0 * energies[:k] - coarse[:k]) / 3.0

    continuum_edge = min(vals[0], vals[-1])
    pairs = []
    for i in range(count):
        psi = np.zeros(grid.n_points)
        psi[1:-1] = vecs[:, i]
        norm = integrate(SampledFunction(grid, psi**2))
        psi /= math.sqrt(norm)
        if psi[np.argmax(np.abs(psi) > 0.5 * np.max(np.abs(psi)))] < 0:
            psi = -psi
        bound = energies[i] < continuum_edge
        if check_decay and bound:
            edge_amp = max(abs(psi[1]), abs(psi[-2]))
            if edge_amp > 1e-6 * np.max(np.abs(psi)):
                warnings.warn(
                    f"state {i} has edge amplitude {edge_amp:.2e}; widen the box",
                    stacklevel=2,
                )
        pairs.append(
            EigenPair(float(energies[i]), SampledFunction(grid, psi), count_nodes(psi[1:-1]), bound)
        )
    return pairs


def bound_states_of(
    v_callable,
    x_min: float,
    x_max: float,
    count: int,
    n_points: int = 4001,
    hbar: float = 1.0,
    mass2: float = 1.0,
    **kw,
) -> list[EigenPair]:
    """Convenience wrapper: sample a callable potential, then solve."""
    return bound_states(
        sample(v_callable, Grid(x_min, x_max, n_points)), count, hbar, mass2, **kw
    )


def radial_bound_states(
    v_radial,
    l: int,
    count: int,
    r_max: float,
    n_points: int = 4001,
    hbar: float = 1.0,
    mass2: float = 1.0,
) -> list[EigenPair]:
    """Reduced radial problem: effective potential V(r) + c^2 l(l+1)/r^2.

    Dirichlet wall exactly at r = 0 (correct for the reduced wave function,
    which vanishes as r^{l+1}); the singular node at the origin never enters
    the interior stencil and carries a sentinel value.
    """
    c2 = _c2(hbar, mass2)
    grid = Grid(0.0, r_max, n_points)
    r = grid.points.copy()
    r[0] = r[1]  # sentinel; the origin value is outside the Dirichlet stencil
    veff = np.asarray(v_radial(r), dtype=float) + c2 * l * (l + 1) / r**2
    return bound_states(
        SampledFunction(grid, veff), count, hbar, mass2, check_decay=False
    )


def band_solve(
    v: SampledFunction,
    kL: float,
    count: int,
    hbar: float = 1.0,
    mass2: float = 1.0,
    richardson: bool = True,
) -> list[EigenPair]:
    """Lowest `count` levels over one period with Bloch phase kL in {0, pi}.

    The sampled potential covers one full period including both endpoints
    (values[0] == values[-1]); the right endpoint is dropped and the hopping
    wraps around with sign +1 (periodic) or -1 (antiperiodic).
    """
    if not (abs(kL) < 1e-12 or abs(kL - math.pi) < 1e-12):
        raise SolverError("band edges live at Bloch phase 0 or pi only")
    sign = 1.0 if abs(kL) < 1e-12 else -1.0
    grid = v.grid
    if abs(v.values[0] - v.values[-1]) > 1e-8 * (1 + abs(v.values[0])):
        raise SolverError("potential samples are not periodic over the window")

    def sector_energies(vals: np.ndarray, h: float, want_vecs: bool):
        n = vals.size - 1  # unique points
        c2 = _c2(hbar, mass2)
        H = np.zeros((n, n))
        i = np.arange(n)
        H[i, i] = 2.0 * c2 / h**2 + vals[:-1]
        H[i[:-1], i[:-1] + 1] = -c2 / h**2
        H[i[:-1] + 1, i[:-1]] = -c2 / h**2
        H[0, n - 1] += -sign * c2 / h**2
        H[n - 1, 0] += -sign * c2 / h**2
        if want_vecs:
            return eigh(H, subset_by_index=(0, count - 1))
        return eigh(H, subset_by_index=(0, count - 1), eigvals_only=True)

    energies, vecs = sector_energies(v.values, grid.h, True)
    if richardson and (grid.n_points - 1) % 2 == 0 and grid.n_points >= 9:
        coarse = sector_energies(v.values[::2], 2 * grid.h, False)
        energies = (4.0 * energies - coarse) / 3.0

    pairs = []
    for i in range(count):
        psi = np.append(vecs[:, i], sign * vecs[0, i])
        norm = integrate(SampledFunction(grid, psi**2))
        psi /= math.sqrt(norm)
        pairs.append(
            EigenPair(
                float(energies[i]),
                SampledFunction(grid, psi),
                _cyclic_nodes(vecs[:, i], sign),
                True,
            )
        )
    return pairs


def _cyclic_nodes(psi: np.ndarray, sign: float) -> int:
    """Sign changes per period, closing the loop with the Bloch sign.

    The state is unrolled over two periods (antiperiodic states become
    periodic), sign changes are counted cyclically, and the total is halved;
    this counts nodes sitting exactly on the sample boundary correctly.
    """
    doubled = np.concatenate([psi, sign * psi])
    floor = 1e-8 * np.max(np.abs(doubled))
    sig = doubled[np.abs(doubled) > floor]
    if sig.size < 2:
        return 0
    closed = np.append(sig, sig[0])
    flips = int(np.sum(np.signbit(closed[:-1]) != np.signbit(closed[1:])))
    return flips // 2
