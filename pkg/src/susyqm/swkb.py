"""Semiclassical quantizers: ordinary WKB and the SUSY-inspired SWKB rule.

For a single-well profile U(x) (U = V for WKB, U = W^2 for SWKB) the action
    S(E) = int_a^b sqrt(2m (E - U)) dx,   U(a) = U(b) = E,
is monotone in E and the quantization targets are
    WKB:      S = (n + 1/2) pi hbar,
    SWKB V1:  S = n pi hbar,
    SWKB V2:  S = (n + 1) pi hbar.
The inverse-square-root endpoint singularity is removed by the substitution
x = mid + halfwidth * sin(theta), after which Gauss-Legendre quadrature
converges spectrally. SWKB reproduces the exact spectrum for every
shape-invariant entry; ordinary WKB is exact only for the oscillator and
Morse wells.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Optional

import numpy as np
from scipy.optimize import minimize_scalar

from .catalog import SipEntry, numeric_grid
from .core import Superpotential
from .grids import Bracket, bisect_root, find_bracket


class QuantizeError(ValueError):
    pass


class Mode(Enum):
    WKB = "wkb"
    SWKB_V1 = "swkb_v1"
    SWKB_V2 = "swkb_v2"


@dataclass(frozen=True)
class QuantizationProblem:
    """A semiclassical level problem on a finite search window.

    profile is V(x) for WKB and W(x) for the SWKB modes; the well that enters
    the action is V or W^2 accordingly. window must contain both turning
    points for every energy of interest.
    """

    mode: Mode
    profile: Callable[[np.ndarray], np.ndarray]
    window: tuple[float, float]
    hbar: float = 1.0
    mass2: float = 1.0

    def well(self, x):
        u = np.asarray(self.profile(np.asarray(x, dtype=float)), dtype=float)
        return u if self.mode is Mode.WKB else u**2

    def target(self, n: int) -> float:
        if n < 0:
            raise QuantizeError("level index must be non-negative")
        offset = {Mode.WKB: 0.5, Mode.SWKB_V1: 0.0, Mode.SWKB_V2: 1.0}[self.mode]
        return (n + offset) * math.pi * self.hbar


def turning_points(
    problem: QuantizationProblem, energy: float, n_scan: int = 4000
) -> tuple[float, float]:
    """The two roots of E - U(x) on the window, bisected to 1e-12."""
    lo, hi = problem.window
    xs = np.linspace(lo, hi, n_scan + 1)
    f = energy - problem.well(xs)
    s = np.sign(f)
    roots = []
    for i in range(n_scan):
        if s[i] == 0.0:
            roots.append(xs[i])  # root exactly on a scan node
        elif s[i] * s[i + 1] < 0:
            br = Bracket(xs[i], xs[i + 1], f[i], f[i + 1])
            roots.append(bisect_root(lambda x: energy - problem.well(x), br, tol=1e-13))
    if s[-1] == 0.0:
        roots.append(xs[-1])
    if len(roots) != 2:
        raise QuantizeError(
            f"expected exactly 2 turning points at E={energy}, found {len(roots)}"
        )
    return roots[0], roots[1]


def action_integral(
    problem: QuantizationProblem, energy: float, n_quad: int = 256
) -> float:
    """S(E) = int_a^b sqrt(2m (E - U)) dx with singularity-free quadrature."""
    well_min = float(np.min(problem.well(np.linspace(*problem.window, 4001))))
    if energy <= well_min + 1e-14 * max(1.0, abs(well_min)):
        return 0.0
    a, b = turning_points(problem, energy)
    mid, halfw = 0.5 * (a + b), 0.5 * (b - a)
    theta, wts = np.polynomial.legendre.leggauss(n_quad)
    theta = 0.5 * math.pi * theta
    wts = 0.5 * math.pi * wts
    x = mid + halfw * np.sin(theta)
    integrand = problem.mass2 * (energy - problem.well(x))
    integrand = np.sqrt(np.maximum(integrand, 0.0)) * halfw * np.cos(theta)
    return float(wts @ integrand)


def boundary_phase(problem: QuantizationProblem, energy: float) -> float:
    """The arcsin boundary term of the O(hbar) correction for SWKB modes.

    (hbar/2) [arcsin(W/sqrt(E))] from a to b; equals hbar*pi/2 exactly when
    W has opposite signs at the turning points (unbroken SUSY).
    """
    if problem.mode is Mode.WKB:
        raise QuantizeError("the boundary phase belongs to the SWKB modes")
    a, b = turning_points(problem, energy)
    s = math.sqrt(energy)
    wa = float(problem.profile(np.array(a)))
    wb = float(problem.profile(np.array(b)))
    clip = lambda z: min(1.0, max(-1.0, z / s))
    return 0.5 * problem.hbar * (math.asin(clip(wb)) - math.asin(clip(wa)))


def quantize(
    problem: QuantizationProblem,
    n: int,
    e_hint: Optional[tuple[float, float]] = None,
    tol: float = 1e-10,
) -> float:
    """Energy of level n: root of S(E) = target by bisection in E.

    e_hint optionally brackets the level; otherwise the bracket grows
    geometrically from just above the well minimum.
    """
    target = problem.target(n)
    xs = np.linspace(*problem.window, 4001)
    wvals = problem.well(xs)
    well_min = float(np.min(wvals))
    edge = float(min(wvals[0], wvals[-1]))
    if target == 0.0:
        # ground level of the SWKB V1 rule: coincident turning points at min W^2
        i = int(np.argmin(wvals))
        lo_b = xs[max(i - 1, 0)]
        hi_b = xs[min(i + 1, xs.size - 1)]
        res = minimize_scalar(
            lambda x: float(problem.well(x)),
            bounds=(lo_b, hi_b),
            method="bounded",
            options={"xatol": 1e-13},
        )
        return min(well_min, float(res.fun))

    def f(e):
        return action_integral(problem, e) - target

    if e_hint is not None:
        lo, hi = e_hint
    else:
        lo = well_min
        cap = edge - 1e-9 * max(1.0, abs(edge))
        hi = min(well_min + max(1.0, abs(well_min)), cap)
        while f(hi) < 0:
            if hi >= cap:
                raise QuantizeError(f"level n={n} lies above the continuum edge {edge}")
            hi = min(well_min + 2.0 * (hi - well_min), cap)
    br = Bracket(lo, hi, f(lo) if lo > well_min else -target, f(hi))
    return bisect_root(f, br, tol=tol)


@dataclass(frozen=True)
class AuditRow:
    entry: str
    mode: str
    n: int
    e_exact: float
    e_semiclassical: float

    @property
    def error(self) -> float:
        return abs(self.e_semiclassical - self.e_exact)

    @property
    def exact(self) -> bool:
        return self.error <= 1e-7 * max(1.0, abs(self.e_exact))


# entries whose full-line V1 is a textbook single well where plain WKB applies
WKB_APPLICABLE = {"shifted_oscillator", "morse"}


def problem_for_entry(
    entry: SipEntry, mode: Mode = Mode.SWKB_V1, n_points: int = 2001
) -> QuantizationProblem:
    """SWKB/WKB problem on the entry's working window."""
    g = numeric_grid(entry, n_points)
    w = entry.superpotential()
    profile = w.w if mode is not Mode.WKB else (lambda x: w.v1(x))
    return QuantizationProblem(
        mode=mode, profile=profile, window=(g.x_min, g.x_max), hbar=w.hbar, mass2=w.mass2
    )


def exactness_audit(
    entries: list[SipEntry], n_max: int = 5, include_wkb: bool = True
) -> list[AuditRow]:
    """Per-entry, per-level comparison of SWKB (and WKB where sensible) to E_n."""
    from .catalog import sip_spectrum

    rows = []
    for entry in entries:
        spec, _ = sip_spectrum(entry, n_max)
        prob = problem_for_entry(entry, Mode.SWKB_V1)
        prev = 0.0
        for n, e_exact in enumerate(spec):
            hint = None if n == 0 else (prev + 1e-12, 2.0 * e_exact - prev + 1.0)
            e = quantize(prob, n, e_hint=None)
            rows.append(AuditRow(entry.name, "swkb", n, e_exact, e))
            prev = e
        if include_wkb and entry.name in WKB_APPLICABLE:
            prob_w = problem_for_entry(entry, Mode.WKB)
            for n, e_exact in enumerate(spec):
                e = quantize(prob_w, n)
                rows.append(AuditRow(entry.name, "wkb", n, e_exact, e))
    return rows
