"""Reflection/transmission amplitudes and their partner relations.

For a superpotential with finite asymptotes W(-inf) = W-, W(+inf) = W+, the
partner potentials share the continuum above max(W-^2, W+^2) and their
amplitudes are related by pure phase factors:
    R1 = (W- + i k) / (W- - i k) * R2,
    T1 = (W+ - i k') / (W- - i k) * T2,
with k = sqrt(E - W-^2), k' = sqrt(E - W+^2). Repeated use along a chain
ending at the free particle produces closed-form amplitudes, e.g. the
reflectionless sech^2 family.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .core import Superpotential


class ScatterError(ValueError):
    pass


@dataclass(frozen=True)
class ScatterAmplitudes:
    """Amplitudes at energy E for a two-sided scattering problem.

    Conventions: unit flux comes in from the left; r multiplies the reflected
    wave e^{-ikx}, t the transmitted wave e^{ik'x}. Flux conservation reads
    |r|^2 + (k'/k) |t|^2 = 1.
    """

    energy: float
    k_in: float
    k_out: float
    r: complex
    t: complex

    @property
    def reflection_probability(self) -> float:
        return abs(self.r) ** 2

    @property
    def transmission_probability(self) -> float:
        return (self.k_out / self.k_in) * abs(self.t) ** 2

    @property
    def flux_defect(self) -> float:
        return abs(self.reflection_probability + self.transmission_probability - 1.0)


def _asymptotes(w: Superpotential) -> tuple[float, float]:
    if w.w_minus is None or w.w_plus is None:
        raise ScatterError("scattering needs finite superpotential asymptotes")
    return float(w.w_minus), float(w.w_plus)


def channel_momenta(w: Superpotential, energy: float) -> tuple[float, float]:
    """Asymptotic momenta k (left) and k' (right) above both thresholds."""
    wm, wp = _asymptotes(w)
    c2 = w.c**2
    if energy <= max(wm**2, wp**2):
        raise ScatterError(
            f"energy {energy} is below the continuum threshold "
            f"max({wm**2:.6g}, {wp**2:.6g})"
        )
    return math.sqrt((energy - wm**2) / c2), math.sqrt((energy - wp**2) / c2)


def partner_rt(
    w: Superpotential, energy: float, r2: complex, t2: complex
) -> tuple[complex, complex]:
    """Map the partner's amplitudes (R2, T2) to the V1 side at fixed energy."""
    wm, wp = _asymptotes(w)
    k, kp = channel_momenta(w, energy)
    c = w.c
    r1 = (wm + 1j * c * k) / (wm - 1j * c * k) * r2
    t1 = (wp - 1j * c * kp) / (wm - 1j * c * k) * t2
    return r1, t1


def partner_phase_shift(w: Superpotential, energy: float, delta2: float) -> float:
    """Half-line relation: e^{2i delta1} = (W+ - ik')/(W+ + ik') e^{2i delta2}."""
    wm, wp = _asymptotes(w)
    _ = wm
    c2 = w.c**2
    if energy <= wp**2:
        raise ScatterError("energy below the half-line threshold")
    kp = math.sqrt((energy - wp**2) / c2)
    factor = (wp - 1j * w.c * kp) / (wp + 1j * w.c * kp)
    s1 = factor * cmath.exp(2j * delta2)
    return 0.5 * cmath.phase(s1)


def reflectionless_T(p: int, k: float) -> complex:
    """Transmission of V = -p(p+1) sech^2 x: prod_{j=1..p} (j - ik)/(-j - ik)."""
    if p < 0:
        raise ScatterError("depth index p must be a non-negative integer")
    t = complex(1.0)
    for j in range(1, p + 1):
        t *= (j - 1j * k) / (-j - 1j * k)
    return t


def numeric_rt(
    v_callable,
    energy: float,
    x_left: float,
    x_right: float,
    v_left: float = None,
    v_right: float = None,
    n_steps: int = 20000,
    hbar: float = 1.0,
    mass2: float = 1.0,
) -> ScatterAmplitudes:
    """Direct amplitudes by integrating the wave equation right-to-left (RK4).

    Starts from a pure transmitted wave t e^{ik'x} at x_right and matches onto
    e^{ikx} + r e^{-ikx} at x_left. v_left / v_right default to the sampled
    potential at the window edges.
    """
    c2 = hbar**2 / mass2
    if v_left is None:
        v_left = float(v_callable(np.array(x_left)))
    if v_right is None:
        v_right = float(v_callable(np.array(x_right)))
    if energy <= max(v_left, v_right):
        raise ScatterError("energy below the asymptotic potential levels")
    k = math.sqrt((energy - v_left) / c2)
    kp = math.sqrt((energy - v_right) / c2)

    h = (x_right - x_left) / n_steps

    def rhs(x, y):
        psi, dpsi = y
        return np.array([dpsi, (v_callable(x) - energy) / c2 * psi], dtype=complex)

    y = np.array([cmath.exp(1j * kp * x_right), 1j * kp * cmath.exp(1j * kp * x_right)])
    x = x_right
    for _ in range(n_steps):
        k1 = rhs(x, y)
        k2 = rhs(x - 0.5 * h, y - 0.5 * h * k1)
        k3 = rhs(x - 0.5 * h, y - 0.5 * h * k2)
        k4 = rhs(x - h, y - h * k3)
        y = y - (h / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)
        x -= h

    psi, dpsi = y
    # psi = a e^{ikx} + b e^{-ikx} at x_left; incoming flux normalized to a = 1
    e_plus = cmath.exp(1j * k * x_left)
    e_minus = cmath.exp(-1j * k * x_left)
    a = (dpsi + 1j * k * psi) / (2j * k * e_plus)
    b = -(dpsi - 1j * k * psi) / (2j * k * e_minus)
    r = b / a
    t = 1.0 / a
    return ScatterAmplitudes(energy=energy, k_in=k, k_out=kp, r=r, t=t)


def numeric_rt_for(
    w: Superpotential,
    side: int,
    energy: float,
    x_left: float,
    x_right: float,
    **kw,
) -> ScatterAmplitudes:
    """numeric_rt for V1 (side=1) or V2 (side=2), with asymptotes from W."""
    wm, wp = _asymptotes(w)
    v = w.v1 if side == 1 else w.v2
    return numeric_rt(
        v, energy, x_left, x_right, v_left=wm**2, v_right=wp**2, **kw
    )
