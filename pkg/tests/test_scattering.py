import cmath
import math

import numpy as np
import pytest

from susyqm.catalog import sip_lookup
from susyqm.scattering import (
    ScatterError,
    channel_momenta,
    numeric_rt,
    numeric_rt_for,
    partner_phase_shift,
    partner_rt,
    reflectionless_T,
)


def test_channel_momenta_symmetric_well():
    w = sip_lookup("sech2", B=1.0).superpotential()
    k, kp = channel_momenta(w, 2.0)
    assert k == pytest.approx(1.0)
    assert kp == pytest.approx(1.0)


def test_channel_momenta_threshold():
    w = sip_lookup("sech2", B=1.0).superpotential()
    with pytest.raises(ScatterError):
        channel_momenta(w, 0.5)  # below W_inf^2 = 1


def test_reflectionless_T_unit_modulus():
    for p in (1, 2, 3):
        for k in (0.5, 1.0, 2.0):
            assert abs(abs(reflectionless_T(p, k)) - 1.0) < 1e-14


def test_partner_rt_of_free_partner_is_reflectionless():
    # W = tanh(x): V2 is free, so R2 = 0, T2 = 1 gives the sech^2 amplitudes
    w = sip_lookup("sech2", B=1.0).superpotential()
    k = 1.3
    energy = k**2 + 1.0
    r1, t1 = partner_rt(w, energy, 0.0 + 0.0j, 1.0 + 0.0j)
    assert abs(r1) < 1e-14
    assert t1 == pytest.approx(reflectionless_T(1, k), abs=1e-12)


def test_numeric_rt_free_particle():
    amp = numeric_rt(lambda x: np.zeros_like(np.asarray(x, float)), 1.0, -5.0, 5.0)
    assert abs(amp.r) < 1e-10
    assert abs(amp.t - 1.0) < 1e-10


def test_numeric_rt_flux_conservation_step():
    # smooth step between two different levels
    v = lambda x: 0.5 * (1 + np.tanh(np.asarray(x, float)))
    amp = numeric_rt(v, 2.0, -20.0, 20.0, v_left=0.0, v_right=1.0, n_steps=40000)
    assert abs(amp.flux_defect) < 1e-8
    assert amp.reflection_probability > 1e-4  # a genuine step reflects


def test_numeric_matches_closed_form_sech2():
    w = sip_lookup("sech2", B=1.0).superpotential()
    for k in (0.7, 1.5):
        energy = k**2 + 1.0
        amp = numeric_rt_for(w, 1, energy, -18.0, 18.0, n_steps=30000)
        assert abs(amp.r) < 1e-7
        assert abs(amp.t - reflectionless_T(1, k)) < 1e-6


def test_partner_phase_shift_identity():
    # W -> W+ > 0 on the half line; at delta2 = 0 the phase is -atan(ck'/W+)
    w = sip_lookup("sech2", B=1.0).superpotential()
    kp = 1.0
    energy = kp**2 + 1.0
    d1 = partner_phase_shift(w, energy, 0.0)
    expect = 0.5 * cmath.phase((1.0 - 1j * kp) / (1.0 + 1j * kp))
    assert d1 == pytest.approx(expect, abs=1e-12)


def test_scatter_recursion_matches_product_formula():
    from susyqm.catalog import sip_scatter_recursion

    entry = sip_lookup("sech2", B=3.0)  # p = 3 reflectionless chain
    k = 0.9
    r, t = sip_scatter_recursion(entry, k, 3)
    assert abs(r) < 1e-12
    assert t == pytest.approx(reflectionless_T(3, k), abs=1e-10)
