"""Compiled inner loops for the atomic-response integration.

The retarded-time sweep is strictly sequential (each step consumes the
previous state), so it is written as a scalar loop and compiled with numba.
All arithmetic is plain IEEE complex128 (no fastmath): results are
bit-reproducible for identical inputs.

Everything is nondimensional with gamma = 1 and the two radiative branches
equal (gamma_1 = gamma_2 = 1/2), so the excited state decays at total rate
2 and both optical coherences at rate 1.  ``delta`` is the probe detuning
(control on resonance); it adds -i*delta to the rho13 and rho23 equations.
``gamma23`` is an optional ground-state coherence decay, 0 by default.
"""

import numpy as np
from numba import njit

POPULATION_TOL = 1e-3  # physicality tolerance checked after every step


@njit(cache=True, nogil=True, inline="always")
def rhs(r11, r22, r12, r13, r23, g, G, delta, gamma23):
    """Time derivatives of (rho11, rho22, rho12, rho13, rho23).

    The lower triangle enters through exact conjugates, and rho33 through
    the population conservation law, so the pairings below keep the
    population derivatives exactly real.
    """
    r21 = np.conj(r12)
    r31 = np.conj(r13)
    r32 = np.conj(r23)
    r33 = 1.0 - r11 - r22
    d11 = -2.0 * r11 + 1j * (G * r21 - np.conj(G) * r12) \
        + 1j * (g * r31 - np.conj(g) * r13)
    d22 = r11 + 1j * (np.conj(G) * r12 - G * r21)
    d12 = -r12 + 1j * G * r22 + 1j * g * r32 - 1j * G * r11
    d13 = -(1.0 + 1j * delta) * r13 + 1j * G * r23 + 1j * g * r33 - 1j * g * r11
    d23 = -(gamma23 + 1j * delta) * r23 + 1j * np.conj(G) * r13 - 1j * g * r21
    return d11, d22, d12, d13, d23


@njit(cache=True, nogil=True)
def march_slice(g, G, dtau, delta, gamma23,
                y0, out11, out22, out12, out13, out23):
    """RK4 sweep along tau at one depth, recording every component.

    ``g`` and ``G`` are the field samples on the tau grid; midpoint fields
    use linear interpolation between neighbours.  Starts from the state
    packed in ``y0`` (complex[5]) and writes the state at every grid index
    into the ``out*`` arrays (index 0 gets the initial state).

    Returns -1 on success, or the tau index of the first step whose
    populations left [-tol, 1+tol]; the final state is written back to
    ``y0`` either way.
    """
    n = g.shape[0]
    r11 = y0[0]
    r22 = y0[1]
    r12 = y0[2]
    r13 = y0[3]
    r23 = y0[4]
    out11[0] = r11
    out22[0] = r22
    out12[0] = r12
    out13[0] = r13
    out23[0] = r23
    half = 0.5 * dtau
    sixth = dtau / 6.0
    for i in range(n - 1):
        ga = g[i]
        Ga = G[i]
        gb = g[i + 1]
        Gb = G[i + 1]
        gm = 0.5 * (ga + gb)
        Gm = 0.5 * (Ga + Gb)
        a11, a22, a12, a13, a23 = rhs(r11, r22, r12, r13, r23,
                                      ga, Ga, delta, gamma23)
        b11, b22, b12, b13, b23 = rhs(r11 + half * a11, r22 + half * a22,
                                      r12 + half * a12, r13 + half * a13,
                                      r23 + half * a23, gm, Gm, delta, gamma23)
        c11, c22, c12, c13, c23 = rhs(r11 + half * b11, r22 + half * b22,
                                      r12 + half * b12, r13 + half * b13,
                                      r23 + half * b23, gm, Gm, delta, gamma23)
        d11, d22, d12, d13, d23 = rhs(r11 + dtau * c11, r22 + dtau * c22,
                                      r12 + dtau * c12, r13 + dtau * c13,
                                      r23 + dtau * c23, gb, Gb, delta, gamma23)
        r11 = r11 + sixth * (a11 + 2.0 * b11 + 2.0 * c11 + d11)
        r22 = r22 + sixth * (a22 + 2.0 * b22 + 2.0 * c22 + d22)
        r12 = r12 + sixth * (a12 + 2.0 * b12 + 2.0 * c12 + d12)
        r13 = r13 + sixth * (a13 + 2.0 * b13 + 2.0 * c13 + d13)
        r23 = r23 + sixth * (a23 + 2.0 * b23 + 2.0 * c23 + d23)
        p11 = r11.real
        p22 = r22.real
        p33 = 1.0 - p11 - p22
        bad = False
        if p11 < -POPULATION_TOL or p11 > 1.0 + POPULATION_TOL:
            bad = True
        if p22 < -POPULATION_TOL or p22 > 1.0 + POPULATION_TOL:
            bad = True
        if p33 < -POPULATION_TOL or p33 > 1.0 + POPULATION_TOL:
            bad = True
        out11[i + 1] = r11
        out22[i + 1] = r22
        out12[i + 1] = r12
        out13[i + 1] = r13
        out23[i + 1] = r23
        if bad:
            y0[0] = r11
            y0[1] = r22
            y0[2] = r12
            y0[3] = r13
            y0[4] = r23
            return i + 1
    y0[0] = r11
    y0[1] = r22
    y0[2] = r12
    y0[3] = r13
    y0[4] = r23
    return -1
