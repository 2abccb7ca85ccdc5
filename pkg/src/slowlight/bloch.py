"""Atomic response: the lambda-system Bloch equations and their integration.

The five evolved components are (rho11, rho22, rho12, rho13, rho23); the
remaining elements follow from hermiticity and population conservation.
With gamma = 1 and equal radiative branches the excited population decays
at rate 2 and both optical coherences at rate 1; the ground-state
coherence rho23 is undamped unless an explicit ``gamma23`` is supplied.

Detuned operation: the equations are resonant by construction; a probe
detuning ``delta`` (control on resonance, so ``delta`` is also the
two-photon detuning) adds -i*delta*rho13 and -i*delta*rho23.  The sign
convention is fixed by requiring the strong-control absorption doublet of
a weak probe to sit at delta = +/-G (Autler-Townes), which the
spectroscopy tests check against long-time integration.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .core import AtomState, Envelope, Grid
from .errors import IntegrationInstabilityError, ValidationError

__all__ = [
    "CoherenceSlice",
    "bloch_rhs",
    "rhs_vector",
    "rk4_step",
    "evolve_slice",
    "population_records",
    "integrate_constant_fields",
]

COHERENCE_TOL = 1e-6


@dataclass(frozen=True)
class CoherenceSlice:
    """tau-resolved coherences at one depth: the source terms of the field
    propagation (rho13 drives the probe, rho12 the control) plus the
    ground-state coherence rho32."""

    rho13: np.ndarray
    rho12: np.ndarray
    rho32: np.ndarray
    grid: Grid

    def __post_init__(self):
        for name in ("rho13", "rho12", "rho32"):
            arr = np.asarray(getattr(self, name), dtype=np.complex128)
            if arr.shape != (self.grid.n_tau,):
                raise ValidationError(
                    f"CoherenceSlice.{name} must hold n_tau samples")
            if not np.all(np.isfinite(arr.real) & np.isfinite(arr.imag)):
                raise ValidationError(f"CoherenceSlice.{name} is not finite")
            arr = arr.copy()
            arr.flags.writeable = False
            object.__setattr__(self, name, arr)
        moduli = max(np.abs(self.rho13).max(), np.abs(self.rho12).max(),
                     np.abs(self.rho32).max())
        if moduli > 1.0 + COHERENCE_TOL:
            raise ValidationError(
                f"coherence modulus {moduli} exceeds 1 beyond {COHERENCE_TOL}")


def rhs_vector(y, g, G, delta: float = 0.0, gamma23: float = 0.0) -> np.ndarray:
    """Derivative of the packed component vector [rho11, rho22, rho12,
    rho13, rho23] (complex128).  Population derivatives come out exactly
    real for exactly real populations."""
    d = _kernels.rhs(complex(y[0]), complex(y[1]), complex(y[2]),
                     complex(y[3]), complex(y[4]), complex(g), complex(G),
                     float(delta), float(gamma23))
    return np.array(d, dtype=np.complex128)


def bloch_rhs(state: AtomState, g, G, delta: float = 0.0,
              gamma23: float = 0.0) -> AtomState:
    """Time derivative of ``state`` under fields (g, G) at detuning delta.

    Returns the derivatives packed in another :class:`AtomState` (whose
    fields then hold d(rho)/d(tau), not a physical state).
    """
    d = rhs_vector(state.as_vector(), g, G, delta, gamma23)
    return AtomState.from_vector(d)


def rk4_step(state: AtomState, fields, dtau: float, delta: float = 0.0,
             gamma23: float = 0.0) -> AtomState:
    """One classical Runge-Kutta step of size ``dtau``.

    ``fields`` supplies the three (g, G) pairs at the step start, midpoint
    and end; the caller interpolates them (the slice integrator uses
    linear interpolation between grid samples).

    Raises
    ------
    IntegrationInstabilityError
        If a population leaves [-tol, 1+tol] with tol = 1e-3 after the
        step.
    """
    if not dtau > 0:
        raise ValidationError(f"dtau must be > 0, got {dtau}")
    (g0, G0), (gm, Gm), (g1, G1) = fields
    y = state.as_vector()
    k1 = rhs_vector(y, g0, G0, delta, gamma23)
    k2 = rhs_vector(y + 0.5 * dtau * k1, gm, Gm, delta, gamma23)
    k3 = rhs_vector(y + 0.5 * dtau * k2, gm, Gm, delta, gamma23)
    k4 = rhs_vector(y + dtau * k3, g1, G1, delta, gamma23)
    ynew = y + (dtau / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
    out = AtomState.from_vector(ynew)
    tol = _kernels.POPULATION_TOL
    for name, p in (("rho11", out.rho11), ("rho22", out.rho22),
                    ("rho33", out.rho33)):
        if not -tol <= p <= 1.0 + tol:
            raise IntegrationInstabilityError(
                f"population {name}={p} left [0, 1] beyond tol={tol} after "
                f"an RK4 step (dtau={dtau}, |g|={abs(complex(g0)):.3g}, "
                f"|G|={abs(complex(G0)):.3g})")
    return out


def _check_same_grid(probe: Envelope, control: Envelope) -> Grid:
    if probe.grid != control.grid:
        raise ValidationError("probe and control envelopes are sampled on "
                              "different grids")
    return probe.grid


def _march(probe: Envelope, control: Envelope, delta: float, gamma23: float):
    grid = _check_same_grid(probe, control)
    n = grid.n_tau
    y = AtomState.all_in_lower().as_vector()
    r11 = np.empty(n, np.complex128)
    r22 = np.empty(n, np.complex128)
    r12 = np.empty(n, np.complex128)
    r13 = np.empty(n, np.complex128)
    r23 = np.empty(n, np.complex128)
    bad = _kernels.march_slice(probe.values, control.values, grid.dtau,
                               float(delta), float(gamma23), y,
                               r11, r22, r12, r13, r23)
    if bad >= 0:
        raise IntegrationInstabilityError(
            f"population left [0, 1] beyond tol={_kernels.POPULATION_TOL} at "
            f"tau index {bad} (tau={grid.tau_min + bad * grid.dtau:g}); "
            "reduce dtau or check the field scales")
    return r11, r22, r12, r13, r23


def evolve_slice(probe: Envelope, control: Envelope, delta: float = 0.0,
                 gamma23: float = 0.0) -> CoherenceSlice:
    """Integrate the atom along tau at fixed depth and record coherences.

    Starts from all population in |3> at tau_min (both fields must be
    negligible there) and returns rho13, rho12 and rho32 = conj(rho23) at
    every grid point.
    """
    _, _, r12, r13, r23 = _march(probe, control, delta, gamma23)
    return CoherenceSlice(rho13=r13, rho12=r12, rho32=np.conj(r23),
                          grid=probe.grid)


def population_records(probe: Envelope, control: Envelope, delta: float = 0.0,
                       gamma23: float = 0.0):
    """(rho11, rho22) along tau for the same sweep as :func:`evolve_slice`.

    Kept separate so the common path returns only what propagation needs;
    used by physicality checks.
    """
    r11, r22, _, _, _ = _march(probe, control, delta, gamma23)
    return r11.real.copy(), r22.real.copy()


def integrate_constant_fields(state: AtomState, g, G, duration: float,
                              dtau: float, delta: float = 0.0,
                              gamma23: float = 0.0) -> AtomState:
    """Relax ``state`` under constant fields for ``duration`` via RK4.

    Serves as the long-time oracle for the stationary solver and as the
    tiny-step reference in convergence checks.  The number of steps is
    round(duration/dtau), so the actual horizon is that multiple of dtau.
    """
    if not dtau > 0:
        raise ValidationError(f"dtau must be > 0, got {dtau}")
    nsteps = int(round(duration / dtau))
    n = nsteps + 1
    garr = np.full(n, complex(g), np.complex128)
    Garr = np.full(n, complex(G), np.complex128)
    y = state.as_vector()
    records = [np.empty(n, np.complex128) for _ in range(5)]
    bad = _kernels.march_slice(garr, Garr, dtau, float(delta), float(gamma23),
                               y, *records)
    if bad >= 0:
        raise IntegrationInstabilityError(
            f"population left [0, 1] beyond tol={_kernels.POPULATION_TOL} "
            f"after {bad} constant-field steps of dtau={dtau}")
    return AtomState.from_vector(y)
