"""Steady-state probe absorption: the intensity-dependent transparency
window of the driven lambda medium.

For fixed fields the Bloch equations are an affine system in the eight
independent real components (two populations, three complex coherences),
so the stationary state is a dense linear solve.  The plotted absorption
is Im(rho13) * gamma / g, the dimensionless combination proportional to
the imaginary susceptibility under the envelope conventions used here;
only relative shapes are meaningful, so all checks are shape- and
monotonicity-based.  Long-time integration of the same equations serves
as an independent oracle for the solver.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bloch import integrate_constant_fields, rhs_vector
from .core import AtomState
from .errors import DegenerateSteadyStateError, ShapeError, ValidationError

__all__ = [
    "SusceptibilityScan",
    "steady_state",
    "steady_state_evolved",
    "scan_susceptibility",
    "transparency_width",
    "absorption_of",
]

_COND_LIMIT = 1e12


@dataclass(frozen=True)
class SusceptibilityScan:
    """Absorption Im(rho13)/g over a detuning axis at fixed amplitudes."""

    detunings: np.ndarray
    absorption: np.ndarray
    g0: float
    G0: float

    def __post_init__(self):
        d = np.asarray(self.detunings, dtype=float)
        a = np.asarray(self.absorption, dtype=float)
        if d.shape != a.shape or d.ndim != 1:
            raise ValidationError("detunings and absorption must be equal-"
                                  "length 1-d arrays")
        if not np.all(np.isfinite(a)):
            raise ValidationError("absorption contains non-finite values")
        d = d.copy()
        a = a.copy()
        d.flags.writeable = False
        a.flags.writeable = False
        object.__setattr__(self, "detunings", d)
        object.__setattr__(self, "absorption", a)


def _pack(y: np.ndarray) -> np.ndarray:
    """complex component vector -> 8 real dof (populations stay real)."""
    return np.array([y[0].real, y[1].real, y[2].real, y[2].imag,
                     y[3].real, y[3].imag, y[4].real, y[4].imag])


def _unpack(x: np.ndarray) -> np.ndarray:
    return np.array([x[0], x[1], x[2] + 1j * x[3], x[4] + 1j * x[5],
                     x[6] + 1j * x[7]], dtype=np.complex128)


def steady_state(g, G, delta: float = 0.0, gamma23: float = 0.0) -> AtomState:
    """Stationary state of the driven atom by direct linear solve.

    The derivative map is affine in the eight real components (the trace
    constraint supplies the inhomogeneity), so the stationary state solves
    an 8x8 real system, assembled here by probing the derivative on basis
    vectors.

    Raises
    ------
    DegenerateSteadyStateError
        When the stationary system is singular or near-singular, e.g. both
        fields zero, where any ground-state population split is stationary.
    """
    zero = np.zeros(8)
    c = _pack(rhs_vector(_unpack(zero), g, G, delta, gamma23))
    M = np.empty((8, 8))
    for j in range(8):
        e = np.zeros(8)
        e[j] = 1.0
        M[:, j] = _pack(rhs_vector(_unpack(e), g, G, delta, gamma23)) - c
    if np.linalg.cond(M) > _COND_LIMIT:
        raise DegenerateSteadyStateError(
            f"stationary system is singular/near-singular for g={g}, G={G}, "
            f"delta={delta}; no unique steady state")
    x = np.linalg.solve(M, -c)
    return AtomState.from_vector(_unpack(x))


def steady_state_evolved(g, G, delta: float = 0.0, gamma23: float = 0.0,
                         duration: float = 2000.0,
                         dtau: float = 0.05) -> AtomState:
    """Steady state by long-time integration from all population in |3>.

    The independent cross-check for :func:`steady_state`; slower but free
    of linear algebra.
    """
    return integrate_constant_fields(AtomState.all_in_lower(), g, G,
                                     duration=duration, dtau=dtau,
                                     delta=delta, gamma23=gamma23)


def absorption_of(state: AtomState, g0: float) -> float:
    """Scaled absorption Im(rho13)/g0 of a steady state."""
    if g0 == 0:
        raise ValidationError("absorption normalization needs g0 != 0")
    return float(state.rho13.imag) / g0


def scan_susceptibility(g0: float, G0: float, detuning_range=(-8.0, 8.0),
                        n_points: int = 321,
                        gamma23: float = 0.0) -> SusceptibilityScan:
    """Absorption versus probe detuning at fixed field amplitudes."""
    if n_points < 3:
        raise ValidationError(f"n_points must be >= 3, got {n_points}")
    if not G0 > 0:
        raise ValidationError(f"G0 must be > 0, got {G0}")
    lo, hi = detuning_range
    if not hi > lo:
        raise ValidationError(f"detuning range must be increasing, got "
                              f"({lo}, {hi})")
    detunings = np.linspace(lo, hi, int(n_points))
    absorption = np.array([
        absorption_of(steady_state(g0, G0, delta=d, gamma23=gamma23), g0)
        for d in detunings])
    return SusceptibilityScan(detunings=detunings, absorption=absorption,
                              g0=g0, G0=G0)


def transparency_width(scan: SusceptibilityScan) -> float:
    """Width of the transparency dip between its half-absorption walls.

    Finds the absorption minimum, takes half the bracketing-peak value and
    measures the distance between the two crossings nearest the dip
    (linear interpolation between samples).

    Raises
    ------
    ShapeError
        If the scan has no interior dip bracketed by larger absorption on
        both sides (flat scan, clipped window, ...).
    """
    d = scan.detunings
    a = scan.absorption
    i_dip = int(a.argmin())
    if i_dip == 0 or i_dip == len(a) - 1:
        raise ShapeError("absorption minimum sits on the scan edge; no "
                         "transparency dip to measure")
    peak = float(a.max())
    half = 0.5 * peak
    if not a[i_dip] < half:
        raise ShapeError("no transparency dip below half the peak "
                         "absorption; width undefined")
    left = np.nonzero(a[:i_dip] >= half)[0]
    right = np.nonzero(a[i_dip:] >= half)[0]
    if left.size == 0 or right.size == 0:
        raise ShapeError("transparency dip is not bracketed by absorption "
                         "maxima inside the scan")
    l = int(left[-1])
    r = i_dip + int(right[0])
    d_left = np.interp(half, [a[l + 1], a[l]], [d[l + 1], d[l]])
    d_right = np.interp(half, [a[r - 1], a[r]], [d[r - 1], d[r]])
    return float(d_right - d_left)
