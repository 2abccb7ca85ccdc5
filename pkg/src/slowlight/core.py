"""Units contract, simulation grid and the shared field/state containers.

Everything in this package is nondimensional.  Times are measured in units
of 1/gamma (gamma = radiative half-rate of the excited state), depths in
units of gamma/eta (eta = propagation constant of the medium) and Rabi
frequencies in units of gamma.  Internally gamma = eta = 1; axes therefore
read directly as gamma*tau and eta*zeta/gamma.

All types here are immutable after construction and safe to share
read-only across threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ValidationError

__all__ = [
    "MediumFrame",
    "Grid",
    "Envelope",
    "AtomState",
    "FieldHistory",
    "eta_from_physical",
    "make_grid",
]


def eta_from_physical(wavelength: float, density: float, gamma: float) -> float:
    """Propagation constant 3 * lambda^2 * N * gamma / (8 pi).

    Parameters
    ----------
    wavelength : float
        Optical transition wavelength (any length unit).
    density : float
        Atom number density (inverse cube of the same length unit).
    gamma : float
        Radiative half-rate (any rate unit; the result carries it).

    Returns
    -------
    float
        The propagation constant in gamma's rate unit divided by
        wavelength's length unit.

    Raises
    ------
    ValidationError
        If any argument is not strictly positive.
    """
    for name, value in (("wavelength", wavelength), ("density", density),
                        ("gamma", gamma)):
        if not value > 0:
            raise ValidationError(f"{name} must be > 0, got {value}")
    return 3.0 * wavelength**2 * density * gamma / (8.0 * math.pi)


@dataclass(frozen=True)
class MediumFrame:
    """Nondimensionalization contract of a simulation.

    ``gamma`` sets the time unit and ``eta`` the depth unit; both are fixed
    to 1 for every computation in this package.  ``wavelength`` and
    ``density`` may optionally record the physical medium the run stands
    for; when both are given they must reproduce ``eta`` through
    :func:`eta_from_physical` (with this frame's gamma) to 1e-12 relative.
    """

    gamma: float = 1.0
    eta: float = 1.0
    wavelength: float | None = None
    density: float | None = None

    def __post_init__(self):
        if not self.gamma > 0:
            raise ValidationError(f"gamma must be > 0, got {self.gamma}")
        if not self.eta > 0:
            raise ValidationError(f"eta must be > 0, got {self.eta}")
        if self.wavelength is not None and self.density is not None:
            implied = eta_from_physical(self.wavelength, self.density, self.gamma)
            if abs(implied - self.eta) > 1e-12 * abs(implied):
                raise ValidationError(
                    "eta is inconsistent with wavelength/density: "
                    f"given {self.eta}, implied {implied}")


@dataclass(frozen=True)
class Grid:
    """Uniform retarded-time / depth lattice.

    tau runs over ``n_tau`` samples from ``tau_min`` to ``tau_max`` (units
    1/gamma); depth marching takes ``n_zeta`` steps of ``dzeta`` out to
    ``zeta_max`` (units gamma/eta).  ``snapshot_depths`` are the depths at
    which full envelopes get recorded; they are snapped to marching steps
    by :func:`make_grid`.
    """

    tau_min: float
    tau_max: float
    n_tau: int
    zeta_max: float
    n_zeta: int
    snapshot_depths: tuple[float, ...] = field(default_factory=tuple)

    @property
    def dtau(self) -> float:
        return (self.tau_max - self.tau_min) / (self.n_tau - 1)

    @property
    def dzeta(self) -> float:
        return self.zeta_max / self.n_zeta

    @property
    def tau(self) -> np.ndarray:
        """The retarded-time axis (fresh array each call)."""
        return np.linspace(self.tau_min, self.tau_max, self.n_tau)

    def depth_of_step(self, k: int) -> float:
        """Depth reached after marching step ``k`` (exact for k=0, n_zeta)."""
        return (k * self.zeta_max) / self.n_zeta

    def step_of_depth(self, depth: float) -> int:
        """Index of the marching step nearest ``depth``."""
        if self.zeta_max == 0.0:
            return 0
        return int(round(depth / self.zeta_max * self.n_zeta))

    def snap_depth(self, depth: float) -> float:
        """``depth`` snapped to the nearest marching step."""
        return self.depth_of_step(self.step_of_depth(depth))


def make_grid(tau_min: float, tau_max: float, n_tau: int, zeta_max: float,
              n_zeta: int, snapshot_depths=()) -> Grid:
    """Validate grid parameters and snap snapshot depths to marching steps.

    Snapped depths are deduplicated and sorted.  Raises
    :class:`ValidationError` naming the offending field for inverted
    bounds, insufficient sample counts, or snapshots outside
    ``[0, zeta_max]``.
    """
    if not tau_max > tau_min:
        raise ValidationError(
            f"tau_max must exceed tau_min, got tau_min={tau_min}, tau_max={tau_max}")
    if n_tau < 2:
        raise ValidationError(f"n_tau must be >= 2, got {n_tau}")
    if n_zeta < 1:
        raise ValidationError(f"n_zeta must be >= 1, got {n_zeta}")
    if zeta_max < 0:
        raise ValidationError(f"zeta_max must be >= 0, got {zeta_max}")
    grid = Grid(float(tau_min), float(tau_max), int(n_tau), float(zeta_max),
                int(n_zeta))
    snapped = []
    for d in snapshot_depths:
        if d < 0 or d > zeta_max:
            raise ValidationError(
                f"snapshot_depths entry {d} outside [0, {zeta_max}]")
        snapped.append(grid.snap_depth(d))
    depths = tuple(sorted(set(snapped)))
    return Grid(grid.tau_min, grid.tau_max, grid.n_tau, grid.zeta_max,
                grid.n_zeta, depths)


def _readonly_complex(values, n_expected: int, what: str) -> np.ndarray:
    arr = np.asarray(values, dtype=np.complex128)
    if arr.ndim != 1 or arr.shape[0] != n_expected:
        raise ValidationError(
            f"{what} must hold {n_expected} samples, got shape {arr.shape}")
    if not np.all(np.isfinite(arr.real)) or not np.all(np.isfinite(arr.imag)):
        raise ValidationError(f"{what} contains non-finite samples")
    arr = arr.copy()
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True)
class Envelope:
    """A sampled complex field envelope on a grid's tau axis.

    ``values[i]`` is the Rabi frequency (units gamma) at ``grid.tau[i]`` for
    a fixed depth.  The sample array is read-only.
    """

    values: np.ndarray
    grid: Grid

    def __post_init__(self):
        object.__setattr__(
            self, "values",
            _readonly_complex(self.values, self.grid.n_tau, "Envelope.values"))

    @property
    def intensity(self) -> np.ndarray:
        return np.abs(self.values) ** 2


@dataclass(frozen=True)
class AtomState:
    """The five evolved density-matrix components of the lambda atom.

    Level |1> is the excited state; |2> and |3> are the ground states
    addressed by the control and probe fields.  Only the upper triangle is
    stored; rho21, rho31, rho32 are conjugates and rho33 follows from the
    population conservation law.  Construction does not validate (the same
    container carries time derivatives); use :meth:`validate`.
    """

    rho11: float = 0.0
    rho22: float = 0.0
    rho12: complex = 0j
    rho13: complex = 0j
    rho23: complex = 0j

    @property
    def rho33(self) -> float:
        return 1.0 - self.rho11 - self.rho22

    def as_vector(self) -> np.ndarray:
        """The components packed as complex128 [rho11, rho22, rho12, rho13, rho23]."""
        return np.array([self.rho11, self.rho22, self.rho12, self.rho13,
                         self.rho23], dtype=np.complex128)

    @classmethod
    def from_vector(cls, y) -> "AtomState":
        return cls(rho11=float(y[0].real), rho22=float(y[1].real),
                   rho12=complex(y[2]), rho13=complex(y[3]),
                   rho23=complex(y[4]))

    @classmethod
    def all_in_lower(cls) -> "AtomState":
        """The initial condition of every run: all population in |3>."""
        return cls()

    def validate(self, tol: float = 1e-6) -> "AtomState":
        """Check physicality: populations in [-tol, 1+tol], coherence moduli
        bounded by 1+tol.  Returns self; raises ValidationError otherwise."""
        for name, p in (("rho11", self.rho11), ("rho22", self.rho22),
                        ("rho33", self.rho33)):
            if not -tol <= p <= 1.0 + tol:
                raise ValidationError(f"population {name}={p} outside [0, 1] "
                                      f"beyond tol={tol}")
        for name, c in (("rho12", self.rho12), ("rho13", self.rho13),
                        ("rho23", self.rho23)):
            if abs(c) > 1.0 + tol:
                raise ValidationError(f"|{name}|={abs(c)} exceeds 1 beyond "
                                      f"tol={tol}")
        return self


@dataclass(frozen=True)
class FieldHistory:
    """Snapshots of both envelopes and the ground-state coherence along depth.

    ``depths`` is strictly increasing and starts at 0, where the recorded
    envelopes are exactly the boundary inputs.  ``coherence32[k]`` holds
    rho32(tau) at ``depths[k]``.
    """

    depths: tuple[float, ...]
    probe: tuple[Envelope, ...]
    control: tuple[Envelope, ...]
    coherence32: tuple[np.ndarray, ...]
    boundary: tuple[Envelope, Envelope]

    def __post_init__(self):
        n = len(self.depths)
        if n == 0:
            raise ValidationError("FieldHistory needs at least the depth-0 entry")
        if len(self.probe) != n or len(self.control) != n or \
                len(self.coherence32) != n:
            raise ValidationError("FieldHistory component lengths disagree")
        if any(b >= a for a, b in zip(self.depths[1:], self.depths[:-1])):
            raise ValidationError("FieldHistory depths must be strictly increasing")
        if self.depths[0] != 0.0:
            raise ValidationError("FieldHistory must start at depth 0")
        if not (np.array_equal(self.probe[0].values, self.boundary[0].values)
                and np.array_equal(self.control[0].values,
                                   self.boundary[1].values)):
            raise ValidationError(
                "depth-0 envelopes must equal the boundary inputs exactly")

    @property
    def grid(self) -> Grid:
        return self.boundary[0].grid

    def at_depth(self, depth: float, rtol: float = 1e-9):
        """(probe, control, rho32) recorded nearest ``depth`` (within rtol
        of the depth scale); raises KeyError if nothing matches."""
        scale = max(abs(depth), self.depths[-1], 1.0)
        for k, d in enumerate(self.depths):
            if abs(d - depth) <= rtol * scale:
                return self.probe[k], self.control[k], self.coherence32[k]
        raise KeyError(f"no snapshot recorded at depth {depth}")
