"""Boundary (zeta = 0) envelope construction for probe and control fields.

The probe enters as a Gaussian or a sech pair; the control is either a
continuous wave or carries a super-Gaussian switching notch
G0 * (1 - exp(-((tau - tau2)/sigma')^alpha)), which dips to exactly zero at
tau2 and recovers to G0 away from it.  alpha = 4 gives a smooth (adiabatic)
switch, alpha = 100 an almost rectangular (nonadiabatic) one.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .core import Envelope, Grid
from .errors import ValidationError

__all__ = [
    "ProbeShape",
    "ControlShape",
    "sample_probe",
    "sample_control",
    "boundary_fields",
]

PROBE_KINDS = ("gaussian", "double_sech")
CONTROL_KINDS = ("cw", "super_gaussian")


@dataclass(frozen=True)
class ProbeShape:
    """Input probe pulse parameters (units: Rabi in gamma, times in 1/gamma).

    ``gaussian``:     g0 * exp(-((tau - tau0)/sigma)^2)
    ``double_sech``:  g0 * [sech((tau - tau0)/sigma) + f*sech((tau - tau1)/sigma)]

    ``f`` and ``tau1`` apply to the sech pair only; ``tau1=None`` defaults
    to tau0 + 4*sigma at sampling time.
    """

    kind: str
    g0: float
    tau0: float
    sigma: float
    f: float = 1.0
    tau1: float | None = None

    def __post_init__(self):
        if self.kind not in PROBE_KINDS:
            raise ValidationError(f"probe kind must be one of {PROBE_KINDS}, "
                                  f"got {self.kind!r}")
        if self.g0 < 0:
            raise ValidationError(f"g0 must be >= 0, got {self.g0}")
        if not self.sigma > 0:
            raise ValidationError(f"sigma must be > 0, got {self.sigma}")
        if self.kind == "double_sech" and self.f < 0:
            raise ValidationError(f"f must be >= 0, got {self.f}")

    @property
    def second_center(self) -> float:
        return self.tau0 + 4.0 * self.sigma if self.tau1 is None else self.tau1


@dataclass(frozen=True)
class ControlShape:
    """Control field parameters.

    A ``super_gaussian`` control needs the switching center ``tau2``, width
    ``sigma_p`` and an even positive ``alpha``.  An optional second notch
    (``tau3``/``sigma_p3``/``alpha3``) multiplies on for runs with
    independent switch-off and switch-on profiles; it defaults off.
    """

    kind: str
    G0: float
    tau2: float | None = None
    sigma_p: float | None = None
    alpha: int = 4
    tau3: float | None = None
    sigma_p3: float | None = None
    alpha3: int | None = None

    def __post_init__(self):
        if self.kind not in CONTROL_KINDS:
            raise ValidationError(f"control kind must be one of "
                                  f"{CONTROL_KINDS}, got {self.kind!r}")
        if self.G0 < 0:
            raise ValidationError(f"G0 must be >= 0, got {self.G0}")
        if self.kind == "super_gaussian":
            if self.tau2 is None or self.sigma_p is None:
                raise ValidationError(
                    "super_gaussian control needs tau2 and sigma_p")
            if not self.sigma_p > 0:
                raise ValidationError(f"sigma_p must be > 0, got {self.sigma_p}")
            _check_even_alpha(self.alpha)
            if self.tau3 is not None:
                _check_even_alpha(self.alpha3 if self.alpha3 is not None
                                  else self.alpha)
                sp3 = self.sigma_p3 if self.sigma_p3 is not None else self.sigma_p
                if not sp3 > 0:
                    raise ValidationError(f"sigma_p3 must be > 0, got {sp3}")


def _check_even_alpha(alpha) -> None:
    if not isinstance(alpha, (int, np.integer)) or alpha <= 0 or alpha % 2:
        raise ValidationError(
            f"alpha must be an even positive integer, got {alpha!r}")


def _notch(tau: np.ndarray, center: float, width: float, alpha: int) -> np.ndarray:
    # Even integer power of the real ratio; exact sign symmetry about the
    # center, unlike an exp/log-based power.
    ratio = (tau - center) / width
    return 1.0 - np.exp(-(ratio ** int(alpha)))


def sample_probe(shape: ProbeShape, grid: Grid) -> Envelope:
    """Sample the probe boundary envelope on the grid's tau axis."""
    tau = grid.tau
    if shape.kind == "gaussian":
        values = shape.g0 * np.exp(-(((tau - shape.tau0) / shape.sigma) ** 2))
    else:
        x0 = (tau - shape.tau0) / shape.sigma
        x1 = (tau - shape.second_center) / shape.sigma
        values = shape.g0 * (1.0 / np.cosh(x0) + shape.f / np.cosh(x1))
    return Envelope(values.astype(np.complex128), grid)


def sample_control(shape: ControlShape, grid: Grid) -> Envelope:
    """Sample the control boundary envelope on the grid's tau axis."""
    tau = grid.tau
    if shape.kind == "cw":
        values = np.full(grid.n_tau, shape.G0, dtype=np.complex128)
        return Envelope(values, grid)
    values = shape.G0 * _notch(tau, shape.tau2, shape.sigma_p, shape.alpha)
    if shape.tau3 is not None:
        values = values * _notch(
            tau, shape.tau3,
            shape.sigma_p3 if shape.sigma_p3 is not None else shape.sigma_p,
            shape.alpha3 if shape.alpha3 is not None else shape.alpha)
    return Envelope(values.astype(np.complex128), grid)


def boundary_fields(probe: ProbeShape, control: ControlShape,
                    grid: Grid) -> tuple[Envelope, Envelope]:
    """Sample both boundary envelopes and check dark-state preparation.

    The control must be on before the probe arrives so the medium loads
    into the dark state.  A warning is emitted if the control sits below
    0.1*G0 anywhere the probe exceeds 1% of its peak during the loading
    window (grid start up to the probe peak).
    """
    g = sample_probe(probe, grid)
    G = sample_control(control, grid)
    tau = grid.tau
    gmag = np.abs(g.values)
    peak = gmag.max()
    if peak > 0 and control.G0 > 0:
        loading = tau <= tau[int(gmag.argmax())]
        exposed = loading & (gmag > 0.01 * peak) & \
            (np.abs(G.values) < 0.1 * control.G0)
        if np.any(exposed):
            lo, hi = tau[exposed].min(), tau[exposed].max()
            warnings.warn(
                "control is below 0.1*G0 while the probe exceeds 1% of peak "
                f"during loading (tau in [{lo:g}, {hi:g}]); dark-state "
                "preparation is not guaranteed", stacklevel=2)
    return g, G
