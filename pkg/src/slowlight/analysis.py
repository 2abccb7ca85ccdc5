"""Scalar pulse diagnostics: peak location, width, energy, shape fidelity
and the retrieved-intensity ratio curve of a storage sweep.

All diagnostics work on intensity |g|^2 (the plotted quantity), so they
are invariant under a global phase of the envelope.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace

import numpy as np

from .core import Envelope
from .errors import MetricError, ValidationError

__all__ = [
    "PulseMetrics",
    "RatioPoint",
    "pulse_metrics",
    "shape_fidelity",
    "intensity_ratio_curve",
]


@dataclass(frozen=True)
class PulseMetrics:
    """peak_time (1/gamma), peak_intensity (gamma^2), fwhm of the intensity
    profile (1/gamma) and energy = integral of |g|^2 dtau (gamma)."""

    peak_time: float
    peak_intensity: float
    fwhm: float
    energy: float


def _window_slice(env: Envelope, window) -> tuple[np.ndarray, np.ndarray]:
    tau = env.grid.tau
    if window is None:
        mask = np.ones(tau.shape, dtype=bool)
    else:
        lo, hi = window
        if not hi > lo:
            raise ValidationError(f"window must satisfy hi > lo, got {window}")
        mask = (tau >= lo) & (tau <= hi)
    if not np.any(mask):
        raise MetricError(f"window {window} contains no grid samples")
    return tau[mask], env.values[mask]


def pulse_metrics(env: Envelope, window=None) -> PulseMetrics:
    """Measure the single pulse contained in ``window`` (a (lo, hi) tau
    range, default the whole grid).

    The peak is refined by a parabola through the three samples around the
    discrete maximum, the FWHM by linear interpolation at half the peak
    intensity, and the energy by the trapezoid rule over the window.

    Raises
    ------
    MetricError
        For an empty window, a maximum sitting on the window edge, or a
        pulse clipped by the window (no half-intensity crossing found on
        one side).
    """
    tau, values = _window_slice(env, window)
    intensity = np.abs(values) ** 2
    i = int(intensity.argmax())
    if i == 0 or i == len(intensity) - 1:
        raise MetricError(
            "intensity maximum sits on the window edge; no interior peak")
    left, mid, right = intensity[i - 1], intensity[i], intensity[i + 1]
    denom = left - 2.0 * mid + right
    if denom < 0.0:
        offset = 0.5 * (left - right) / denom
        peak_time = tau[i] + offset * (tau[1] - tau[0])
        peak_intensity = mid - 0.25 * (left - right) * offset
    else:  # flat top: keep the discrete sample
        peak_time = float(tau[i])
        peak_intensity = float(mid)
    half = 0.5 * peak_intensity
    below_left = np.nonzero(intensity[:i] <= half)[0]
    below_right = np.nonzero(intensity[i:] <= half)[0]
    if below_left.size == 0 or below_right.size == 0:
        raise MetricError("no half-intensity crossing inside the window; "
                          "the pulse is clipped")
    l = int(below_left[-1])
    r = i + int(below_right[0])
    t_left = np.interp(half, [intensity[l], intensity[l + 1]],
                       [tau[l], tau[l + 1]])
    t_right = np.interp(half, [intensity[r], intensity[r - 1]],
                        [tau[r], tau[r - 1]])
    energy = float(np.trapezoid(intensity, tau))
    return PulseMetrics(peak_time=float(peak_time),
                        peak_intensity=float(peak_intensity),
                        fwhm=float(t_right - t_left), energy=energy)


def shape_fidelity(a: Envelope, b: Envelope, windows=(None, None)) -> float:
    """Maximum over relative shift of the normalized cross-correlation of
    the two intensity profiles: 1 iff the profiles match up to shift and
    positive scale.  Both envelopes must share the grid spacing.
    """
    if abs(a.grid.dtau - b.grid.dtau) > 1e-12 * a.grid.dtau:
        raise ValidationError("shape_fidelity needs equal grid spacing")
    _, va = _window_slice(a, windows[0])
    _, vb = _window_slice(b, windows[1])
    ia = np.abs(va) ** 2
    ib = np.abs(vb) ** 2
    na = float(np.sum(ia * ia))
    nb = float(np.sum(ib * ib))
    if na == 0.0 or nb == 0.0:
        raise MetricError("zero-energy envelope; shape fidelity undefined")
    corr = np.correlate(ia, ib, mode="full")
    return float(corr.max() / np.sqrt(na * nb))


@dataclass(frozen=True)
class RatioPoint:
    """One storage sweep point: retrieved-to-input peak-intensity ratio
    (the headline number) plus the energy ratio for completeness."""

    g0: float
    input_peak_intensity: float
    peak_ratio: float
    energy_ratio: float


def intensity_ratio_curve(g0_values, base, measure_up_to: float | None = None,
                          threads: int = 1) -> list[RatioPoint]:
    """Retrieved/input peak-intensity ratio versus input probe amplitude.

    Runs the storage scenario of ``base`` (a ScenarioSpec with a
    super-Gaussian control) once per probe amplitude in ``g0_values``.
    The retrieved peak is measured at the deepest recorded depth within
    the retrieval window, capped at ``measure_up_to`` (an observation
    horizon in tau) when given.  Points are independent and run
    concurrently for ``threads`` > 1.
    """
    from .propagation import run_storage_retrieval  # deferred: analysis is a layer above

    def one(g0: float) -> RatioPoint:
        spec = replace(base, probe=replace(base.probe, g0=float(g0)))
        _, report = run_storage_retrieval(spec, measure_up_to=measure_up_to)
        return RatioPoint(
            g0=float(g0),
            input_peak_intensity=report.input_metrics.peak_intensity,
            peak_ratio=report.peak_intensity_ratio,
            energy_ratio=report.energy_ratio)

    g0_values = list(g0_values)
    if threads > 1 and len(g0_values) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(one, g0_values))
    return [one(g0) for g0 in g0_values]
