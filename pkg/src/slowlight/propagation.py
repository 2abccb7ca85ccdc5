"""Depth marching of the coupled probe/control envelopes through the medium.

In the traveling window (tau = t - z/c, zeta = z) the field equations
reduce to first-order marching in depth:

    dg/dzeta = i * rho13(tau),    dG/dzeta = i * rho12(tau),

with the coherences supplied by a full retarded-time integration of the
atomic response at the current depth.  Each depth step is a two-stage
predictor-corrector (Heun): the predictor advances both envelopes with the
current source terms, the corrector averages in the source terms
recomputed from the predicted envelopes.  The control is always
co-propagated; a frozen-control mode exists purely as a diagnostic.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .analysis import PulseMetrics, pulse_metrics, shape_fidelity
from .bloch import CoherenceSlice, evolve_slice
from . import bloch
from .core import Envelope, FieldHistory, Grid, make_grid
from .errors import (MarchingInstabilityError, ScenarioError, SimulationError,
                     ValidationError)
from .pulses import ControlShape, ProbeShape, boundary_fields, sample_control

__all__ = [
    "ScenarioSpec",
    "StorageReport",
    "advance_depth",
    "propagate",
    "run_storage_retrieval",
    "retrieval_window_start",
]

INSTABILITY_FACTOR = 10.0  # envelope samples beyond this multiple of the
                           # boundary V maximum abort the march


@dataclass(frozen=True)
class ScenarioSpec:
    """One self-contained propagation scenario: boundary pulse shapes, the
    grid to march on, an optional probe detuning and a flag asking for the
    analytic pair solution on the same grid (consumed by the CLI)."""

    probe: ProbeShape
    control: ControlShape
    grid: Grid
    detuning: float = 0.0
    oracle_compare: bool = False


def _slice_arrays(g: np.ndarray, G: np.ndarray, grid: Grid, detuning: float):
    """(rho13, rho12, rho23) of the tau sweep for raw envelope arrays."""
    env_g = Envelope(g, grid)
    env_G = Envelope(G, grid)
    sl = evolve_slice(env_g, env_G, delta=detuning)
    return sl.rho13, sl.rho12, sl


def _heun_step(g, G, grid: Grid, detuning: float, freeze_control: bool):
    """One depth step; returns updated arrays plus the corrector-stage slice."""
    dzeta = grid.dzeta
    r13, r12, _ = _slice_arrays(g, G, grid, detuning)
    g_pred = g + 1j * dzeta * r13
    G_pred = G if freeze_control else G + 1j * dzeta * r12
    r13p, r12p, slice_corr = _slice_arrays(g_pred, G_pred, grid, detuning)
    g_new = g + 0.5j * dzeta * (r13 + r13p)
    G_new = G if freeze_control else G + 0.5j * dzeta * (r12 + r12p)
    return g_new, G_new, slice_corr


def advance_depth(probe: Envelope, control: Envelope, detuning: float = 0.0,
                  freeze_control: bool = False):
    """Advance both envelopes by one marching step of the grid's dzeta.

    Returns ``(probe', control', slice)`` where ``slice`` holds the
    corrector-stage coherences (evaluated from the predicted envelopes).
    A zero-depth grid makes this the identity.

    Raises
    ------
    MarchingInstabilityError
        If any updated envelope sample exceeds 10x the combined boundary
        amplitude maximum.
    """
    if probe.grid != control.grid:
        raise ValidationError("probe and control envelopes are sampled on "
                              "different grids")
    grid = probe.grid
    g_new, G_new, slice_corr = _heun_step(probe.values, control.values, grid,
                                          detuning, freeze_control)
    vmax = math.sqrt(float((np.abs(probe.values) ** 2
                            + np.abs(control.values) ** 2).max()))
    limit = INSTABILITY_FACTOR * vmax
    worst = max(np.abs(g_new).max(), np.abs(G_new).max())
    if vmax > 0 and worst > limit:
        raise MarchingInstabilityError(
            f"envelope sample reached {worst:.3g}, beyond "
            f"{INSTABILITY_FACTOR}x the boundary amplitude {vmax:.3g}")
    return Envelope(g_new, grid), Envelope(G_new, grid), slice_corr


def propagate(spec: ScenarioSpec, freeze_control: bool = False) -> FieldHistory:
    """March the boundary fields out to zeta_max, recording snapshots.

    Envelopes and rho32 are recorded at depth 0 and at every snapshot depth
    of the grid (rho32 from a fresh tau sweep of the envelopes that landed
    there).  Deterministic: identical specs give bit-identical histories.

    On instability the error carries the partial history recorded so far
    in ``partial_history``.
    """
    grid = spec.grid
    probe0, control0 = boundary_fields(spec.probe, spec.control, grid)
    edge = abs(probe0.values[0])
    if spec.probe.g0 > 0 and edge > 1e-3 * spec.probe.g0:
        warnings.warn(
            f"probe amplitude at tau_min is {edge:.3g} "
            f"(> 1e-3 of g0={spec.probe.g0:g}); the all-in-|3> initial "
            "condition assumes negligible fields at the grid start",
            stacklevel=2)

    snap_steps = sorted({grid.step_of_depth(d) for d in grid.snapshot_depths}
                        | {0})
    depths: list[float] = []
    probes: list[Envelope] = []
    controls: list[Envelope] = []
    coh32: list[np.ndarray] = []

    def record(step: int, g_env: Envelope, G_env: Envelope) -> None:
        depths.append(grid.depth_of_step(step))
        probes.append(g_env)
        controls.append(G_env)
        coh32.append(evolve_slice(g_env, G_env, delta=spec.detuning).rho32)

    def partial() -> FieldHistory:
        return FieldHistory(tuple(depths), tuple(probes), tuple(controls),
                            tuple(coh32), (probe0, control0))

    record(0, probe0, control0)
    g = probe0.values
    G = control0.values
    vmax = math.sqrt(float((np.abs(g) ** 2 + np.abs(G) ** 2).max()))
    limit = INSTABILITY_FACTOR * vmax if vmax > 0 else np.inf
    pending = iter(s for s in snap_steps if s > 0)
    next_snap = next(pending, None)
    for k in range(1, grid.n_zeta + 1):
        try:
            g, G, _ = _heun_step(g, G, grid, spec.detuning, freeze_control)
        except SimulationError as exc:
            exc.partial_history = partial()
            raise
        if max(np.abs(g).max(), np.abs(G).max()) > limit:
            raise MarchingInstabilityError(
                f"envelope sample exceeded {INSTABILITY_FACTOR}x the boundary "
                f"amplitude {vmax:.3g} at depth step {k} "
                f"(zeta={grid.depth_of_step(k):g})", partial_history=partial())
        if next_snap == k:
            record(k, Envelope(g, grid), Envelope(G, grid))
            next_snap = next(pending, None)
            if next_snap is None and k < grid.n_zeta:
                break  # nothing left to record
    return partial()


def retrieval_window_start(control: ControlShape) -> float:
    """First tau at which the switching notch has recovered to half the
    control amplitude; the retrieved pulse is extracted after this point.
    (The switching transient sits earlier; the retrieved light reaches the
    exit face only once the control is back on.)"""
    if control.kind != "super_gaussian":
        raise ScenarioError("retrieval window needs a super_gaussian control")
    center, width, alpha = control.tau2, control.sigma_p, control.alpha
    if control.tau3 is not None and control.tau3 > center:
        center = control.tau3
        width = control.sigma_p3 if control.sigma_p3 is not None else width
        alpha = control.alpha3 if control.alpha3 is not None else alpha
    return center + width * math.log(2.0) ** (1.0 / alpha)


@dataclass(frozen=True)
class StorageReport:
    """Diagnostics of one storage-and-retrieval run.  Ratios are
    retrieved/input; the retrieval window is the tau range the retrieved
    pulse was extracted from at ``depth``."""

    input_metrics: PulseMetrics
    retrieved_metrics: PulseMetrics
    fidelity: float
    energy_ratio: float
    fwhm_ratio: float
    peak_intensity_ratio: float
    retrieval_window: tuple[float, float]
    depth: float


def run_storage_retrieval(spec: ScenarioSpec,
                          measure_up_to: float | None = None,
                          ) -> tuple[FieldHistory, StorageReport]:
    """Propagate a switching scenario and extract the retrieved pulse.

    The control must carry a super-Gaussian notch and the probe must sit
    fully inside the medium when the control first reaches zero: the probe
    peak's depth at the switching center (from the stretched-coordinate
    map of the boundary fields) has to land strictly inside
    (0, zeta_max).  The deepest recorded snapshot (zeta_max is added if
    missing) supplies the retrieved pulse, measured after the control has
    recovered to half amplitude and before ``measure_up_to`` when given.
    """
    if spec.control.kind != "super_gaussian":
        raise ScenarioError("storage/retrieval needs a super_gaussian control "
                            f"(got {spec.control.kind!r})")
    grid = spec.grid
    if grid.zeta_max not in grid.snapshot_depths:
        grid = make_grid(grid.tau_min, grid.tau_max, grid.n_tau, grid.zeta_max,
                         grid.n_zeta,
                         grid.snapshot_depths + (grid.zeta_max,))
        spec = ScenarioSpec(spec.probe, spec.control, grid, spec.detuning,
                            spec.oracle_compare)

    # timing precondition via the stretched coordinate of the boundary fields
    probe0, control0 = boundary_fields(spec.probe, spec.control, grid)
    tau = grid.tau
    v2 = np.abs(probe0.values) ** 2 + np.abs(control0.values) ** 2
    z = np.concatenate(([0.0],
                        np.cumsum(0.5 * (v2[1:] + v2[:-1]) * grid.dtau)))
    t_peak = tau[int(np.abs(probe0.values).argmax())]
    switch = spec.control.tau2
    depth_at_switch = float(np.interp(switch, tau, z)
                            - np.interp(t_peak, tau, z))
    if not 0.0 < depth_at_switch < grid.zeta_max:
        raise ScenarioError(
            "timing conflict: at the switching center tau2="
            f"{switch:g} the probe peak sits at depth "
            f"{depth_at_switch:g}, outside (0, {grid.zeta_max:g}); the pulse "
            "must be fully inside the medium when the control reaches zero")

    history = propagate(spec)
    t_rec = retrieval_window_start(spec.control)
    t_hi = grid.tau_max if measure_up_to is None \
        else min(grid.tau_max, float(measure_up_to))
    if not t_hi > t_rec:
        raise ScenarioError(
            f"retrieval window ({t_rec:g}, {t_hi:g}] is empty; extend the "
            "grid past the control recovery")
    window = (t_rec, t_hi)
    retrieved_env = history.probe[-1]
    input_metrics = pulse_metrics(probe0)
    retrieved = pulse_metrics(retrieved_env, window=window)
    fidelity = shape_fidelity(probe0, retrieved_env, windows=(None, window))
    report = StorageReport(
        input_metrics=input_metrics,
        retrieved_metrics=retrieved,
        fidelity=fidelity,
        energy_ratio=retrieved.energy / input_metrics.energy,
        fwhm_ratio=retrieved.fwhm / input_metrics.fwhm,
        peak_intensity_ratio=retrieved.peak_intensity
        / input_metrics.peak_intensity,
        retrieval_window=window,
        depth=history.depths[-1])
    return history, report
