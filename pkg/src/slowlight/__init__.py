"""Resonant pulse-pair propagation in a three-level lambda medium.

A nondimensional Maxwell-Bloch simulator for a homogeneously broadened
cold lambda medium: transparency-window spectroscopy, slow light,
storage and retrieval of probe pulses at weak and moderate intensity, and
the shape-preserving field-pair dynamics that explain them, with the
analytic adiabatic-limit solutions available as an independent check on
the numerics.

Units: times in 1/gamma, depths in gamma/eta, Rabi frequencies in gamma.
"""

from .adiabaton import (AdiabatonSolution, AdiabaticityReport,
                        adiabatic_coherences, adiabaticity_margin,
                        analytic_fields_cw, analytic_fields_general,
                        v_conservation_error)
from .analysis import (PulseMetrics, RatioPoint, intensity_ratio_curve,
                       pulse_metrics, shape_fidelity)
from .bloch import (CoherenceSlice, bloch_rhs, evolve_slice,
                    integrate_constant_fields, population_records, rk4_step)
from .core import (AtomState, Envelope, FieldHistory, Grid, MediumFrame,
                   eta_from_physical, make_grid)
from .errors import (ConfigError, DegenerateSteadyStateError,
                     DivisionHazardError, IntegrationInstabilityError,
                     InversionError, MarchingInstabilityError, MetricError,
                     ScenarioError, ShapeError, SimulationError,
                     ValidationError)
from .propagation import (ScenarioSpec, StorageReport, advance_depth,
                          propagate, retrieval_window_start,
                          run_storage_retrieval)
from .pulses import (ControlShape, ProbeShape, boundary_fields,
                     sample_control, sample_probe)
from .spectroscopy import (SusceptibilityScan, scan_susceptibility,
                           steady_state, steady_state_evolved,
                           transparency_width)

__version__ = "0.1.0"

__all__ = [
    "AdiabatonSolution", "AdiabaticityReport", "AtomState", "CoherenceSlice",
    "ConfigError", "ControlShape", "DegenerateSteadyStateError",
    "DivisionHazardError", "Envelope", "FieldHistory", "Grid",
    "IntegrationInstabilityError", "InversionError",
    "MarchingInstabilityError", "MediumFrame", "MetricError", "ProbeShape",
    "PulseMetrics", "RatioPoint", "ScenarioError", "ScenarioSpec",
    "ShapeError", "SimulationError", "StorageReport", "SusceptibilityScan",
    "ValidationError",
    "adiabatic_coherences", "adiabaticity_margin", "advance_depth",
    "analytic_fields_cw", "analytic_fields_general", "bloch_rhs",
    "boundary_fields", "eta_from_physical", "evolve_slice",
    "integrate_constant_fields", "intensity_ratio_curve", "make_grid",
    "population_records", "propagate", "pulse_metrics",
    "retrieval_window_start", "rk4_step", "run_storage_retrieval",
    "sample_control", "sample_probe", "scan_susceptibility",
    "shape_fidelity", "steady_state", "steady_state_evolved",
    "transparency_width", "v_conservation_error",
]
