"""Exception types raised across the package.

Everything derives from :class:`SimulationError` so callers can catch the
whole family at once; validation problems additionally derive from
``ValueError``.
"""


class SimulationError(Exception):
    """Base class for all errors raised by this package."""


class ValidationError(SimulationError, ValueError):
    """A constructor argument or configuration value violates its contract."""


class IntegrationInstabilityError(SimulationError):
    """The atomic-state integration left the physical region (bad step size
    or wildly strong fields).  Populations are never clamped; the violation
    aborts with diagnostics instead."""


class MarchingInstabilityError(SimulationError):
    """A depth-marching step produced envelope samples far beyond the
    boundary field scale.  Carries ``partial_history`` with the snapshots
    recorded before the failure."""

    def __init__(self, message, partial_history=None):
        super().__init__(message)
        self.partial_history = partial_history


class ScenarioError(SimulationError):
    """A scenario's pulse timing or geometry is inconsistent (for example a
    storage run whose probe is not inside the medium at switch-off)."""


class DegenerateSteadyStateError(SimulationError):
    """The stationary Bloch system is singular, so no unique steady state
    exists (both fields zero, for instance)."""


class ShapeError(SimulationError):
    """A scan or profile lacks the structure a measurement requires (no
    transparency dip, no bracketing absorption maxima, ...)."""


class MetricError(SimulationError):
    """A pulse diagnostic is undefined for the given envelope/window (empty
    window, clipped pulse, zero energy)."""


class DivisionHazardError(SimulationError):
    """The combined field amplitude V is too small somewhere a division by V
    is required."""


class InversionError(SimulationError):
    """The characteristic map z(tau) is not strictly monotone, so it cannot
    be inverted (V vanished over a region)."""


class ConfigError(SimulationError):
    """A scenario configuration file could not be parsed."""
