"""Exception types shared across the package.

Plain invalid arguments (dimension mismatches, out-of-range values) raise
ValueError at the point of use; the classes here mark failures that the CLI
maps to dedicated exit codes.
"""

__all__ = ["ConfigError", "CalibrationError", "SolverError", "InfeasibleSceneError"]


class ConfigError(Exception):
    """Malformed or contradictory run configuration (CLI exit code 2)."""


class CalibrationError(Exception):
    """Calibration anchors are infeasible or the spec is degenerate for them."""


class SolverError(Exception):
    """Contact solve failed to meet its tolerances (CLI exit code 3).

    Attributes:
        diagnostics: dict with the last iterate's penetration, residual,
            iteration count and pressure, when available.
    """

    def __init__(self, message, diagnostics=None):
        super().__init__(message)
        self.diagnostics = dict(diagnostics or {})


class InfeasibleSceneError(SolverError):
    """The unpressurized straight pose already violates the scene clearance."""
