"""Solver failure types."""


class SolverBlowUp(RuntimeError):
    """NaN or Inf appeared in the solution during time stepping."""

    def __init__(self, message, step=None):
        super().__init__(message)
        self.step = step


class UnphysicalState(RuntimeError):
    """Nonpositive density or pressure in an interior cell."""

    def __init__(self, message, step=None, cell=None, state=None):
        super().__init__(message)
        self.step = step
        self.cell = cell
        self.state = state


class ConfigError(ValueError):
    """Invalid run configuration text."""
