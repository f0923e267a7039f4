"""Exception hierarchy shared by all sohrlab layers.

The CLI maps these onto exit codes: ConfigError -> 1, NumericalError -> 2.
"""


class SohrlabError(Exception):
    """Base class for all sohrlab errors."""


class ConfigError(SohrlabError):
    """Invalid configuration, file format, or argument combination."""


class NumericalError(SohrlabError):
    """A numerical method failed (singular system, blow-up, lost positivity)."""


class PositivityError(NumericalError):
    """Density left the admissible set.  Carries the offending cell."""

    def __init__(self, message, cell=None, suggested_dt=None):
        super().__init__(message)
        self.cell = cell
        self.suggested_dt = suggested_dt


class InstabilityError(NumericalError):
    """Blow-up detector tripped (non-finite values or density > 1e6)."""

    def __init__(self, message, step=None, time=None):
        super().__init__(message)
        self.step = step
        self.time = time
