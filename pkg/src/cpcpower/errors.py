"""Exception types raised by cpcpower."""


class CPCError(Exception):
    """Base class for all cpcpower errors."""


class OmegaMismatchError(CPCError, ValueError):
    """Two signals with different fundamental frequencies were combined."""


class SamplingError(CPCError, ValueError):
    """Sample count does not satisfy the Nyquist bound of the signal."""


class SingularAdmittanceError(CPCError, ArithmeticError):
    """Network admittance is unbounded at the queried frequency."""


class MissingHarmonicError(CPCError, KeyError):
    """A harmonic order required by an operation is not present."""

    def __str__(self):
        return str(self.args[0]) if self.args else ""


class ZeroSourceError(CPCError, ZeroDivisionError):
    """Source voltage (or its derivative) has zero rms value."""


class NumericalConsistencyError(CPCError, ArithmeticError):
    """A quantity that must be nonnegative came out clearly negative."""


class UnsupportedCompensatorOrderError(CPCError, ValueError):
    """Series-LC synthesis needs a current on exactly two harmonics."""


class NonphysicalCompensatorError(CPCError, ValueError):
    """Synthesis produced a nonpositive element value."""
