"""Exception types shared across the package.

Every error raised on purpose derives from CircwalkError so callers (and the
CLI) can separate expected validation failures from genuine bugs.
"""


class CircwalkError(Exception):
    """Base class for all errors raised by circwalk."""


# ---- graph construction / spectra ----

class EmptyRow(CircwalkError):
    """First row of a circulant matrix must contain at least one entry."""


class SymmetryViolation(CircwalkError):
    """c_j != c_{N-j}: the row does not describe an undirected graph."""


class InvalidSize(CircwalkError):
    """Size parameter invalid for the requested graph family."""


class NonRealSpectrum(CircwalkError):
    """Imaginary residue of the spectrum exceeded tolerance."""


class TooLarge(CircwalkError):
    """Dense construction refused above the desk-scale guard."""


# ---- circuit compilation ----

class NotPowerOfTwo(CircwalkError):
    """Operation requires a dimension of the form 2^n."""


class WidthExceeded(CircwalkError):
    """Circuit width above the guard for the requested operation."""


class RangeOverflow(CircwalkError):
    """An eigenvalue does not fit the configured fixed-point format."""


class QasmExportError(CircwalkError):
    """Circuit contains gates with no OpenQASM 2.0 representation."""


# ---- simulation ----

class IndexOutOfRange(CircwalkError):
    """Qubit or basis-state index outside the register."""


class ZeroVector(CircwalkError):
    """Cannot normalize an (almost) zero amplitude vector."""


class WidthMismatch(CircwalkError):
    """State width incompatible with the circuit or operation."""


# ---- analysis ----

class ShapeMismatch(CircwalkError):
    """Distributions / matrices with incompatible shapes."""


class LengthMismatch(CircwalkError):
    """Phase lists of different lengths."""


class ZeroExact(CircwalkError):
    """Multiplicative error undefined: exact probability is zero."""
