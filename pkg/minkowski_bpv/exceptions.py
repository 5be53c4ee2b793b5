"""Exceptions raised by Minkowski BPV."""


class BpvError(Exception):
    """Base class for all library errors."""


class PreconditionError(BpvError, ValueError):
    """An operation was called outside its admissible input range."""


class NormError(PreconditionError):
    """The norm data does not describe a smooth Minkowski norm."""


class ConvergenceError(BpvError, RuntimeError):
    """An iterative method exhausted its budget without certification."""


class RigidityError(BpvError, RuntimeError):
    """A numerical outcome contradicts the sign structure of H_alpha."""
