"""
Errors raised by the torsion library. Commands map them to exit statuses:
DomainError -> 1, OSError -> 2, SweepAuditError -> 3.
"""
import math


class TorsionError(Exception):
    """
    Base class of every error raised on purpose by the library
    """


class DomainError(TorsionError, ValueError):
    """
    An argument lies outside the documented domain of an operation; the message names the precondition
    """


class InsufficientScanRangeError(DomainError):
    """
    The root scan found fewer sign changes of the frequency equation than were asked for
    """

    def __init__(self, requested: int, found: int, scan_max: float):
        self.requested = requested
        self.found = found
        self.scan_max = scan_max
        super().__init__(
            f"insufficient scan range: requested {requested} roots but only {found} found in (0, {scan_max:g}]; "
            f"increase scan_max (the n-th root lies near {math.pi * (requested + 0.75):.1f})"
        )


class SweepAuditError(TorsionError):
    """
    A sweep row failed the post-hoc residual or finiteness check
    """
