"""Exception hierarchy shared by the library and the CLI."""


class FMZVError(Exception):
    """Base class for all errors raised by :mod:`fmzv`."""


class ParseError(FMZVError, ValueError):
    """Malformed index text.  ``position`` is the offending character offset."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class DenominatorCollision(FMZVError, ArithmeticError):
    """A rational's denominator is divisible by the modulus prime.

    Sweeps catch this and record the prime as skipped.
    """

    def __init__(self, prime: int, denominator: int):
        super().__init__(f"denominator {denominator} is divisible by p={prime}")
        self.prime = prime
        self.denominator = denominator


class NotInvertible(FMZVError, ArithmeticError):
    pass


class SizeGuard(FMZVError, ValueError):
    """Brute-force enumeration would exceed its loop budget."""


class PoleResidue(FMZVError, ArithmeticError):
    """A pole that should cancel did not.  Always an implementation bug."""


class TruncationTooSmall(FMZVError, ValueError):
    pass


class DomainError(FMZVError, ValueError):
    """Parameters lie outside the region where a series converges."""


class OrderViolation(FMZVError, ValueError):
    pass
