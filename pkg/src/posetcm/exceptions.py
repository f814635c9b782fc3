"""Exception hierarchy shared across the package."""

from __future__ import annotations


class PosetError(ValueError):
    """Base class for invalid poset input or unsupported operations."""


class UnknownLabel(PosetError):
    pass


class CycleDetected(PosetError):
    pass


class RedundantCover(PosetError):
    def __init__(self, pair: tuple[str, str]):
        self.pair = pair
        super().__init__(f"cover {pair[0]!r} < {pair[1]!r} is implied by other covers")


class TooLarge(PosetError):
    pass


class NotComparable(PosetError):
    pass


class NotBounded(PosetError):
    pass


class LabelClash(PosetError):
    pass


class EmptyPoset(PosetError):
    pass


class NotALattice(PosetError):
    pass


class FaceNotInComplex(ValueError):
    pass


class VoidComplex(ValueError):
    pass


class NotPure(ValueError):
    pass


class SearchBudgetExceeded(RuntimeError):
    """Raised when a shelling search exhausts its node budget.

    This is an inconclusive outcome, never a negative answer.
    """

    def __init__(self, budget: int, interval: tuple[str, str] | None = None):
        self.budget = budget
        self.interval = interval
        where = f" on interval [{interval[0]}, {interval[1]}]" if interval else ""
        super().__init__(f"shelling search exceeded {budget} nodes{where}")


class RouteMismatch(AssertionError):
    """The two Cohen-Macaulay criteria disagreed; always an implementation bug."""


class UnknownFamily(KeyError):
    pass


class BadParams(ValueError):
    pass
