"""Exception types shared across the package.

Every exception carries the witness data that triggered it, so callers
(and the CLI) can print actionable diagnostics instead of bare names.
"""

from __future__ import annotations


class BrnrError(Exception):
    """Base class for all package errors."""


class NoIdentity(BrnrError):
    """The table has no two-sided identity element."""


class NoInverse(BrnrError):
    def __init__(self, element: int):
        self.element = element
        super().__init__(f"element {element} has no inverse")


class NotAssociative(BrnrError):
    def __init__(self, g: int, h: int, k: int):
        self.triple = (g, h, k)
        super().__init__(f"associativity fails at triple ({g}, {h}, {k})")


class InvalidPermutation(BrnrError):
    """A generator is not a bijection on {1..n}."""


class OrderCapExceeded(BrnrError):
    def __init__(self, cap: int, detail: str = ""):
        self.cap = cap
        msg = f"order cap {cap} exceeded"
        if detail:
            msg += f": {detail}"
        super().__init__(msg)


class NotAHomomorphism(BrnrError):
    def __init__(self, g: int, h: int):
        self.pair = (g, h)
        super().__init__(f"character is not multiplicative at pair ({g}, {h})")


class CoefficientMismatch(BrnrError):
    """Restriction requested between results over different coefficients."""


class UnknownPreset(BrnrError):
    pass


class PNotOddPrime(BrnrError):
    def __init__(self, p: int):
        self.p = p
        super().__init__(f"{p} is not an odd prime")


class CycFailed(BrnrError):
    """The cyclotomic-cyclicity condition fails; carries a witness element."""

    def __init__(self, witness_element: int, witness_order: int):
        self.witness_element = witness_element
        self.witness_order = witness_order
        super().__init__(
            f"cyclicity condition fails at element {witness_element} "
            f"of order {witness_order}"
        )


class NotPerfect(BrnrError):
    """The group has nontrivial characters, so the simple-group rule is off."""


class TheoremViolation(BrnrError):
    """Two quantities a proved identity forces to agree came out different.

    This always indicates a bug in the engine, never a mathematical outcome.
    """
