"""Exception hierarchy shared by every catgrp module."""

from __future__ import annotations


class CatGrpError(Exception):
    """Base class for all errors raised by catgrp."""


class MalformedInputError(CatGrpError, ValueError):
    """Input data does not have the shape or range a type requires."""


class OrderCapExceeded(MalformedInputError):
    """A group would exceed the configured order cap."""

    def __init__(self, order: int, cap: int):
        super().__init__(
            f"group order {order} exceeds cap {cap} (set CATGRP_ORDER_CAP to raise it)"
        )
        self.order = order
        self.cap = cap


class MalformedCompositionError(MalformedInputError):
    """A composition table is partial on, or defined off, the composable pairs."""


class ContractError(CatGrpError):
    """An operation was called with arguments violating its precondition.

    ``witness`` carries the element indices exhibiting the violation when
    there is one, and ``report`` the failed check if a check produced it.
    """

    def __init__(self, message: str, witness=None, report=None):
        super().__init__(message)
        self.witness = None if witness is None else list(witness)
        self.report = report


class NotNormalError(ContractError):
    """A subgroup expected to be normal is not."""
