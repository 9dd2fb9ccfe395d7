"""Exception hierarchy.

Every error carries an ``exit_code`` used by the command-line front end:
1 when a property fails or a search comes up empty, 2 for malformed input
or an exceeded feasibility guard.
"""

from __future__ import annotations


class GmMdsError(Exception):
    exit_code = 2

    def to_json(self) -> dict:
        return {"error": type(self).__name__, "message": str(self)}


class InputError(GmMdsError, ValueError):
    """Malformed input (bad JSON document, wrong dimensions, ...)."""


# -- finite fields ---------------------------------------------------------

class NotPrime(InputError):
    pass


class Reducible(InputError):
    pass


class DegreeMismatch(InputError):
    pass


class UnsupportedFieldSize(InputError):
    pass


class FieldMismatch(InputError):
    pass


class DivisionByZero(GmMdsError, ZeroDivisionError):
    pass


# -- patterns, polynomials, families ---------------------------------------

class DimensionMismatch(InputError):
    pass


class BadSubsetSize(InputError):
    pass


class MissingVariable(InputError, KeyError):
    def __str__(self) -> str:  # KeyError quotes its argument otherwise
        return Exception.__str__(self)


class InvalidFamily(InputError):
    pass


class NotReduced(InputError):
    pass


class DuplicateAlphas(InputError):
    pass


class NotApplicable(InputError):
    exit_code = 1


class TooLarge(GmMdsError):
    """A feasibility guard was exceeded."""


class PreconditionViolated(GmMdsError):
    exit_code = 1

    def __init__(self, message: str, witness=None, union_size=None):
        super().__init__(message)
        self.witness = witness
        self.union_size = union_size

    def to_json(self) -> dict:
        out = super().to_json()
        if self.witness is not None:
            out["witness"] = list(self.witness)
            out["union_size"] = self.union_size
        return out


class ConditionViolated(PreconditionViolated):
    pass


class CutConditionViolated(PreconditionViolated):
    pass


# -- construction ----------------------------------------------------------

class FieldTooSmall(GmMdsError):
    exit_code = 1


class NotFound(GmMdsError):
    exit_code = 1


class IdenticallyZero(GmMdsError):
    exit_code = 1


class RateExceedsCapacity(GmMdsError):
    exit_code = 1
