"""
COLOR ALGEBRA ENGINE - ERRORS
=============================
Exception hierarchy shared by every engine module.

Verification failures are report content, not exceptions. Everything here
signals an input the engine cannot work with, so the CLI maps all of it to
exit code 2.
"""

from typing import Any, Optional


class EngineError(Exception):
    """Base class for recoverable engine errors"""
    code = "engine_error"
    exit_code = 2

    def __init__(self, message: str, detail: Optional[Any] = None):
        super().__init__(message)
        self.message = message
        self.detail = detail

    def to_dict(self) -> dict:
        payload = {"code": self.code, "message": self.message}
        if self.detail is not None:
            payload["detail"] = self.detail
        return payload


# Scalars
class MixedRootOrder(EngineError):
    code = "mixed_root_order"


class DivisionByZero(EngineError, ZeroDivisionError):
    code = "division_by_zero"


# Grading groups
class ElementOutOfGroup(EngineError):
    code = "element_out_of_group"


class EmptyBlocks(EngineError):
    code = "empty_blocks"


# Commutation factors and multipliers
class InvalidFactor(EngineError):
    code = "invalid_factor"


class ParityNotLinear(EngineError):
    code = "parity_not_linear"


class NoBicharacterMultiplier(EngineError):
    code = "no_bicharacter_multiplier"


class MultiplierMismatch(EngineError):
    code = "multiplier_mismatch"


# Algebras
class UnknownBasisElement(EngineError):
    code = "unknown_basis_element"


class GradeMismatch(EngineError):
    code = "grade_mismatch"


class DegreeMismatch(EngineError):
    code = "degree_mismatch"


class NotAssociative(EngineError):
    code = "not_associative"


class NotGraded(EngineError):
    code = "not_graded"


class EmptyComponent(EngineError):
    code = "empty_component"


class DimensionMismatch(EngineError):
    code = "dimension_mismatch"


class SymmetryPrecondition(EngineError):
    code = "symmetry_precondition"


# Constructions
class UnsupportedRep(EngineError):
    code = "unsupported_rep"

    def __init__(self, message: str, algebra: Any = None):
        super().__init__(message)
        self.algebra = algebra


class UnsupportedKind(EngineError):
    code = "unsupported_kind"


# Exchange algebras and realizations
class UnknownGenerator(EngineError):
    code = "unknown_generator"


class GradingMismatch(EngineError):
    code = "grading_mismatch"


class MissingZfGrading(EngineError):
    code = "missing_zf_grading"


# Files and configuration
class SpecFormatError(EngineError):
    code = "spec_format_error"


class ConfigError(EngineError):
    code = "config_error"
