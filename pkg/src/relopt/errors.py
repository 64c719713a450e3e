# -*- coding: utf-8 -*-
#############################################################################
# zlib License
#
# (C) 2026 RelOpt developers
#
# This software is provided 'as-is', without any express or implied
# warranty.  In no event will the authors be held liable for any damages
# arising from the use of this software.
#
# Permission is granted to anyone to use this software for any purpose,
# including commercial applications, and to alter it and redistribute it
# freely, subject to the following restrictions:
#
# 1. The origin of this software must not be misrepresented; you must not
#    claim that you wrote the original software. If you use this software
#    in a product, an acknowledgment in the product documentation would be
#    appreciated but is not required.
# 2. Altered source versions must be plainly marked as such, and must not be
#    misrepresented as being the original software.
# 3. This notice may not be removed or altered from any source distribution.
#############################################################################

"""The errors module

Contains the exception hierarchy used throughout RelOpt. All exceptions derive from
RelOptError, which is itself a RuntimeError, so callers which only care about "something went
wrong in the query compiler" can catch a single class.

Errors raised by the SQL frontend always carry a position (line and column, both 1-based) inside
the input string. Errors raised elsewhere may carry one when it is known.

"""

from __future__ import annotations

from typing import Optional
from typing import Tuple

Position = Tuple[int, int]


class RelOptError(RuntimeError):
    """Base class of every error raised by RelOpt

    Parameters
    ----------
    message
        The human readable message

    position
        Optional (line, column) location in the SQL text the error refers to
    """

    def __init__(self, message: str, position: Optional[Position] = None):
        super().__init__(message)
        self.message = message
        self.position = position

    def __str__(self):
        if self.position is None:
            return self.message
        return "line {}, column {}: {}".format(self.position[0], self.position[1], self.message)


# SQL frontend
class SqlError(RelOptError):
    pass


class UnterminatedString(SqlError):
    pass


class IllegalCharacter(SqlError):
    pass


class SqlSyntaxError(SqlError):
    """Raised by the parser, listing the tokens which would have been accepted"""

    def __init__(self, message: str, position: Optional[Position] = None, expected: Tuple[str, ...] = ()):
        self.expected = tuple(expected)
        if self.expected:
            message = "{} (expected one of: {})".format(message, ", ".join(self.expected))
        super().__init__(message, position)


class SqlValidationError(SqlError):
    pass


class UnknownTable(SqlValidationError):
    pass


class UnknownColumn(SqlValidationError):
    pass


class AmbiguousColumn(SqlValidationError):
    pass


class NotGrouped(SqlValidationError):
    def __init__(self, column: str, position: Optional[Position] = None):
        self.column = column
        super().__init__("Expression '{}' is not being grouped".format(column), position)


# Relational algebra
class AlgebraError(RelOptError):
    pass


class ArityError(AlgebraError):
    pass


class ColumnOutOfRange(AlgebraError):
    pass


class EmptyStack(AlgebraError):
    pass


# Expression evaluation
class EvaluationError(RelOptError):
    """Base class for runtime errors while computing rows

    As the error propagates out of the executing operators, each one appends its label to
    `context`, so the final message names the operator chain the failure happened in.
    """

    def __init__(self, message: str, position: Optional[Position] = None):
        super().__init__(message, position)
        self.context = []

    def add_context(self, operator: str):
        self.context.append(operator)

    def __str__(self):
        text = super().__str__()
        if self.context:
            text += " [in {}]".format(" < ".join(self.context))
        return text


class DivisionByZero(EvaluationError):
    pass


class CastError(EvaluationError):
    pass


class UnsupportedOperation(EvaluationError):
    pass


class TypeMismatch(SqlValidationError, AlgebraError, EvaluationError):
    """Raised when an expression is applied to operands of the wrong type

    Shared by the algebra (construction time), the validator and the evaluator.
    """

    def __init__(self, message: str, position: Optional[Position] = None):
        EvaluationError.__init__(self, message, position)


# Planner
class PlannerError(RelOptError):
    pass


class NoExecutablePlan(PlannerError):
    pass


class FixpointNotReached(PlannerError):
    pass


class UnknownMetadataKind(PlannerError):
    pass


class RuleSetError(PlannerError):
    pass


# Model / catalog
class ModelError(RelOptError):
    pass


class ModelParseError(ModelError):
    pass


class UnknownAdapterKind(ModelError):
    pass


class MissingFile(ModelError):
    pass


class DuplicateTable(ModelError):
    pass


# Adapters
class AdapterError(RelOptError):
    pass


class CsvParseError(AdapterError):
    def __init__(self, message: str, line: int, col: int, field: str):
        self.line = line
        self.col = col
        self.field = field
        super().__init__("{} (line {}, column {}, field '{}')".format(message, line, col, field))


class HeaderMismatch(AdapterError):
    pass


class DocumentParseError(AdapterError):
    def __init__(self, message: str, line: int):
        self.line = line
        super().__init__("{} (line {})".format(message, line))


class UnsupportedNode(AdapterError):
    pass


# Materialized views
class MaterializationError(RelOptError):
    pass


class RowTypeMismatch(MaterializationError):
    pass
