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

"""The evaluator module

Computes the value of a row expression over one row. Values are plain Python objects: None for
NULL, bool, int (INT64), float (FLOAT64), str, list (ARRAY) and dict with str keys (MAP).

NULL handling follows three-valued logic: comparisons and arithmetic with a NULL operand give NULL,
AND/OR use Kleene semantics. Comparing values of incompatible kinds is an error; INT64 and FLOAT64
compare numerically.

"""

from __future__ import annotations

import json
import math
from typing import Any
from typing import Callable
from typing import Sequence

from ..datatypes import ScalarType
from ..datatypes import TypeKind
from ..errors import CastError
from ..errors import DivisionByZero
from ..errors import EvaluationError
from ..errors import TypeMismatch
from ..rex import Call
from ..rex import ColumnRef
from ..rex import Literal
from ..rex import Op
from ..rex import RexNode


def value_kind(value: Any) -> str:
    if value is None:
        return "NULL"
    if isinstance(value, bool):
        return "BOOLEAN"
    if isinstance(value, int):
        return "INT64"
    if isinstance(value, float):
        return "FLOAT64"
    if isinstance(value, str):
        return "STRING"
    if isinstance(value, list):
        return "ARRAY"
    if isinstance(value, dict):
        return "MAP"
    return type(value).__name__


def _is_number(value: Any) -> bool:
    return isinstance(value, (int, float)) and not isinstance(value, bool)


def compare_values(left: Any, right: Any) -> int:
    """Three way comparison of two non-NULL values

    Raises
    ------
    TypeMismatch
        If the values are of incompatible kinds (or are maps)
    """
    if isinstance(left, list) and isinstance(right, list):
        for mine, theirs in zip(left, right):
            if mine is None or theirs is None:
                if mine is None and theirs is None:
                    continue
                return 1 if mine is None else -1
            result = compare_values(mine, theirs)
            if result != 0:
                return result
        return (len(left) > len(right)) - (len(left) < len(right))
    numeric = _is_number(left) and _is_number(right)
    if not numeric and (value_kind(left) != value_kind(right) or isinstance(left, dict)):
        raise TypeMismatch("Can not compare {} with {}".format(value_kind(left), value_kind(right)))
    return (left > right) - (left < right)


def values_equal(left: Any, right: Any) -> bool:
    if isinstance(left, dict) and isinstance(right, dict):
        return left == right
    return compare_values(left, right) == 0


def _comparison(op: Op) -> Callable[[Any, Any], Any]:
    def compare(left: Any, right: Any) -> Any:
        if left is None or right is None:
            return None
        if op == Op.EQ:
            return values_equal(left, right)
        if op == Op.NE:
            return not values_equal(left, right)
        result = compare_values(left, right)
        if op == Op.LT:
            return result < 0
        if op == Op.LE:
            return result <= 0
        if op == Op.GT:
            return result > 0
        return result >= 0

    return compare


def _check_number(value: Any, op: Op):
    if not _is_number(value):
        raise TypeMismatch("Operator {} requires numeric operands, got {}".format(op.value, value_kind(value)))


def _arithmetic(op: Op, left: Any, right: Any) -> Any:
    if left is None or right is None:
        return None
    _check_number(left, op)
    _check_number(right, op)
    if op == Op.PLUS:
        return left + right
    if op == Op.MINUS:
        return left - right
    if op == Op.TIMES:
        return left * right
    if right == 0:
        raise DivisionByZero("Division by zero")
    if isinstance(left, int) and isinstance(right, int):
        # Integer division truncates towards zero
        quotient = abs(left) // abs(right)
        return quotient if (left >= 0) == (right >= 0) else -quotient
    return left / right


def _item(container: Any, key: Any) -> Any:
    if container is None or key is None:
        return None
    if isinstance(container, dict):
        if not isinstance(key, str):
            raise TypeMismatch("MAP keys are STRING, got {}".format(value_kind(key)))
        return container.get(key)
    if isinstance(container, list):
        if not isinstance(key, int) or isinstance(key, bool):
            raise TypeMismatch("ARRAY indices are INT64, got {}".format(value_kind(key)))
        if 0 <= key < len(container):
            return container[key]
        return None
    raise TypeMismatch("Item access requires a MAP or ARRAY value, got {}".format(value_kind(container)))


def cast_value(value: Any, target: ScalarType) -> Any:
    """Convert a non-NULL value to the target type

    Raises
    ------
    CastError
        If the value can not be represented in the target type
    """
    kind = target.kind
    try:
        if kind in (TypeKind.ANY, TypeKind.NULL):
            return value
        if kind == TypeKind.STRING:
            if isinstance(value, str):
                return value
            if isinstance(value, bool):
                return "true" if value else "false"
            if isinstance(value, float):
                return repr(value)
            if isinstance(value, (list, dict)):
                return json.dumps(value, sort_keys=True)
            return str(value)
        if kind == TypeKind.INT64:
            if isinstance(value, bool):
                return int(value)
            if isinstance(value, int):
                return value
            if isinstance(value, float):
                if math.isnan(value) or math.isinf(value):
                    raise ValueError(value)
                return int(value)
            if isinstance(value, str):
                return int(value.strip())
        if kind == TypeKind.FLOAT64:
            if _is_number(value):
                return float(value)
            if isinstance(value, str):
                return float(value.strip())
        if kind == TypeKind.BOOLEAN:
            if isinstance(value, bool):
                return value
            if isinstance(value, str) and value.strip().lower() in ("true", "false"):
                return value.strip().lower() == "true"
        if kind == TypeKind.ARRAY and isinstance(value, list):
            return value
        if kind == TypeKind.MAP and isinstance(value, dict):
            return value
    except (ValueError, OverflowError):
        pass
    raise CastError("Can not cast {} value {!r} to {}".format(value_kind(value), value, target))


def _cast(expression: Call, value: Any) -> Any:
    if value is None:
        return None
    source = expression.operands[0].type
    try:
        return cast_value(value, expression.type)
    except CastError:
        # Values read from schemaless documents become NULL when they do not fit
        if source.kind == TypeKind.ANY:
            return None
        raise


def _and(values: Sequence[Any]) -> Any:
    result = True
    for value in values:
        if value is False:
            return False
        if value is None:
            result = None
        elif value is not True:
            raise TypeMismatch("AND requires BOOLEAN operands, got {}".format(value_kind(value)))
    return result


def _or(values: Sequence[Any]) -> Any:
    result = False
    for value in values:
        if value is True:
            return True
        if value is None:
            result = None
        elif value is not False:
            raise TypeMismatch("OR requires BOOLEAN operands, got {}".format(value_kind(value)))
    return result


_COMPARISONS = {op: _comparison(op) for op in (Op.EQ, Op.NE, Op.LT, Op.LE, Op.GT, Op.GE)}


def evaluate(expression: RexNode, row: Sequence[Any]) -> Any:
    """Compute the value of an expression over a row

    Raises
    ------
    DivisionByZero
        On integer or float division by zero
    TypeMismatch
        When a dynamically typed value does not fit the operator
    CastError
        When a CAST of a statically typed value fails
    """
    if isinstance(expression, ColumnRef):
        return row[expression.index]
    if isinstance(expression, Literal):
        return expression.value
    if not isinstance(expression, Call):
        raise EvaluationError("Can not evaluate {}".format(expression))
    op = expression.op
    if op == Op.AND:
        return _and([evaluate(operand, row) for operand in expression.operands])
    if op == Op.OR:
        return _or([evaluate(operand, row) for operand in expression.operands])
    if op == Op.COALESCE:
        for operand in expression.operands:
            value = evaluate(operand, row)
            if value is not None:
                return value
        return None
    if op == Op.CASE:
        operands = expression.operands
        for position in range(0, len(operands) - 1, 2):
            if evaluate(operands[position], row) is True:
                return evaluate(operands[position + 1], row)
        return evaluate(operands[-1], row)
    values = [evaluate(operand, row) for operand in expression.operands]
    if op in _COMPARISONS:
        return _COMPARISONS[op](values[0], values[1])
    if op in (Op.PLUS, Op.MINUS, Op.TIMES, Op.DIVIDE):
        return _arithmetic(op, values[0], values[1])
    if op == Op.NOT:
        if values[0] is None:
            return None
        if not isinstance(values[0], bool):
            raise TypeMismatch("NOT requires a BOOLEAN operand, got {}".format(value_kind(values[0])))
        return not values[0]
    if op == Op.IS_NULL:
        return values[0] is None
    if op == Op.IS_NOT_NULL:
        return values[0] is not None
    if op == Op.ITEM:
        return _item(values[0], values[1])
    if op == Op.CAST:
        return _cast(expression, values[0])
    raise EvaluationError("Unknown operator {}".format(op))


def is_true(expression: RexNode, row: Sequence[Any]) -> bool:
    """Filter semantics: only TRUE keeps a row (FALSE and NULL drop it)"""
    return evaluate(expression, row) is True


def sort_compare(collation, left: Sequence[Any], right: Sequence[Any]) -> int:
    """Compare two rows by a collation; NULLs sort last ascending and first descending"""
    for key in collation:
        mine, theirs = left[key.index], right[key.index]
        if mine is None and theirs is None:
            continue
        descending = key.direction.value == "DESC"
        if mine is None:
            return -1 if descending else 1
        if theirs is None:
            return 1 if descending else -1
        result = compare_values(mine, theirs)
        if result != 0:
            return -result if descending else result
    return 0
