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

"""The rex module

Row expressions: the scalar expressions used inside relational operators (filter conditions,
projections, join conditions). Columns are referenced positionally with ColumnRef; names only
exist in the SQL frontend.

Every expression knows its type, derived when the expression is built, and has a digest. Digests
list AND/OR operands sorted by their own digests so that predicates which only differ in the order
of their conjuncts are recognized as identical.

"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import Any
from typing import Callable
from typing import Iterable
from typing import Mapping
from typing import Optional
from typing import Sequence
from typing import Tuple

from . import datatypes as dt
from .datatypes import ScalarType
from .datatypes import TypeKind
from .errors import TypeMismatch
from .functions import quote_string


class Op(Enum):
    EQ = "="
    NE = "<>"
    LT = "<"
    LE = "<="
    GT = ">"
    GE = ">="
    AND = "AND"
    OR = "OR"
    NOT = "NOT"
    PLUS = "+"
    MINUS = "-"
    TIMES = "*"
    DIVIDE = "/"
    IS_NULL = "IS NULL"
    IS_NOT_NULL = "IS NOT NULL"
    ITEM = "ITEM"
    CAST = "CAST"
    COALESCE = "COALESCE"
    # Operands are (condition, result) pairs followed by the ELSE result
    CASE = "CASE"


COMPARISONS = (Op.EQ, Op.NE, Op.LT, Op.LE, Op.GT, Op.GE)
ARITHMETIC = (Op.PLUS, Op.MINUS, Op.TIMES, Op.DIVIDE)
LOGICAL = (Op.AND, Op.OR, Op.NOT)

# Swapping the operands of a comparison
REVERSED = {Op.EQ: Op.EQ, Op.NE: Op.NE, Op.LT: Op.GT, Op.LE: Op.GE, Op.GT: Op.LT, Op.GE: Op.LE}


class RexNode:
    """Base class of the row expressions"""

    type: ScalarType

    def render(self, canonical: bool = False) -> str:
        raise NotImplementedError

    @cached_property
    def digest(self) -> str:
        return self.render(canonical=True)

    def __str__(self):
        return self.render()


@dataclass(frozen=True)
class ColumnRef(RexNode):
    index: int
    type: ScalarType

    def render(self, canonical: bool = False) -> str:
        return "${}".format(self.index)


@dataclass(frozen=True)
class Literal(RexNode):
    value: Any
    type: ScalarType

    def render(self, canonical: bool = False) -> str:
        value = self.value
        if value is None:
            return "null"
        if isinstance(value, bool):
            return "true" if value else "false"
        if isinstance(value, str):
            return quote_string(value)
        if isinstance(value, float):
            return repr(value)
        return str(value)


@dataclass(frozen=True)
class Call(RexNode):
    op: Op
    operands: Tuple[RexNode, ...]
    type: ScalarType

    def render(self, canonical: bool = False) -> str:
        parts = [operand.render(canonical) for operand in self.operands]
        if canonical and self.op in (Op.AND, Op.OR):
            parts = sorted(parts)
        if self.op == Op.CAST:
            return "CAST({}):{}".format(parts[0], self.type)
        return "{}({})".format(self.op.value, ", ".join(parts))


TRUE = Literal(True, dt.BOOLEAN.with_nullable(False))
FALSE = Literal(False, dt.BOOLEAN.with_nullable(False))


def literal(value: Any, value_type: Optional[ScalarType] = None) -> Literal:
    """Build a literal, inferring its type from the Python value when not given"""
    if value_type is not None:
        return Literal(value, value_type)
    if value is None:
        return Literal(None, dt.NULL)
    if isinstance(value, bool):
        return TRUE if value else FALSE
    if isinstance(value, int):
        return Literal(value, dt.INT64.with_nullable(False))
    if isinstance(value, float):
        return Literal(value, dt.FLOAT64.with_nullable(False))
    if isinstance(value, str):
        return Literal(value, dt.STRING.with_nullable(False))
    raise TypeMismatch("Can not build a literal from a value of type {}".format(type(value).__name__))


def _is_boolean_like(value_type: ScalarType) -> bool:
    return value_type.kind in (TypeKind.BOOLEAN, TypeKind.ANY, TypeKind.NULL)


def _is_numeric_like(value_type: ScalarType) -> bool:
    return value_type.is_numeric or value_type.is_dynamic


def _castable(source: ScalarType, target: ScalarType) -> bool:
    if source.is_dynamic or target.kind in (TypeKind.STRING, TypeKind.ANY):
        return True
    if source.same_kind(target):
        return True
    containers = (TypeKind.ARRAY, TypeKind.MAP)
    return source.kind not in containers and target.kind not in containers


def _common_type(op: Op, types: Sequence[ScalarType]) -> ScalarType:
    result = types[0]
    for operand_type in types[1:]:
        common = dt.least_restrictive(result, operand_type)
        if common is None:
            raise TypeMismatch("{} operands {} and {} have no common type".format(op.value, result, operand_type))
        result = common
    return result


def derive_call_type(op: Op, operands: Sequence[RexNode], target: Optional[ScalarType] = None) -> ScalarType:
    """Derive the type of a call from its operand types

    Raises
    ------
    TypeMismatch
        If the operands are not acceptable for the operator
    """
    types = [operand.type for operand in operands]

    def arity(expected: int):
        if len(types) != expected:
            raise TypeMismatch("{} expects {} operands, got {}".format(op.value, expected, len(types)))

    if op in COMPARISONS:
        arity(2)
        if dt.least_restrictive(types[0], types[1]) is None:
            raise TypeMismatch("Can not compare {} with {}".format(types[0], types[1]))
        if op not in (Op.EQ, Op.NE) and TypeKind.MAP in (types[0].kind, types[1].kind):
            raise TypeMismatch("MAP values can not be ordered")
        return dt.BOOLEAN
    if op in (Op.AND, Op.OR):
        if len(types) < 2:
            raise TypeMismatch("{} expects at least 2 operands".format(op.value))
        for operand_type in types:
            if not _is_boolean_like(operand_type):
                raise TypeMismatch("{} operands must be BOOLEAN, got {}".format(op.value, operand_type))
        return dt.BOOLEAN
    if op == Op.NOT:
        arity(1)
        if not _is_boolean_like(types[0]):
            raise TypeMismatch("NOT operand must be BOOLEAN, got {}".format(types[0]))
        return dt.BOOLEAN
    if op in ARITHMETIC:
        arity(2)
        for operand_type in types:
            if not _is_numeric_like(operand_type):
                raise TypeMismatch("Operator {} requires numeric operands, got {}".format(op.value, operand_type))
        kinds = {operand_type.kind for operand_type in types}
        if TypeKind.ANY in kinds:
            return dt.ANY
        if TypeKind.FLOAT64 in kinds:
            return dt.FLOAT64
        return dt.INT64
    if op in (Op.IS_NULL, Op.IS_NOT_NULL):
        arity(1)
        return dt.BOOLEAN.with_nullable(False)
    if op == Op.ITEM:
        arity(2)
        container, key = types
        if container.kind == TypeKind.MAP:
            if key.kind not in (TypeKind.STRING, TypeKind.ANY, TypeKind.NULL):
                raise TypeMismatch("MAP access requires a STRING key, got {}".format(key))
            return container.element.with_nullable(True)
        if container.kind == TypeKind.ARRAY:
            if key.kind not in (TypeKind.INT64, TypeKind.ANY, TypeKind.NULL):
                raise TypeMismatch("ARRAY access requires an INT64 index, got {}".format(key))
            return container.element.with_nullable(True)
        if container.is_dynamic:
            if key.kind not in (TypeKind.STRING, TypeKind.INT64, TypeKind.ANY, TypeKind.NULL):
                raise TypeMismatch("Item access requires a STRING key or INT64 index, got {}".format(key))
            return dt.ANY
        raise TypeMismatch("Item access requires a MAP, ARRAY or ANY value, got {}".format(container))
    if op == Op.CAST:
        arity(1)
        if target is None:
            raise TypeMismatch("CAST requires a target type")
        if not _castable(types[0], target):
            raise TypeMismatch("Can not cast {} to {}".format(types[0], target))
        return target.with_nullable(True)
    if op == Op.COALESCE:
        if not types:
            raise TypeMismatch("COALESCE expects at least 1 operand")
        result = _common_type(op, types)
        return result.with_nullable(all(operand_type.nullable for operand_type in types))
    if op == Op.CASE:
        if len(types) < 3 or len(types) % 2 == 0:
            raise TypeMismatch("CASE expects WHEN / THEN pairs and an ELSE result")
        for condition_type in types[0:-1:2]:
            if not _is_boolean_like(condition_type):
                raise TypeMismatch("CASE conditions must be BOOLEAN, got {}".format(condition_type))
        return _common_type(op, types[1:-1:2] + [types[-1]]).with_nullable(True)
    raise TypeMismatch("Unknown operator {}".format(op))


def call(op: Op, *operands: RexNode, target: Optional[ScalarType] = None) -> Call:
    """Build a call, deriving (and thereby checking) its type"""
    return Call(op, tuple(operands), derive_call_type(op, operands, target))


def and_(expressions: Iterable[RexNode]) -> RexNode:
    """Conjunction of the expressions, flattening nested ANDs; TRUE when there are none"""
    flat = []
    for expression in expressions:
        if isinstance(expression, Call) and expression.op == Op.AND:
            flat += list(expression.operands)
        else:
            flat += [expression]
    if not flat:
        return TRUE
    if len(flat) == 1:
        return flat[0]
    return call(Op.AND, *flat)


def or_(expressions: Iterable[RexNode]) -> RexNode:
    flat = list(expressions)
    if not flat:
        return FALSE
    if len(flat) == 1:
        return flat[0]
    return call(Op.OR, *flat)


def conjunctions(expression: Optional[RexNode]) -> list[RexNode]:
    """Flatten a predicate into its list of conjuncts; a literal TRUE has none"""
    if expression is None or is_true(expression):
        return []
    if isinstance(expression, Call) and expression.op == Op.AND:
        result = []
        for operand in expression.operands:
            result += conjunctions(operand)
        return result
    return [expression]


def is_true(expression: RexNode) -> bool:
    return isinstance(expression, Literal) and expression.value is True


def is_false(expression: RexNode) -> bool:
    return isinstance(expression, Literal) and expression.value is False


def input_refs(expression: RexNode) -> set[int]:
    """The set of column indices an expression references"""
    if isinstance(expression, ColumnRef):
        return {expression.index}
    if isinstance(expression, Call):
        refs = set()
        for operand in expression.operands:
            refs |= input_refs(operand)
        return refs
    return set()


def transform(expression: RexNode, function: Callable[[ColumnRef], RexNode]) -> RexNode:
    """Rebuild an expression replacing every column reference by function(ref)"""
    if isinstance(expression, ColumnRef):
        return function(expression)
    if isinstance(expression, Call):
        operands = tuple(transform(operand, function) for operand in expression.operands)
        if operands == expression.operands:
            return expression
        return Call(expression.op, operands, expression.type)
    return expression


def shift(expression: RexNode, offset: int) -> RexNode:
    if offset == 0:
        return expression
    return transform(expression, lambda ref: ColumnRef(ref.index + offset, ref.type))


def remap(expression: RexNode, mapping: Mapping[int, int]) -> RexNode:
    return transform(expression, lambda ref: ColumnRef(mapping[ref.index], ref.type))


def max_ref(expressions: Iterable[RexNode]) -> int:
    refs = set()
    for expression in expressions:
        refs |= input_refs(expression)
    return max(refs) if refs else -1


def check_refs(expression: RexNode, field_count: int) -> Optional[int]:
    """Return the first column index out of [0, field_count), or None if all resolve"""
    for index in sorted(input_refs(expression)):
        if index < 0 or index >= field_count:
            return index
    return None


def equi_keys(condition: RexNode, left_count: int) -> tuple[list[int], list[int], list[RexNode]]:
    """Split a join condition into equi-join key pairs and the remaining conjuncts

    Returns the left key indices, the right key indices (relative to the right input) and the
    residual conjuncts (relative to the concatenated row).
    """
    left_keys, right_keys, residual = [], [], []
    for conjunct in conjunctions(condition):
        if isinstance(conjunct, Call) and conjunct.op == Op.EQ:
            first, second = conjunct.operands
            if isinstance(first, ColumnRef) and isinstance(second, ColumnRef):
                if first.index < left_count <= second.index:
                    left_keys += [first.index]
                    right_keys += [second.index - left_count]
                    continue
                if second.index < left_count <= first.index:
                    left_keys += [second.index]
                    right_keys += [first.index - left_count]
                    continue
        residual += [conjunct]
    return left_keys, right_keys, residual
