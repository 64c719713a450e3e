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

"""The ast module

Syntax tree produced by the parser. Every node carries the (line, column) position of its first
token so the validator can report errors at the right place.

"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any
from typing import Optional
from typing import Tuple
from typing import Union

from ..errors import Position


# Expressions
@dataclass(frozen=True)
class Identifier:
    names: Tuple[str, ...]
    quoted: Tuple[bool, ...]
    position: Position

    def __str__(self):
        return ".".join(self.names)


@dataclass(frozen=True)
class Star:
    qualifier: Optional[Identifier]
    position: Position


@dataclass(frozen=True)
class LiteralValue:
    value: Any
    position: Position


@dataclass(frozen=True)
class BinaryOp:
    op: str
    left: Expression
    right: Expression
    position: Position


@dataclass(frozen=True)
class UnaryOp:
    op: str
    operand: Expression
    position: Position


@dataclass(frozen=True)
class IsNull:
    operand: Expression
    negated: bool
    position: Position


@dataclass(frozen=True)
class Cast:
    operand: Expression
    type_name: str
    position: Position


@dataclass(frozen=True)
class FunctionCall:
    name: str
    args: Tuple[Expression, ...]
    star: bool
    position: Position


@dataclass(frozen=True)
class Index:
    operand: Expression
    key: Expression
    position: Position


@dataclass(frozen=True)
class Case:
    """Searched CASE; the ELSE result is None when omitted"""

    branches: Tuple[Tuple[Expression, Expression], ...]
    otherwise: Optional[Expression]
    position: Position


Expression = Union[Identifier, LiteralValue, BinaryOp, UnaryOp, IsNull, Cast, FunctionCall, Index, Case]


# Query structure
@dataclass(frozen=True)
class SelectItem:
    expr: Union[Expression, Star]
    alias: Optional[str]
    position: Position


@dataclass(frozen=True)
class TableRef:
    name: Identifier
    alias: Optional[str]
    position: Position


@dataclass(frozen=True)
class SubqueryRef:
    query: Select
    alias: Optional[str]
    position: Position


@dataclass(frozen=True)
class JoinRef:
    left: FromItem
    right: FromItem
    join_type: str
    condition: Optional[Expression]
    using: Tuple[Identifier, ...]
    position: Position


FromItem = Union[TableRef, SubqueryRef, JoinRef]


@dataclass(frozen=True)
class OrderItem:
    expr: Expression
    descending: bool
    position: Position


@dataclass(frozen=True)
class Select:
    items: Tuple[SelectItem, ...]
    from_: Optional[FromItem]
    where: Optional[Expression]
    group_by: Tuple[Expression, ...]
    having: Optional[Expression]
    order_by: Tuple[OrderItem, ...]
    limit: Optional[int]
    offset: Optional[int]
    position: Position
    distinct: bool = False


@dataclass(frozen=True)
class Explain:
    query: Select
    position: Position


Statement = Union[Select, Explain]

AGGREGATE_FUNCTIONS = ("COUNT", "SUM", "MIN", "MAX", "AVG")


def is_aggregate(expression: Any) -> bool:
    return isinstance(expression, FunctionCall) and expression.name.upper() in AGGREGATE_FUNCTIONS


def contains_aggregate(expression: Any) -> bool:
    """True if an aggregate function call appears anywhere in the expression"""
    if is_aggregate(expression):
        return True
    if isinstance(expression, BinaryOp):
        return contains_aggregate(expression.left) or contains_aggregate(expression.right)
    if isinstance(expression, (UnaryOp, IsNull, Cast)):
        return contains_aggregate(expression.operand)
    if isinstance(expression, Index):
        return contains_aggregate(expression.operand) or contains_aggregate(expression.key)
    if isinstance(expression, FunctionCall):
        return any(contains_aggregate(arg) for arg in expression.args)
    if isinstance(expression, Case):
        parts = [part for branch in expression.branches for part in branch] + [expression.otherwise]
        return any(contains_aggregate(part) for part in parts)
    return False
