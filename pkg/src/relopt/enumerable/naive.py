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

"""The naive module

A direct recursive interpreter of operator trees, used as the reference the planned execution is
checked against. It ignores traits and conventions, materializes every intermediate result, joins
with nested loops and groups by linear search. It shares nothing with the ENUMERABLE operators
except the expression evaluator.

"""

from __future__ import annotations

from functools import cmp_to_key
from typing import TYPE_CHECKING
from typing import Any
from typing import Optional

from ..errors import EvaluationError
from ..errors import UnsupportedOperation
from ..rel import AggFunction
from ..rel import JoinType
from ..rel import RelKind
from ..rel import RelNode
from .evaluator import compare_values
from .evaluator import evaluate
from .evaluator import is_true
from .evaluator import sort_compare
from .evaluator import value_kind
from .evaluator import values_equal

if TYPE_CHECKING:
    from ..adapters.catalog import Catalog


def _fold(function: AggFunction, values: list[Any], counted: int) -> Any:
    if function == AggFunction.COUNT:
        return counted
    present = [value for value in values if value is not None]
    if not present:
        return None
    if function == AggFunction.SUM:
        total = 0
        for value in present:
            if isinstance(value, bool) or not isinstance(value, (int, float)):
                raise EvaluationError("SUM requires numeric values")
            total = total + value
        return total
    best = present[0]
    for value in present[1:]:
        order = compare_values(value, best)
        if (function == AggFunction.MIN and order < 0) or (function == AggFunction.MAX and order > 0):
            best = value
    return best


def _numeric(value: Any) -> bool:
    return isinstance(value, (int, float)) and not isinstance(value, bool)


def _same_key(left: tuple, right: tuple) -> bool:
    for mine, theirs in zip(left, right):
        if mine is None or theirs is None:
            if mine is not theirs:
                return False
        elif value_kind(mine) != value_kind(theirs) and not (_numeric(mine) and _numeric(theirs)):
            return False
        elif not values_equal(mine, theirs):
            return False
    return True


def _aggregate(rel: RelNode, rows: list[tuple]) -> list[tuple]:
    group = rel.attrs.group
    groups: list[tuple[tuple, list[tuple]]] = []
    for row in rows:
        key = tuple(row[index] for index in group)
        for existing, members in groups:
            if _same_key(existing, key):
                members.append(row)
                break
        else:
            groups.append((key, [row]))
    if not groups and not group:
        groups.append(((), []))
    result = []
    for key, members in groups:
        values = []
        for call in rel.attrs.calls:
            if call.function == AggFunction.COUNT and not call.args:
                values.append(len(members))
                continue
            column = [member[call.args[0]] for member in members]
            values.append(_fold(call.function, column, sum(1 for value in column if value is not None)))
        result.append(key + tuple(values))
    return result


def _join(rel: RelNode, left: list[tuple], right: list[tuple]) -> list[tuple]:
    condition = rel.attrs.condition
    padding = (None,) * len(rel.inputs[1].row_type)
    result = []
    for left_row in left:
        matched = False
        for right_row in right:
            row = left_row + right_row
            if is_true(condition, row):
                matched = True
                result.append(row)
        if rel.attrs.join_type == JoinType.LEFT and not matched:
            result.append(left_row + padding)
    return result


def _scan(rel: RelNode, catalog: Optional[Catalog]) -> list[tuple]:
    table = rel.attrs.table
    if catalog is not None:
        table = catalog.find_table(table.qualified_name) or table
    columns = rel.attrs.columns if rel.kind == RelKind.TABLE_SCAN else None
    return [tuple(row) for row in table.scan(columns)]


def naive_execute(rel: RelNode, catalog: Optional[Catalog] = None) -> list[tuple]:
    """Compute the rows of a tree by direct interpretation

    Parameters
    ----------
    rel
        The tree, any convention
    catalog
        When given, scanned tables are looked up in it by qualified name, so the same tree can be
        evaluated over another copy of the data

    Raises
    ------
    UnsupportedOperation
        For Window operators and memo placeholders
    """
    kind = rel.kind
    if kind in (RelKind.TABLE_SCAN, RelKind.VIEW_SCAN):
        return _scan(rel, catalog)
    if kind == RelKind.VALUES:
        return [tuple(row) for row in rel.attrs.tuples]
    if kind == RelKind.CONVERTER:
        return naive_execute(rel.input, catalog)
    if kind == RelKind.JOIN:
        return _join(rel, naive_execute(rel.inputs[0], catalog), naive_execute(rel.inputs[1], catalog))
    if kind not in (RelKind.FILTER, RelKind.PROJECT, RelKind.AGGREGATE, RelKind.SORT):
        raise UnsupportedOperation("The reference interpreter can not run {} nodes".format(kind.value))

    rows = naive_execute(rel.input, catalog)
    if kind == RelKind.FILTER:
        return [row for row in rows if is_true(rel.attrs.condition, row)]
    if kind == RelKind.PROJECT:
        return [tuple(evaluate(expression, row) for expression in rel.attrs.exprs) for row in rows]
    if kind == RelKind.AGGREGATE:
        return _aggregate(rel, rows)

    attrs = rel.attrs
    if attrs.collation:
        rows = sorted(rows, key=cmp_to_key(lambda left, right: sort_compare(attrs.collation, left, right)))
    start = attrs.offset or 0
    if attrs.fetch is None:
        return rows[start:]
    return rows[start : start + attrs.fetch]
