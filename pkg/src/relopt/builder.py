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

"""The builder module

Contains Rel_Builder, a stack based API to build relational expressions without writing SQL:

    builder.scan("employee_data")
        .aggregate(builder.group_key("deptno"), builder.count("c"), builder.sum("sal", "s"))
        .build()

Relational steps push their result on the stack (join pops two entries, the others pop one) and
build() pops the finished tree. Expression helpers (field, literal, equals, ...) resolve names
against the entries currently on the stack.

"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any
from typing import Optional
from typing import Sequence
from typing import Union

from . import datatypes as dt
from . import rel as rl
from .adapters.catalog import Catalog
from .datatypes import RowType
from .errors import EmptyStack
from .errors import TypeMismatch
from .errors import UnknownColumn
from .errors import UnknownTable
from .rel import AggFunction
from .rel import JoinType
from .rel import RelNode
from .rex import ColumnRef
from .rex import Op
from .rex import RexNode
from .rex import and_
from .rex import call
from .rex import literal
from .traits import Direction
from .traits import FieldCollation


@dataclass(frozen=True)
class GroupKey:
    fields: tuple[ColumnRef, ...]


@dataclass(frozen=True)
class AggCallSpec:
    function: AggFunction
    args: tuple[Union[str, RexNode], ...]
    alias: Optional[str]


@dataclass(frozen=True)
class SortKey:
    field: Union[int, str, ColumnRef]
    direction: Direction


class Rel_Builder:
    """Builds relational expressions over the tables of a catalog

    The builder is a mutable, single threaded session; the trees it produces are immutable.

    Parameters
    ----------
    catalog
        The catalog table names are resolved against
    """

    def __init__(self, catalog: Catalog):
        self._catalog = catalog
        self._stack: list[RelNode] = []

    def _peek(self, input_count: int = 1, ordinal: int = 0) -> RelNode:
        if len(self._stack) < input_count:
            raise EmptyStack("Expected {} relational expression(s) on the stack, found {}".format(input_count, len(self._stack)))
        return self._stack[len(self._stack) - input_count + ordinal]

    def _pop(self) -> RelNode:
        if not self._stack:
            raise EmptyStack("The builder stack is empty")
        return self._stack.pop()

    def push(self, rel: RelNode) -> Rel_Builder:
        self._stack.append(rel)
        return self

    def build(self) -> RelNode:
        """Pop the finished expression"""
        return self._pop()

    @property
    def size(self) -> int:
        return len(self._stack)

    # Relational steps
    def scan(self, *names: str) -> Rel_Builder:
        """Push a scan of a table, named either by (schema, table) or by table in the default schema

        Raises
        ------
        UnknownTable
            If the catalog has no such table
        """
        table = self._catalog.find_table(names)
        if table is None:
            raise UnknownTable("Table '{}' not found".format(".".join(names)))
        return self.push(rl.scan(table))

    def filter(self, *conditions: RexNode) -> Rel_Builder:
        node = self._pop()
        return self.push(rl.filter_(node, and_(conditions)))

    def project(self, *exprs: Union[RexNode, str], names: Optional[Sequence[str]] = None) -> Rel_Builder:
        node = self._peek()
        resolved = [self.field(expression) if isinstance(expression, str) else expression for expression in exprs]
        self._pop()
        return self.push(rl.project(node, resolved, names))

    def join(self, join_type: Union[JoinType, str], *conditions: RexNode) -> Rel_Builder:
        if isinstance(join_type, str):
            join_type = JoinType(join_type.lower())
        self._peek(2)
        right = self._pop()
        left = self._pop()
        return self.push(rl.join(left, right, and_(conditions), join_type))

    def aggregate(self, group_key: GroupKey, *calls: AggCallSpec) -> Rel_Builder:
        node = self._peek()
        input_type = node.row_type
        agg_calls = []
        for position, spec in enumerate(calls):
            args = []
            for arg in spec.args:
                ref = self.field(arg) if isinstance(arg, str) else arg
                if not isinstance(ref, ColumnRef):
                    raise TypeMismatch("Aggregate arguments must be column references, got {}".format(ref))
                args += [ref.index]
            name = spec.alias if spec.alias is not None else "EXPR${}".format(len(group_key.fields) + position)
            agg_calls += [rl.agg_call(spec.function, args, name, input_type)]
        self._pop()
        return self.push(rl.aggregate(node, [ref.index for ref in group_key.fields], agg_calls))

    def sort(self, *keys: Union[int, str, ColumnRef, SortKey]) -> Rel_Builder:
        collation = [self._sort_key(key) for key in keys]
        node = self._pop()
        return self.push(rl.sort(node, collation))

    def sort_limit(self, offset: Optional[int], fetch: Optional[int], *keys: Union[int, str, ColumnRef, SortKey]) -> Rel_Builder:
        collation = [self._sort_key(key) for key in keys]
        node = self._pop()
        return self.push(rl.sort(node, collation, offset, fetch))

    def limit(self, offset: Optional[int], fetch: Optional[int]) -> Rel_Builder:
        return self.sort_limit(offset, fetch)

    def values(self, names: Sequence[str], *rows: Sequence[Any]) -> Rel_Builder:
        """Push literal rows, the column types are inferred from the first non-NULL value"""
        types = []
        for column in range(len(names)):
            column_type = dt.NULL
            for row in rows:
                if row[column] is not None:
                    column_type = literal(row[column]).type.with_nullable(True)
                    break
            types += [column_type]
        return self.push(rl.values(RowType.uniquified(list(names), types), rows))

    def _sort_key(self, key: Union[int, str, ColumnRef, SortKey]) -> FieldCollation:
        direction = Direction.ASC
        if isinstance(key, SortKey):
            direction = key.direction
            key = key.field
        if isinstance(key, int):
            return FieldCollation(key, direction)
        if isinstance(key, str):
            key = self.field(key)
        return FieldCollation(key.index, direction)

    # Expression helpers
    def field(self, *args: Union[int, str]) -> ColumnRef:
        """Reference a field of the expression on top of the stack

        field(name) or field(ordinal) look at the top entry; field(input_count, input_ordinal,
        name_or_ordinal) look at one of the top `input_count` entries, as needed by join
        conditions. Fields of the right input are shifted past the left input's fields.
        """
        if len(args) == 1:
            input_count, input_ordinal, name = 1, 0, args[0]
        elif len(args) == 3:
            input_count, input_ordinal, name = args
        else:
            raise TypeError("field() takes either 1 or 3 arguments")
        node = self._peek(input_count, input_ordinal)
        offset = 0
        for ordinal in range(input_ordinal):
            offset += len(self._peek(input_count, ordinal).row_type)
        row_type = node.row_type
        if isinstance(name, int):
            if name < 0 or name >= len(row_type):
                raise UnknownColumn("Field #{} not found in {}".format(name, row_type))
            index = name
        else:
            index = row_type.index_of(name)
            if index is None:
                raise UnknownColumn("Field '{}' not found in {}".format(name, row_type))
        return ColumnRef(offset + index, row_type[index].type)

    def literal(self, value: Any) -> RexNode:
        return literal(value)

    def call(self, op: Op, *operands: RexNode) -> RexNode:
        return call(op, *operands)

    def equals(self, left: RexNode, right: RexNode) -> RexNode:
        return call(Op.EQ, left, right)

    def greater_than(self, left: RexNode, right: RexNode) -> RexNode:
        return call(Op.GT, left, right)

    def less_than(self, left: RexNode, right: RexNode) -> RexNode:
        return call(Op.LT, left, right)

    def is_not_null(self, operand: RexNode) -> RexNode:
        return call(Op.IS_NOT_NULL, operand)

    def and_(self, *operands: RexNode) -> RexNode:
        return and_(operands)

    def cast(self, operand: RexNode, target: dt.ScalarType) -> RexNode:
        return call(Op.CAST, operand, target=target)

    def item(self, container: RexNode, key: Union[str, int]) -> RexNode:
        return call(Op.ITEM, container, literal(key))

    def desc(self, field: Union[int, str, ColumnRef]) -> SortKey:
        return SortKey(field, Direction.DESC)

    def group_key(self, *names: Union[str, int]) -> GroupKey:
        return GroupKey(tuple(self.field(name) for name in names))

    def count(self, alias: Optional[str] = None, *args: Union[str, RexNode]) -> AggCallSpec:
        return AggCallSpec(AggFunction.COUNT, tuple(args), alias)

    def sum(self, arg: Union[str, RexNode], alias: Optional[str] = None) -> AggCallSpec:
        return AggCallSpec(AggFunction.SUM, (arg,), alias)

    def min(self, arg: Union[str, RexNode], alias: Optional[str] = None) -> AggCallSpec:
        return AggCallSpec(AggFunction.MIN, (arg,), alias)

    def max(self, arg: Union[str, RexNode], alias: Optional[str] = None) -> AggCallSpec:
        return AggCallSpec(AggFunction.MAX, (arg,), alias)
