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

"""The validator module

Resolves the names of a parsed query against a catalog, type checks every expression and checks
the grouping rules. The result, a ValidatedQuery, refers to columns by position only and is turned
into a relational expression by the translator module.

Name resolution rules: unquoted names match case-insensitively, quoted names exactly. Columns of
a USING join resolve to the left side and the right copy is left out of `*`. Views are expanded
inline.

"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from dataclasses import field
from typing import Any
from typing import Optional
from typing import Sequence
from typing import Union

from .. import datatypes as dt
from .. import rel as rl
from ..adapters.catalog import Catalog
from ..adapters.catalog import View
from ..adapters.schema import Table
from ..datatypes import RowType
from ..datatypes import TypeKind
from ..errors import AmbiguousColumn
from ..errors import NotGrouped
from ..errors import Position
from ..errors import SqlValidationError
from ..errors import TypeMismatch
from ..errors import UnknownColumn
from ..errors import UnknownTable
from ..rel import AggCall
from ..rel import AggFunction
from ..rel import JoinType
from ..rel import RelNode
from ..rex import Call
from ..rex import ColumnRef
from ..rex import Op
from ..rex import RexNode
from ..rex import and_
from ..rex import call
from ..rex import literal
from ..traits import Direction
from ..traits import FieldCollation
from . import ast
from .parser import parse_sql

BINARY_OPS = {
    "=": Op.EQ,
    "<>": Op.NE,
    "<": Op.LT,
    "<=": Op.LE,
    ">": Op.GT,
    ">=": Op.GE,
    "AND": Op.AND,
    "OR": Op.OR,
    "+": Op.PLUS,
    "-": Op.MINUS,
    "*": Op.TIMES,
    "/": Op.DIVIDE,
}


# Validated FROM tree
@dataclass
class FromTable:
    table: Table


@dataclass
class FromView:
    view: View
    rel: RelNode


@dataclass
class FromQuery:
    query: ValidatedQuery


@dataclass
class FromJoin:
    left: FromNode
    right: FromNode
    join_type: JoinType
    condition: RexNode


@dataclass
class FromValues:
    """The single empty row a query without FROM selects from"""


FromNode = Union[FromTable, FromView, FromQuery, FromJoin, FromValues]


@dataclass
class AggregateSpec:
    # Expressions computed below the aggregate when grouping or aggregating on non-columns
    pre_exprs: Optional[list[RexNode]]
    pre_names: Optional[list[str]]
    group: list[int]
    calls: list[AggCall]


@dataclass
class ValidatedQuery:
    from_item: FromNode
    where: Optional[RexNode]
    aggregate: Optional[AggregateSpec]
    having: Optional[RexNode]
    # The select list followed by the ORDER BY expressions which are not selected
    select_exprs: list[RexNode]
    select_names: list[str]
    visible: int
    order: tuple[FieldCollation, ...]
    offset: Optional[int]
    fetch: Optional[int]
    row_type: RowType
    explain: bool = False
    distinct: bool = False


# Name scopes
@dataclass
class _Relation:
    alias: Optional[str]
    row_type: RowType
    offset: int


@dataclass
class _Scope:
    relations: list[_Relation] = field(default_factory=list)
    # Columns which only resolve when qualified (right side copies of USING columns)
    hidden: set[int] = field(default_factory=set)

    @property
    def width(self) -> int:
        return sum(len(relation.row_type) for relation in self.relations)

    def fields(self) -> list[tuple[int, dt.Field]]:
        result = []
        for relation in self.relations:
            for index, f in enumerate(relation.row_type):
                result += [(relation.offset + index, f)]
        return result

    def combine(self, right: _Scope, nullable: bool) -> _Scope:
        width = self.width
        relations = list(self.relations)
        for relation in right.relations:
            row_type = relation.row_type
            if nullable:
                row_type = RowType(tuple(dt.Field(f.name, f.type.with_nullable(True)) for f in row_type))
            relations += [_Relation(relation.alias, row_type, relation.offset + width)]
        return _Scope(relations, set(self.hidden) | {index + width for index in right.hidden})


def _name_matches(candidate: Optional[str], name: str, quoted: bool) -> bool:
    if candidate is None:
        return False
    if quoted:
        return candidate == name
    return candidate.lower() == name.lower()


def _with_position(error: TypeMismatch, position: Position) -> TypeMismatch:
    if error.position is None:
        error.position = position
    return error


class _Aggregates:
    """Collects the aggregate calls of a query while its expressions are resolved

    Each call is represented, until the aggregate is built, by a marker column reference past the
    end of the FROM row.
    """

    def __init__(self, from_width: int):
        self.from_width = from_width
        self.functions: list[AggFunction] = []
        self.args: list[Optional[RexNode]] = []
        self.types: list[dt.ScalarType] = []
        self.names: list[Optional[str]] = []
        self._keys = {}

    def add(self, function: AggFunction, arg: Optional[RexNode], position: Position) -> ColumnRef:
        key = (function, None if arg is None else arg.digest)
        if key not in self._keys:
            input_type = RowType.of(("x", arg.type)) if arg is not None else RowType(())
            try:
                result_type = rl.agg_call(function, [0] if arg is not None else [], "x", input_type).type
            except TypeMismatch as error:
                raise _with_position(error, position)
            self._keys[key] = len(self.functions)
            self.functions += [function]
            self.args += [arg]
            self.types += [result_type]
            self.names += [None]
        index = self._keys[key]
        return ColumnRef(self.from_width + index, self.types[index])

    def __len__(self):
        return len(self.functions)


class Sql_Validator:
    """Validates parsed statements against a catalog

    Parameters
    ----------
    catalog
        The catalog holding the tables and views

    logger
        The logger to use
    """

    def __init__(self, catalog: Catalog, logger: Optional[logging.Logger] = None, expanding: Optional[set[int]] = None):
        self._catalog = catalog
        self._logger = logger if logger is not None else logging.getLogger("RelOpt_SQL")
        self._expanding = expanding if expanding is not None else set()

    def validate(self, statement: ast.Statement) -> ValidatedQuery:
        if isinstance(statement, ast.Explain):
            query = self.validate_select(statement.query)
            query.explain = True
            return query
        return self.validate_select(statement)

    # FROM clause
    def _expand_view(self, view: View, position: Position) -> RelNode:
        if view.rel is not None:
            return view.rel
        if id(view) in self._expanding:
            raise SqlValidationError("View '{}' is defined in terms of itself".format(view.name), position)
        from .translator import to_algebra

        self._expanding.add(id(view))
        try:
            statement = parse_sql(view.sql)
            if not isinstance(statement, ast.Select):
                raise SqlValidationError("View '{}' must be a SELECT query".format(view.name), position)
            query = Sql_Validator(self._catalog, self._logger, self._expanding).validate_select(statement)
            view.rel = to_algebra(query)
        finally:
            self._expanding.discard(id(view))
        self._logger.debug("Expanded view '{}'".format(view.name))
        return view.rel

    def _from(self, item: ast.FromItem) -> tuple[FromNode, _Scope]:
        if isinstance(item, ast.TableRef):
            name = item.name
            alias = item.alias if item.alias is not None else name.names[-1]
            table = self._catalog.find_table(name.names, name.quoted)
            if table is not None:
                return FromTable(table), _Scope([_Relation(alias, table.row_type, 0)])
            view = self._catalog.find_view(name.names, name.quoted)
            if view is not None:
                rel = self._expand_view(view, item.position)
                return FromView(view, rel), _Scope([_Relation(alias, rel.row_type, 0)])
            raise UnknownTable("Table '{}' not found".format(name), item.position)
        if isinstance(item, ast.SubqueryRef):
            query = Sql_Validator(self._catalog, self._logger, self._expanding).validate_select(item.query)
            return FromQuery(query), _Scope([_Relation(item.alias, query.row_type, 0)])

        left, left_scope = self._from(item.left)
        right, right_scope = self._from(item.right)
        join_type = JoinType.LEFT if item.join_type == "LEFT" else JoinType.INNER
        scope = left_scope.combine(right_scope, nullable=join_type == JoinType.LEFT)
        if item.using:
            width = left_scope.width
            conjuncts = []
            for column in item.using:
                left_index, left_field = self._resolve_unqualified(left_scope, column)
                right_index, right_field = self._resolve_unqualified(right_scope, column)
                conjuncts += [
                    self._call(Op.EQ, [ColumnRef(left_index, left_field.type), ColumnRef(width + right_index, right_field.type)], column.position)
                ]
                scope.hidden.add(width + right_index)
            condition = and_(conjuncts)
        else:
            condition = self._expr(item.condition, scope)
            self._check_boolean(condition, item.condition)
        return FromJoin(left, right, join_type, condition), scope

    # Name resolution
    def _resolve_unqualified(self, scope: _Scope, identifier: ast.Identifier) -> tuple[int, dt.Field]:
        name, quoted = identifier.names[-1], identifier.quoted[-1]
        candidates = []
        for relation in scope.relations:
            index = relation.row_type.index_of(name, case_sensitive=quoted)
            if index is not None and relation.offset + index not in scope.hidden:
                candidates += [(relation.offset + index, relation.row_type[index])]
        if not candidates:
            raise UnknownColumn("Column '{}' not found in any table".format(name), identifier.position)
        if len(candidates) > 1:
            raise AmbiguousColumn("Column '{}' is ambiguous".format(name), identifier.position)
        return candidates[0]

    def _resolve(self, scope: _Scope, identifier: ast.Identifier) -> tuple[int, dt.Field]:
        if len(identifier.names) == 1:
            return self._resolve_unqualified(scope, identifier)
        qualifier, qualifier_quoted = identifier.names[-2], identifier.quoted[-2]
        relations = [relation for relation in scope.relations if _name_matches(relation.alias, qualifier, qualifier_quoted)]
        if not relations:
            raise UnknownColumn("Table '{}' not found in FROM clause".format(".".join(identifier.names[:-1])), identifier.position)
        if len(relations) > 1:
            raise AmbiguousColumn("Table alias '{}' is ambiguous".format(qualifier), identifier.position)
        relation = relations[0]
        index = relation.row_type.index_of(identifier.names[-1], case_sensitive=identifier.quoted[-1])
        if index is None:
            raise UnknownColumn("Column '{}' not found in table '{}'".format(identifier.names[-1], qualifier), identifier.position)
        return relation.offset + index, relation.row_type[index]

    # Expressions
    def _call(self, op: Op, operands: Sequence[RexNode], position: Position, target: Optional[dt.ScalarType] = None) -> RexNode:
        try:
            return call(op, *operands, target=target)
        except TypeMismatch as error:
            raise _with_position(error, position)

    def _check_boolean(self, expression: RexNode, node: Any):
        if expression.type.kind not in (TypeKind.BOOLEAN, TypeKind.NULL, TypeKind.ANY):
            raise TypeMismatch("Expected a BOOLEAN expression, got {}".format(expression.type), node.position)

    def _expr(self, node: ast.Expression, scope: _Scope, aggregates: Optional[_Aggregates] = None) -> RexNode:
        if isinstance(node, ast.Identifier):
            index, f = self._resolve(scope, node)
            return ColumnRef(index, f.type)
        if isinstance(node, ast.LiteralValue):
            return literal(node.value)
        if isinstance(node, ast.BinaryOp):
            left = self._expr(node.left, scope, aggregates)
            right = self._expr(node.right, scope, aggregates)
            return self._call(BINARY_OPS[node.op], [left, right], node.position)
        if isinstance(node, ast.UnaryOp):
            operand = self._expr(node.operand, scope, aggregates)
            if node.op == "NOT":
                return self._call(Op.NOT, [operand], node.position)
            zero = literal(0.0) if operand.type.kind == TypeKind.FLOAT64 else literal(0)
            return self._call(Op.MINUS, [zero, operand], node.position)
        if isinstance(node, ast.IsNull):
            operand = self._expr(node.operand, scope, aggregates)
            return self._call(Op.IS_NOT_NULL if node.negated else Op.IS_NULL, [operand], node.position)
        if isinstance(node, ast.Cast):
            target = dt.type_from_name(node.type_name)
            if target is None:
                raise SqlValidationError("Unknown type '{}'".format(node.type_name), node.position)
            operand = self._expr(node.operand, scope, aggregates)
            return self._call(Op.CAST, [operand], node.position, target)
        if isinstance(node, ast.Index):
            container = self._expr(node.operand, scope, aggregates)
            key = self._expr(node.key, scope, aggregates)
            return self._call(Op.ITEM, [container, key], node.position)
        if isinstance(node, ast.FunctionCall):
            if node.name == "COALESCE" and not node.star:
                operands = [self._expr(arg, scope, aggregates) for arg in node.args]
                return self._call(Op.COALESCE, operands, node.position)
            if not ast.is_aggregate(node):
                raise SqlValidationError("Unknown function '{}'".format(node.name), node.position)
            if aggregates is None:
                raise SqlValidationError("Aggregate function {} is not allowed here".format(node.name), node.position)
            return self._aggregate_call(node, scope, aggregates)
        if isinstance(node, ast.Case):
            operands = []
            for condition, result in node.branches:
                operands += [self._expr(condition, scope, aggregates), self._expr(result, scope, aggregates)]
            otherwise = literal(None) if node.otherwise is None else self._expr(node.otherwise, scope, aggregates)
            return self._call(Op.CASE, operands + [otherwise], node.position)
        raise SqlValidationError("Unsupported expression", getattr(node, "position", None))

    def _aggregate_call(self, node: ast.FunctionCall, scope: _Scope, aggregates: _Aggregates) -> RexNode:
        name = node.name.upper()
        arg = None
        if node.star:
            if name != "COUNT":
                raise SqlValidationError("Only COUNT accepts '*'", node.position)
        else:
            if len(node.args) != 1:
                raise SqlValidationError("{} takes exactly one argument".format(name), node.position)
            if ast.contains_aggregate(node.args[0]):
                raise SqlValidationError("Aggregate function calls can not be nested", node.position)
            arg = self._expr(node.args[0], scope, None)
        if name == "AVG":
            total = aggregates.add(AggFunction.SUM, arg, node.position)
            count = aggregates.add(AggFunction.COUNT, arg, node.position)
            return self._call(
                Op.DIVIDE,
                [self._call(Op.CAST, [total], node.position, dt.FLOAT64), self._call(Op.CAST, [count], node.position, dt.FLOAT64)],
                node.position,
            )
        return aggregates.add(AggFunction[name], arg, node.position)

    # Query
    def validate_select(self, select: ast.Select) -> ValidatedQuery:
        if select.from_ is None:
            from_item, scope = FromValues(), _Scope([_Relation(None, RowType(()), 0)])
        else:
            from_item, scope = self._from(select.from_)
        from_type = RowType.uniquified([f.name for _, f in scope.fields()], [f.type for _, f in scope.fields()])
        width = scope.width

        where = None
        if select.where is not None:
            if ast.contains_aggregate(select.where):
                raise SqlValidationError("Aggregate functions are not allowed in WHERE", select.where.position)
            where = self._expr(select.where, scope)
            self._check_boolean(where, select.where)

        is_aggregate = bool(select.group_by) or select.having is not None
        for item in select.items:
            is_aggregate = is_aggregate or ast.contains_aggregate(item.expr)
        for item in select.order_by:
            is_aggregate = is_aggregate or ast.contains_aggregate(item.expr)

        aggregates = _Aggregates(width) if is_aggregate else None
        group_exprs: list[RexNode] = []
        group_index = {}
        for node in select.group_by:
            if ast.contains_aggregate(node):
                raise SqlValidationError("Aggregate functions are not allowed in GROUP BY", node.position)
            expression = self._expr(node, scope)
            if expression.digest not in group_index:
                group_index[expression.digest] = len(group_exprs)
                group_exprs += [expression]

        def finish(expression: RexNode, position: Position) -> RexNode:
            """Rewrite an expression over the FROM row into one over the aggregate output"""
            if aggregates is None:
                return expression
            if expression.digest in group_index:
                return ColumnRef(group_index[expression.digest], expression.type)
            if isinstance(expression, ColumnRef):
                if expression.index >= width:
                    return ColumnRef(len(group_exprs) + expression.index - width, expression.type)
                raise NotGrouped(from_type[expression.index].name, position)
            if isinstance(expression, Call):
                return Call(expression.op, tuple(finish(operand, position) for operand in expression.operands), expression.type)
            return expression

        # Select list
        select_exprs: list[RexNode] = []
        select_names: list[str] = []
        for ordinal, item in enumerate(select.items):
            if isinstance(item.expr, ast.Star):
                for index, f in self._star_fields(scope, item.expr):
                    select_exprs += [finish(ColumnRef(index, f.type), item.position)]
                    select_names += [f.name]
                continue
            expression = finish(self._expr(item.expr, scope, aggregates), item.position)
            if item.alias is not None:
                name = item.alias
            elif isinstance(item.expr, ast.Identifier):
                name = self._resolve(scope, item.expr)[1].name
            else:
                name = "EXPR${}".format(ordinal)
            if aggregates is not None and ast.is_aggregate(item.expr) and item.expr.name.upper() != "AVG":
                position = expression.index - len(group_exprs)
                if aggregates.names[position] is None:
                    aggregates.names[position] = item.alias if item.alias is not None else "EXPR${}".format(ordinal)
            select_exprs += [expression]
            select_names += [name]
        visible = len(select_exprs)

        having = None
        if select.having is not None:
            having = finish(self._expr(select.having, scope, aggregates), select.having.position)
            self._check_boolean(having, select.having)

        # Order by
        order = []
        for item in select.order_by:
            index = self._order_index(item, select_names[:visible])
            if index is None:
                expression = finish(self._expr(item.expr, scope, aggregates), item.position)
                digests = [selected.digest for selected in select_exprs]
                if expression.digest in digests:
                    index = digests.index(expression.digest)
                else:
                    index = len(select_exprs)
                    select_exprs += [expression]
                    select_names += ["EXPR${}".format(index)]
            if index not in [key.index for key in order]:
                order += [FieldCollation(index, Direction.DESC if item.descending else Direction.ASC)]

        aggregate_spec = None
        if aggregates is not None:
            aggregate_spec = self._aggregate_spec(group_exprs, aggregates, from_type)

        if select.distinct and len(select_exprs) > visible:
            raise SqlValidationError("ORDER BY expressions of a SELECT DISTINCT must be selected", select.order_by[0].position)

        names = RowType.uniquified(select_names, [expression.type for expression in select_exprs]).names
        row_type = RowType.uniquified(select_names[:visible], [expression.type for expression in select_exprs[:visible]])
        return ValidatedQuery(
            from_item,
            where,
            aggregate_spec,
            having,
            select_exprs,
            names,
            visible,
            tuple(order),
            select.offset,
            select.limit,
            row_type,
            distinct=select.distinct,
        )

    def _order_index(self, item: ast.OrderItem, names: Sequence[str]) -> Optional[int]:
        expression = item.expr
        if isinstance(expression, ast.Identifier) and len(expression.names) == 1:
            matches = [index for index, name in enumerate(names) if _name_matches(name, expression.names[0], expression.quoted[0])]
            if len(matches) == 1:
                return matches[0]
        if isinstance(expression, ast.LiteralValue) and isinstance(expression.value, int) and not isinstance(expression.value, bool):
            if expression.value < 1 or expression.value > len(names):
                raise SqlValidationError("ORDER BY position {} is out of range".format(expression.value), item.position)
            return expression.value - 1
        return None

    def _star_fields(self, scope: _Scope, star: ast.Star) -> list[tuple[int, dt.Field]]:
        if star.qualifier is None:
            return [(index, f) for index, f in scope.fields() if index not in scope.hidden]
        qualifier = star.qualifier
        relations = [relation for relation in scope.relations if _name_matches(relation.alias, qualifier.names[-1], qualifier.quoted[-1])]
        if not relations:
            raise UnknownColumn("Table '{}' not found in FROM clause".format(qualifier), star.position)
        relation = relations[0]
        return [(relation.offset + index, f) for index, f in enumerate(relation.row_type)]

    def _aggregate_spec(self, group_exprs: list[RexNode], aggregates: _Aggregates, from_type: RowType) -> AggregateSpec:
        group_count = len(group_exprs)
        names = []
        for position, name in enumerate(aggregates.names):
            names += [name if name is not None else "$f{}".format(group_count + position)]

        simple = all(isinstance(expression, ColumnRef) for expression in group_exprs)
        simple = simple and all(arg is None or isinstance(arg, ColumnRef) for arg in aggregates.args)
        if simple:
            input_type = from_type
            group = [expression.index for expression in group_exprs]
            arg_indices = [[] if arg is None else [arg.index] for arg in aggregates.args]
            pre_exprs = pre_names = None
        else:
            pre_exprs = list(group_exprs)
            positions = {expression.digest: index for index, expression in enumerate(pre_exprs)}
            arg_indices = []
            for arg in aggregates.args:
                if arg is None:
                    arg_indices += [[]]
                    continue
                if arg.digest not in positions:
                    positions[arg.digest] = len(pre_exprs)
                    pre_exprs += [arg]
                arg_indices += [[positions[arg.digest]]]
            pre_names = [
                from_type[expression.index].name if isinstance(expression, ColumnRef) else "$f{}".format(index)
                for index, expression in enumerate(pre_exprs)
            ]
            input_type = RowType.uniquified(pre_names, [expression.type for expression in pre_exprs])
            group = list(range(group_count))
        calls = [
            rl.agg_call(function, args, name, input_type) for function, args, name in zip(aggregates.functions, arg_indices, names)
        ]
        return AggregateSpec(pre_exprs, pre_names, group, calls)


def validate(statement: ast.Statement, catalog: Catalog) -> ValidatedQuery:
    """Validate a parsed statement against a catalog

    Raises
    ------
    UnknownTable, UnknownColumn, AmbiguousColumn, NotGrouped, TypeMismatch
        All carrying the position of the offending construct
    """
    return Sql_Validator(catalog).validate(statement)
