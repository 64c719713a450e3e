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

"""The remote module

A mock remote SQL system. The Remote_Backend owns its tables and only answers SQL statements;
the engine never touches its rows directly. Every statement it receives is kept in a log, so
tests can check which operators were pushed down.

Nodes in a remote convention are turned back into SQL text by to_sql. The text is in the
dialect of this package's own parser, which the backend uses to run it: the backend parses and
validates the statement against its private catalog and evaluates it with the reference
interpreter.

"""

from __future__ import annotations

import logging
import math
import threading
from dataclasses import dataclass
from dataclasses import field
from decimal import Decimal
from pathlib import Path
from typing import Any
from typing import Iterator
from typing import Optional
from typing import Sequence
from typing import Tuple

from ..datatypes import RowType
from ..datatypes import TypeKind
from ..errors import ModelParseError
from ..errors import UnsupportedNode
from ..functions import quote_identifier
from ..functions import quote_string
from ..rel import AggFunction
from ..rel import JoinType
from ..rel import RelKind
from ..rel import RelNode
from ..rex import Call
from ..rex import ColumnRef
from ..rex import Literal
from ..rex import Op
from ..rex import RexNode
from ..traits import Collation
from ..traits import Convention
from ..traits import Direction
from .catalog import Catalog
from .mem_adapter import Mem_Schema
from .mem_adapter import Mem_Table
from .schema import Adapter_Schema
from .schema import Capabilities
from .schema import Row
from .schema import Statistics
from .schema import Table

DEFAULT_DISCOUNT = 0.1


class Remote_Backend:
    """An in-process stand-in for a remote SQL database

    Parameters
    ----------
    name
        Name of the backend's own (single) schema

    logger
        The logger to use, a logger named RelOpt_Remote is used when none is given
    """

    def __init__(self, name: str = "remote", logger: Optional[logging.Logger] = None):
        self._logger = logger if logger is not None else logging.getLogger("RelOpt_Remote")
        self._catalog = Catalog(name, logger=self._logger)
        self._schema = Mem_Schema(name, "mem", logger=self._logger)
        self._catalog.add_schema(self._schema)
        self._lock = threading.Lock()
        self.statements: list[str] = []

    def create_table(self, name: str, row_type: RowType, rows: Sequence[Sequence[Any]] = ()) -> Mem_Table:
        return self._schema.create_table(name, row_type, rows)

    def table(self, name: str) -> Optional[Mem_Table]:
        return self._schema.table(name, case_sensitive=True)

    def execute_sql(self, sql: str) -> list[Row]:
        """Run one statement, statements are executed one at a time"""
        from ..enumerable.naive import naive_execute
        from ..sql import sql_to_rel

        with self._lock:
            self.statements.append(sql)
            self._logger.debug("Executing remote statement: {}".format(sql))
            rows = naive_execute(sql_to_rel(sql, self._catalog))
        self._logger.detailed_trace("Remote statement returned {} row(s)".format(len(rows)))
        return rows


class Remote_Table(Table):
    """A table living in a Remote_Backend, scanning it sends a statement"""

    def __init__(
        self,
        schema_name: str,
        name: str,
        row_type: RowType,
        backend: Remote_Backend,
        statistics: Optional[Statistics] = None,
        collation: Collation = (),
        capabilities: Optional[Capabilities] = None,
        logger: Optional[logging.Logger] = None,
    ):
        super().__init__(schema_name, name, row_type, statistics, collation, capabilities, logger)
        self._backend = backend

    @property
    def backend(self) -> Remote_Backend:
        return self._backend

    @property
    def row_count(self) -> float:
        if self.statistics.row_count is None:
            return self._backend.table(self.name).row_count
        return float(self.statistics.row_count)

    def _read(self, columns: Optional[Tuple[int, ...]]) -> Iterator[Row]:
        if columns is None:
            select = "*"
        else:
            select = ", ".join(quote_identifier(self.row_type[column].name) for column in columns)
        yield from self._backend.execute_sql("SELECT {} FROM {}".format(select, quote_identifier(self.name)))


def _flag(options: dict[str, str], name: str, default: bool) -> bool:
    value = options.get(name)
    if value is None:
        return default
    if value.strip().lower() in ("true", "1", "yes"):
        return True
    if value.strip().lower() in ("false", "0", "no"):
        return False
    raise ModelParseError("Option '{}' must be true or false, got '{}'".format(name, value))


class Remote_Schema(Adapter_Schema):
    """A schema whose tables live in a remote backend

    The options say which operators the backend evaluates (``filter``, ``project`` and ``sort``
    default to true, ``join`` and ``aggregate`` to false) and the ``discount`` factor applied to
    the io cost of the nodes pushed to it (0.1 by default).

    Raises
    ------
    ModelParseError
        If an option has an invalid value
    """

    convention_name = "REMOTE"

    def __init__(
        self,
        name: str,
        kind: str = "remote",
        options: Optional[dict[str, str]] = None,
        backend: Optional[Remote_Backend] = None,
        logger: Optional[logging.Logger] = None,
    ):
        super().__init__(name, kind, options, logger)
        options = self._options
        self._backend = backend if backend is not None else Remote_Backend(name, logger)
        self._capabilities = Capabilities(
            projection=_flag(options, "project", True),
            filter=_flag(options, "filter", True),
            sort=_flag(options, "sort", True),
            aggregate=_flag(options, "aggregate", False),
            join=_flag(options, "join", False),
        )
        try:
            self._discount = float(options.get("discount", DEFAULT_DISCOUNT))
        except ValueError as error:
            raise ModelParseError("Option 'discount' must be a number, got '{}'".format(options["discount"])) from error
        if not (0 < self._discount <= 1) or math.isnan(self._discount):
            raise ModelParseError("Option 'discount' must be in (0, 1], got {}".format(self._discount))

    def _make_convention(self) -> Convention:
        return Convention(self.convention_name, schema=self._name, adapter=self)

    @property
    def backend(self) -> Remote_Backend:
        return self._backend

    @property
    def capabilities(self) -> Capabilities:
        return self._capabilities

    @property
    def discount(self) -> float:
        return self._discount

    def create_table(
        self,
        name: str,
        row_type: RowType,
        rows: Sequence[Sequence[Any]] = (),
        statistics: Optional[Statistics] = None,
        collation: Collation = (),
    ) -> Remote_Table:
        """Store the rows in the backend and expose them as a table of this schema"""
        self._backend.create_table(name, row_type, rows)
        table = Remote_Table(self.name, name, row_type, self._backend, statistics, collation, self._capabilities, self.logger)
        self.add_table(table)
        return table

    def rules(self):
        from ..rules.adapter import remote_rules

        return remote_rules(self)

    def execute(self, rel: RelNode) -> Iterator[Row]:
        return iter(self._backend.execute_sql(to_sql(rel, self._capabilities)))

    def describe(self, rel: RelNode) -> list[Tuple[str, str]]:
        return [("sql", to_sql(rel, self._capabilities))]


def remote_schema_factory(spec, directory: Path, logger: logging.Logger) -> Remote_Schema:
    """Build a remote schema, table data comes from inline rows or from a csv file"""
    from .csv_adapter import Csv_Table
    from .model import resolve_path

    schema = Remote_Schema(spec.name, "remote", spec.options, logger=logger)
    for table_spec in spec.tables:
        if not table_spec.columns:
            raise ModelParseError("Remote table '{}' needs columns".format(table_spec.name))
        row_type = table_spec.row_type()
        rows = table_spec.rows or []
        if table_spec.path is not None:
            source = Csv_Table(spec.name, table_spec.name, resolve_path(table_spec.path, directory), row_type, logger=logger)
            rows = list(source.scan())
        schema.create_table(table_spec.name, row_type, rows, table_spec.statistics(), table_spec.sort_order(row_type))
    return schema


# SQL generation


@dataclass
class _Fragment:
    """A SELECT statement under construction

    `columns` holds the SQL expression of every output column over the FROM clause, which is
    what the operators merged on top of the fragment refer to.
    """

    source: str
    columns: list[str]
    names: list[str]
    select: Optional[list[str]] = None
    # (text, parenthesized text) of each conjunct
    where: list[tuple[str, str]] = field(default_factory=list)
    group: list[str] = field(default_factory=list)
    aggregated: bool = False
    order: list[str] = field(default_factory=list)
    limit: Optional[int] = None
    offset: Optional[int] = None
    # A bare table, possibly narrowed to some columns
    plain: bool = False

    @property
    def sealed(self) -> bool:
        """Filters and projections can not be merged into the fragment any more"""
        return self.aggregated or bool(self.order) or self.limit is not None or self.offset is not None

    def sql(self) -> str:
        text = "SELECT {} FROM {}".format("*" if self.select is None else ", ".join(self.select), self.source)
        if len(self.where) == 1:
            text += " WHERE " + self.where[0][0]
        elif self.where:
            text += " WHERE " + " AND ".join(wrapped for _, wrapped in self.where)
        if self.group:
            text += " GROUP BY " + ", ".join(self.group)
        if self.order:
            text += " ORDER BY " + ", ".join(self.order)
        if self.limit is not None:
            text += " LIMIT {}".format(self.limit)
        if self.offset is not None:
            text += " OFFSET {}".format(self.offset)
        return text


def _select_item(expression: str, name: str) -> str:
    quoted = quote_identifier(name)
    if expression == quoted or expression.endswith("." + quoted):
        return expression
    return "{} AS {}".format(expression, quoted)


def _number(value: Any) -> str:
    if isinstance(value, float):
        if math.isnan(value) or math.isinf(value):
            raise UnsupportedNode("Can not write the value {} in SQL".format(value))
        text = format(Decimal(repr(value)), "f")
        if "." not in text:
            text += ".0"
    else:
        text = str(value)
    return "({})".format(text) if text.startswith("-") else text


def render_literal(expression: Literal) -> str:
    value = expression.value
    if value is None:
        if expression.type.kind == TypeKind.NULL:
            return "NULL"
        return "CAST(NULL AS {})".format(expression.type)
    if isinstance(value, bool):
        return "TRUE" if value else "FALSE"
    if isinstance(value, (int, float)):
        return _number(value)
    if isinstance(value, str):
        return quote_string(value)
    raise UnsupportedNode("Can not write a {} literal in SQL".format(type(value).__name__))


def _operand(expression: RexNode, columns: Sequence[str]) -> str:
    text = render_expression(expression, columns)
    if isinstance(expression, Call) and expression.op not in (Op.ITEM, Op.CAST, Op.COALESCE, Op.CASE):
        return "(" + text + ")"
    return text


def render_expression(expression: RexNode, columns: Sequence[str]) -> str:
    """SQL text of a row expression whose column references are given by `columns`"""
    if isinstance(expression, ColumnRef):
        return columns[expression.index]
    if isinstance(expression, Literal):
        return render_literal(expression)
    operands = expression.operands
    op = expression.op
    if op in (Op.AND, Op.OR):
        return " {} ".format(op.value).join(_operand(operand, columns) for operand in operands)
    if op == Op.NOT:
        return "NOT " + _operand(operands[0], columns)
    if op in (Op.IS_NULL, Op.IS_NOT_NULL):
        return "{} {}".format(_operand(operands[0], columns), op.value)
    if op == Op.ITEM:
        return "{}[{}]".format(_operand(operands[0], columns), render_expression(operands[1], columns))
    if op == Op.CAST:
        return "CAST({} AS {})".format(render_expression(operands[0], columns), expression.type)
    if op == Op.COALESCE:
        return "COALESCE({})".format(", ".join(render_expression(operand, columns) for operand in operands))
    if op == Op.CASE:
        branches = [
            "WHEN {} THEN {}".format(render_expression(operands[position], columns), render_expression(operands[position + 1], columns))
            for position in range(0, len(operands) - 1, 2)
        ]
        return "CASE {} ELSE {} END".format(" ".join(branches), render_expression(operands[-1], columns))
    return "{} {} {}".format(_operand(operands[0], columns), op.value, _operand(operands[1], columns))


class Sql_Generator:
    """Turns an operator tree back into one SQL statement

    Parameters
    ----------
    capabilities
        When given, operators the remote system does not support raise UnsupportedNode
    """

    def __init__(self, capabilities: Optional[Capabilities] = None):
        self._capabilities = capabilities
        self._aliases = 0

    def generate(self, rel: RelNode) -> str:
        self._aliases = 0
        return self._visit(rel).sql()

    def _check(self, rel: RelNode, allowed: bool):
        if self._capabilities is not None and not allowed:
            raise UnsupportedNode("The remote system does not support {} nodes".format(rel.kind.value))

    def _alias(self) -> str:
        alias = "t{}".format(self._aliases)
        self._aliases += 1
        return alias

    def _wrap(self, fragment: _Fragment) -> _Fragment:
        alias = self._alias()
        return _Fragment(
            "({}) AS {}".format(fragment.sql(), alias),
            [quote_identifier(name) for name in fragment.names],
            list(fragment.names),
        )

    def _visit(self, rel: RelNode) -> _Fragment:
        kind = rel.kind
        capabilities = self._capabilities
        if kind in (RelKind.TABLE_SCAN, RelKind.VIEW_SCAN):
            return self._scan(rel)
        if kind == RelKind.FILTER:
            self._check(rel, capabilities is None or capabilities.filter)
            return self._filter(rel, self._visit(rel.input))
        if kind == RelKind.PROJECT:
            self._check(rel, capabilities is None or capabilities.projection)
            return self._project(rel, self._visit(rel.input))
        if kind == RelKind.SORT:
            self._check(rel, capabilities is None or capabilities.sort)
            return self._sort(rel, self._visit(rel.input))
        if kind == RelKind.AGGREGATE:
            self._check(rel, capabilities is None or capabilities.aggregate)
            return self._aggregate(rel, self._visit(rel.input))
        if kind == RelKind.JOIN:
            self._check(rel, capabilities is None or capabilities.join)
            return self._join(rel)
        raise UnsupportedNode("Can not generate SQL for {} nodes".format(kind.value))

    def _scan(self, rel: RelNode) -> _Fragment:
        table = rel.attrs.table
        names = rel.row_type.names
        if rel.kind == RelKind.VIEW_SCAN:
            # The backing table may name its columns differently from the view
            columns = [quote_identifier(name) for name in table.row_type.names]
        else:
            columns = [quote_identifier(name) for name in names]
        select = None
        if rel.kind == RelKind.TABLE_SCAN and rel.attrs.columns is not None:
            select = list(columns)
        elif rel.kind == RelKind.VIEW_SCAN and table.row_type.names != names:
            select = [_select_item(column, name) for column, name in zip(columns, names)]
        return _Fragment(quote_identifier(table.name), columns, names, select, plain=True)

    def _filter(self, rel: RelNode, fragment: _Fragment) -> _Fragment:
        if fragment.sealed:
            fragment = self._wrap(fragment)
        condition = rel.attrs.condition
        fragment.where.append((render_expression(condition, fragment.columns), _operand(condition, fragment.columns)))
        fragment.plain = False
        return fragment

    def _project(self, rel: RelNode, fragment: _Fragment) -> _Fragment:
        if fragment.sealed:
            fragment = self._wrap(fragment)
        exprs = rel.attrs.exprs
        names = rel.row_type.names
        columns = [_operand(expression, fragment.columns) for expression in exprs]
        fragment.select = [_select_item(column, name) for column, name in zip(columns, names)]
        fragment.plain = fragment.plain and all(isinstance(expression, ColumnRef) for expression in exprs)
        fragment.columns = columns
        fragment.names = names
        return fragment

    def _sort(self, rel: RelNode, fragment: _Fragment) -> _Fragment:
        attrs = rel.attrs
        if fragment.limit is not None or fragment.offset is not None or (attrs.collation and fragment.order):
            fragment = self._wrap(fragment)
        order = []
        for key in attrs.collation:
            item = quote_identifier(fragment.names[key.index])
            order.append(item + " DESC" if key.direction == Direction.DESC else item)
        if order:
            fragment.order = order
        fragment.limit = attrs.fetch
        fragment.offset = attrs.offset
        fragment.plain = False
        return fragment

    def _aggregate(self, rel: RelNode, fragment: _Fragment) -> _Fragment:
        if fragment.sealed:
            fragment = self._wrap(fragment)
        attrs = rel.attrs
        names = rel.row_type.names
        group = [fragment.columns[index] for index in attrs.group]
        items = list(group)
        for call in attrs.calls:
            if call.function == AggFunction.COUNT and not call.args:
                items.append("COUNT(*)")
            else:
                items.append("{}({})".format(call.function.value, fragment.columns[call.args[0]]))
        fragment.select = [_select_item(item, name) for item, name in zip(items, names)]
        fragment.group = group
        fragment.aggregated = True
        fragment.columns = [quote_identifier(name) for name in names]
        fragment.names = names
        fragment.plain = False
        return fragment

    def _join_input(self, fragment: _Fragment) -> tuple[str, list[str]]:
        alias = self._alias()
        if fragment.plain:
            return "{} AS {}".format(fragment.source, alias), ["{}.{}".format(alias, column) for column in fragment.columns]
        columns = ["{}.{}".format(alias, quote_identifier(name)) for name in fragment.names]
        return "({}) AS {}".format(fragment.sql(), alias), columns

    def _join(self, rel: RelNode) -> _Fragment:
        left, left_columns = self._join_input(self._visit(rel.inputs[0]))
        right, right_columns = self._join_input(self._visit(rel.inputs[1]))
        columns = left_columns + right_columns
        join_type = "LEFT JOIN" if rel.attrs.join_type == JoinType.LEFT else "INNER JOIN"
        source = "{} {} {} ON {}".format(left, join_type, right, render_expression(rel.attrs.condition, columns))
        names = rel.row_type.names
        return _Fragment(source, columns, names, [_select_item(column, name) for column, name in zip(columns, names)])


def to_sql(rel: RelNode, capabilities: Optional[Capabilities] = None) -> str:
    """SQL text computing the rows of a tree

    Parameters
    ----------
    rel
        A tree of scans, filters, projections, sorts, joins and aggregates, in any convention

    capabilities
        When given, operators the remote system does not evaluate raise UnsupportedNode

    Raises
    ------
    UnsupportedNode
        If the tree holds an operator (or a literal) which can not be written in SQL
    """
    return Sql_Generator(capabilities).generate(rel)
