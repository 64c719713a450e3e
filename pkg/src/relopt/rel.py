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

"""The rel module

Contains the relational operator tree. A RelNode is immutable: every transformation builds new
nodes through make_operator, which validates the node and derives its row type eagerly.

The kind specific attributes live in small frozen dataclasses (ScanAttrs, FilterAttrs, ...) so
that the planner rules can build modified copies with dataclasses.replace.

"""

from __future__ import annotations

import json
from dataclasses import dataclass
from dataclasses import field
from enum import Enum
from functools import cached_property
from typing import TYPE_CHECKING
from typing import Any
from typing import Iterator
from typing import Optional
from typing import Sequence
from typing import Tuple

from . import datatypes as dt
from .datatypes import RowType
from .datatypes import TypeKind
from .errors import ArityError
from .errors import ColumnOutOfRange
from .errors import TypeMismatch
from .rex import ColumnRef
from .rex import RexNode
from .rex import check_refs
from .rex import literal
from .traits import LOGICAL
from .traits import Collation
from .traits import FieldCollation
from .traits import TraitSet
from .traits import format_collation

if TYPE_CHECKING:
    from .adapters.schema import Table


class RelKind(Enum):
    TABLE_SCAN = "TableScan"
    FILTER = "Filter"
    PROJECT = "Project"
    JOIN = "Join"
    AGGREGATE = "Aggregate"
    SORT = "Sort"
    VALUES = "Values"
    WINDOW = "Window"
    CONVERTER = "Converter"
    VIEW_SCAN = "ViewScan"
    # Placeholder for an equivalence group, only found inside the planner memo
    GROUP = "Group"


ARITY = {
    RelKind.TABLE_SCAN: 0,
    RelKind.VALUES: 0,
    RelKind.VIEW_SCAN: 0,
    RelKind.GROUP: 0,
    RelKind.FILTER: 1,
    RelKind.PROJECT: 1,
    RelKind.AGGREGATE: 1,
    RelKind.SORT: 1,
    RelKind.WINDOW: 1,
    RelKind.CONVERTER: 1,
    RelKind.JOIN: 2,
}


class JoinType(Enum):
    INNER = "inner"
    LEFT = "left"


class AggFunction(Enum):
    COUNT = "COUNT"
    SUM = "SUM"
    MIN = "MIN"
    MAX = "MAX"


@dataclass(frozen=True)
class AggCall:
    """An aggregate function applied to input columns, producing the output field `name`"""

    function: AggFunction
    args: Tuple[int, ...]
    name: str
    type: dt.ScalarType

    def __str__(self):
        return "{}({}) AS {}".format(self.function.value, ", ".join("${}".format(arg) for arg in self.args), self.name)


def agg_call(function: AggFunction, args: Sequence[int], name: str, input_type: RowType) -> AggCall:
    """Build an aggregate call, deriving its result type from the input row type

    Raises
    ------
    ColumnOutOfRange
        If an argument does not exist in the input
    TypeMismatch
        If the function does not accept the argument type
    """
    args = tuple(args)
    for arg in args:
        if arg < 0 or arg >= len(input_type):
            raise ColumnOutOfRange("Aggregate argument ${} out of range for input with {} fields".format(arg, len(input_type)))
    if function == AggFunction.COUNT:
        if len(args) > 1:
            raise ArityError("COUNT accepts at most one argument")
        return AggCall(function, args, name, dt.INT64.with_nullable(False))
    if len(args) != 1:
        raise ArityError("{} requires exactly one argument".format(function.value))
    arg_type = input_type[args[0]].type
    if function == AggFunction.SUM:
        if not (arg_type.is_numeric or arg_type.is_dynamic):
            raise TypeMismatch("SUM requires a numeric argument, got {}".format(arg_type))
        result = dt.INT64 if arg_type.kind == TypeKind.NULL else arg_type
        return AggCall(function, args, name, result.with_nullable(True))
    if arg_type.kind in (TypeKind.ARRAY, TypeKind.MAP):
        raise TypeMismatch("{} can not be applied to {}".format(function.value, arg_type))
    return AggCall(function, args, name, arg_type.with_nullable(True))


@dataclass(frozen=True)
class ScanAttrs:
    table: Table
    # None reads every column, otherwise the (pruned) list of table columns in output order
    columns: Optional[Tuple[int, ...]] = None


@dataclass(frozen=True)
class FilterAttrs:
    condition: RexNode


@dataclass(frozen=True)
class ProjectAttrs:
    exprs: Tuple[RexNode, ...]
    names: Tuple[str, ...]


@dataclass(frozen=True)
class JoinAttrs:
    join_type: JoinType
    condition: RexNode


@dataclass(frozen=True)
class AggregateAttrs:
    group: Tuple[int, ...]
    calls: Tuple[AggCall, ...]


@dataclass(frozen=True)
class SortAttrs:
    collation: Collation = ()
    offset: Optional[int] = None
    fetch: Optional[int] = None

    @property
    def is_limit_only(self) -> bool:
        return not self.collation


@dataclass(frozen=True)
class ValuesAttrs:
    row_type: RowType
    tuples: Tuple[Tuple[Any, ...], ...]


@dataclass(frozen=True)
class WindowAttrs:
    partition: Tuple[int, ...]
    order: Collation
    calls: Tuple[AggCall, ...]


@dataclass(frozen=True)
class ConverterAttrs:
    pass


@dataclass(frozen=True)
class ViewScanAttrs:
    name: str
    table: Table
    row_type: RowType


@dataclass(frozen=True)
class GroupAttrs:
    group_id: int
    row_type: RowType


@dataclass(frozen=True, eq=False)
class RelNode:
    """A relational operator

    Do not build these directly, use make_operator (or the Rel_Builder) so the node is validated.
    Equality is identity; compare digests to find identical expressions.
    """

    kind: RelKind
    attrs: Any
    inputs: Tuple[RelNode, ...]
    traits: TraitSet
    row_type: RowType = field(repr=False)

    @property
    def input(self) -> RelNode:
        return self.inputs[0]

    @property
    def convention(self):
        return self.traits.convention

    @property
    def is_logical(self) -> bool:
        return self.traits.convention.is_logical

    @cached_property
    def digest(self) -> str:
        return digest(self)

    def copy(self, inputs: Optional[Sequence[RelNode]] = None, attrs: Any = None, traits: Optional[TraitSet] = None) -> RelNode:
        """Build a modified copy of this node, logical nodes re-derive their collation"""
        if inputs is None:
            inputs = self.inputs
        if attrs is None:
            attrs = self.attrs
        if traits is None and not self.is_logical:
            traits = self.traits
        return make_operator(self.kind, attrs, inputs, traits)

    def __str__(self):
        return explain(self)

    def __repr__(self):
        return "<RelNode {}>".format(self.digest)


def _check_expr(expression: RexNode, field_count: int, where: str):
    bad = check_refs(expression, field_count)
    if bad is not None:
        raise ColumnOutOfRange("{}: column reference ${} out of range for input with {} fields".format(where, bad, field_count))


def _check_index(index: int, field_count: int, where: str):
    if index < 0 or index >= field_count:
        raise ColumnOutOfRange("{}: column ${} out of range for input with {} fields".format(where, index, field_count))


def _check_boolean(expression: RexNode, where: str):
    if expression.type.kind not in (TypeKind.BOOLEAN, TypeKind.ANY, TypeKind.NULL):
        raise TypeMismatch("{} condition must be BOOLEAN, got {}".format(where, expression.type))


def derive_row_type(kind: RelKind, attrs: Any, inputs: Sequence[RelNode]) -> RowType:
    """Compute (and validate) the output row type of an operator

    Raises
    ------
    ColumnOutOfRange
        If an attribute references a column its input does not have
    TypeMismatch
        If a condition is not boolean
    """
    if kind == RelKind.TABLE_SCAN:
        table_type = attrs.table.row_type
        if attrs.columns is None:
            return table_type
        for column in attrs.columns:
            _check_index(column, len(table_type), "TableScan")
        return table_type.project(attrs.columns)
    if kind == RelKind.VIEW_SCAN:
        return attrs.row_type
    if kind == RelKind.GROUP:
        return attrs.row_type
    if kind == RelKind.VALUES:
        for values in attrs.tuples:
            if len(values) != len(attrs.row_type):
                raise ArityError("Values tuple has {} values but the row type has {} fields".format(len(values), len(attrs.row_type)))
        return attrs.row_type
    if kind == RelKind.FILTER:
        input_type = inputs[0].row_type
        _check_expr(attrs.condition, len(input_type), "Filter")
        _check_boolean(attrs.condition, "Filter")
        return input_type
    if kind == RelKind.PROJECT:
        input_type = inputs[0].row_type
        if len(attrs.exprs) != len(attrs.names):
            raise ArityError("Project has {} expressions but {} names".format(len(attrs.exprs), len(attrs.names)))
        for expression in attrs.exprs:
            _check_expr(expression, len(input_type), "Project")
        return RowType.uniquified(list(attrs.names), [expression.type for expression in attrs.exprs])
    if kind == RelKind.JOIN:
        left_type, right_type = inputs[0].row_type, inputs[1].row_type
        _check_expr(attrs.condition, len(left_type) + len(right_type), "Join")
        _check_boolean(attrs.condition, "Join")
        if attrs.join_type == JoinType.LEFT:
            right_type = RowType(tuple(dt.Field(f.name, f.type.with_nullable(True)) for f in right_type))
        return left_type.concat(right_type)
    if kind == RelKind.AGGREGATE:
        input_type = inputs[0].row_type
        for index in attrs.group:
            _check_index(index, len(input_type), "Aggregate")
        names = [input_type[index].name for index in attrs.group] + [call.name for call in attrs.calls]
        types = [input_type[index].type for index in attrs.group] + [call.type for call in attrs.calls]
        return RowType.uniquified(names, types)
    if kind == RelKind.SORT:
        input_type = inputs[0].row_type
        for key in attrs.collation:
            _check_index(key.index, len(input_type), "Sort")
        for bound in (attrs.offset, attrs.fetch):
            if bound is not None and bound < 0:
                raise ArityError("Sort offset and fetch must be non-negative")
        return input_type
    if kind == RelKind.WINDOW:
        input_type = inputs[0].row_type
        for index in attrs.partition:
            _check_index(index, len(input_type), "Window")
        for key in attrs.order:
            _check_index(key.index, len(input_type), "Window")
        return RowType.uniquified(input_type.names + [call.name for call in attrs.calls], input_type.types + [call.type for call in attrs.calls])
    if kind == RelKind.CONVERTER:
        return inputs[0].row_type
    raise ArityError("Unknown operator kind {}".format(kind))


def _map_collation(collation: Sequence[FieldCollation], mapping: dict[int, int]) -> Collation:
    """Translate collation keys through a column mapping, keeping the longest mappable prefix"""
    result = []
    for key in collation:
        if key.index not in mapping:
            break
        result += [FieldCollation(mapping[key.index], key.direction)]
    return tuple(result)


def derive_collation(kind: RelKind, attrs: Any, inputs: Sequence[RelNode]) -> Collation:
    """The order in which a logical operator delivers its rows, given its inputs"""
    if kind == RelKind.TABLE_SCAN:
        collation = tuple(attrs.table.collation)
        if attrs.columns is None:
            return collation
        mapping = {}
        for position, column in enumerate(attrs.columns):
            mapping.setdefault(column, position)
        return _map_collation(collation, mapping)
    if kind in (RelKind.FILTER, RelKind.CONVERTER):
        return inputs[0].traits.collation
    if kind == RelKind.PROJECT:
        mapping = {}
        for position, expression in enumerate(attrs.exprs):
            if isinstance(expression, ColumnRef):
                mapping.setdefault(expression.index, position)
        return _map_collation(inputs[0].traits.collation, mapping)
    if kind == RelKind.SORT:
        if attrs.is_limit_only:
            return inputs[0].traits.collation
        return tuple(attrs.collation)
    return ()


def make_operator(kind: RelKind, attrs: Any, inputs: Sequence[RelNode] = (), traits: Optional[TraitSet] = None) -> RelNode:
    """Build and validate a relational operator

    Parameters
    ----------
    kind
        The operator kind

    attrs
        The kind specific attributes (ScanAttrs for TABLE_SCAN, FilterAttrs for FILTER, ...)

    inputs
        The input operators, their number must match the kind

    traits
        The trait set of the node. When left out the node is LOGICAL and its collation is derived
        from its inputs.

    Raises
    ------
    ArityError
        If the number of inputs does not match the kind
    ColumnOutOfRange
        If an attribute references a column outside of the inputs
    TypeMismatch
        If a condition is not boolean

    Returns
    -------
    RelNode
        The new node
    """
    inputs = tuple(inputs)
    expected = ARITY[kind]
    if len(inputs) != expected:
        raise ArityError("{} expects {} input(s), got {}".format(kind.value, expected, len(inputs)))
    row_type = derive_row_type(kind, attrs, inputs)
    if traits is None:
        traits = TraitSet(LOGICAL, derive_collation(kind, attrs, inputs))
    return RelNode(kind, attrs, inputs, traits, row_type)


def group_ref(group_id: int, row_type: RowType, traits: TraitSet) -> RelNode:
    return RelNode(RelKind.GROUP, GroupAttrs(group_id, row_type), (), traits, row_type)


# Convenience constructors
def scan(table: Table, columns: Optional[Sequence[int]] = None, traits: Optional[TraitSet] = None) -> RelNode:
    return make_operator(RelKind.TABLE_SCAN, ScanAttrs(table, None if columns is None else tuple(columns)), (), traits)


def filter_(input: RelNode, condition: RexNode, traits: Optional[TraitSet] = None) -> RelNode:
    return make_operator(RelKind.FILTER, FilterAttrs(condition), (input,), traits)


def project(input: RelNode, exprs: Sequence[RexNode], names: Optional[Sequence[str]] = None, traits: Optional[TraitSet] = None) -> RelNode:
    if names is None:
        names = [
            input.row_type[expression.index].name if isinstance(expression, ColumnRef) and expression.index < len(input.row_type) else "$f{}".format(i)
            for i, expression in enumerate(exprs)
        ]
    return make_operator(RelKind.PROJECT, ProjectAttrs(tuple(exprs), tuple(names)), (input,), traits)


def join(left: RelNode, right: RelNode, condition: RexNode, join_type: JoinType = JoinType.INNER, traits: Optional[TraitSet] = None) -> RelNode:
    return make_operator(RelKind.JOIN, JoinAttrs(join_type, condition), (left, right), traits)


def aggregate(input: RelNode, group: Sequence[int], calls: Sequence[AggCall] = (), traits: Optional[TraitSet] = None) -> RelNode:
    return make_operator(RelKind.AGGREGATE, AggregateAttrs(tuple(group), tuple(calls)), (input,), traits)


def sort(
    input: RelNode,
    collation: Sequence[FieldCollation] = (),
    offset: Optional[int] = None,
    fetch: Optional[int] = None,
    traits: Optional[TraitSet] = None,
) -> RelNode:
    return make_operator(RelKind.SORT, SortAttrs(tuple(collation), offset, fetch), (input,), traits)


def values(row_type: RowType, tuples: Sequence[Sequence[Any]], traits: Optional[TraitSet] = None) -> RelNode:
    return make_operator(RelKind.VALUES, ValuesAttrs(row_type, tuple(tuple(row) for row in tuples)), (), traits)


def converter(input: RelNode, traits: TraitSet) -> RelNode:
    return make_operator(RelKind.CONVERTER, ConverterAttrs(), (input,), traits)


def identity_exprs(row_type: RowType) -> list[RexNode]:
    return [ColumnRef(index, f.type) for index, f in enumerate(row_type)]


def is_identity_project(rel: RelNode) -> bool:
    """Project of every input column in order, with the input's names"""
    if rel.kind != RelKind.PROJECT:
        return False
    input_type = rel.input.row_type
    if len(rel.attrs.exprs) != len(input_type):
        return False
    for index, expression in enumerate(rel.attrs.exprs):
        if not (isinstance(expression, ColumnRef) and expression.index == index):
            return False
    return rel.row_type.names == input_type.names


def _render_value(value: Any) -> str:
    if isinstance(value, (list, dict)):
        return json.dumps(value, sort_keys=True)
    return literal(value).render() if value is None or isinstance(value, (bool, int, float, str)) else str(value)


def attr_items(rel: RelNode, canonical: bool = False) -> list[Tuple[str, str]]:
    """The (name, value) attribute pairs shown in plan text (canonical for digests)"""
    attrs = rel.attrs
    kind = rel.kind
    items = []
    if kind == RelKind.TABLE_SCAN:
        items += [("table", "[" + ", ".join(attrs.table.qualified_name) + "]")]
        if attrs.columns is not None:
            items += [("columns", "[" + ", ".join(str(column) for column in attrs.columns) + "]")]
    elif kind == RelKind.VIEW_SCAN:
        items += [("view", attrs.name), ("table", "[" + ", ".join(attrs.table.qualified_name) + "]")]
    elif kind == RelKind.FILTER:
        items += [("condition", attrs.condition.render(canonical))]
    elif kind == RelKind.PROJECT:
        exprs = ["{} AS {}".format(expression.render(canonical), name) for expression, name in zip(attrs.exprs, rel.row_type.names)]
        items += [("exprs", "[" + ", ".join(exprs) + "]")]
    elif kind == RelKind.JOIN:
        items += [("condition", attrs.condition.render(canonical)), ("joinType", attrs.join_type.value)]
    elif kind == RelKind.AGGREGATE:
        items += [("group", "{" + ", ".join(str(index) for index in attrs.group) + "}")]
        if attrs.calls:
            items += [("calls", "[" + ", ".join(str(call) for call in attrs.calls) + "]")]
    elif kind == RelKind.SORT:
        if attrs.collation:
            items += [("sort", format_collation(attrs.collation))]
        if attrs.offset is not None:
            items += [("offset", str(attrs.offset))]
        if attrs.fetch is not None:
            items += [("fetch", str(attrs.fetch))]
    elif kind == RelKind.VALUES:
        if canonical:
            items += [("type", str(attrs.row_type))]
        tuples = ["[" + ", ".join(_render_value(value) for value in row) + "]" for row in attrs.tuples]
        items += [("tuples", "[" + ", ".join(tuples) + "]")]
    elif kind == RelKind.WINDOW:
        items += [("partition", "{" + ", ".join(str(index) for index in attrs.partition) + "}"), ("order", format_collation(attrs.order))]
        items += [("calls", "[" + ", ".join(str(call) for call in attrs.calls) + "]")]
    elif kind == RelKind.CONVERTER:
        items += [("from", str(rel.input.traits.convention))]
    return items


def _node_label(rel: RelNode, canonical: bool, describe: bool = False) -> str:
    items = attr_items(rel, canonical)
    if describe and rel.kind == RelKind.CONVERTER:
        adapter = rel.input.traits.convention.adapter
        if adapter is not None and hasattr(adapter, "describe"):
            items += list(adapter.describe(rel.input))
    if canonical and rel.is_logical:
        items += [("traits", str(rel.traits.convention))]
    else:
        items += [("traits", str(rel.traits))]
    return "{}[{}]".format(rel.kind.value, ", ".join("{}={}".format(name, value) for name, value in items))


def digest(rel: RelNode) -> str:
    """The canonical identity of an expression

    Covers the kind, the canonicalized attributes, the traits and the digests of the inputs (which
    are group ids inside the memo). Logical nodes only contribute their convention: their collation
    follows from the inputs, and two logical nodes over the same groups are the same expression
    whichever member of those groups their collation was derived from.
    """
    if rel.kind == RelKind.GROUP:
        return "G{}".format(rel.attrs.group_id)
    label = _node_label(rel, canonical=True)
    if not rel.inputs:
        return label
    return "{}({})".format(label, ", ".join(node.digest for node in rel.inputs))


def explain(rel: RelNode) -> str:
    """Render a plan, one node per line indented by two spaces per depth"""
    lines = []

    def visit(node: RelNode, depth: int):
        if node.kind == RelKind.GROUP:
            lines.append("  " * depth + "G{}".format(node.attrs.group_id))
            return
        lines.append("  " * depth + _node_label(node, canonical=False, describe=True))
        for child in node.inputs:
            visit(child, depth + 1)

    visit(rel, 0)
    return "\n".join(lines)


def walk(rel: RelNode) -> Iterator[RelNode]:
    """Pre-order traversal of a tree"""
    yield rel
    for child in rel.inputs:
        yield from walk(child)


def kinds(rel: RelNode) -> list[RelKind]:
    return [node.kind for node in walk(rel)]
