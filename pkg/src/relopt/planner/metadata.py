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

"""The metadata module

Contains the Metadata_Provider, which answers the statistical questions the cost model asks
about an expression: its row count, the selectivity of a predicate, the size of its rows and its
cost. Handlers are registered per metadata kind and their results are cached per (expression
digest, kind, arguments).

Inside the planner memo the inputs of an expression are group placeholders; questions about a
group are answered through the resolver, which returns the representative expression of the group.

"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Any
from typing import Callable
from typing import Iterable
from typing import Optional

from ..adapters.schema import DEFAULT_FIELD_SIZE
from ..datatypes import TypeKind
from ..errors import TypeMismatch
from ..errors import UnknownMetadataKind
from ..rel import JoinType
from ..rel import RelKind
from ..rel import RelNode
from ..rex import Call
from ..rex import ColumnRef
from ..rex import Literal
from ..rex import Op
from ..rex import RexNode
from ..rex import conjunctions
from ..rex import input_refs
from ..rex import remap
from ..rex import shift
from .cost import ZERO
from .cost import Cost


class MetadataKind:
    ROW_COUNT = "ROW_COUNT"
    SELECTIVITY = "SELECTIVITY"
    FIELD_SIZES = "FIELD_SIZES"
    AVG_ROW_SIZE = "AVG_ROW_SIZE"
    NON_CUMULATIVE_COST = "NON_CUMULATIVE_COST"
    CUMULATIVE_COST = "CUMULATIVE_COST"
    MAX_PARALLELISM = "MAX_PARALLELISM"
    PREDICATES = "PREDICATES"


SELECTIVITIES = {
    Op.EQ: 0.15,
    Op.NE: 0.85,
    Op.LT: 0.5,
    Op.LE: 0.5,
    Op.GT: 0.5,
    Op.GE: 0.5,
    Op.IS_NULL: 0.1,
    Op.IS_NOT_NULL: 0.9,
}
UNKNOWN_SELECTIVITY = 0.25
# Row count reduction per grouping key of an Aggregate
GROUPING_FACTOR = 0.25


@dataclass(frozen=True)
class MetadataHandler:
    function: Callable[..., Any]
    fallback: Any = None


def estimate_selectivity(predicate: RexNode) -> float:
    """Fraction of rows a predicate keeps, from fixed per-operator defaults

    Raises
    ------
    TypeMismatch
        If the predicate is not boolean
    """
    if predicate.type.kind not in (TypeKind.BOOLEAN, TypeKind.ANY, TypeKind.NULL):
        raise TypeMismatch("Selectivity of a non boolean expression {}".format(predicate))
    if isinstance(predicate, Literal):
        return 1.0 if predicate.value is True else 0.0
    if not isinstance(predicate, Call):
        return UNKNOWN_SELECTIVITY
    if predicate.op == Op.AND:
        return math.prod(estimate_selectivity(operand) for operand in predicate.operands)
    if predicate.op == Op.OR:
        result = 0.0
        for operand in predicate.operands:
            value = estimate_selectivity(operand)
            result = result + value - result * value
        return result
    if predicate.op == Op.NOT:
        return 1.0 - estimate_selectivity(predicate.operands[0])
    return SELECTIVITIES.get(predicate.op, UNKNOWN_SELECTIVITY)


class Metadata_Provider:
    """Caching registry of metadata handlers

    Parameters
    ----------
    resolver
        Maps a memo group id to the representative expression of the group, needed when
        expressions have group placeholders as inputs

    logger
        The logger to use, a logger named RelOpt_Planner is used when none is given
    """

    def __init__(self, resolver: Optional[Callable[[int], Optional[RelNode]]] = None, logger: Optional[logging.Logger] = None):
        self._resolver = resolver
        self._logger = logger if logger is not None else logging.getLogger("RelOpt_Planner")
        self._handlers: dict[str, MetadataHandler] = {}
        self._cache: dict[tuple, Any] = {}
        self._depends: dict[tuple, frozenset[int]] = {}
        self._active: set[tuple] = set()
        self.hits = 0
        self.misses = 0

        self.register(MetadataKind.ROW_COUNT, _row_count, 1.0)
        self.register(MetadataKind.SELECTIVITY, _selectivity, UNKNOWN_SELECTIVITY)
        self.register(MetadataKind.FIELD_SIZES, _field_sizes, ())
        self.register(MetadataKind.AVG_ROW_SIZE, _avg_row_size, DEFAULT_FIELD_SIZE)
        self.register(MetadataKind.NON_CUMULATIVE_COST, _non_cumulative_cost, ZERO)
        self.register(MetadataKind.CUMULATIVE_COST, _cumulative_cost, ZERO)
        self.register(MetadataKind.MAX_PARALLELISM, lambda provider, rel: 1, 1)
        self.register(MetadataKind.PREDICATES, _predicates, ())

    def register(self, kind: str, function: Callable[..., Any], fallback: Any = None):
        """Register (or replace) the handler of a metadata kind

        The handler is called as function(provider, rel, *args). The fallback is returned when a
        request for the same (expression, kind, arguments) is made while it is being computed.
        """
        self._handlers[kind] = MetadataHandler(function, fallback)
        self.invalidate()

    @property
    def kinds(self) -> list[str]:
        return list(self._handlers)

    def resolve(self, rel: RelNode) -> Optional[RelNode]:
        """The representative expression behind a group placeholder"""
        if rel.kind != RelKind.GROUP or self._resolver is None:
            return None
        return self._resolver(rel.attrs.group_id)

    def query(self, kind: str, rel: RelNode, *args: Any) -> Any:
        """Answer a metadata request, from the cache when possible

        Raises
        ------
        UnknownMetadataKind
            If no handler is registered for the kind
        """
        if kind not in self._handlers:
            raise UnknownMetadataKind("No metadata handler registered for {}".format(kind))
        arg_key = tuple(arg.digest if isinstance(arg, RexNode) else arg for arg in args)
        key = (rel.digest, kind, arg_key)
        if key in self._cache:
            self.hits += 1
            return self._cache[key]
        handler = self._handlers[kind]
        if key in self._active:
            self._logger.trace("Cyclic metadata request {} on {}, using fallback".format(kind, rel.digest))
            return handler.fallback
        self.misses += 1
        self._active.add(key)
        try:
            result = handler.function(self, rel, *args)
        finally:
            self._active.discard(key)
        self._cache[key] = result
        self._depends[key] = _group_dependencies(rel)
        return result

    def invalidate(self, group_ids: Optional[Iterable[int]] = None):
        """Drop cached results, all of them or those computed over the given groups"""
        if group_ids is None:
            self._cache.clear()
            self._depends.clear()
            return
        group_ids = set(group_ids)
        stale = [key for key, depends in self._depends.items() if depends & group_ids]
        for key in stale:
            del self._cache[key]
            del self._depends[key]

    def row_count(self, rel: RelNode) -> float:
        return self.query(MetadataKind.ROW_COUNT, rel)

    def selectivity(self, rel: RelNode, predicate: RexNode) -> float:
        return self.query(MetadataKind.SELECTIVITY, rel, predicate)

    def field_sizes(self, rel: RelNode) -> tuple[float, ...]:
        return self.query(MetadataKind.FIELD_SIZES, rel)

    def avg_row_size(self, rel: RelNode) -> float:
        return self.query(MetadataKind.AVG_ROW_SIZE, rel)

    def non_cumulative_cost(self, rel: RelNode) -> Cost:
        return self.query(MetadataKind.NON_CUMULATIVE_COST, rel)

    def cumulative_cost(self, rel: RelNode) -> Cost:
        return self.query(MetadataKind.CUMULATIVE_COST, rel)

    def max_parallelism(self, rel: RelNode) -> int:
        return self.query(MetadataKind.MAX_PARALLELISM, rel)

    def predicates(self, rel: RelNode) -> tuple[RexNode, ...]:
        return self.query(MetadataKind.PREDICATES, rel)


def _group_dependencies(rel: RelNode) -> frozenset[int]:
    if rel.kind == RelKind.GROUP:
        return frozenset((rel.attrs.group_id,))
    return frozenset(node.attrs.group_id for node in rel.inputs if node.kind == RelKind.GROUP)


def _delegate(provider: Metadata_Provider, kind: str, rel: RelNode, fallback: Any) -> Any:
    representative = provider.resolve(rel)
    if representative is None:
        return fallback
    return provider.query(kind, representative)


def _row_count(provider: Metadata_Provider, rel: RelNode) -> float:
    kind = rel.kind
    if kind == RelKind.GROUP:
        return _delegate(provider, MetadataKind.ROW_COUNT, rel, 1.0)
    if kind in (RelKind.TABLE_SCAN, RelKind.VIEW_SCAN):
        return rel.attrs.table.row_count
    if kind == RelKind.VALUES:
        return float(len(rel.attrs.tuples))
    if kind == RelKind.FILTER:
        return provider.row_count(rel.input) * provider.selectivity(rel.input, rel.attrs.condition)
    if kind == RelKind.JOIN:
        left, right = (provider.row_count(node) for node in rel.inputs)
        rows = left * right * provider.selectivity(rel, rel.attrs.condition)
        if rel.attrs.join_type == JoinType.LEFT:
            rows = max(rows, left)
        return rows
    if kind == RelKind.AGGREGATE:
        if not rel.attrs.group:
            return 1.0
        return max(1.0, provider.row_count(rel.input) * GROUPING_FACTOR ** len(rel.attrs.group))
    if kind == RelKind.SORT:
        rows = provider.row_count(rel.input)
        if rel.attrs.offset is not None:
            rows = max(0.0, rows - rel.attrs.offset)
        if rel.attrs.fetch is not None:
            rows = min(rows, float(rel.attrs.fetch))
        return rows
    return provider.row_count(rel.input)


def _selectivity(provider: Metadata_Provider, rel: RelNode, predicate: RexNode) -> float:
    return estimate_selectivity(predicate)


def _field_sizes(provider: Metadata_Provider, rel: RelNode) -> tuple[float, ...]:
    kind = rel.kind
    if kind == RelKind.GROUP:
        sizes = _delegate(provider, MetadataKind.FIELD_SIZES, rel, ())
        if len(sizes) != len(rel.row_type):
            return tuple(DEFAULT_FIELD_SIZE for _ in rel.row_type)
        return sizes
    if kind == RelKind.TABLE_SCAN:
        sizes = rel.attrs.table.field_sizes
        if rel.attrs.columns is None:
            return sizes
        return tuple(sizes[column] for column in rel.attrs.columns)
    if kind == RelKind.VIEW_SCAN:
        return rel.attrs.table.field_sizes
    if kind == RelKind.PROJECT:
        sizes = provider.field_sizes(rel.input)
        return tuple(sizes[expression.index] if isinstance(expression, ColumnRef) else DEFAULT_FIELD_SIZE for expression in rel.attrs.exprs)
    if kind == RelKind.JOIN:
        return provider.field_sizes(rel.inputs[0]) + provider.field_sizes(rel.inputs[1])
    if kind == RelKind.AGGREGATE:
        sizes = provider.field_sizes(rel.input)
        return tuple(sizes[index] for index in rel.attrs.group) + tuple(DEFAULT_FIELD_SIZE for _ in rel.attrs.calls)
    if kind == RelKind.WINDOW:
        return provider.field_sizes(rel.input) + tuple(DEFAULT_FIELD_SIZE for _ in rel.attrs.calls)
    if kind in (RelKind.FILTER, RelKind.SORT, RelKind.CONVERTER):
        return provider.field_sizes(rel.input)
    return tuple(DEFAULT_FIELD_SIZE for _ in rel.row_type)


def _avg_row_size(provider: Metadata_Provider, rel: RelNode) -> float:
    return float(sum(provider.field_sizes(rel)))


def _non_cumulative_cost(provider: Metadata_Provider, rel: RelNode) -> Cost:
    kind = rel.kind
    if kind == RelKind.GROUP:
        return ZERO
    if kind in (RelKind.TABLE_SCAN, RelKind.VIEW_SCAN):
        rows = provider.row_count(rel)
        cost = Cost(cpu=rows, io=rows * provider.avg_row_size(rel))
    elif kind == RelKind.VALUES:
        cost = Cost(cpu=float(len(rel.attrs.tuples)))
    elif kind in (RelKind.FILTER, RelKind.PROJECT, RelKind.CONVERTER, RelKind.WINDOW):
        cost = Cost(cpu=provider.row_count(rel.input))
    elif kind == RelKind.JOIN:
        left, right = rel.inputs
        cost = Cost(
            cpu=provider.row_count(left) + provider.row_count(right) + provider.row_count(rel),
            memory=provider.row_count(right) * provider.avg_row_size(right),
        )
    elif kind == RelKind.AGGREGATE:
        rows = provider.row_count(rel)
        cost = Cost(cpu=provider.row_count(rel.input), memory=rows * provider.avg_row_size(rel))
    elif kind == RelKind.SORT:
        rows = provider.row_count(rel.input)
        if rel.attrs.collation:
            cost = Cost(cpu=rows * math.log2(max(rows, 2.0)), memory=rows * provider.avg_row_size(rel.input))
        else:
            # Offset/fetch only, no sorting work
            cost = Cost(cpu=provider.row_count(rel))
    else:
        cost = ZERO
    # Only the io of a remote node is discounted
    discount = rel.traits.convention.discount
    if discount != 1.0:
        cost = Cost(cpu=cost.cpu, io=cost.io * discount, memory=cost.memory)
    return cost


def _cumulative_cost(provider: Metadata_Provider, rel: RelNode) -> Cost:
    if rel.kind == RelKind.GROUP:
        return _delegate(provider, MetadataKind.CUMULATIVE_COST, rel, ZERO)
    total = provider.non_cumulative_cost(rel)
    for node in rel.inputs:
        total = total + provider.cumulative_cost(node)
    return total


def _predicates(provider: Metadata_Provider, rel: RelNode) -> tuple[RexNode, ...]:
    """Conjuncts known to hold on every row of the expression"""
    kind = rel.kind
    if kind == RelKind.GROUP:
        return _delegate(provider, MetadataKind.PREDICATES, rel, ())
    if kind == RelKind.FILTER:
        known = list(provider.predicates(rel.input))
        for conjunct in conjunctions(rel.attrs.condition):
            if all(conjunct.digest != other.digest for other in known):
                known.append(conjunct)
        return tuple(known)
    if kind in (RelKind.SORT, RelKind.CONVERTER):
        return provider.predicates(rel.input)
    if kind == RelKind.PROJECT:
        mapping = {}
        for position, expression in enumerate(rel.attrs.exprs):
            if isinstance(expression, ColumnRef):
                mapping.setdefault(expression.index, position)
        return tuple(remap(predicate, mapping) for predicate in provider.predicates(rel.input) if input_refs(predicate) <= set(mapping))
    if kind == RelKind.JOIN:
        left, right = rel.inputs
        known = list(provider.predicates(left))
        if rel.attrs.join_type == JoinType.INNER:
            known += [shift(predicate, len(left.row_type)) for predicate in provider.predicates(right)]
            known += conjunctions(rel.attrs.condition)
        return tuple(known)
    return ()
