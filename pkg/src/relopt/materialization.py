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

"""The materialization module

Materialized views: a query (the view plan) whose result is stored in a backing table. When a
query contains the view plan, or the view plan plus an extra filter, the matching subtree can be
read from the backing table instead. Such substitutions are offered to the cost based planner as
alternatives in the equivalence group of the matched subtree; the cost model decides which one is
used.

The backing tables are not maintained: they must hold the result of the view query.

"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import TYPE_CHECKING
from typing import Iterable
from typing import Optional
from typing import Union

from . import rel as rl
from .adapters.catalog import Catalog
from .adapters.schema import Table
from .errors import RowTypeMismatch
from .errors import UnknownTable
from .rel import RelKind
from .rel import RelNode
from .rel import ViewScanAttrs
from .rex import ColumnRef
from .rex import and_
from .rex import conjunctions
from .rex import input_refs
from .rex import remap

if TYPE_CHECKING:
    from .planner.volcano import Volcano_Planner

_logger = logging.getLogger("RelOpt_Materialization")


@dataclass
class Materialization:
    """A view plan and the table holding its rows"""

    id: str
    sql: str
    view_rel: RelNode
    table: Table
    enabled: bool = True

    def view_scan(self) -> RelNode:
        """A scan of the backing table producing the view's row type"""
        return rl.make_operator(RelKind.VIEW_SCAN, ViewScanAttrs(self.id, self.table, self.view_rel.row_type))


def _resolve_table(catalog: Catalog, table: Union[str, Table]) -> Table:
    if isinstance(table, Table):
        return table
    path = tuple(part.strip() for part in table.split("."))
    found = catalog.find_table(path)
    if found is None:
        raise UnknownTable("Backing table '{}' not found".format(table))
    return found


def register_materialization(catalog: Catalog, view_sql: str, table: Union[str, Table], logger: Optional[logging.Logger] = None) -> Materialization:
    """Declare that `table` holds the rows of the query `view_sql`

    Registering the same backing table again returns the existing materialization.

    Raises
    ------
    UnknownTable
        If the backing table does not exist
    SqlError
        If the view query does not parse or validate
    RowTypeMismatch
        If the backing table's columns do not match the view's in number and types
    """
    from .sql import sql_to_rel

    logger = logger if logger is not None else _logger
    backing = _resolve_table(catalog, table)
    for existing in catalog.materializations:
        if existing.table is backing:
            logger.debug("Materialization on {} already registered".format(existing.id))
            return existing
    view_rel = sql_to_rel(view_sql, catalog)
    if not view_rel.row_type.same_types(backing.row_type):
        raise RowTypeMismatch("View {} does not match backing table {}{}".format(view_rel.row_type, ".".join(backing.qualified_name), backing.row_type))
    materialization = Materialization(".".join(backing.qualified_name), view_sql, view_rel, backing)
    catalog.materializations.append(materialization)
    logger.info("Registered materialization on {}".format(materialization.id))
    return materialization


def _split_filter(rel: RelNode) -> Optional[tuple[Optional[RelNode], RelNode, RelNode]]:
    """(Project or None, Filter, Filter input) when rel is a Filter, possibly under a Project"""
    top = None
    if rel.kind == RelKind.PROJECT:
        top = rel
        rel = rel.input
    if rel.kind != RelKind.FILTER:
        return None
    return top, rel, rel.input


def _same_projection(left: RelNode, right: RelNode) -> bool:
    left_exprs = [expression.digest for expression in left.attrs.exprs]
    right_exprs = [expression.digest for expression in right.attrs.exprs]
    return left_exprs == right_exprs and left.row_type.names == right.row_type.names


def _residual_match(query: RelNode, materialization: Materialization) -> Optional[RelNode]:
    """Rewrite a filtered query over the filtered view it is subsumed by

    The view's conjuncts must be a subset of the query's, over the same input and under the same
    projection; the remaining conjuncts become a Filter over the backing table.
    """
    query_parts = _split_filter(query)
    view_parts = _split_filter(materialization.view_rel)
    if query_parts is None or view_parts is None:
        return None
    query_top, query_filter, query_input = query_parts
    view_top, view_filter, view_input = view_parts
    if (query_top is None) != (view_top is None) or query_input.digest != view_input.digest:
        return None
    if query_top is not None and not _same_projection(query_top, view_top):
        return None
    view_conjuncts = {conjunct.digest for conjunct in conjunctions(view_filter.attrs.condition)}
    query_conjuncts = conjunctions(query_filter.attrs.condition)
    if not view_conjuncts <= {conjunct.digest for conjunct in query_conjuncts}:
        return None
    residual = [conjunct for conjunct in query_conjuncts if conjunct.digest not in view_conjuncts]
    scan = materialization.view_scan()
    if not residual:
        return scan
    condition = and_(residual)
    if query_top is not None:
        # The residual must be expressible over the projected columns
        mapping = {}
        for position, expression in enumerate(query_top.attrs.exprs):
            if isinstance(expression, ColumnRef) and expression.index not in mapping:
                mapping[expression.index] = position
        if not input_refs(condition) <= set(mapping):
            return None
        condition = remap(condition, mapping)
    return rl.filter_(scan, condition)


def _view_core(view_rel: RelNode) -> tuple[RelNode, dict[int, int]]:
    """The view plan below a top Project of distinct columns, and core column -> view column"""
    if view_rel.kind == RelKind.PROJECT and all(isinstance(expression, ColumnRef) for expression in view_rel.attrs.exprs):
        indices = [expression.index for expression in view_rel.attrs.exprs]
        if len(set(indices)) == len(indices):
            return view_rel.input, {index: position for position, index in enumerate(indices)}
    return view_rel, {index: index for index in range(len(view_rel.row_type))}


def _filtered_core_match(query: RelNode, materialization: Materialization) -> Optional[RelNode]:
    """Rewrite a filter, possibly under a Project, placed directly over the core of a view

    The core is the view plan without its top column selection or renaming. The filter moves above
    the scan of the backing table and the query's projection is rebuilt on top of it, both remapped
    to the view's columns; every column they use must be kept by the view.
    """
    core, mapping = _view_core(materialization.view_rel)
    top = None
    node = query
    if node.kind == RelKind.PROJECT:
        top, node = node, node.input
    if node.kind != RelKind.FILTER or node.input.digest != core.digest:
        return None
    condition = node.attrs.condition
    if not input_refs(condition) <= set(mapping):
        return None
    filtered = rl.filter_(materialization.view_scan(), remap(condition, mapping))
    if top is None:
        if len(mapping) != len(core.row_type):
            return None
        exprs = [ColumnRef(mapping[index], field.type) for index, field in enumerate(core.row_type)]
        return rl.project(filtered, exprs, core.row_type.names)
    used = set()
    for expression in top.attrs.exprs:
        used |= input_refs(expression)
    if not used <= set(mapping):
        return None
    return rl.project(filtered, [remap(expression, mapping) for expression in top.attrs.exprs], top.row_type.names)


def find_substitutions(rel: RelNode, materializations: Iterable[Materialization]) -> list[tuple[RelNode, RelNode]]:
    """The (subtree, replacement) pairs of a query which can read a materialization

    A subtree equal to a view plan is replaced by a scan of the backing table. A filtered subtree
    whose filter keeps a superset of the conjuncts of a filtered view is replaced by a scan of
    the backing table under the residual filter. A filter placed over the whole view plan, below
    the view's column selection, is lifted above the scan of the backing table. Operators above a
    replaced subtree keep working on the replacement, since it joins the subtree's equivalence group.
    """
    materializations = [materialization for materialization in materializations if materialization.enabled]
    found = []
    if not materializations:
        return found
    for node in rl.walk(rel):
        for materialization in materializations:
            if node.digest == materialization.view_rel.digest:
                found.append((node, materialization.view_scan()))
                continue
            replacement = _residual_match(node, materialization)
            if replacement is None:
                replacement = _filtered_core_match(node, materialization)
            if replacement is not None:
                found.append((node, replacement))
    return found


def _replace(rel: RelNode, target: RelNode, replacement: RelNode) -> RelNode:
    if rel is target:
        return replacement
    if not rel.inputs:
        return rel
    inputs = [_replace(child, target, replacement) for child in rel.inputs]
    if all(new is old for new, old in zip(inputs, rel.inputs)):
        return rel
    return rel.copy(inputs=inputs)


def substitute(rel: RelNode, materializations: Iterable[Materialization]) -> list[RelNode]:
    """Every rewriting of a query using one materialization"""
    return [_replace(rel, target, replacement) for target, replacement in find_substitutions(rel, materializations)]


def register_substitutions(planner: Volcano_Planner, rel: RelNode, materializations: Iterable[Materialization]) -> int:
    """Add the substitutions of a (registered) query to the planner, returning how many were added"""
    count = 0
    for target, replacement in find_substitutions(rel, materializations):
        group_id = planner.add_alternative(target, replacement)
        _logger.debug("View substitution {} added to G{}".format(replacement.kind.value, group_id))
        count += 1
    return count
