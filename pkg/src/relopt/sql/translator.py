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

"""The translator module

Turns a ValidatedQuery into a tree of LOGICAL relational operators. The shape is always

    Scan -> Join (left deep, in FROM order) -> Filter (WHERE) -> [Project] -> Aggregate
    -> Filter (HAVING) -> Project (select list) -> [Aggregate (DISTINCT)]
    -> Sort (ORDER BY, LIMIT) -> [Project]

where the Project below the Aggregate only exists when grouping or aggregating on computed
expressions, and the last Project only exists when ORDER BY sorts on columns which are not
selected.

"""

from __future__ import annotations

from .. import rel as rl
from ..datatypes import RowType
from ..rel import RelNode
from ..rex import ColumnRef
from .validator import FromJoin
from .validator import FromNode
from .validator import FromQuery
from .validator import FromTable
from .validator import FromValues
from .validator import FromView
from .validator import ValidatedQuery


def _from_to_algebra(item: FromNode) -> RelNode:
    if isinstance(item, FromTable):
        return rl.scan(item.table)
    if isinstance(item, FromView):
        return item.rel
    if isinstance(item, FromQuery):
        return to_algebra(item.query)
    if isinstance(item, FromJoin):
        return rl.join(_from_to_algebra(item.left), _from_to_algebra(item.right), item.condition, item.join_type)
    if isinstance(item, FromValues):
        return rl.values(RowType(()), [()])
    raise TypeError("Unknown FROM item {}".format(item))


def to_algebra(query: ValidatedQuery) -> RelNode:
    """Translate a validated query into a LOGICAL relational expression"""
    rel = _from_to_algebra(query.from_item)
    if query.where is not None:
        rel = rl.filter_(rel, query.where)
    if query.aggregate is not None:
        spec = query.aggregate
        if spec.pre_exprs is not None:
            rel = rl.project(rel, spec.pre_exprs, spec.pre_names)
        rel = rl.aggregate(rel, spec.group, spec.calls)
        if query.having is not None:
            rel = rl.filter_(rel, query.having)
    rel = rl.project(rel, query.select_exprs, query.select_names)
    if query.distinct:
        rel = rl.aggregate(rel, range(len(query.select_exprs)))
    if query.order or query.offset is not None or query.fetch is not None:
        rel = rl.sort(rel, query.order, query.offset, query.fetch)
    if len(query.select_exprs) > query.visible:
        refs = [ColumnRef(index, rel.row_type[index].type) for index in range(query.visible)]
        rel = rl.project(rel, refs, rel.row_type.names[: query.visible])
    return rel
