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

"""The core module

The logical rewrite rules: simplification and merging of filters, filter push down into joins,
column pruning of scans and removal of redundant sorts. All of them are directed (each rewrite
strictly simplifies the tree) and so may run in the exhaustive planner as well.

"""

from __future__ import annotations

from .. import rel as rl
from ..rel import JoinType
from ..rel import RelKind
from ..rel import RelNode
from ..rex import FALSE
from ..rex import TRUE
from ..rex import Call
from ..rex import ColumnRef
from ..rex import Op
from ..rex import RexNode
from ..rex import and_
from ..rex import call
from ..rex import conjunctions
from ..rex import input_refs
from ..rex import is_false
from ..rex import is_true
from ..rex import or_
from ..rex import remap
from ..rex import shift
from ..traits import LOGICAL
from ..traits import is_prefix
from .base import Rule
from .base import RuleCall
from .base import operand


def _dedupe(expressions: list[RexNode]) -> list[RexNode]:
    seen = set()
    result = []
    for expression in expressions:
        if expression.digest not in seen:
            seen.add(expression.digest)
            result.append(expression)
    return result


def _flatten(expression: RexNode) -> list[RexNode]:
    """The operands of nested ANDs, literals included"""
    if isinstance(expression, Call) and expression.op == Op.AND:
        result = []
        for operand in expression.operands:
            result += _flatten(operand)
        return result
    return [expression]


def simplify(expression: RexNode) -> RexNode:
    """Remove TRUE/FALSE literals from boolean connectives and drop duplicate operands"""
    if not isinstance(expression, Call):
        return expression
    if expression.op == Op.AND:
        operands = [simplify(operand) for operand in expression.operands]
        if any(is_false(operand) for operand in operands):
            return FALSE
        return and_(_dedupe([operand for operand in operands if not is_true(operand)]))
    if expression.op == Op.OR:
        operands = [simplify(operand) for operand in expression.operands]
        if any(is_true(operand) for operand in operands):
            return TRUE
        return or_(_dedupe([operand for operand in operands if not is_false(operand)]))
    if expression.op == Op.NOT:
        inner = simplify(expression.operands[0])
        if is_true(inner):
            return FALSE
        if is_false(inner):
            return TRUE
        if isinstance(inner, Call) and inner.op == Op.NOT:
            return inner.operands[0]
        return call(Op.NOT, inner)
    return expression


class Filter_Simplify_Rule(Rule):
    """Filter(TRUE) disappears, Filter(FALSE) becomes empty Values, literals inside AND/OR/NOT fold"""

    def __init__(self):
        super().__init__("FILTER_SIMPLIFY", operand(RelKind.FILTER, convention=LOGICAL), directed=True)

    def on_match(self, call: RuleCall) -> list[RelNode]:
        filter_node = call.rel(0)
        condition = simplify(filter_node.attrs.condition)
        if is_true(condition):
            return [filter_node.input]
        if is_false(condition):
            return [rl.values(filter_node.row_type, [])]
        if condition.digest == filter_node.attrs.condition.digest:
            return []
        return [rl.filter_(filter_node.input, condition)]


class Filter_Merge_Rule(Rule):
    """Filter(a) over Filter(b) becomes Filter(a AND b)"""

    def __init__(self):
        pattern = operand(RelKind.FILTER, operand(RelKind.FILTER, convention=LOGICAL), convention=LOGICAL)
        super().__init__("FILTER_MERGE", pattern, directed=True)

    def on_match(self, call: RuleCall) -> list[RelNode]:
        top, bottom = call.rel(0), call.rel(1)
        merged = _dedupe(_flatten(top.attrs.condition) + _flatten(bottom.attrs.condition))
        return [rl.filter_(bottom.input, and_(merged))]


class Filter_Into_Join_Rule(Rule):
    """Pushes the conjuncts of a Filter above a Join into the join inputs or condition

    Conjuncts over the left columns only filter the left input; over the right columns only, the
    right input (shifted to its own column numbers). For INNER joins the remaining conjuncts join
    the join condition. Only the left side conjuncts move below a LEFT join, the rest stays above
    since filtering the right input would change which rows get NULL padded.
    """

    def __init__(self):
        pattern = operand(RelKind.FILTER, operand(RelKind.JOIN, convention=LOGICAL), convention=LOGICAL)
        super().__init__("FILTER_INTO_JOIN", pattern, directed=True)

    def on_match(self, call: RuleCall) -> list[RelNode]:
        filter_node, join_node = call.rel(0), call.rel(1)
        left, right = join_node.inputs
        left_width = len(left.row_type)
        inner = join_node.attrs.join_type == JoinType.INNER

        left_conjuncts, right_conjuncts, join_conjuncts, remaining = [], [], [], []
        for conjunct in conjunctions(filter_node.attrs.condition):
            refs = input_refs(conjunct)
            if refs and max(refs) < left_width:
                left_conjuncts.append(conjunct)
            elif not inner:
                remaining.append(conjunct)
            elif refs and min(refs) >= left_width:
                right_conjuncts.append(shift(conjunct, -left_width))
            else:
                join_conjuncts.append(conjunct)

        if not (left_conjuncts or right_conjuncts or join_conjuncts):
            return []
        if left_conjuncts:
            left = rl.filter_(left, and_(left_conjuncts))
        if right_conjuncts:
            right = rl.filter_(right, and_(right_conjuncts))
        condition = and_(_dedupe(conjunctions(join_node.attrs.condition) + join_conjuncts))
        result = rl.join(left, right, condition, join_node.attrs.join_type)
        if remaining:
            result = rl.filter_(result, and_(remaining))
        return [result]


class Project_Pushdown_Rule(Rule):
    """Narrows a scan to the columns a Project above it uses

    A Project of plain column references disappears when the narrowed scan produces the same row
    type, otherwise the Project stays, rewritten over the narrowed scan.
    """

    def __init__(self):
        pattern = operand(
            RelKind.PROJECT,
            operand(RelKind.TABLE_SCAN, convention=LOGICAL, predicate=lambda rel: rel.attrs.table.capabilities.projection),
            convention=LOGICAL,
        )
        super().__init__("PROJECT_PUSHDOWN", pattern, directed=True)

    def on_match(self, call: RuleCall) -> list[RelNode]:
        project_node, scan_node = call.rel(0), call.rel(1)
        table = scan_node.attrs.table
        current = scan_node.attrs.columns if scan_node.attrs.columns is not None else tuple(range(len(table.row_type)))
        exprs = project_node.attrs.exprs
        names = project_node.row_type.names

        if rl.is_identity_project(project_node):
            return [scan_node]

        references = [expression.index for expression in exprs if isinstance(expression, ColumnRef)]
        if len(references) == len(exprs) and len(set(references)) == len(references):
            columns = tuple(current[index] for index in references)
            narrowed = rl.scan(table, columns)
            if narrowed.row_type.names == names:
                return [narrowed]
            if columns == tuple(current):
                return []
            return [rl.project(narrowed, rl.identity_exprs(narrowed.row_type), names)]

        used = sorted(set().union(*(input_refs(expression) for expression in exprs))) if exprs else []
        if len(used) == len(current):
            return []
        narrowed = rl.scan(table, tuple(current[index] for index in used))
        mapping = {index: position for position, index in enumerate(used)}
        return [rl.project(narrowed, [remap(expression, mapping) for expression in exprs], names)]


class Sort_Removal_Rule(Rule):
    """Drops a Sort whose input already delivers the requested order

    A Sort with an offset or fetch becomes a limit-only Sort instead.
    """

    def __init__(self):
        pattern = operand(
            RelKind.SORT,
            operand(),
            convention=LOGICAL,
            predicate=lambda rel: bool(rel.attrs.collation),
        )
        super().__init__("SORT_REMOVAL", pattern, directed=True)

    def on_match(self, call: RuleCall) -> list[RelNode]:
        sort_node, child = call.rel(0), call.rel(1)
        if not is_prefix(sort_node.attrs.collation, child.traits.collation):
            return []
        if sort_node.attrs.offset is None and sort_node.attrs.fetch is None:
            return [sort_node.input]
        return [rl.sort(sort_node.input, (), sort_node.attrs.offset, sort_node.attrs.fetch)]


FILTER_SIMPLIFY = Filter_Simplify_Rule()
FILTER_MERGE = Filter_Merge_Rule()
FILTER_INTO_JOIN = Filter_Into_Join_Rule()
PROJECT_PUSHDOWN = Project_Pushdown_Rule()
SORT_REMOVAL = Sort_Removal_Rule()

LOGICAL_RULES = [FILTER_SIMPLIFY, FILTER_MERGE, FILTER_INTO_JOIN, PROJECT_PUSHDOWN, SORT_REMOVAL]
