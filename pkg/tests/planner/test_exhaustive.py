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

import pytest

from relopt import rel as rl
from relopt.builder import Rel_Builder
from relopt.errors import FixpointNotReached
from relopt.errors import RuleSetError
from relopt.planner import Exhaustive_Planner
from relopt.planner import optimize_exhaustive
from relopt.rel import RelKind
from relopt.rex import REVERSED
from relopt.rex import Call
from relopt.rex import Op
from relopt.rex import call
from relopt.rules import ENUM_FILTER
from relopt.rules import FILTER_INTO_JOIN
from relopt.rules import LOGICAL_RULES
from relopt.rules import Rule
from relopt.rules import RuleCall
from relopt.rules import operand
from relopt.sql import sql_to_rel
from relopt.traits import LOGICAL

SALES_BY_PRODUCT = (
    "SELECT products.name, COUNT(*) FROM sales JOIN products USING (productId) "
    "WHERE sales.discount IS NOT NULL GROUP BY products.name ORDER BY COUNT(*) DESC"
)


class Flip_Comparison_Rule(Rule):
    """Writes `a op b` as `b reversed(op) a`, claiming (wrongly) to be directed"""

    def __init__(self, op: Op):
        self._op = op
        pattern = operand(
            RelKind.FILTER,
            convention=LOGICAL,
            predicate=lambda rel: isinstance(rel.attrs.condition, Call) and rel.attrs.condition.op == op,
        )
        super().__init__("FLIP_" + op.name, pattern, directed=True)

    def on_match(self, call_: RuleCall):
        filter_node = call_.rel(0)
        left, right = filter_node.attrs.condition.operands
        return [rl.filter_(filter_node.input, call(REVERSED[self._op], right, left))]


@pytest.fixture
def builder(sales_catalog):
    yield Rel_Builder(sales_catalog)


def test_filter_into_join_in_one_pass(sales_catalog):
    rel = sql_to_rel(SALES_BY_PRODUCT, sales_catalog)
    planner = Exhaustive_Planner([FILTER_INTO_JOIN])

    result = planner.optimize(rel)

    assert rl.kinds(rel) == [RelKind.SORT, RelKind.PROJECT, RelKind.AGGREGATE, RelKind.FILTER, RelKind.JOIN, RelKind.TABLE_SCAN, RelKind.TABLE_SCAN]
    assert rl.kinds(result) == [RelKind.SORT, RelKind.PROJECT, RelKind.AGGREGATE, RelKind.JOIN, RelKind.FILTER, RelKind.TABLE_SCAN, RelKind.TABLE_SCAN]
    assert planner.rewrites == 1
    assert planner.trace == ["FIRE FILTER_INTO_JOIN on G4.0 -> G4.1"]


def test_logical_rules_reach_fixpoint(sales_catalog):
    rel = sql_to_rel(SALES_BY_PRODUCT, sales_catalog)

    result = optimize_exhaustive(rel, LOGICAL_RULES)

    assert all(node.is_logical for node in rl.walk(result))
    assert optimize_exhaustive(result, LOGICAL_RULES) is result


def test_filter_merge_and_simplify(builder):
    builder.scan("sales")
    builder.filter(builder.greater_than(builder.field("units"), builder.literal(3)))
    builder.filter(builder.and_(builder.literal(True), builder.greater_than(builder.field("units"), builder.literal(3))))
    rel = builder.build()

    result = optimize_exhaustive(rel, LOGICAL_RULES)

    assert rl.kinds(result) == [RelKind.FILTER, RelKind.TABLE_SCAN]
    assert result.attrs.condition.render() == ">($1, 3)"


def test_false_filter_becomes_empty_values(builder):
    builder.scan("sales")
    rel = builder.filter(builder.and_(builder.literal(False), builder.is_not_null(builder.field("discount")))).build()

    result = optimize_exhaustive(rel, LOGICAL_RULES)

    assert result.kind == RelKind.VALUES
    assert result.attrs.tuples == ()
    assert result.row_type == rel.row_type


def test_projection_pushed_into_scan(builder):
    rel = builder.scan("sales").project("units", "productId").build()

    result = optimize_exhaustive(rel, LOGICAL_RULES)

    assert result.kind == RelKind.TABLE_SCAN
    assert result.attrs.columns == (1, 0)
    assert result.row_type.names == ["units", "productId"]


def test_rejects_undirected_rules():
    with pytest.raises(RuleSetError):
        Exhaustive_Planner(LOGICAL_RULES + [ENUM_FILTER])


def test_oscillating_rules(builder):
    builder.scan("sales")
    rel = builder.filter(builder.greater_than(builder.field("units"), builder.literal(3))).build()
    planner = Exhaustive_Planner([Flip_Comparison_Rule(Op.GT), Flip_Comparison_Rule(Op.LT)], max_rewrites=10)

    with pytest.raises(FixpointNotReached):
        planner.optimize(rel)

    assert planner.rewrites == 11
    assert planner.trace[:3] == ["FIRE FLIP_GT on G1.0 -> G1.1", "FIRE FLIP_LT on G1.1 -> G1.0", "FIRE FLIP_GT on G1.0 -> G1.1"]


def test_single_flip_settles(builder):
    builder.scan("sales")
    rel = builder.filter(builder.greater_than(builder.field("units"), builder.literal(3))).build()

    result = optimize_exhaustive(rel, [Flip_Comparison_Rule(Op.GT)])

    assert result.attrs.condition.render() == "<(3, $1)"
