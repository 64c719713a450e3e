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
from relopt.adapters.remote import Remote_Schema
from relopt.builder import Rel_Builder
from relopt.datatypes import BOOLEAN
from relopt.datatypes import INT64
from relopt.datatypes import RowType
from relopt.rel import RelKind
from relopt.rex import FALSE
from relopt.rex import TRUE
from relopt.rex import ColumnRef
from relopt.rex import Op
from relopt.rex import call
from relopt.rules import ENUM_FILTER
from relopt.rules import ENUM_JOIN
from relopt.rules import ENUM_SORT
from relopt.rules import ENUMERABLE_RULES
from relopt.rules import FILTER_INTO_JOIN
from relopt.rules import FILTER_MERGE
from relopt.rules import FILTER_SIMPLIFY
from relopt.rules import LOGICAL_RULES
from relopt.rules import PROJECT_PUSHDOWN
from relopt.rules import SORT_REMOVAL
from relopt.rules import RuleCall
from relopt.rules import bindings
from relopt.rules import default_rules
from relopt.rules import rule_names
from relopt.rules import simplify
from relopt.traits import ENUMERABLE
from relopt.traits import TraitSet
from relopt.traits import collation_of


def fire(rule, rel):
    """Every result of the rule on every binding rooted at rel"""
    results = []
    for binding in bindings(rule.pattern, rel, lambda node, index: [node.inputs[index]]):
        results += rule.on_match(RuleCall(rule, binding))
    return results


@pytest.fixture
def builder(sales_catalog):
    yield Rel_Builder(sales_catalog)


def join_sales_products(builder, join_type="inner"):
    builder.scan("sales").scan("products")
    return builder.join(join_type, builder.equals(builder.field(2, 0, "productId"), builder.field(2, 1, "productId")))


def flag(index):
    return ColumnRef(index, BOOLEAN)


@pytest.mark.parametrize(
    "expression, expected",
    [
        (call(Op.AND, TRUE, flag(0)), "$0"),
        (call(Op.AND, flag(0), FALSE), "false"),
        (call(Op.OR, flag(0), TRUE), "true"),
        (call(Op.OR, FALSE, flag(0), flag(1)), "OR($0, $1)"),
        (call(Op.AND, flag(0), flag(0), flag(1)), "AND($0, $1)"),
        (call(Op.NOT, call(Op.NOT, flag(0))), "$0"),
        (call(Op.NOT, call(Op.AND, TRUE, FALSE)), "true"),
        (flag(2), "$2"),
    ],
)
def test_simplify(expression, expected):
    assert simplify(expression).render() == expected


def test_rules_are_named_and_directed():
    assert rule_names(LOGICAL_RULES) == ["FILTER_SIMPLIFY", "FILTER_MERGE", "FILTER_INTO_JOIN", "PROJECT_PUSHDOWN", "SORT_REMOVAL"]
    assert all(rule.directed for rule in LOGICAL_RULES)
    assert not any(rule.directed for rule in ENUMERABLE_RULES)


def test_filter_simplify_removes_true_filter(builder):
    rel = builder.scan("sales").filter(TRUE).build()

    assert fire(FILTER_SIMPLIFY, rel) == [rel.input]


def test_filter_simplify_leaves_simple_filters(builder):
    builder.scan("sales")
    rel = builder.filter(builder.greater_than(builder.field("units"), builder.literal(1))).build()

    assert fire(FILTER_SIMPLIFY, rel) == []


def test_filter_merge(builder):
    builder.scan("sales")
    builder.filter(builder.greater_than(builder.field("units"), builder.literal(1)))
    rel = builder.filter(builder.is_not_null(builder.field("discount"))).build()

    (result,) = fire(FILTER_MERGE, rel)

    assert rl.kinds(result) == [RelKind.FILTER, RelKind.TABLE_SCAN]
    assert result.attrs.condition.render() == "AND(IS NOT NULL($2), >($1, 1))"


def test_filter_into_inner_join(builder):
    join_sales_products(builder)
    rel = builder.filter(
        builder.is_not_null(builder.field("discount")),
        builder.equals(builder.field("name"), builder.literal("fig")),
        builder.greater_than(builder.field("units"), builder.field("productId0")),
    ).build()

    (result,) = fire(FILTER_INTO_JOIN, rel)

    assert result.kind == RelKind.JOIN
    left, right = result.inputs
    assert left.kind == RelKind.FILTER
    assert left.attrs.condition.render() == "IS NOT NULL($2)"
    assert right.kind == RelKind.FILTER
    assert right.attrs.condition.render() == "=($1, 'fig')"
    assert result.attrs.condition.render() == "AND(=($0, $3), >($1, $3))"
    assert result.row_type == rel.row_type


def test_filter_into_left_join_keeps_right_conditions_above(builder):
    join_sales_products(builder, "left")
    rel = builder.filter(
        builder.is_not_null(builder.field("discount")),
        builder.is_not_null(builder.field("name")),
    ).build()

    (result,) = fire(FILTER_INTO_JOIN, rel)

    assert rl.kinds(result) == [RelKind.FILTER, RelKind.JOIN, RelKind.FILTER, RelKind.TABLE_SCAN, RelKind.TABLE_SCAN]
    assert result.attrs.condition.render() == "IS NOT NULL($4)"
    assert result.input.attrs.join_type == rl.JoinType.LEFT


def test_filter_into_left_join_without_left_conditions(builder):
    join_sales_products(builder, "left")
    rel = builder.filter(builder.is_not_null(builder.field("name"))).build()

    assert fire(FILTER_INTO_JOIN, rel) == []


def test_project_pushdown_of_expressions(builder):
    builder.scan("sales")
    rel = builder.project(builder.call(Op.TIMES, builder.field("units"), builder.literal(2)), names=["double"]).build()

    (result,) = fire(PROJECT_PUSHDOWN, rel)

    assert rl.kinds(result) == [RelKind.PROJECT, RelKind.TABLE_SCAN]
    assert result.input.attrs.columns == (1,)
    assert result.attrs.exprs[0].render() == "*($0, 2)"
    assert result.row_type.names == ["double"]


def test_project_pushdown_renaming(builder):
    rel = builder.scan("sales").project("units", names=["u"]).build()

    (result,) = fire(PROJECT_PUSHDOWN, rel)

    assert rl.kinds(result) == [RelKind.PROJECT, RelKind.TABLE_SCAN]
    assert result.input.attrs.columns == (1,)
    assert result.row_type.names == ["u"]


def test_project_pushdown_skips_tables_without_projection():
    schema = Remote_Schema("plain", "remote", {"project": "false"})
    plain = schema.create_table("t", RowType.of(("a", INT64), ("b", INT64)), [(1, 2)])
    rel = rl.project(rl.scan(plain), [ColumnRef(0, INT64)])

    assert fire(PROJECT_PUSHDOWN, rel) == []


def test_sort_removal(builder):
    rel = builder.scan("products").sort("productId").build()

    assert fire(SORT_REMOVAL, rel) == [rel.input]


def test_sort_removal_keeps_limit(builder):
    rel = builder.scan("products").sort_limit(1, 2, "productId").build()

    (result,) = fire(SORT_REMOVAL, rel)

    assert result.kind == RelKind.SORT
    assert result.attrs.is_limit_only
    assert (result.attrs.offset, result.attrs.fetch) == (1, 2)


def test_sort_removal_needs_matching_order(builder):
    rel = builder.scan("products").sort(builder.desc("productId")).build()

    assert fire(SORT_REMOVAL, rel) == []


def test_enumerable_filter_variants(builder):
    builder.scan("products")
    rel = builder.filter(builder.is_not_null(builder.field("name"))).build()

    results = fire(ENUM_FILTER, rel)

    assert [result.traits for result in results] == [TraitSet(ENUMERABLE, collation_of((0, "ASC"))), TraitSet(ENUMERABLE)]


def test_enumerable_join_and_sort(builder):
    join = join_sales_products(builder).build()
    ordered = rl.sort(join, collation_of((1, "DESC")))

    assert [result.traits for result in fire(ENUM_JOIN, join)] == [TraitSet(ENUMERABLE)]
    assert [result.traits for result in fire(ENUM_SORT, ordered)] == [TraitSet(ENUMERABLE, collation_of((1, "DESC")))]
    assert fire(ENUM_JOIN, fire(ENUM_JOIN, join)[0]) == []


def test_default_rules(sales_catalog, remote_catalog):
    names = rule_names(default_rules(sales_catalog))
    remote_names = rule_names(default_rules(remote_catalog, disabled=["remote_sort"]))

    assert names[:5] == rule_names(LOGICAL_RULES)
    assert names[5:11] == rule_names(ENUMERABLE_RULES)
    assert names[11:] == ["MEM_SCAN", "MEM_TO_ENUMERABLE"]
    assert "REMOTE_SORT" not in remote_names
    assert "REMOTE_JOIN" not in remote_names
    assert {"REMOTE_SCAN", "REMOTE_FILTER", "REMOTE_PROJECT", "REMOTE_TO_ENUMERABLE"} <= set(remote_names)
