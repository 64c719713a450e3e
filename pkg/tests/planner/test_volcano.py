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

import logging
import re

import pytest

from relopt import rel as rl
from relopt.errors import NoExecutablePlan
from relopt.planner import Metadata_Provider
from relopt.planner import PlannerConfig
from relopt.planner import PlannerMode
from relopt.planner import Volcano_Planner
from relopt.planner import root_traits
from relopt.planner import scalar_cost
from relopt.rel import RelKind
from relopt.rules import LOGICAL_RULES
from relopt.rules import default_rules
from relopt.sql import sql_to_rel
from relopt.traits import ENUMERABLE
from relopt.traits import TraitSet
from relopt.traits import collation_of

SALES_BY_PRODUCT = (
    "SELECT products.name, COUNT(*) FROM sales JOIN products USING (productId) "
    "WHERE sales.discount IS NOT NULL GROUP BY products.name ORDER BY COUNT(*) DESC"
)

TRACE_LINE = re.compile(r"^(FIRE [A-Z_]+ on G\d+\.\d+ -> G\d+\.\d+|MERGE G\d+ <- G\d+)$")


def ancestors(rel, kind):
    """Kinds of the nodes above the first node of `kind` (pre-order) and that node"""
    if rel.kind == kind:
        return [], rel
    for child in rel.inputs:
        path, found = ancestors(child, kind)
        if found is not None:
            return [rel.kind] + path, found
    return [], None


def plan_with(catalog, sql, disabled=(), config=None):
    rel = sql_to_rel(sql, catalog)
    planner = Volcano_Planner(default_rules(catalog, disabled), config)
    return planner, planner.optimize(rel)


def check_executable(rel, inside_adapter=False):
    """Nodes are ENUMERABLE up to the converters, adapter conventions below them"""
    if inside_adapter:
        assert not rel.is_logical
    else:
        assert rel.traits.convention == ENUMERABLE
    for child in rel.inputs:
        check_executable(child, inside_adapter or rel.kind == RelKind.CONVERTER)


def test_filter_moves_below_join(sales_catalog):
    _, plan = plan_with(sales_catalog, SALES_BY_PRODUCT)

    above, join = ancestors(plan, RelKind.JOIN)

    assert join is not None
    assert RelKind.FILTER not in above
    assert RelKind.FILTER in rl.kinds(join.inputs[0])
    assert RelKind.FILTER not in rl.kinds(join.inputs[1])
    assert above[0] == RelKind.SORT
    check_executable(plan)


def test_filter_stays_above_join_when_rule_disabled(sales_catalog):
    planner, plan = plan_with(sales_catalog, SALES_BY_PRODUCT, disabled=["FILTER_INTO_JOIN"])

    above, join = ancestors(plan, RelKind.JOIN)

    assert RelKind.FILTER in above
    assert RelKind.FILTER not in rl.kinds(join)
    assert not any(line.startswith("FIRE FILTER_INTO_JOIN") for line in planner.trace)
    check_executable(plan)


def test_pushed_filter_plan_is_cheaper(sales_catalog):
    _, pushed = plan_with(sales_catalog, SALES_BY_PRODUCT)
    _, kept = plan_with(sales_catalog, SALES_BY_PRODUCT, disabled=["FILTER_INTO_JOIN"])

    pushed_cost = scalar_cost(Metadata_Provider().cumulative_cost(pushed))
    kept_cost = scalar_cost(Metadata_Provider().cumulative_cost(kept))

    assert pushed_cost < kept_cost


def test_best_cost_matches_plan(sales_catalog):
    rel = sql_to_rel(SALES_BY_PRODUCT, sales_catalog)
    planner = Volcano_Planner(default_rules(sales_catalog))
    required = root_traits(rel)
    plan = planner.optimize(rel, required)

    cost = planner.best_cost(required)

    assert scalar_cost(cost) == pytest.approx(scalar_cost(Metadata_Provider().cumulative_cost(plan)))


def test_root_traits(sales_catalog):
    ordered = sql_to_rel(SALES_BY_PRODUCT, sales_catalog)
    unordered = sql_to_rel("SELECT name FROM products", sales_catalog)

    assert root_traits(ordered) == TraitSet(ENUMERABLE, collation_of((1, "DESC")))
    assert root_traits(unordered) == TraitSet(ENUMERABLE)


def test_trace_format(sales_catalog):
    planner, _ = plan_with(sales_catalog, SALES_BY_PRODUCT)

    assert planner.trace
    for line in planner.trace:
        assert TRACE_LINE.match(line), line
    assert any(line.startswith("FIRE FILTER_INTO_JOIN on ") for line in planner.trace)


def test_planning_is_deterministic(sales_catalog):
    first_planner, first = plan_with(sales_catalog, SALES_BY_PRODUCT)
    second_planner, second = plan_with(sales_catalog, SALES_BY_PRODUCT)

    assert first_planner.trace == second_planner.trace
    assert rl.explain(first) == rl.explain(second)


def test_history_per_iteration(sales_catalog):
    planner, _ = plan_with(sales_catalog, SALES_BY_PRODUCT)

    assert len(planner.history) == planner.iterations
    assert planner.history[0] is None
    assert planner.history[-1] is not None


def test_sort_removed_for_declared_collation(sales_catalog):
    planner, plan = plan_with(sales_catalog, "SELECT productId, name FROM products ORDER BY productId")

    assert RelKind.SORT not in rl.kinds(plan)
    assert plan.traits.collation == collation_of((0, "ASC"))
    assert any(line.startswith("MERGE ") for line in planner.trace)


def test_sort_kept_without_sort_removal(sales_catalog):
    _, plan = plan_with(sales_catalog, "SELECT productId, name FROM products ORDER BY productId", disabled=["SORT_REMOVAL"])

    assert RelKind.SORT in rl.kinds(plan)


def test_sort_kept_for_other_order(sales_catalog):
    _, plan = plan_with(sales_catalog, "SELECT productId, name FROM products ORDER BY name")

    assert RelKind.SORT in rl.kinds(plan)


def test_threshold_mode_stops_early(sales_catalog):
    config = PlannerConfig(mode=PlannerMode.COST_THRESHOLD, delta=1.0, patience=1)
    threshold_planner, plan = plan_with(sales_catalog, SALES_BY_PRODUCT, config=config)
    full_planner, _ = plan_with(sales_catalog, SALES_BY_PRODUCT)

    first_plan = next(index for index, cost in enumerate(threshold_planner.history) if cost is not None)

    assert threshold_planner.iterations <= first_plan + 2
    assert threshold_planner.iterations <= full_planner.iterations
    check_executable(plan)


def test_threshold_mode_with_default_settings_finds_a_plan(sales_catalog):
    config = PlannerConfig(mode=PlannerMode.COST_THRESHOLD)

    _, plan = plan_with(sales_catalog, SALES_BY_PRODUCT, config=config)

    check_executable(plan)


def test_iteration_limit(sales_catalog, caplog):
    config = PlannerConfig(max_iterations=1)

    with caplog.at_level(logging.WARNING):
        with pytest.raises(NoExecutablePlan):
            plan_with(sales_catalog, SALES_BY_PRODUCT, config=config)

    assert ("RelOpt_Planner", logging.WARNING, "Planner stopped at the iteration limit (1)") in caplog.record_tuples


def test_no_executable_plan_without_converters(sales_catalog):
    rel = sql_to_rel("SELECT name FROM products", sales_catalog)
    planner = Volcano_Planner(LOGICAL_RULES)

    with pytest.raises(NoExecutablePlan):
        planner.optimize(rel)


def test_add_alternative(sales_catalog):
    rel = sql_to_rel("SELECT name FROM products WHERE productId > 10", sales_catalog)
    planner = Volcano_Planner(default_rules(sales_catalog))
    planner.set_root(rel)
    empty = rl.values(rel.row_type, [])

    group_id = planner.add_alternative(rel, empty)
    plan = planner.find_best_plan()

    assert group_id == planner.root_group
    assert rl.kinds(plan) == [RelKind.VALUES]


def test_uses_given_logger(sales_catalog, caplog):
    logger = logging.getLogger("Test_Logger")
    rel = sql_to_rel("SELECT name FROM products", sales_catalog)

    with caplog.at_level(logging.WARNING):
        with pytest.raises(NoExecutablePlan):
            Volcano_Planner(LOGICAL_RULES, PlannerConfig(max_iterations=1), logger).optimize(rel)

    assert [name for name, _, _ in caplog.record_tuples] == ["Test_Logger"]
