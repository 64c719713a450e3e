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
from relopt.datatypes import INT64
from relopt.errors import PlannerError
from relopt.errors import TypeMismatch
from relopt.errors import UnknownMetadataKind
from relopt.planner import Cost
from relopt.planner import Metadata_Provider
from relopt.planner import MetadataKind
from relopt.planner import PlannerConfig
from relopt.planner import estimate_selectivity
from relopt.planner import scalar_cost
from relopt.rex import ColumnRef
from relopt.rex import Op
from relopt.rex import call
from relopt.rex import literal
from relopt.traits import TraitSet
from relopt.traits import collation_of


@pytest.fixture
def builder(sales_catalog):
    yield Rel_Builder(sales_catalog)


@pytest.fixture
def provider():
    yield Metadata_Provider()


def test_scan_row_count(builder, provider):
    assert provider.row_count(builder.scan("sales").build()) == 1000
    assert provider.row_count(builder.scan("products").build()) == 100


@pytest.mark.parametrize(
    "op, expected",
    [
        (Op.EQ, 150),
        (Op.GT, 500),
        (Op.NE, 850),
    ],
)
def test_filter_row_count(builder, provider, op, expected):
    builder.scan("sales")
    rel = builder.filter(call(op, builder.field("units"), builder.literal(3))).build()

    assert provider.row_count(rel) == pytest.approx(expected)


def test_join_and_aggregate_row_counts(builder, provider):
    builder.scan("sales").scan("products")
    join = builder.join("inner", builder.equals(builder.field(2, 0, "productId"), builder.field(2, 1, "productId"))).build()
    grouped = rl.aggregate(join, [4])
    total = rl.aggregate(join, [])

    assert provider.row_count(join) == pytest.approx(15000)
    assert provider.row_count(grouped) == pytest.approx(3750)
    assert provider.row_count(total) == 1.0


def test_sort_row_count(builder, provider):
    rel = builder.scan("sales").sort_limit(5, 10, "units").build()

    assert provider.row_count(rel) == 10


def test_join_row_count_uses_selectivity_handler(builder, provider):
    builder.scan("sales").scan("products")
    join = builder.join("inner", builder.equals(builder.field(2, 0, "productId"), builder.field(2, 1, "productId"))).build()

    provider.register(MetadataKind.SELECTIVITY, lambda metadata, node, predicate: 0.5)

    assert provider.row_count(join) == pytest.approx(50000)


def test_left_join_keeps_left_rows(builder, provider):
    builder.scan("sales").scan("products")
    inner = builder.join("inner", builder.literal(False)).build()
    builder.scan("sales").scan("products")
    left = builder.join("left", builder.literal(False)).build()

    assert provider.row_count(inner) == 0
    assert provider.row_count(left) == 1000


def test_limit_only_sort_cost(builder, provider):
    rel = builder.scan("sales").limit(5, 10).build()

    assert provider.non_cumulative_cost(rel) == Cost(cpu=10)


@pytest.mark.parametrize(
    "build, expected",
    [
        (lambda b: b.and_(b.equals(b.field("units"), b.literal(1)), b.greater_than(b.field("units"), b.literal(1))), 0.075),
        (lambda b: b.call(Op.OR, b.equals(b.field("units"), b.literal(1)), b.is_not_null(b.field("discount"))), 0.915),
        (lambda b: b.call(Op.NOT, b.is_not_null(b.field("discount"))), 0.1),
        (lambda b: b.literal(True), 1.0),
        (lambda b: b.field("discount"), None),
    ],
)
def test_estimate_selectivity(builder, build, expected):
    builder.scan("sales")
    predicate = build(builder)

    if expected is None:
        with pytest.raises(TypeMismatch):
            estimate_selectivity(predicate)
    else:
        assert estimate_selectivity(predicate) == pytest.approx(expected)


def test_results_are_cached(builder, provider):
    rel = builder.scan("sales").build()

    provider.row_count(rel)
    misses = provider.misses
    provider.row_count(rel)

    assert provider.hits == 1
    assert provider.misses == misses


def test_identical_trees_share_cache_entries(builder, provider):
    first = builder.scan("sales").build()
    second = builder.scan("sales").build()

    provider.row_count(first)
    provider.row_count(second)

    assert first is not second
    assert provider.hits == 1


def test_invalidate(builder, provider):
    rel = builder.scan("sales").build()
    provider.row_count(rel)

    provider.invalidate()
    provider.row_count(rel)

    assert provider.hits == 0
    assert provider.misses == 2


def test_unknown_kind(builder, provider):
    with pytest.raises(UnknownMetadataKind):
        provider.query("DISTINCT_ROW_COUNT", builder.scan("sales").build())


def test_register_replaces_handler(builder, provider):
    rel = builder.scan("sales").build()
    provider.row_count(rel)

    provider.register(MetadataKind.ROW_COUNT, lambda metadata, node: 42.0)

    assert provider.row_count(rel) == 42.0


def test_cyclic_request_uses_fallback(builder, provider):
    provider.register("DEPTH", lambda metadata, node: metadata.query("DEPTH", node) + 1, 0)

    assert provider.query("DEPTH", builder.scan("sales").build()) == 1


def test_cumulative_cost(builder, provider):
    builder.scan("sales")
    rel = builder.filter(builder.is_not_null(builder.field("discount"))).build()
    scan_cost = provider.non_cumulative_cost(rel.input)

    assert scan_cost == Cost(cpu=1000, io=1000 * 3 * 16)
    assert provider.non_cumulative_cost(rel) == Cost(cpu=1000)
    assert provider.cumulative_cost(rel) == scan_cost + Cost(cpu=1000)


def test_remote_discount(remote_catalog, provider):
    table = remote_catalog.find_table(("remote", "Orders"))
    schema = remote_catalog.schema("remote")
    logical = rl.scan(table)
    remote = rl.scan(table, traits=TraitSet(schema.convention))

    assert schema.discount == 0.1
    assert provider.non_cumulative_cost(logical) == Cost(cpu=5, io=5 * 3 * 16)
    remote_cost = provider.non_cumulative_cost(remote)
    assert remote_cost.cpu == 5
    assert remote_cost.io == pytest.approx(0.1 * 5 * 3 * 16)
    assert remote_cost.memory == 0


def test_remote_discount_leaves_cpu_and_memory(remote_catalog, provider):
    table = remote_catalog.find_table(("remote", "Orders"))
    traits = TraitSet(remote_catalog.schema("remote").convention)
    condition = call(Op.GT, ColumnRef(2, INT64), literal(25))
    remote_sort = rl.sort(rl.filter_(rl.scan(table, traits=traits), condition, traits=traits), collation_of((2, "ASC")), traits=traits)
    local_sort = rl.sort(rl.filter_(rl.scan(table), condition), collation_of((2, "ASC")))

    assert provider.non_cumulative_cost(remote_sort.input) == provider.non_cumulative_cost(local_sort.input) == Cost(cpu=5)
    assert provider.non_cumulative_cost(remote_sort) == provider.non_cumulative_cost(local_sort)
    assert provider.non_cumulative_cost(remote_sort).memory > 0


def test_predicates_flow_through_operators(builder, provider):
    builder.scan("sales")
    builder.filter(builder.is_not_null(builder.field("discount")))
    rel = builder.project("discount", "units").build()

    predicates = provider.predicates(rel)

    assert [predicate.render() for predicate in predicates] == ["IS NOT NULL($0)"]


def test_scalar_cost_weights():
    cost = Cost(cpu=1, io=2, memory=3)

    assert scalar_cost(cost) == 1 + 8 + 6
    assert scalar_cost(cost, (1, 0, 0)) == 1


def test_negative_cost():
    with pytest.raises(PlannerError):
        Cost(cpu=-1)


@pytest.mark.parametrize(
    "settings",
    [
        {"delta": 0},
        {"delta": -0.5},
        {"patience": 0},
        {"max_iterations": 0},
        {"weights": (0, 0, 0)},
        {"weights": (1, -1, 1)},
    ],
)
def test_planner_config_validation(settings):
    with pytest.raises(PlannerError):
        PlannerConfig(**settings)
