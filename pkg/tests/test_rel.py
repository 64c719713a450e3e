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
from relopt.datatypes import STRING
from relopt.datatypes import RowType
from relopt.datatypes import TypeKind
from relopt.errors import ArityError
from relopt.errors import ColumnOutOfRange
from relopt.errors import EmptyStack
from relopt.errors import TypeMismatch
from relopt.errors import UnknownColumn
from relopt.errors import UnknownTable
from relopt.rel import FilterAttrs
from relopt.rel import RelKind
from relopt.rex import ColumnRef
from relopt.rex import Op
from relopt.rex import call
from relopt.rex import literal
from relopt.traits import Direction
from relopt.traits import FieldCollation


@pytest.fixture
def builder(sales_catalog):
    yield Rel_Builder(sales_catalog)


def test_scan_row_type(builder):
    rel = builder.scan("sales").build()

    assert rel.kind == RelKind.TABLE_SCAN
    assert rel.row_type.names == ["productId", "units", "discount"]
    assert rel.is_logical


def test_scan_qualified_name(builder):
    rel = builder.scan("s", "products").build()

    assert rel.attrs.table.qualified_name == ("s", "products")


def test_filter_explain(builder):
    builder.scan("sales")
    rel = builder.filter(builder.greater_than(builder.field("units"), builder.literal(5))).build()

    assert rl.explain(rel) == "Filter[condition=>($1, 5), traits=LOGICAL.[]]\n  TableScan[table=[s, sales], traits=LOGICAL.[]]"


def test_join_fields_are_shifted(builder):
    builder.scan("sales").scan("products")
    condition = builder.equals(builder.field(2, 0, "productId"), builder.field(2, 1, "productId"))
    rel = builder.join("inner", condition).build()

    assert condition.render() == "=($0, $3)"
    assert rel.row_type.names == ["productId", "units", "discount", "productId0", "name"]
    assert builder.size == 0


def test_aggregate_names(builder):
    builder.scan("sales")
    rel = builder.aggregate(builder.group_key("productId"), builder.count("c"), builder.sum("units", "s"), builder.max("discount")).build()

    assert rel.row_type.names == ["productId", "c", "s", "EXPR$3"]
    assert rel.row_type[1].type.kind == TypeKind.INT64
    assert not rel.row_type[1].type.nullable
    assert "calls=[COUNT() AS c, SUM($1) AS s, MAX($2) AS EXPR$3]" in rl.explain(rel)


def test_aggregate_rejects_expression_arguments(builder):
    builder.scan("sales")
    expression = call(Op.PLUS, builder.field("units"), literal(1))

    with pytest.raises(TypeMismatch):
        builder.aggregate(builder.group_key(), builder.sum(expression))


def test_sort_limit(builder):
    builder.scan("sales")
    rel = builder.sort_limit(1, 2, builder.desc("units")).build()

    assert rel.attrs.collation == (FieldCollation(1, Direction.DESC),)
    assert rel.attrs.offset == 1
    assert rel.attrs.fetch == 2
    assert rel.traits.collation == (FieldCollation(1, Direction.DESC),)


def test_limit_keeps_input_collation(builder):
    rel = builder.scan("products").limit(None, 2).build()

    assert rel.attrs.is_limit_only
    assert rel.traits.collation == (FieldCollation(0, Direction.ASC),)


def test_project_maps_collation(builder):
    builder.scan("products")
    rel = builder.project("name", "productId").build()

    assert rel.row_type.names == ["name", "productId"]
    assert rel.traits.collation == (FieldCollation(1, Direction.ASC),)


def test_project_drops_unmapped_collation(builder):
    rel = builder.scan("products").project("name").build()

    assert rel.traits.collation == ()


def test_values(builder):
    rel = builder.values(["a", "b"], (1, "x"), (2, None)).build()

    assert rel.row_type.names == ["a", "b"]
    assert rel.row_type.types == [INT64, STRING]
    assert rel.attrs.tuples == ((1, "x"), (2, None))


def test_builder_errors(builder):
    with pytest.raises(EmptyStack):
        builder.build()
    with pytest.raises(UnknownTable):
        builder.scan("nope")
    builder.scan("sales")
    with pytest.raises(UnknownColumn):
        builder.field("nope")
    with pytest.raises(EmptyStack):
        builder.join("inner", literal(True))


def test_filter_condition_must_be_boolean(builder):
    scan = builder.scan("sales").build()

    with pytest.raises(TypeMismatch):
        rl.filter_(scan, ColumnRef(1, INT64))


def test_column_out_of_range(builder):
    scan = builder.scan("sales").build()

    with pytest.raises(ColumnOutOfRange):
        rl.filter_(scan, call(Op.GT, ColumnRef(7, INT64), literal(1)))
    with pytest.raises(ColumnOutOfRange):
        rl.project(scan, [ColumnRef(3, INT64)])
    with pytest.raises(ColumnOutOfRange):
        rl.sort(scan, [FieldCollation(3)])


def test_arity_errors(builder):
    scan = builder.scan("sales").build()

    with pytest.raises(ArityError):
        rl.make_operator(RelKind.FILTER, FilterAttrs(literal(True)), ())
    with pytest.raises(ArityError):
        rl.values(RowType.of(("a", INT64)), [(1, 2)])
    with pytest.raises(ArityError):
        rl.sort(scan, fetch=-1)


def test_digest_ignores_conjunct_order(builder):
    scan = builder.scan("sales").build()
    first = call(Op.GT, ColumnRef(1, INT64), literal(1))
    second = call(Op.IS_NOT_NULL, ColumnRef(2, INT64))

    left = rl.filter_(scan, call(Op.AND, first, second))
    right = rl.filter_(scan, call(Op.AND, second, first))

    assert left is not right
    assert left.digest == right.digest
    assert rl.explain(left) != rl.explain(right)


def test_left_join_right_side_nullable(sales_catalog):
    builder = Rel_Builder(sales_catalog)
    builder.scan("sales").scan("products")
    rel = builder.join("left", builder.equals(builder.field(2, 0, "productId"), builder.field(2, 1, "productId"))).build()

    assert rel.attrs.join_type == rl.JoinType.LEFT
    assert rel.row_type[4].type.nullable


def test_identity_project(builder):
    scan = builder.scan("sales").build()

    assert rl.is_identity_project(rl.project(scan, rl.identity_exprs(scan.row_type)))
    assert not rl.is_identity_project(rl.project(scan, rl.identity_exprs(scan.row_type), ["a", "b", "c"]))
    assert not rl.is_identity_project(rl.project(scan, [ColumnRef(1, INT64), ColumnRef(0, INT64)]))


def test_walk_is_pre_order(builder):
    builder.scan("sales").scan("products")
    builder.join("inner", builder.equals(builder.field(2, 0, 0), builder.field(2, 1, 0)))
    rel = builder.project("name").build()

    assert rl.kinds(rel) == [RelKind.PROJECT, RelKind.JOIN, RelKind.TABLE_SCAN, RelKind.TABLE_SCAN]


def test_copy_rederives_collation(builder):
    products = builder.scan("products").build()
    sales = builder.scan("sales").build()
    limit = rl.sort(products, fetch=1)

    copied = limit.copy(inputs=[sales])

    assert limit.traits.collation == (FieldCollation(0, Direction.ASC),)
    assert copied.traits.collation == ()
