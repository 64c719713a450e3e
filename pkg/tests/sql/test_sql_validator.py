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

from relopt.datatypes import TypeKind
from relopt.errors import AmbiguousColumn
from relopt.errors import NotGrouped
from relopt.errors import SqlError
from relopt.errors import SqlValidationError
from relopt.errors import TypeMismatch
from relopt.errors import UnknownColumn
from relopt.errors import UnknownTable
from relopt.rel import RelKind
from relopt.rel import kinds
from relopt.sql import parse_sql
from relopt.sql import sql_to_rel
from relopt.sql import validate


def check(sql, catalog):
    return validate(parse_sql(sql), catalog)


def test_star_row_type(sales_catalog):
    query = check("SELECT * FROM sales", sales_catalog)
    assert query.row_type.names == ["productId", "units", "discount"]
    assert [field.type.kind for field in query.row_type] == [TypeKind.INT64, TypeKind.INT64, TypeKind.FLOAT64]


def test_case_insensitive_names(sales_catalog):
    query = check("select PRODUCTID from SALES", sales_catalog)
    assert query.row_type.names == ["productId"]


def test_qualified_table_name(sales_catalog):
    query = check("SELECT units FROM s.sales", sales_catalog)
    assert query.row_type.names == ["units"]


def test_quoted_identifier_is_case_sensitive(sales_catalog):
    check('SELECT "units" FROM sales', sales_catalog)
    with pytest.raises(UnknownColumn):
        check('SELECT "UNITS" FROM sales', sales_catalog)


def test_using_hides_right_copy(sales_catalog):
    query = check("SELECT * FROM sales JOIN products USING (productId)", sales_catalog)
    assert query.row_type.names == ["productId", "units", "discount", "name"]


def test_join_on_keeps_both_copies(sales_catalog):
    query = check("SELECT * FROM sales JOIN products ON sales.productId = products.productId", sales_catalog)
    assert query.row_type.names == ["productId", "units", "discount", "productId0", "name"]


def test_left_join_makes_right_nullable(sales_catalog):
    query = check("SELECT p.name FROM sales s LEFT JOIN products p ON s.productId = p.productId", sales_catalog)
    assert query.row_type[0].type.nullable


def test_unknown_table_position(sales_catalog):
    with pytest.raises(UnknownTable) as error:
        check("SELECT *\nFROM nope", sales_catalog)
    assert error.value.position == (2, 6)
    assert isinstance(error.value, SqlError)


def test_unknown_column_position(sales_catalog):
    with pytest.raises(UnknownColumn) as error:
        check("SELECT units, colour FROM sales", sales_catalog)
    assert error.value.position == (1, 15)


def test_ambiguous_column(sales_catalog):
    with pytest.raises(AmbiguousColumn):
        check("SELECT productId FROM sales JOIN products ON sales.productId = products.productId", sales_catalog)


def test_not_grouped(sales_catalog):
    with pytest.raises(NotGrouped) as error:
        check("SELECT productId, units FROM sales GROUP BY productId", sales_catalog)
    assert error.value.column == "units"


def test_aggregate_in_where(sales_catalog):
    with pytest.raises(SqlValidationError):
        check("SELECT productId FROM sales WHERE COUNT(*) > 1", sales_catalog)


def test_nested_aggregate(sales_catalog):
    with pytest.raises(SqlValidationError):
        check("SELECT SUM(COUNT(*)) FROM sales", sales_catalog)


def test_unknown_function(sales_catalog):
    with pytest.raises(SqlValidationError):
        check("SELECT LOWER(units) FROM sales", sales_catalog)


def test_type_mismatch_in_arithmetic(sales_catalog):
    with pytest.raises(TypeMismatch) as error:
        check("SELECT units + 'x' FROM sales", sales_catalog)
    assert error.value.position == (1, 14)


def test_where_must_be_boolean(sales_catalog):
    with pytest.raises(TypeMismatch):
        check("SELECT units FROM sales WHERE units", sales_catalog)


def test_order_by_position_out_of_range(sales_catalog):
    with pytest.raises(SqlValidationError):
        check("SELECT units FROM sales ORDER BY 2", sales_catalog)


def test_order_by_hidden_column(sales_catalog):
    query = check("SELECT units FROM sales ORDER BY discount", sales_catalog)
    assert query.row_type.names == ["units"]
    assert query.visible == 1
    assert len(query.select_exprs) == 2


def test_aggregate_names(sales_catalog):
    query = check("SELECT productId, COUNT(*) AS c, SUM(units) FROM sales GROUP BY productId", sales_catalog)
    assert query.row_type.names == ["productId", "c", "EXPR$2"]


def test_avg_is_float(sales_catalog):
    query = check("SELECT AVG(units) FROM sales", sales_catalog)
    assert query.row_type[0].type.kind == TypeKind.FLOAT64


def test_explain_flag(sales_catalog):
    assert check("EXPLAIN PLAN FOR SELECT units FROM sales", sales_catalog).explain
    assert not check("SELECT units FROM sales", sales_catalog).explain


def test_translation_shape(sales_catalog):
    rel = sql_to_rel("SELECT units FROM sales WHERE units > 3 ORDER BY units LIMIT 2", sales_catalog)
    assert kinds(rel) == [RelKind.SORT, RelKind.PROJECT, RelKind.FILTER, RelKind.TABLE_SCAN]
    assert rel.is_logical


def test_translation_of_aggregate_with_having(sales_catalog):
    rel = sql_to_rel("SELECT productId, COUNT(*) FROM sales GROUP BY productId HAVING COUNT(*) > 1", sales_catalog)
    assert kinds(rel) == [RelKind.PROJECT, RelKind.FILTER, RelKind.AGGREGATE, RelKind.TABLE_SCAN]


def test_translation_of_hidden_order_column(sales_catalog):
    rel = sql_to_rel("SELECT units FROM sales ORDER BY discount", sales_catalog)
    assert kinds(rel) == [RelKind.PROJECT, RelKind.SORT, RelKind.PROJECT, RelKind.TABLE_SCAN]
    assert rel.row_type.names == ["units"]


def test_view_expansion(sales_catalog):
    sales_catalog.add_view("big_sales", "SELECT productId, units FROM sales WHERE units > 5")
    rel = sql_to_rel("SELECT units FROM big_sales", sales_catalog)
    assert RelKind.FILTER in kinds(rel)
    assert rel.row_type.names == ["units"]


def test_recursive_view(sales_catalog):
    sales_catalog.add_view("loop", "SELECT * FROM loop")
    with pytest.raises(SqlValidationError):
        sql_to_rel("SELECT * FROM loop", sales_catalog)


def test_select_without_from(sales_catalog):
    rel = sql_to_rel("SELECT 1 + 1 AS two", sales_catalog)
    assert rel.row_type.names == ["two"]
    assert kinds(rel) == [RelKind.PROJECT, RelKind.VALUES]


def test_coalesce_type(sales_catalog):
    query = check("SELECT COALESCE(discount, 0) FROM sales", sales_catalog)
    assert query.row_type[0].type.kind == TypeKind.FLOAT64
    assert not query.row_type[0].type.nullable


def test_coalesce_without_common_type(sales_catalog):
    with pytest.raises(TypeMismatch):
        check("SELECT COALESCE(units, 'none') FROM sales", sales_catalog)


def test_case_type(sales_catalog):
    query = check("SELECT CASE WHEN units > 5 THEN 'big' ELSE 'small' END AS size FROM sales", sales_catalog)
    assert query.row_type.names == ["size"]
    assert query.row_type[0].type.kind == TypeKind.STRING


def test_case_condition_must_be_boolean(sales_catalog):
    with pytest.raises(TypeMismatch):
        check("SELECT CASE WHEN units THEN 1 END FROM sales", sales_catalog)


def test_case_over_aggregates(sales_catalog):
    query = check("SELECT productId, CASE WHEN COUNT(*) > 1 THEN SUM(units) ELSE 0 END FROM sales GROUP BY productId", sales_catalog)
    assert len(query.aggregate.calls) == 2


def test_translation_of_distinct(sales_catalog):
    rel = sql_to_rel("SELECT DISTINCT productId FROM sales ORDER BY productId", sales_catalog)
    assert kinds(rel) == [RelKind.SORT, RelKind.AGGREGATE, RelKind.PROJECT, RelKind.TABLE_SCAN]
    assert rel.input.attrs.group == (0,)
    assert rel.input.attrs.calls == ()
    assert rel.row_type.names == ["productId"]


def test_distinct_order_by_must_be_selected(sales_catalog):
    with pytest.raises(SqlValidationError):
        check("SELECT DISTINCT productId FROM sales ORDER BY units", sales_catalog)
