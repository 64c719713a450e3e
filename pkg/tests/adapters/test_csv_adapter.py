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

from relopt.adapters.csv_adapter import Csv_Table
from relopt.adapters.csv_adapter import parse_field
from relopt.datatypes import BOOLEAN
from relopt.datatypes import FLOAT64
from relopt.datatypes import INT64
from relopt.datatypes import STRING
from relopt.datatypes import RowType
from relopt.datatypes import array_of
from relopt.errors import CsvParseError
from relopt.errors import HeaderMismatch

EMPS_TYPE = RowType.of(("empno", INT64), ("name", STRING), ("deptno", INT64), ("salary", FLOAT64))


@pytest.fixture
def csv_file(tmp_path):
    def write(text):
        path = tmp_path / "t.csv"
        path.write_text(text, encoding="utf-8")
        return path

    yield write


@pytest.mark.parametrize(
    "text,field_type,expected",
    [
        ("12", INT64, 12),
        ("-3", INT64, -3),
        ("2.5", FLOAT64, 2.5),
        ("True", BOOLEAN, True),
        (" false", BOOLEAN, False),
        ("fig", STRING, "fig"),
        ("[1, 2]", array_of(INT64), [1, 2]),
        ("", INT64, None),
        ("", STRING, None),
    ],
)
def test_parse_field(text, field_type, expected):
    assert parse_field(text, field_type) == expected


@pytest.mark.parametrize("text,field_type", [("x", INT64), ("1.5", INT64), ("maybe", BOOLEAN), ('{"a": 1}', array_of(INT64))])
def test_parse_field_errors(text, field_type):
    with pytest.raises(ValueError):
        parse_field(text, field_type)


def test_scan_typed_rows(model_catalog):
    emps = model_catalog.find_table(("emps",))

    rows = list(emps.scan())

    assert rows == [
        (100, "Fred", 10, 1000.5),
        (110, "Eric", 20, 2000.0),
        (120, "Wilma", 10, 1500.25),
        (130, "Alice", 30, None),
    ]
    assert emps.scan_log == [None]


def test_scan_columns(model_catalog):
    emps = model_catalog.find_table(("emps",))

    rows = list(emps.scan([1, 0]))

    assert rows[0] == ("Fred", 100)
    assert emps.scan_log == [(1, 0)]


def test_parse_error_location(csv_file):
    table = Csv_Table("s", "emps", csv_file("empno,name,deptno,salary\n100,Fred,10,1.0\n110,Eric,twenty,2.0\n"), EMPS_TYPE)

    with pytest.raises(CsvParseError) as error:
        list(table.scan())

    assert (error.value.line, error.value.col, error.value.field) == (3, 3, "deptno")
    assert "line 3, column 3, field 'deptno'" in str(error.value)


def test_wrong_field_count(csv_file):
    table = Csv_Table("s", "emps", csv_file("empno,name,deptno,salary\n100,Fred\n"), EMPS_TYPE)

    with pytest.raises(CsvParseError) as error:
        list(table.scan())

    assert error.value.line == 2
    assert error.value.col == 3


def test_rows_before_an_error_are_produced(csv_file):
    table = Csv_Table("s", "emps", csv_file("empno,name,deptno,salary\n100,Fred,10,1.0\nx,Eric,20,2.0\n"), EMPS_TYPE)
    rows = table.scan()

    assert next(rows) == (100, "Fred", 10, 1.0)
    with pytest.raises(CsvParseError):
        next(rows)


@pytest.mark.parametrize("text", ["", "empno,name,dept,salary\n", "name,empno,deptno,salary\n"])
def test_header_mismatch(csv_file, text):
    table = Csv_Table("s", "emps", csv_file(text), EMPS_TYPE)

    with pytest.raises(HeaderMismatch):
        list(table.scan())


def test_header_whitespace_and_blank_lines(csv_file):
    table = Csv_Table("s", "emps", csv_file("empno, name, deptno, salary\n\n100,Fred,10,\n\n"), EMPS_TYPE)

    assert list(table.scan()) == [(100, "Fred", 10, None)]


def test_quoted_fields(csv_file):
    table = Csv_Table("s", "emps", csv_file('empno,name,deptno,salary\n100,"Fred, Jr.",10,1.0\n'), EMPS_TYPE)

    assert list(table.scan()) == [(100, "Fred, Jr.", 10, 1.0)]


def test_csv_query(model_catalog):
    from relopt.session import Query_Session

    result = Query_Session(model_catalog).execute("SELECT name FROM emps WHERE deptno = 10 ORDER BY name")

    assert result.rows == [("Fred",), ("Wilma",)]
    assert "CSV" in result.plan_text
