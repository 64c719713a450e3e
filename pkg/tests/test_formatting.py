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

from relopt.datatypes import INT64
from relopt.datatypes import STRING
from relopt.datatypes import RowType
from relopt.formatting import format_result

ROW_TYPE = RowType.of(("a", INT64), ("b", STRING))
ROWS = [(1, "x"), (None, "yy")]


def test_table():
    assert format_result(ROW_TYPE, ROWS).split("\n") == [
        "+------+----+",
        "| a    | b  |",
        "+------+----+",
        "| 1    | x  |",
        "| NULL | yy |",
        "+------+----+",
        "2 rows",
    ]


def test_table_single_row_footer():
    assert format_result(ROW_TYPE, ROWS[:1]).endswith("\n1 row")


def test_table_without_rows():
    assert format_result(ROW_TYPE, []).split("\n")[-1] == "0 rows"


def test_csv():
    assert format_result(ROW_TYPE, ROWS + [(3, "a,b")], "csv") == 'a,b\n1,x\n,yy\n3,"a,b"'


def test_docs():
    assert format_result(ROW_TYPE, ROWS, "docs") == '{"a": 1, "b": "x"}\n{"a": null, "b": "yy"}'


def test_unknown_format():
    with pytest.raises(ValueError):
        format_result(ROW_TYPE, ROWS, "xml")
