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

import json

import pytest

from relopt.adapters.doc_adapter import DOC_ROW_TYPE
from relopt.adapters.doc_adapter import Doc_Table
from relopt.adapters.model import load_model
from relopt.datatypes import FLOAT64
from relopt.datatypes import STRING
from relopt.errors import DocumentParseError
from relopt.errors import ModelParseError
from relopt.session import Query_Session


def test_documents_are_single_map_column(model_dir, model_catalog):
    documents = [json.loads(line) for line in (model_dir / "zips.json").read_text(encoding="utf-8").splitlines()]
    zips = model_catalog.find_table(("mongo_raw", "zips"))

    rows = list(zips.scan())

    assert zips.row_type == DOC_ROW_TYPE
    assert rows == [(document,) for document in documents]


def test_zips_view(model_catalog):
    result = Query_Session(model_catalog).execute("SELECT city, longitude, latitude FROM zips ORDER BY city")

    assert result.row_type.names == ["city", "longitude", "latitude"]
    assert result.row_type.types[0].kind == STRING.kind
    assert result.row_type.types[1].kind == FLOAT64.kind
    assert result.rows == [
        ("AUSTIN", -97.74, 30.27),
        ("BOSTON", -71.05, 42.36),
        ("DENVER", -104.99, 39.74),
    ]


def test_item_access_in_where(model_catalog):
    result = Query_Session(model_catalog).execute("SELECT city FROM zips WHERE latitude > 40")

    assert result.rows == [("BOSTON",)]


@pytest.mark.parametrize("text,line", [('{"a": 1}\n{"a": \n', 2), ('{"a": 1}\n\n[1, 2]\n', 3)])
def test_document_parse_error(tmp_path, text, line):
    path = tmp_path / "docs.json"
    path.write_text(text, encoding="utf-8")

    with pytest.raises(DocumentParseError) as error:
        list(Doc_Table("d", "docs", path).scan())

    assert error.value.line == line


def test_doc_table_rejects_declared_columns(tmp_path):
    (tmp_path / "docs.json").write_text("{}\n", encoding="utf-8")
    document = {
        "schemas": [
            {
                "name": "d",
                "adapter": "doc",
                "tables": [{"name": "docs", "path": "docs.json", "columns": [{"name": "city", "type": "VARCHAR"}]}],
            }
        ]
    }
    path = tmp_path / "model.json"
    path.write_text(json.dumps(document), encoding="utf-8")

    with pytest.raises(ModelParseError):
        load_model(path)
