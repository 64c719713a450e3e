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
import logging

import pytest

from relopt.adapters import model
from relopt.adapters.mem_adapter import Mem_Schema
from relopt.adapters.model import load_model
from relopt.adapters.model import parse_model
from relopt.adapters.model import register_schema_factory
from relopt.adapters.model import schema_factory
from relopt.datatypes import FLOAT64
from relopt.datatypes import INT64
from relopt.datatypes import STRING
from relopt.errors import DuplicateTable
from relopt.errors import MissingFile
from relopt.errors import ModelError
from relopt.errors import ModelParseError
from relopt.errors import UnknownAdapterKind
from relopt.traits import collation_of


def write_model(directory, document):
    path = directory / "model.json"
    path.write_text(json.dumps(document), encoding="utf-8")
    return path


def mem_model(**schema):
    entry = {
        "name": "m",
        "adapter": "mem",
        "tables": [{"name": "t", "columns": [{"name": "a", "type": "INT"}, {"name": "b", "type": "VARCHAR"}], "rows": [[1, "x"], [2, None]]}],
    }
    entry.update(schema)
    return {"defaultSchema": "m", "schemas": [entry]}


def test_load_model(model_catalog):
    emps = model_catalog.find_table(("emps",))

    assert model_catalog.default_schema == "hr"
    assert list(model_catalog.schemas) == ["hr", "mongo_raw"]
    assert emps.row_type.names == ["empno", "name", "deptno", "salary"]
    assert emps.row_type.types == [INT64, STRING, INT64, FLOAT64]
    assert emps.row_count == 4
    assert emps.collation == collation_of((0, "ASC"))
    assert [view.name for view in model_catalog.views] == ["zips"]


def test_load_model_logs_summary(model_dir, caplog):
    with caplog.at_level(logging.INFO):
        load_model(model_dir / "model.json")

    assert ("RelOpt_Adapters", logging.INFO, "Loaded model with 2 schema(s), 1 view(s) and 0 materialization(s)") in caplog.record_tuples


def test_load_model_from_text():
    catalog = load_model(json.dumps(mem_model()))

    table = catalog.find_table(("t",))

    assert isinstance(catalog.schema("m"), Mem_Schema)
    assert table.rows == [(1, "x"), (2, None)]
    assert table.row_count == 2


def test_missing_model_file(tmp_path):
    with pytest.raises(MissingFile):
        load_model(tmp_path / "nope.json")


def test_missing_table_file(tmp_path):
    path = write_model(
        tmp_path,
        {"schemas": [{"name": "s", "adapter": "csv", "tables": [{"name": "t", "path": "t.csv", "columns": [{"name": "a", "type": "INT"}]}]}]},
    )

    with pytest.raises(MissingFile):
        load_model(path)


def test_invalid_json_position():
    with pytest.raises(ModelParseError) as error:
        parse_model('{\n  "schemas": [,]\n}')

    assert error.value.position[0] == 2


@pytest.mark.parametrize(
    "document",
    [
        {"schemas": [{"name": "s"}]},
        {"schemas": [], "extra": 1},
        {"schemas": [{"name": "s", "adapter": "mem", "tables": [{"name": "t", "columns": [{"name": "a", "type": "BLOB"}]}]}]},
        {"schemas": [{"name": "s", "adapter": "mem", "tables": [{"name": "t", "rowCount": -1}]}]},
        ["not", "an", "object"],
    ],
)
def test_invalid_structure(document):
    with pytest.raises(ModelParseError):
        parse_model(json.dumps(document))


def test_unknown_adapter_kind():
    with pytest.raises(UnknownAdapterKind):
        load_model(json.dumps({"schemas": [{"name": "s", "adapter": "ldap"}]}))


def test_model_errors_share_a_base_class():
    with pytest.raises(ModelError):
        schema_factory("ldap")


def test_undefined_default_schema():
    document = mem_model()
    document["defaultSchema"] = "other"

    with pytest.raises(ModelParseError):
        load_model(json.dumps(document))


def test_duplicate_table():
    document = mem_model()
    table = document["schemas"][0]["tables"][0]
    document["schemas"][0]["tables"].append(dict(table, name="T"))

    with pytest.raises(DuplicateTable):
        load_model(json.dumps(document))


def test_duplicate_schema():
    document = mem_model()
    document["schemas"].append(dict(document["schemas"][0], name="M"))

    with pytest.raises(DuplicateTable):
        load_model(json.dumps(document))


def test_view_shadowing_a_table():
    document = mem_model()
    document["views"] = [{"name": "m.t", "sql": "SELECT 1"}]

    with pytest.raises(DuplicateTable):
        load_model(json.dumps(document))


@pytest.mark.parametrize("collation", [["c"], ["a UP"], [5]])
def test_invalid_collation(collation):
    document = mem_model()
    document["schemas"][0]["tables"][0]["collation"] = collation

    with pytest.raises(ModelParseError):
        load_model(json.dumps(document))


def test_collation_by_name_and_index():
    document = mem_model()
    document["schemas"][0]["tables"][0]["collation"] = ["b DESC", 0]

    table = load_model(json.dumps(document)).find_table(("t",))

    assert table.collation == collation_of((1, "DESC"), (0, "ASC"))


def test_mem_rows_with_wrong_width():
    document = mem_model()
    document["schemas"][0]["tables"][0]["rows"] = [[1]]

    with pytest.raises(ModelParseError):
        load_model(json.dumps(document))


@pytest.mark.parametrize("discount", [0, 2, -0.5, "cheap"])
def test_remote_discount_range(discount):
    document = mem_model(adapter="remote", options={"discount": discount})

    with pytest.raises(ModelParseError):
        load_model(json.dumps(document))


def test_remote_options_from_model():
    document = mem_model(adapter="remote", options={"discount": 0.5, "join": True, "sort": False})

    schema = load_model(json.dumps(document)).schema("m")

    assert schema.discount == 0.5
    assert schema.capabilities.join
    assert not schema.capabilities.sort
    assert schema.backend.table("t").rows == [(1, "x"), (2, None)]


def test_register_schema_factory(monkeypatch):
    monkeypatch.setattr(model, "_factories", dict(model._factories))
    calls = []

    def factory(spec, directory, logger):
        calls.append(spec.name)
        return Mem_Schema(spec.name, "custom", spec.options, logger=logger)

    register_schema_factory("Custom", factory)
    catalog = load_model(json.dumps({"schemas": [{"name": "c", "adapter": "custom"}]}))

    assert calls == ["c"]
    assert catalog.schema("c").kind == "custom"
