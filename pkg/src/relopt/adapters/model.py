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

"""The model module

Loads a model file, the JSON document describing the data sources a catalog is made of, and
turns it into a Catalog. The document is validated with pydantic models; every schema entry is
then handed to the schema factory registered for its adapter kind.

A model file looks like:

.. code-block:: json

    {
      "defaultSchema": "sales",
      "schemas": [
        {"name": "sales", "adapter": "csv", "options": {"directory": "data"},
         "tables": [{"name": "EMPS", "path": "emps.csv", "rowCount": 14,
                     "columns": [{"name": "empno", "type": "INT64"},
                                 {"name": "name", "type": "STRING"}],
                     "collation": ["empno ASC"]}]}
      ],
      "views": [{"name": "sales.V", "sql": "SELECT name FROM EMPS"}],
      "materializations": [{"sql": "SELECT ...", "table": "sales.EMPS_SUM"}]
    }

"""

from __future__ import annotations

import json
import logging
from pathlib import Path
from typing import Any
from typing import Callable
from typing import Optional
from typing import Union

from pydantic import BaseModel
from pydantic import ConfigDict
from pydantic import Field
from pydantic import ValidationError
from pydantic import field_validator

from ..datatypes import RowType
from ..datatypes import type_from_name
from ..errors import MissingFile
from ..errors import ModelParseError
from ..errors import RelOptError
from ..errors import UnknownAdapterKind
from ..traits import Collation
from ..traits import Direction
from ..traits import FieldCollation
from .catalog import Catalog
from .schema import Adapter_Schema
from .schema import Statistics


class _Spec(BaseModel):
    model_config = ConfigDict(populate_by_name=True, extra="forbid")


class Column_Spec(_Spec):
    name: str
    type: str

    @field_validator("type")
    @classmethod
    def _known_type(cls, value: str) -> str:
        if type_from_name(value) is None:
            raise ValueError("unknown column type '{}'".format(value))
        return value


class Table_Spec(_Spec):
    name: str
    path: Optional[str] = None
    columns: list[Column_Spec] = Field(default_factory=list)
    row_count: Optional[float] = Field(default=None, alias="rowCount", ge=0)
    field_sizes: Optional[list[float]] = Field(default=None, alias="fieldSizes")
    # "column [ASC|DESC]" or a column index
    collation: list[Union[int, str]] = Field(default_factory=list)
    # Inline data, for the mem and remote adapters
    rows: Optional[list[list[Any]]] = None

    def row_type(self) -> RowType:
        return RowType.of(*[(column.name, type_from_name(column.type)) for column in self.columns])

    def statistics(self) -> Statistics:
        sizes = None if self.field_sizes is None else tuple(self.field_sizes)
        return Statistics(self.row_count, sizes)

    def sort_order(self, row_type: RowType) -> Collation:
        """The declared collation resolved against the row type

        Raises
        ------
        ModelParseError
            If a collation entry names a column the table does not have
        """
        keys = []
        for entry in self.collation:
            direction = Direction.ASC
            if isinstance(entry, int):
                index = entry
            else:
                parts = entry.split()
                if len(parts) == 2 and parts[1].upper() in ("ASC", "DESC"):
                    direction = Direction(parts[1].upper())
                elif len(parts) != 1:
                    raise ModelParseError("Invalid collation entry '{}' in table '{}'".format(entry, self.name))
                index = row_type.index_of(parts[0])
                if index is None:
                    raise ModelParseError("Collation of table '{}' names unknown column '{}'".format(self.name, parts[0]))
            if index < 0 or index >= len(row_type):
                raise ModelParseError("Collation of table '{}' uses column {} out of range".format(self.name, index))
            keys.append(FieldCollation(index, direction))
        return tuple(keys)


class Schema_Spec(_Spec):
    name: str
    adapter: str
    options: dict[str, str] = Field(default_factory=dict)
    tables: list[Table_Spec] = Field(default_factory=list)

    @field_validator("options", mode="before")
    @classmethod
    def _stringify_options(cls, value: Any) -> Any:
        if not isinstance(value, dict):
            return value
        result = {}
        for key, item in value.items():
            if isinstance(item, bool):
                result[key] = "true" if item else "false"
            else:
                result[key] = str(item)
        return result


class View_Spec(_Spec):
    name: str
    sql: str


class Materialization_Spec(_Spec):
    sql: str
    table: str


class Model_Spec(_Spec):
    default_schema: Optional[str] = Field(default=None, alias="defaultSchema")
    schemas: list[Schema_Spec] = Field(default_factory=list)
    views: list[View_Spec] = Field(default_factory=list)
    materializations: list[Materialization_Spec] = Field(default_factory=list)


Schema_Factory = Callable[[Schema_Spec, Path, logging.Logger], Adapter_Schema]

_factories: dict[str, Schema_Factory] = {}
_builtins_registered = False


def register_schema_factory(kind: str, factory: Schema_Factory):
    """Make an adapter kind available to model files

    The factory receives the schema entry, the directory relative paths resolve against and a
    logger, and returns the populated schema.
    """
    _factories[kind.lower()] = factory


def schema_factory(kind: str) -> Schema_Factory:
    _register_builtin_factories()
    factory = _factories.get(kind.lower())
    if factory is None:
        raise UnknownAdapterKind("Unknown adapter kind '{}' (known: {})".format(kind, ", ".join(sorted(_factories))))
    return factory


def _register_builtin_factories():
    global _builtins_registered
    if _builtins_registered:
        return
    _builtins_registered = True
    from .csv_adapter import csv_schema_factory
    from .doc_adapter import doc_schema_factory
    from .mem_adapter import mem_schema_factory
    from .remote import remote_schema_factory

    _factories.setdefault("csv", csv_schema_factory)
    _factories.setdefault("doc", doc_schema_factory)
    _factories.setdefault("mem", mem_schema_factory)
    _factories.setdefault("remote", remote_schema_factory)


def resolve_path(path: str, directory: Path) -> Path:
    """Resolve a table path against the schema directory

    Raises
    ------
    MissingFile
        If the file does not exist
    """
    resolved = Path(path)
    if not resolved.is_absolute():
        resolved = directory / resolved
    if not resolved.is_file():
        raise MissingFile("File '{}' not found".format(resolved))
    return resolved


def _describe_validation_error(error: ValidationError) -> str:
    problems = []
    for item in error.errors():
        location = ".".join(str(part) for part in item["loc"])
        problems.append("{}: {}".format(location, item["msg"]) if location else item["msg"])
    return "Invalid model: " + "; ".join(problems)


def parse_model(text: str) -> Model_Spec:
    """Validate the text of a model file

    Raises
    ------
    ModelParseError
        If the text is not JSON or does not have the structure of a model
    """
    try:
        document = json.loads(text)
    except json.JSONDecodeError as error:
        raise ModelParseError("Invalid JSON in model: {}".format(error.msg), (error.lineno, error.colno)) from error
    try:
        return Model_Spec.model_validate(document)
    except ValidationError as error:
        raise ModelParseError(_describe_validation_error(error)) from error


def load_model(source: Union[str, Path], logger: Optional[logging.Logger] = None) -> Catalog:
    """Build a catalog from a model file or from the text of one

    A string whose first non blank character is '{' is taken as the model text itself, relative
    paths then resolve against the current directory. Anything else is a path to a model file.

    Raises
    ------
    MissingFile
        If the model file or a table file does not exist
    ModelParseError
        If the model is malformed
    UnknownAdapterKind
        If a schema uses an adapter kind without a registered factory
    DuplicateTable
        If two tables of a schema, two schemas or two views share a name
    """
    logger = logger if logger is not None else logging.getLogger("RelOpt_Adapters")
    if isinstance(source, str) and source.lstrip().startswith("{"):
        text = source
        directory = Path.cwd()
    else:
        path = Path(source)
        if not path.is_file():
            raise MissingFile("Model file '{}' not found".format(path))
        text = path.read_text(encoding="utf-8")
        directory = path.resolve().parent
    spec = parse_model(text)

    catalog = Catalog(spec.default_schema, logger=logger)
    for schema_spec in spec.schemas:
        schema_directory = directory
        if "directory" in schema_spec.options:
            schema_directory = directory / schema_spec.options["directory"]
        factory = schema_factory(schema_spec.adapter)
        catalog.add_schema(factory(schema_spec, schema_directory, logger))

    if spec.default_schema is not None and catalog.schema(spec.default_schema, case_sensitive=True) is None:
        raise ModelParseError("Default schema '{}' is not defined".format(spec.default_schema))

    for view_spec in spec.views:
        catalog.add_view(view_spec.name, view_spec.sql)

    if spec.materializations:
        from ..materialization import register_materialization

        for materialization_spec in spec.materializations:
            path = tuple(part.strip() for part in materialization_spec.table.split("."))
            if catalog.find_table(path) is None:
                raise ModelParseError("Backing table '{}' of a materialization does not exist".format(materialization_spec.table))
            try:
                register_materialization(catalog, materialization_spec.sql, materialization_spec.table)
            except RelOptError as error:
                raise ModelParseError("Invalid materialization on '{}': {}".format(materialization_spec.table, error)) from error

    logger.info("Loaded model with {} schema(s), {} view(s) and {} materialization(s)".format(len(spec.schemas), len(spec.views), len(spec.materializations)))
    return catalog
