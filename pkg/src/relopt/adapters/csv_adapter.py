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

"""The csv_adapter module

Tables backed by comma separated files. The first line of a file is a header, which must list the
declared column names in order. Fields are converted to the declared column types while reading;
an empty field is NULL.

"""

from __future__ import annotations

import csv
import json
import logging
from pathlib import Path
from typing import Any
from typing import Iterator
from typing import Optional
from typing import Tuple

from ..datatypes import RowType
from ..datatypes import ScalarType
from ..datatypes import TypeKind
from ..errors import CsvParseError
from ..errors import HeaderMismatch
from ..errors import ModelParseError
from ..traits import Collation
from .schema import Adapter_Schema
from .schema import Row
from .schema import Statistics
from .schema import Table
from .schema import project_row

_booleans = {"true": True, "false": False}


def parse_field(text: str, field_type: ScalarType) -> Any:
    """Convert the text of a csv field to a value of the given type

    Raises
    ------
    ValueError
        If the text is not a valid value of the type
    """
    if text == "":
        return None
    kind = field_type.kind
    if kind == TypeKind.INT64:
        return int(text)
    if kind == TypeKind.FLOAT64:
        return float(text)
    if kind == TypeKind.BOOLEAN:
        value = _booleans.get(text.strip().lower())
        if value is None:
            raise ValueError("'{}' is not a boolean".format(text))
        return value
    if kind in (TypeKind.ARRAY, TypeKind.MAP):
        value = json.loads(text)
        expected = list if kind == TypeKind.ARRAY else dict
        if not isinstance(value, expected):
            raise ValueError("'{}' is not a JSON {}".format(text, "array" if kind == TypeKind.ARRAY else "object"))
        return value
    return text


class Csv_Table(Table):
    """A table read from a csv file

    Parameters
    ----------
    schema_name
        The name of the schema holding the table

    name
        The table name

    path
        The csv file

    row_type
        The declared columns, the file header must match their names
    """

    def __init__(
        self,
        schema_name: str,
        name: str,
        path: Path,
        row_type: RowType,
        statistics: Optional[Statistics] = None,
        collation: Collation = (),
        logger: Optional[logging.Logger] = None,
    ):
        super().__init__(schema_name, name, row_type, statistics, collation, logger=logger)
        self._path = Path(path)

    @property
    def path(self) -> Path:
        return self._path

    def _read(self, columns: Optional[Tuple[int, ...]]) -> Iterator[Row]:
        row_type = self.row_type
        with self._path.open(newline="", encoding="utf-8") as file:
            reader = csv.reader(file)
            header = next(reader, None)
            if header is None:
                raise HeaderMismatch("File '{}' of table {} is empty, a header line is required".format(self._path, self.name))
            header = [name.strip() for name in header]
            if header != row_type.names:
                raise HeaderMismatch("Header of '{}' is {}, table {} declares {}".format(self._path, header, self.name, row_type.names))
            for record in reader:
                if not record:
                    continue
                line = reader.line_num
                if len(record) != len(row_type):
                    raise CsvParseError("Expected {} fields, found {}".format(len(row_type), len(record)), line, min(len(record), len(row_type)) + 1, "")
                values = []
                for column, (text, field) in enumerate(zip(record, row_type)):
                    try:
                        values.append(parse_field(text, field.type))
                    except ValueError as error:
                        raise CsvParseError("Can not read '{}' as {}: {}".format(text, field.type, error), line, column + 1, field.name) from error
                yield project_row(tuple(values), columns)


class Csv_Schema(Adapter_Schema):
    """A schema whose tables are csv files, scans run in the CSV convention"""

    convention_name = "CSV"


def csv_schema_factory(spec, directory: Path, logger: logging.Logger) -> Csv_Schema:
    """Build a csv schema from its model entry

    Raises
    ------
    ModelParseError
        If a table has no path or no columns
    MissingFile
        If a table file does not exist
    """
    from .model import resolve_path

    schema = Csv_Schema(spec.name, "csv", spec.options, logger=logger)
    for table_spec in spec.tables:
        if table_spec.path is None or not table_spec.columns:
            raise ModelParseError("Csv table '{}' needs a path and columns".format(table_spec.name))
        row_type = table_spec.row_type()
        table = Csv_Table(
            spec.name,
            table_spec.name,
            resolve_path(table_spec.path, directory),
            row_type,
            table_spec.statistics(),
            table_spec.sort_order(row_type),
            logger=logger,
        )
        schema.add_table(table)
    return schema
