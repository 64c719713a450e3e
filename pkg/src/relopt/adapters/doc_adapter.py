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

"""The doc_adapter module

Tables of semi-structured documents, one JSON object per line. Every table has the single column
``_MAP`` of type MAP(ANY) holding the whole document; fields are reached with the ITEM operator
(``_MAP['loc'][0]``) and typed with CAST, usually inside a view.

"""

from __future__ import annotations

import json
import logging
from pathlib import Path
from typing import Iterator
from typing import Optional
from typing import Tuple

from ..datatypes import ANY
from ..datatypes import RowType
from ..datatypes import map_of
from ..errors import DocumentParseError
from ..errors import ModelParseError
from .schema import Adapter_Schema
from .schema import Row
from .schema import Statistics
from .schema import Table
from .schema import project_row

DOC_ROW_TYPE = RowType.of(("_MAP", map_of(ANY)))


class Doc_Table(Table):
    """A table read from a file with one document per line, blank lines are skipped"""

    def __init__(self, schema_name: str, name: str, path: Path, statistics: Optional[Statistics] = None, logger: Optional[logging.Logger] = None):
        super().__init__(schema_name, name, DOC_ROW_TYPE, statistics, logger=logger)
        self._path = Path(path)

    @property
    def path(self) -> Path:
        return self._path

    def _read(self, columns: Optional[Tuple[int, ...]]) -> Iterator[Row]:
        with self._path.open(encoding="utf-8") as file:
            for number, line in enumerate(file, start=1):
                if not line.strip():
                    continue
                try:
                    document = json.loads(line)
                except json.JSONDecodeError as error:
                    raise DocumentParseError("Invalid JSON: {}".format(error.msg), number) from error
                if not isinstance(document, dict):
                    raise DocumentParseError("A document must be a JSON object", number)
                yield project_row((document,), columns)


class Doc_Schema(Adapter_Schema):
    convention_name = "DOC"


def doc_schema_factory(spec, directory: Path, logger: logging.Logger) -> Doc_Schema:
    from .model import resolve_path

    schema = Doc_Schema(spec.name, "doc", spec.options, logger=logger)
    for table_spec in spec.tables:
        if table_spec.path is None:
            raise ModelParseError("Document table '{}' needs a path".format(table_spec.name))
        if table_spec.columns and table_spec.row_type() != DOC_ROW_TYPE:
            raise ModelParseError("Document table '{}' can only declare the column _MAP MAP(ANY)".format(table_spec.name))
        table = Doc_Table(spec.name, table_spec.name, resolve_path(table_spec.path, directory), table_spec.statistics(), logger=logger)
        schema.add_table(table)
    return schema
