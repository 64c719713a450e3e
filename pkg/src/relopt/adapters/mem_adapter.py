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

"""The mem_adapter module

In-memory tables, declared with inline rows in the model file or built from code. They are the
storage of the remote backend and the usual backing tables of materializations in tests.

"""

from __future__ import annotations

import logging
from pathlib import Path
from typing import Any
from typing import Iterator
from typing import Optional
from typing import Sequence
from typing import Tuple

from ..datatypes import RowType
from ..datatypes import ScalarType
from ..datatypes import TypeKind
from ..errors import AdapterError
from ..errors import ModelParseError
from ..traits import Collation
from .schema import Adapter_Schema
from .schema import Capabilities
from .schema import Row
from .schema import Statistics
from .schema import Table
from .schema import project_row


def _widen(value: Any, field_type: ScalarType) -> Any:
    # JSON has no separate integer and float numbers
    if field_type.kind == TypeKind.FLOAT64 and isinstance(value, int) and not isinstance(value, bool):
        return float(value)
    return value


class Mem_Table(Table):
    """A table holding its rows in a list

    The row count statistic defaults to the current number of rows when none is declared.
    """

    def __init__(
        self,
        schema_name: str,
        name: str,
        row_type: RowType,
        rows: Sequence[Sequence[Any]] = (),
        statistics: Optional[Statistics] = None,
        collation: Collation = (),
        capabilities: Optional[Capabilities] = None,
        logger: Optional[logging.Logger] = None,
    ):
        super().__init__(schema_name, name, row_type, statistics, collation, capabilities, logger)
        self._rows = []
        self.set_rows(rows)

    @property
    def rows(self) -> list[Row]:
        return list(self._rows)

    def set_rows(self, rows: Sequence[Sequence[Any]]):
        """Replace the content of the table

        Raises
        ------
        AdapterError
            If a row does not have one value per column
        """
        result = []
        for number, row in enumerate(rows):
            if len(row) != len(self.row_type):
                raise AdapterError("Row {} of table {} has {} values, expected {}".format(number, self.name, len(row), len(self.row_type)))
            result.append(tuple(_widen(value, field.type) for value, field in zip(row, self.row_type)))
        self._rows = result

    @property
    def row_count(self) -> float:
        if self.statistics.row_count is None:
            return float(len(self._rows))
        return float(self.statistics.row_count)

    def _read(self, columns: Optional[Tuple[int, ...]]) -> Iterator[Row]:
        for row in list(self._rows):
            yield project_row(row, columns)


class Mem_Schema(Adapter_Schema):
    convention_name = "MEM"

    def create_table(self, name: str, row_type: RowType, rows: Sequence[Sequence[Any]] = (), **kwargs) -> Mem_Table:
        table = Mem_Table(self.name, name, row_type, rows, logger=self.logger, **kwargs)
        self.add_table(table)
        return table


def mem_schema_factory(spec, directory: Path, logger: logging.Logger) -> Mem_Schema:
    schema = Mem_Schema(spec.name, "mem", spec.options, logger=logger)
    for table_spec in spec.tables:
        if not table_spec.columns:
            raise ModelParseError("Mem table '{}' needs columns".format(table_spec.name))
        row_type = table_spec.row_type()
        try:
            schema.create_table(
                table_spec.name,
                row_type,
                table_spec.rows or [],
                statistics=table_spec.statistics(),
                collation=table_spec.sort_order(row_type),
            )
        except AdapterError as error:
            raise ModelParseError(str(error)) from error
    return schema
