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

"""The schema module

Contains the adapter SPI: the Table base class, from which the csv, document, mem and remote
tables derive, and the Adapter_Schema base class, which groups the tables of one data source,
defines its calling convention and contributes the planner rules that convert logical operators
into that convention.

"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import TYPE_CHECKING
from typing import Any
from typing import Iterator
from typing import Optional
from typing import Sequence
from typing import Tuple

from ..datatypes import RowType
from ..errors import DuplicateTable
from ..errors import RelOptError
from ..rel import RelKind
from ..rel import RelNode
from ..traits import Collation
from ..traits import Convention

if TYPE_CHECKING:
    from ..rules.base import Rule

# Average field size used when a table does not declare one
DEFAULT_FIELD_SIZE = 16.0
DEFAULT_ROW_COUNT = 100.0


@dataclass(frozen=True)
class Statistics:
    """Declared statistics of a table, missing values fall back to defaults"""

    row_count: Optional[float] = None
    field_sizes: Optional[Tuple[float, ...]] = None


@dataclass(frozen=True)
class Capabilities:
    """The operators a data source can evaluate by itself"""

    projection: bool = True
    filter: bool = False
    sort: bool = False
    aggregate: bool = False
    join: bool = False


Row = Tuple[Any, ...]


class Table:
    """Base class of every adapter table

    This is a base class from which derived classes should inherit and implement `_read`.
    Every scan is recorded in `scan_log` (the list of requested columns, None for all of them).

    Parameters
    ----------
    schema_name
        The name of the schema holding the table

    name
        The table name

    row_type
        The declared row type

    statistics
        The declared statistics

    collation
        The declared sort order of the rows the table produces

    capabilities
        The operators the data source evaluates by itself
    """

    def __init__(
        self,
        schema_name: str,
        name: str,
        row_type: RowType,
        statistics: Optional[Statistics] = None,
        collation: Collation = (),
        capabilities: Optional[Capabilities] = None,
        logger: Optional[logging.Logger] = None,
    ):
        self._schema_name = schema_name
        self._name = name
        self._row_type = row_type
        self._statistics = statistics if statistics is not None else Statistics()
        self._collation = tuple(collation)
        self._capabilities = capabilities if capabilities is not None else Capabilities()
        self._logger = logger if logger is not None else logging.getLogger("RelOpt_Adapters")
        self.scan_log = []

    @property
    def name(self) -> str:
        return self._name

    @property
    def schema_name(self) -> str:
        return self._schema_name

    @property
    def qualified_name(self) -> Tuple[str, str]:
        return (self._schema_name, self._name)

    @property
    def row_type(self) -> RowType:
        return self._row_type

    @property
    def statistics(self) -> Statistics:
        return self._statistics

    @property
    def collation(self) -> Collation:
        return self._collation

    @property
    def capabilities(self) -> Capabilities:
        return self._capabilities

    @property
    def row_count(self) -> float:
        if self._statistics.row_count is None:
            return DEFAULT_ROW_COUNT
        return float(self._statistics.row_count)

    @property
    def field_sizes(self) -> Tuple[float, ...]:
        sizes = self._statistics.field_sizes
        if sizes is None or len(sizes) != len(self._row_type):
            return tuple(DEFAULT_FIELD_SIZE for _ in self._row_type)
        return tuple(sizes)

    def scan(self, columns: Optional[Sequence[int]] = None) -> Iterator[Row]:
        """Read the rows of the table, optionally only the given columns (in that order)"""
        columns = None if columns is None else tuple(columns)
        self.scan_log.append(columns)
        self._logger.detailed_trace("Scanning {}.{} columns={}".format(self._schema_name, self._name, columns))
        return self._read(columns)

    def _read(self, columns: Optional[Tuple[int, ...]]) -> Iterator[Row]:
        raise RuntimeError("Derived classes must implement the individual table access methods: _read")

    def __repr__(self):
        return "<{} {}.{}>".format(type(self).__name__, self._schema_name, self._name)


def project_row(row: Row, columns: Optional[Tuple[int, ...]]) -> Row:
    if columns is None:
        return tuple(row)
    return tuple(row[column] for column in columns)


class Adapter_Schema:
    """Base class of the schemas produced by the adapter schema factories

    A schema owns its tables, defines the calling convention its operators run in and the
    rules the planner needs to reach that convention (and to leave it towards ENUMERABLE).
    The default implementation covers adapters which can only scan: scans run in the adapter
    convention and a converter feeds the rows to the enumerable engine.

    Parameters
    ----------
    name
        The schema name

    kind
        The adapter kind from the model file (csv, doc, mem, remote)

    options
        The adapter options from the model file
    """

    convention_name = "SCAN"

    def __init__(self, name: str, kind: str, options: Optional[dict[str, str]] = None, logger: Optional[logging.Logger] = None):
        self._name = name
        self._kind = kind
        self._options = dict(options or {})
        self._tables = {}
        self._logger = logger if logger is not None else logging.getLogger("RelOpt_Adapters")
        self._convention = self._make_convention()

    def _make_convention(self) -> Convention:
        return Convention(self.convention_name, adapter=self)

    @property
    def name(self) -> str:
        return self._name

    @property
    def kind(self) -> str:
        return self._kind

    @property
    def options(self) -> dict[str, str]:
        return dict(self._options)

    @property
    def convention(self) -> Convention:
        return self._convention

    @property
    def tables(self) -> dict[str, Table]:
        return dict(self._tables)

    @property
    def logger(self) -> logging.Logger:
        return self._logger

    @property
    def discount(self) -> float:
        return 1.0

    def add_table(self, table: Table):
        if table.name.lower() in (name.lower() for name in self._tables):
            raise DuplicateTable("Table '{}' defined twice in schema '{}'".format(table.name, self._name))
        self._tables[table.name] = table

    def table(self, name: str, case_sensitive: bool = False) -> Optional[Table]:
        if name in self._tables:
            return self._tables[name]
        if case_sensitive:
            return None
        for table_name, table in self._tables.items():
            if table_name.lower() == name.lower():
                return table
        return None

    def owns(self, table: Table) -> bool:
        return self._tables.get(table.name) is table

    def rules(self) -> list[Rule]:
        """The planner rules contributed by this adapter"""
        from ..rules.adapter import scan_rules

        return scan_rules(self)

    def execute(self, rel: RelNode) -> Iterator[Row]:
        """Produce the rows of a subtree in this schema's convention"""
        if rel.kind in (RelKind.TABLE_SCAN, RelKind.VIEW_SCAN):
            columns = rel.attrs.columns if rel.kind == RelKind.TABLE_SCAN else None
            return rel.attrs.table.scan(columns)
        raise RelOptError("The {} adapter can not execute {} nodes".format(self._kind, rel.kind.value))

    def describe(self, rel: RelNode) -> list[Tuple[str, str]]:
        """Extra attributes shown on the converter line of plan text"""
        return []
