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

"""The catalog module

Contains the Catalog, the root namespace the SQL validator resolves names against. It holds the
adapter schemas (and through them the tables), the views and the materializations declared in
the model file.

"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from dataclasses import field
from typing import TYPE_CHECKING
from typing import Any
from typing import Optional
from typing import Sequence
from typing import Tuple

from ..errors import DuplicateTable
from .schema import Adapter_Schema
from .schema import Table

if TYPE_CHECKING:
    from ..materialization import Materialization
    from ..rules.base import Rule


@dataclass
class View:
    """A named query, expanded inline by the validator"""

    path: Tuple[str, ...]
    sql: str
    # Expanded LOGICAL tree, filled in by the validator on first use
    rel: Any = field(default=None, repr=False)

    @property
    def name(self) -> str:
        return ".".join(self.path)


def _matches(candidate: str, name: str, case_sensitive: bool) -> bool:
    if case_sensitive:
        return candidate == name
    return candidate.lower() == name.lower()


class Catalog:
    """The set of schemas, views and materializations available to queries

    Parameters
    ----------
    default_schema
        The schema unqualified table names resolve against

    logger
        The logger to use, a logger named RelOpt_Adapters is used when none is given
    """

    def __init__(self, default_schema: Optional[str] = None, logger: Optional[logging.Logger] = None):
        self._default_schema = default_schema
        self._schemas = {}
        self._views = []
        self.materializations: list[Materialization] = []
        self._logger = logger if logger is not None else logging.getLogger("RelOpt_Adapters")

    @property
    def default_schema(self) -> Optional[str]:
        return self._default_schema

    @default_schema.setter
    def default_schema(self, name: Optional[str]):
        self._default_schema = name

    @property
    def schemas(self) -> dict[str, Adapter_Schema]:
        return dict(self._schemas)

    @property
    def views(self) -> list[View]:
        return list(self._views)

    @property
    def logger(self) -> logging.Logger:
        return self._logger

    def add_schema(self, schema: Adapter_Schema):
        if self.schema(schema.name) is not None:
            raise DuplicateTable("Schema '{}' defined twice".format(schema.name))
        self._schemas[schema.name] = schema
        self._logger.debug("Registered {} schema '{}' with {} table(s)".format(schema.kind, schema.name, len(schema.tables)))

    def schema(self, name: str, case_sensitive: bool = False) -> Optional[Adapter_Schema]:
        for schema_name, schema in self._schemas.items():
            if _matches(schema_name, name, case_sensitive):
                return schema
        return None

    def add_view(self, name: str, sql: str) -> View:
        """Declare a view, its name may be qualified with a schema name ("schema.view")

        Raises
        ------
        DuplicateTable
            If a table or another view is already reachable through the same name path
        """
        path = tuple(part.strip() for part in name.split("."))
        if self.find_table(path) is not None or self.find_view(path) is not None:
            raise DuplicateTable("Name '{}' is already used by a table or view".format(name))
        view = View(path, sql)
        self._views.append(view)
        return view

    def find_view(self, path: Sequence[str], quoted: Optional[Sequence[bool]] = None) -> Optional[View]:
        quoted = quoted if quoted is not None else [False] * len(path)
        for view in self._views:
            if len(view.path) != len(path):
                continue
            if all(_matches(mine, name, exact) for mine, name, exact in zip(view.path, path, quoted)):
                return view
        return None

    def find_table(self, path: Sequence[str], quoted: Optional[Sequence[bool]] = None) -> Optional[Table]:
        """Resolve a (schema, table) or (table) name path to a table, None if there is none

        Quoted components must match exactly, unquoted ones case-insensitively. Single names are
        looked up in the default schema.
        """
        quoted = list(quoted) if quoted is not None else [False] * len(path)
        if len(path) == 1:
            if self._default_schema is None:
                return None
            schema = self.schema(self._default_schema, case_sensitive=True)
            if schema is None:
                return None
            return schema.table(path[0], quoted[0])
        if len(path) == 2:
            schema = self.schema(path[0], quoted[0])
            if schema is None:
                return None
            return schema.table(path[1], quoted[1])
        return None

    def table(self, schema_name: str, table_name: str) -> Optional[Table]:
        return self.find_table((schema_name, table_name))

    def schema_of(self, table: Table) -> Optional[Adapter_Schema]:
        schema = self._schemas.get(table.schema_name)
        if schema is not None and schema.owns(table):
            return schema
        return None

    def tables(self) -> list[Table]:
        result = []
        for schema in self._schemas.values():
            result += list(schema.tables.values())
        return result

    def rules(self) -> list[Rule]:
        """The rules contributed by the adapters, in schema declaration order"""
        result = []
        for schema in self._schemas.values():
            result += schema.rules()
        return result
