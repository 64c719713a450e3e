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

"""The adapters package

The adapter interface (tables and schemas), the catalog, the model file loader and the built-in
adapters: csv files, document files, in-memory tables and a mock remote SQL system.

"""

from __future__ import annotations

from .catalog import Catalog
from .catalog import View
from .csv_adapter import Csv_Schema
from .csv_adapter import Csv_Table
from .doc_adapter import DOC_ROW_TYPE
from .doc_adapter import Doc_Schema
from .doc_adapter import Doc_Table
from .mem_adapter import Mem_Schema
from .mem_adapter import Mem_Table
from .model import Model_Spec
from .model import load_model
from .model import parse_model
from .model import register_schema_factory
from .remote import Remote_Backend
from .remote import Remote_Schema
from .remote import Remote_Table
from .remote import to_sql
from .schema import Adapter_Schema
from .schema import Capabilities
from .schema import Statistics
from .schema import Table

__all__ = [
    "Adapter_Schema",
    "Capabilities",
    "Catalog",
    "Csv_Schema",
    "Csv_Table",
    "DOC_ROW_TYPE",
    "Doc_Schema",
    "Doc_Table",
    "Mem_Schema",
    "Mem_Table",
    "Model_Spec",
    "Remote_Backend",
    "Remote_Schema",
    "Remote_Table",
    "Statistics",
    "Table",
    "View",
    "load_model",
    "parse_model",
    "register_schema_factory",
    "to_sql",
]
