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

"""RelOpt

An embeddable relational query compiler: a SQL frontend, relational algebra, a rule driven cost
based planner, adapters to heterogeneous data sources and an iterator based execution engine.

"""

from __future__ import annotations

__version__ = '0.1.0'

from .adapters.catalog import Catalog
from .adapters.model import load_model
from .builder import Rel_Builder
from .functions import ensureLoggingLevel
from .materialization import register_materialization
from .planner.cost import PlannerConfig
from .planner.cost import PlannerMode
from .session import Query_Result
from .session import Query_Session
from .sql import sql_to_rel

# Add custom log levels to logging
ensureLoggingLevel('TRACE', 8)
ensureLoggingLevel('DETAILED_TRACE', 5)

__all__ = [
    "Catalog",
    "PlannerConfig",
    "PlannerMode",
    "Query_Result",
    "Query_Session",
    "Rel_Builder",
    "load_model",
    "register_materialization",
    "sql_to_rel",
]
