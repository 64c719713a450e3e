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

"""The planner package

The two planner engines (cost based and exhaustive), the memo and the metadata and cost model they
use.

"""

from __future__ import annotations

from .cost import DEFAULT_WEIGHTS
from .cost import Cost
from .cost import PlannerConfig
from .cost import PlannerMode
from .cost import scalar_cost
from .exhaustive import Exhaustive_Planner
from .exhaustive import optimize_exhaustive
from .memo import EquivalenceGroup
from .memo import Memo
from .memo import MemoExpr
from .metadata import Metadata_Provider
from .metadata import MetadataKind
from .metadata import estimate_selectivity
from .volcano import Volcano_Planner
from .volcano import optimize_cost
from .volcano import required_input_traits
from .volcano import root_traits

__all__ = [
    "Cost",
    "DEFAULT_WEIGHTS",
    "EquivalenceGroup",
    "Exhaustive_Planner",
    "Memo",
    "MemoExpr",
    "MetadataKind",
    "Metadata_Provider",
    "PlannerConfig",
    "PlannerMode",
    "Volcano_Planner",
    "estimate_selectivity",
    "optimize_cost",
    "optimize_exhaustive",
    "required_input_traits",
    "root_traits",
    "scalar_cost",
]
