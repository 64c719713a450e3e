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

"""The rules package

The planner rule library: logical rewrites, the enumerable implementation rules and the rules the
adapter schemas contribute.

"""

from __future__ import annotations

from typing import TYPE_CHECKING
from typing import Iterable
from typing import Optional

from .base import ConverterRule
from .base import Function_Converter_Rule
from .base import Operand
from .base import Rule
from .base import RuleCall
from .base import bindings
from .base import operand
from .core import FILTER_INTO_JOIN
from .core import FILTER_MERGE
from .core import FILTER_SIMPLIFY
from .core import LOGICAL_RULES
from .core import PROJECT_PUSHDOWN
from .core import SORT_REMOVAL
from .core import simplify
from .enumerable import ENUM_AGGREGATE
from .enumerable import ENUM_FILTER
from .enumerable import ENUM_JOIN
from .enumerable import ENUM_PROJECT
from .enumerable import ENUM_SORT
from .enumerable import ENUM_VALUES
from .enumerable import ENUMERABLE_RULES

if TYPE_CHECKING:
    from ..adapters.catalog import Catalog


def default_rules(catalog: Optional[Catalog] = None, disabled: Iterable[str] = ()) -> list[Rule]:
    """The full rule set in registration order: logical rules, enumerable rules, adapter rules

    Parameters
    ----------
    catalog
        The catalog whose schemas contribute their adapter rules

    disabled
        Names of rules to leave out
    """
    disabled = {name.upper() for name in disabled}
    rules = LOGICAL_RULES + ENUMERABLE_RULES
    if catalog is not None:
        rules = rules + catalog.rules()
    return [rule for rule in rules if rule.name not in disabled]


def rule_names(rules: Iterable[Rule]) -> list[str]:
    """The distinct rule names, in order"""
    names = []
    for rule in rules:
        if rule.name not in names:
            names.append(rule.name)
    return names


__all__ = [
    "ConverterRule",
    "ENUMERABLE_RULES",
    "ENUM_AGGREGATE",
    "ENUM_FILTER",
    "ENUM_JOIN",
    "ENUM_PROJECT",
    "ENUM_SORT",
    "ENUM_VALUES",
    "FILTER_INTO_JOIN",
    "FILTER_MERGE",
    "FILTER_SIMPLIFY",
    "Function_Converter_Rule",
    "LOGICAL_RULES",
    "Operand",
    "PROJECT_PUSHDOWN",
    "Rule",
    "RuleCall",
    "SORT_REMOVAL",
    "bindings",
    "default_rules",
    "operand",
    "rule_names",
    "simplify",
]
