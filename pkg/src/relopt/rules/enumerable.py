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

"""The enumerable module

Converter rules implementing the LOGICAL operators in the ENUMERABLE convention, the engine which
evaluates whatever the adapters can not. Filter and Project keep the order of their input, so
besides the variant delivering that order they also produce an unordered variant which accepts
any input order.

"""

from __future__ import annotations

from ..rel import RelKind
from ..traits import ENUMERABLE
from ..traits import LOGICAL
from .base import Function_Converter_Rule
from .base import operand


def _keep_or_drop_order(rel):
    return [rel.traits.collation, ()]


def _own_order(rel):
    return [rel.traits.collation]


def _no_order(rel):
    return [()]


def _enumerable_rule(name: str, kind: RelKind, variants) -> Function_Converter_Rule:
    return Function_Converter_Rule(name, operand(kind, convention=LOGICAL), ENUMERABLE, variants)


ENUM_FILTER = _enumerable_rule("ENUM_FILTER", RelKind.FILTER, _keep_or_drop_order)
ENUM_PROJECT = _enumerable_rule("ENUM_PROJECT", RelKind.PROJECT, _keep_or_drop_order)
ENUM_JOIN = _enumerable_rule("ENUM_JOIN", RelKind.JOIN, _no_order)
ENUM_AGGREGATE = _enumerable_rule("ENUM_AGGREGATE", RelKind.AGGREGATE, _no_order)
ENUM_SORT = _enumerable_rule("ENUM_SORT", RelKind.SORT, _own_order)
ENUM_VALUES = _enumerable_rule("ENUM_VALUES", RelKind.VALUES, _no_order)

ENUMERABLE_RULES = [ENUM_FILTER, ENUM_PROJECT, ENUM_JOIN, ENUM_AGGREGATE, ENUM_SORT, ENUM_VALUES]
