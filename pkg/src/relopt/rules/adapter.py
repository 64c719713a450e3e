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

"""The adapter module

Rules contributed by the adapter schemas. Every schema gets a rule moving its scans into the
schema's convention and a converter rule feeding rows of that convention to the enumerable
engine. Remote schemas add rules moving Filter, Project, Sort, Aggregate and Join into the remote
convention when the remote system supports them, so that whole subtrees are sent as one SQL
statement.

Rules of different schemas of the same kind share their names (so --disable-rule CSV_SCAN turns
them all off); each instance only matches the tables or conventions of its own schema.

"""

from __future__ import annotations

from typing import TYPE_CHECKING

from .. import rel as rl
from ..rel import RelKind
from ..rel import RelNode
from ..traits import ENUMERABLE
from ..traits import LOGICAL
from ..traits import TraitSet
from .base import ConverterRule
from .base import Rule
from .base import RuleCall
from .base import operand

if TYPE_CHECKING:
    from ..adapters.schema import Adapter_Schema


class Scan_Rule(ConverterRule):
    """Moves a LOGICAL scan of one of the schema's tables into the schema's convention"""

    def __init__(self, schema: Adapter_Schema):
        self._schema = schema
        pattern = operand(
            (RelKind.TABLE_SCAN, RelKind.VIEW_SCAN),
            convention=LOGICAL,
            predicate=lambda rel: schema.owns(rel.attrs.table),
        )
        super().__init__("{}_SCAN".format(schema.kind.upper()), pattern, schema.convention)

    def convert(self, rel: RelNode) -> RelNode:
        return rel.copy(traits=TraitSet(self.out_convention, rel.traits.collation))


class To_Enumerable_Rule(ConverterRule):
    """Wraps an expression of the schema's convention into a Converter to ENUMERABLE"""

    def __init__(self, schema: Adapter_Schema):
        self._schema = schema
        pattern = operand(
            convention=schema.convention,
            predicate=lambda rel: rel.kind != RelKind.CONVERTER and rel.traits.convention.adapter is schema,
        )
        super().__init__("{}_TO_ENUMERABLE".format(schema.kind.upper()), pattern, ENUMERABLE)

    def convert(self, rel: RelNode) -> RelNode:
        return rl.converter(rel, TraitSet(ENUMERABLE, rel.traits.collation))


class Remote_Pushdown_Rule(Rule):
    """Moves a LOGICAL operator into a remote convention when all its inputs are already there

    Parameters
    ----------
    name
        The rule name

    kind
        The operator kind moved

    schema
        The remote schema, whose convention the inputs must be in
    """

    def __init__(self, name: str, kind: RelKind, schema: Adapter_Schema):
        self._schema = schema
        convention = schema.convention
        children = [operand(convention=convention)]
        if kind == RelKind.JOIN:
            children.append(operand(convention=convention))
        pattern = operand(kind, *children, convention=LOGICAL)
        super().__init__(name, pattern)

    def on_match(self, call: RuleCall) -> list[RelNode]:
        rel = call.rel(0)
        inputs = call.rels[1:]
        collation = rel.traits.collation if rel.kind != RelKind.JOIN else ()
        return [rel.copy(inputs=inputs, traits=TraitSet(self._schema.convention, collation))]


def scan_rules(schema: Adapter_Schema) -> list[Rule]:
    """The rules of a schema which can only scan"""
    return [Scan_Rule(schema), To_Enumerable_Rule(schema)]


def remote_rules(schema: Adapter_Schema) -> list[Rule]:
    """The rules of a remote schema, following the capabilities it declares"""
    capabilities = schema.capabilities
    rules = [Scan_Rule(schema)]
    if capabilities.filter:
        rules.append(Remote_Pushdown_Rule("REMOTE_FILTER", RelKind.FILTER, schema))
    if capabilities.projection:
        rules.append(Remote_Pushdown_Rule("REMOTE_PROJECT", RelKind.PROJECT, schema))
    if capabilities.sort:
        rules.append(Remote_Pushdown_Rule("REMOTE_SORT", RelKind.SORT, schema))
    if capabilities.aggregate:
        rules.append(Remote_Pushdown_Rule("REMOTE_AGGREGATE", RelKind.AGGREGATE, schema))
    if capabilities.join:
        rules.append(Remote_Pushdown_Rule("REMOTE_JOIN", RelKind.JOIN, schema))
    rules.append(To_Enumerable_Rule(schema))
    return rules
