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

"""The base module

Contains the Rule base class and the operand patterns rules match with. A rule matches a tree
pattern: the root operand is tested against an expression and each child operand against the
corresponding input. In the cost based planner the candidates for an input are all the
expressions of the input's equivalence group, in the exhaustive planner they are the actual
children of the tree.

"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Any
from typing import Callable
from typing import Iterable
from typing import Optional
from typing import Sequence
from typing import Tuple
from typing import Union

from ..rel import RelKind
from ..rel import RelNode
from ..traits import Convention
from ..traits import TraitSet


@dataclass(frozen=True)
class Operand:
    """A node of a rule pattern

    Parameters
    ----------
    kinds
        The operator kinds accepted, empty for any kind

    convention
        The convention the node must be in, None for any convention

    predicate
        An extra test on the node

    children
        Patterns for the inputs of the node, by position. Inputs without a pattern are not bound.
    """

    kinds: Tuple[RelKind, ...] = ()
    convention: Optional[Convention] = None
    predicate: Optional[Callable[[RelNode], bool]] = None
    children: Tuple[Operand, ...] = ()

    def matches(self, rel: RelNode) -> bool:
        if rel.kind == RelKind.GROUP:
            return False
        if self.kinds and rel.kind not in self.kinds:
            return False
        if self.convention is not None and rel.traits.convention != self.convention:
            return False
        if self.predicate is not None and not self.predicate(rel):
            return False
        return True


def operand(
    kinds: Union[None, RelKind, Sequence[RelKind]] = None,
    *children: Operand,
    convention: Optional[Convention] = None,
    predicate: Optional[Callable[[RelNode], bool]] = None,
) -> Operand:
    if kinds is None:
        kinds = ()
    elif isinstance(kinds, RelKind):
        kinds = (kinds,)
    return Operand(tuple(kinds), convention, predicate, tuple(children))


def bindings(
    pattern: Operand,
    item: Any,
    expand: Callable[[Any, int], Iterable[Any]],
    rel_of: Callable[[Any], RelNode] = lambda item: item,
) -> list[tuple]:
    """Every way a pattern binds, starting at item

    Parameters
    ----------
    pattern
        The root operand

    item
        The candidate for the root operand

    expand
        Gives the candidates for input `index` of an item

    rel_of
        Gives the RelNode of an item

    Returns
    -------
    list
        The bindings, each a tuple of items in pre-order of the pattern
    """
    rel = rel_of(item)
    if not pattern.matches(rel):
        return []
    results = [(item,)]
    for index, child in enumerate(pattern.children):
        if index >= len(rel.inputs):
            return []
        options = []
        for candidate in expand(item, index):
            options += bindings(child, candidate, expand, rel_of)
        results = [prefix + option for prefix in results for option in options]
        if not results:
            return []
    return results


class RuleCall:
    """A successful match of a rule, handed to Rule.on_match

    Parameters
    ----------
    rule
        The matched rule

    rels
        The matched nodes, in pre-order of the rule pattern

    metadata
        The metadata provider of the planner, when there is one
    """

    def __init__(self, rule: Rule, rels: Sequence[RelNode], metadata: Any = None):
        self.rule = rule
        self.rels = tuple(rels)
        self.metadata = metadata

    def rel(self, index: int) -> RelNode:
        return self.rels[index]


class Rule:
    """Base class of the planner rules

    This is a base class from which derived classes should inherit and implement `on_match`.

    Parameters
    ----------
    name
        The stable name of the rule, used by --disable-rule and in the planner trace

    pattern
        The root operand of the tree pattern the rule matches

    directed
        Whether every rewrite strictly simplifies the tree, only directed rules may run in the
        exhaustive planner
    """

    def __init__(self, name: str, pattern: Operand, directed: bool = False):
        self._name = name
        self._pattern = pattern
        self._directed = directed
        self._logger = logging.getLogger("RelOpt_Planner")

    @property
    def name(self) -> str:
        return self._name

    @property
    def pattern(self) -> Operand:
        return self._pattern

    @property
    def directed(self) -> bool:
        return self._directed

    def on_match(self, call: RuleCall) -> list[RelNode]:
        """Produce the expressions equivalent to the matched root"""
        raise RuntimeError("Derived classes must implement the individual rule methods: on_match")

    def __repr__(self):
        return "<{} {}>".format(type(self).__name__, self._name)


class ConverterRule(Rule):
    """A rule changing only the convention (and possibly the collation) of a node

    Derived classes implement `convert`, returning None when the node can not be converted.
    """

    def __init__(self, name: str, pattern: Operand, out_convention: Convention):
        super().__init__(name, pattern, directed=False)
        self._out_convention = out_convention

    @property
    def out_convention(self) -> Convention:
        return self._out_convention

    def convert(self, rel: RelNode) -> Optional[RelNode]:
        raise RuntimeError("Derived classes must implement the individual rule methods: convert")

    def on_match(self, call: RuleCall) -> list[RelNode]:
        converted = self.convert(call.rel(0))
        return [] if converted is None else [converted]


class Function_Converter_Rule(ConverterRule):
    """Re-labels a node into the output convention, producing one variant per collation

    Parameters
    ----------
    name
        The rule name

    pattern
        The root operand

    out_convention
        The convention of the produced nodes

    variants
        Gives the collations to produce for a matched node
    """

    def __init__(self, name: str, pattern: Operand, out_convention: Convention, variants: Optional[Callable[[RelNode], Iterable[tuple]]] = None):
        super().__init__(name, pattern, out_convention)
        self._variants = variants if variants is not None else (lambda rel: [rel.traits.collation])

    def convert(self, rel: RelNode) -> Optional[RelNode]:
        converted = self.on_match(RuleCall(self, [rel]))
        return converted[0] if converted else None

    def on_match(self, call: RuleCall) -> list[RelNode]:
        rel = call.rel(0)
        results = []
        seen = set()
        for collation in self._variants(rel):
            collation = tuple(collation)
            if collation in seen:
                continue
            seen.add(collation)
            results.append(rel.copy(traits=TraitSet(self._out_convention, collation)))
        return results
