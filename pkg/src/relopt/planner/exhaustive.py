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

"""The exhaustive module

The rewrite-to-fixpoint planner: the first rule (in registration order) matching the first node (in
pre-order) rewrites the tree, until no rule matches anywhere. The cost model is never consulted,
so only directed rules, whose rewrites strictly simplify the tree, are accepted.

"""

from __future__ import annotations

import logging
from typing import Iterable
from typing import Optional

from ..errors import FixpointNotReached
from ..errors import RuleSetError
from ..rel import RelNode
from ..rel import walk
from ..rules.base import Rule
from ..rules.base import RuleCall
from ..rules.base import bindings

DEFAULT_MAX_REWRITES = 1000


class Exhaustive_Planner:
    """Applies directed rules until the tree stops changing

    Parameters
    ----------
    rules
        The rules, all of them must be directed

    max_rewrites
        Bound on the number of rewrites, guarding against rule sets which never settle

    logger
        The logger to use, a logger named RelOpt_Planner is used when none is given

    Raises
    ------
    RuleSetError
        If a rule is not directed
    """

    def __init__(self, rules: Iterable[Rule], max_rewrites: int = DEFAULT_MAX_REWRITES, logger: Optional[logging.Logger] = None):
        self._rules = list(rules)
        for rule in self._rules:
            if not rule.directed:
                raise RuleSetError("Rule {} is not directed and can not run in the exhaustive planner".format(rule.name))
        self._max_rewrites = max_rewrites
        self._logger = logger if logger is not None else logging.getLogger("RelOpt_Planner")
        self.rewrites = 0
        self.trace: list[str] = []
        # Digest -> id of each expression seen, the ids shown in the trace
        self._expr_ids: dict[str, int] = {}

    def _expr_id(self, rel: RelNode) -> int:
        return self._expr_ids.setdefault(rel.digest, len(self._expr_ids))

    def _rewrite_node(self, rel: RelNode, position: int) -> Optional[RelNode]:
        for rule in self._rules:
            for binding in bindings(rule.pattern, rel, lambda node, index: [node.inputs[index]]):
                for result in rule.on_match(RuleCall(rule, binding)):
                    if result.digest != rel.digest:
                        # The slot of the rewritten node plays the part of its equivalence group
                        line = "FIRE {} on G{}.{} -> G{}.{}".format(rule.name, position, self._expr_id(rel), position, self._expr_id(result))
                        self.trace.append(line)
                        self._logger.trace(line)
                        return result
        return None

    def _rewrite_once(self, rel: RelNode, position: int = 1) -> Optional[RelNode]:
        """Rewrite the first matching node in pre-order, None when nothing matches

        position is the 1-based pre-order index of rel in the whole tree.
        """
        result = self._rewrite_node(rel, position)
        if result is not None:
            return result
        position += 1
        for index, child in enumerate(rel.inputs):
            rewritten = self._rewrite_once(child, position)
            if rewritten is not None:
                inputs = list(rel.inputs)
                inputs[index] = rewritten
                return rel.copy(inputs=inputs)
            position += sum(1 for _ in walk(child))
        return None

    def optimize(self, rel: RelNode) -> RelNode:
        """Rewrite to a fixpoint

        Raises
        ------
        FixpointNotReached
            If the tree is still changing after max_rewrites rewrites
        """
        self.rewrites = 0
        self._expr_ids = {}
        while True:
            rewritten = self._rewrite_once(rel)
            if rewritten is None:
                return rel
            self.rewrites += 1
            if self.rewrites > self._max_rewrites:
                raise FixpointNotReached("No fixpoint after {} rewrites".format(self._max_rewrites))
            rel = rewritten


def optimize_exhaustive(rel: RelNode, rules: Iterable[Rule], max_rewrites: int = DEFAULT_MAX_REWRITES) -> RelNode:
    """Rewrite a tree to a fixpoint, see Exhaustive_Planner"""
    return Exhaustive_Planner(rules, max_rewrites).optimize(rel)
