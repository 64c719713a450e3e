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

"""The volcano module

The cost based planner. The query is registered in a Memo, then rules are fired on every match of
their pattern, in rounds: each round collects the matches not fired yet, ordered by rule
registration order and then by expression creation order, and fires them. Planning stops when a
round finds nothing to fire (or, in threshold mode, when the best plan stops improving).

The best plan is then extracted bottom-up: for a group and a required trait set, the cheapest
physical expression whose traits satisfy the requirement, given the cheapest plans of its inputs
under the traits the expression needs from them.

"""

from __future__ import annotations

import logging
from typing import Iterable
from typing import Optional

from ..errors import NoExecutablePlan
from ..rel import RelKind
from ..rel import RelNode
from ..rex import ColumnRef
from ..rules.base import Rule
from ..rules.base import RuleCall
from ..rules.base import bindings
from ..traits import ENUMERABLE
from ..traits import FieldCollation
from ..traits import TraitSet
from .cost import Cost
from .cost import PlannerConfig
from .cost import PlannerMode
from .cost import scalar_cost
from .memo import Memo
from .memo import MemoExpr
from .metadata import Metadata_Provider


def required_input_traits(rel: RelNode, index: int) -> TraitSet:
    """The traits a physical expression needs from its input number `index`"""
    if rel.kind == RelKind.CONVERTER:
        source = rel.input.traits
        return TraitSet(source.convention, rel.traits.collation)
    convention = rel.traits.convention
    if rel.kind == RelKind.FILTER:
        return TraitSet(convention, rel.traits.collation)
    if rel.kind == RelKind.PROJECT:
        collation = []
        for key in rel.traits.collation:
            expression = rel.attrs.exprs[key.index]
            if not isinstance(expression, ColumnRef):
                break
            collation.append(FieldCollation(expression.index, key.direction))
        return TraitSet(convention, tuple(collation))
    if rel.kind == RelKind.SORT and rel.attrs.is_limit_only:
        return TraitSet(convention, rel.traits.collation)
    return TraitSet(convention, ())


def root_traits(rel: RelNode) -> TraitSet:
    """ENUMERABLE, ordered as the query's ORDER BY asks (a keyed Sort, possibly below Projects)"""
    node = rel
    while node.kind == RelKind.PROJECT or (node.kind == RelKind.SORT and node.attrs.is_limit_only):
        node = node.input
    if node.kind == RelKind.SORT and node.attrs.collation:
        return TraitSet(ENUMERABLE, rel.traits.collation)
    return TraitSet(ENUMERABLE, ())


class Volcano_Planner:
    """Rule driven, cost based planner over a memo of equivalence groups

    Parameters
    ----------
    rules
        The rules to fire, in registration order

    config
        The planner settings, defaults are used when none are given

    logger
        The logger to use, a logger named RelOpt_Planner is used when none is given
    """

    def __init__(self, rules: Iterable[Rule], config: Optional[PlannerConfig] = None, logger: Optional[logging.Logger] = None):
        self._rules = list(rules)
        self._config = config if config is not None else PlannerConfig()
        self._logger = logger if logger is not None else logging.getLogger("RelOpt_Planner")
        self._metadata = Metadata_Provider(self._representative, logger=self._logger)
        self._memo = Memo(self._metadata, self._record, self._logger)
        self._root_group = None
        self._root_rel = None
        self._fired = set()
        self._cuts = 0
        self.trace: list[str] = []
        self.iterations = 0
        # Scalar cost of the best plan after each round, None while there is no executable plan
        self.history: list[Optional[float]] = []

    @property
    def memo(self) -> Memo:
        return self._memo

    @property
    def metadata(self) -> Metadata_Provider:
        return self._metadata

    @property
    def config(self) -> PlannerConfig:
        return self._config

    @property
    def root_group(self) -> Optional[int]:
        return None if self._root_group is None else self._memo.find(self._root_group)

    def _representative(self, group_id: int) -> Optional[RelNode]:
        return self._memo.representative(group_id)

    def _record(self, line: str):
        self.trace.append(line)
        self._logger.trace(line)

    def set_root(self, rel: RelNode) -> int:
        """Register the query, returning its group"""
        self._root_rel = rel
        self._root_group, _ = self._memo.register(rel)
        return self._root_group

    def add_alternative(self, original: RelNode, replacement: RelNode) -> int:
        """Register `replacement` as equivalent to the (already registered) subtree `original`"""
        group_id, _ = self._memo.register(original)
        group_id, _ = self._memo.register(replacement, target=group_id)
        return group_id

    def _expand(self, expr: MemoExpr, index: int) -> list[MemoExpr]:
        group = self._memo.group(expr.rel.inputs[index].attrs.group_id)
        return [candidate for candidate in group.exprs if candidate.live]

    def _collect(self) -> list[tuple[int, tuple]]:
        matches = []
        exprs = self._memo.exprs
        for rule_index, rule in enumerate(self._rules):
            for expr in exprs:
                # A rule never fires on its own output
                if expr.created_by == rule.name:
                    continue
                for binding in bindings(rule.pattern, expr, self._expand, lambda item: item.rel):
                    key = (rule_index,) + tuple(item.id for item in binding)
                    if key in self._fired:
                        continue
                    self._fired.add(key)
                    matches.append((rule_index, binding))
        return matches

    def _fire(self, rule: Rule, binding: tuple):
        root = binding[0]
        source = "G{}.{}".format(self._memo.group_of(root), root.id)
        call = RuleCall(rule, [item.rel for item in binding], self._metadata)
        for result in rule.on_match(call):
            group_id, expr = self._memo.register(result, target=self._memo.group_of(root), created_by=rule.name)
            group_id = self._memo.find(group_id)
            if expr is None:
                expr = self._memo.group(group_id).representative
            self._record("FIRE {} on {} -> G{}.{}".format(rule.name, source, group_id, expr.id))

    def explore(self, required: Optional[TraitSet] = None):
        """Fire rules until the configured stopping condition"""
        config = self._config
        best = None
        stalled = 0
        while self.iterations < config.max_iterations:
            matches = self._collect()
            if not matches:
                self._logger.trace("No more rule matches after {} rounds".format(self.iterations))
                break
            self.iterations += 1
            for rule_index, binding in matches:
                if all(item.live for item in binding):
                    self._fire(self._rules[rule_index], binding)
            found = self._cheapest(required) if required is not None else None
            current = None if found is None else scalar_cost(found[1], config.weights)
            self.history.append(current)
            if config.mode != PlannerMode.COST_THRESHOLD or current is None:
                continue
            if best is None:
                best = current
                continue
            improvement = (best - current) / best if best > 0 else 0.0
            stalled = 0 if improvement > config.delta else stalled + 1
            best = min(best, current)
            if stalled >= config.patience:
                self._logger.trace("Best cost improved by at most {} for {} rounds, stopping".format(config.delta, stalled))
                break
        else:
            self._logger.warning("Planner stopped at the iteration limit ({})".format(config.max_iterations))

    def _cheapest(self, required: TraitSet) -> Optional[tuple[RelNode, Cost]]:
        for group in self._memo.groups.values():
            group.best.clear()
        return self._extract(self.root_group, required, set())

    def _extract(self, group_id: int, required: TraitSet, active: set) -> Optional[tuple[RelNode, Cost]]:
        group = self._memo.group(group_id)
        if required in group.best:
            return group.best[required]
        key = (group.id, required)
        if key in active:
            self._cuts += 1
            return None
        active.add(key)
        cuts = self._cuts
        best = None
        best_scalar = None
        for expr in group.exprs:
            rel = expr.rel
            if not expr.live or rel.is_logical or not rel.traits.satisfies(required):
                continue
            cost = self._metadata.non_cumulative_cost(rel)
            inputs = []
            for index, node in enumerate(rel.inputs):
                found = self._extract(node.attrs.group_id, required_input_traits(rel, index), active)
                if found is None:
                    break
                inputs.append(found[0])
                cost = cost + found[1]
            else:
                scalar = scalar_cost(cost, self._config.weights)
                if best is None or scalar < best_scalar:
                    best = (rel.copy(inputs=inputs) if inputs else rel, cost)
                    best_scalar = scalar
        active.discard(key)
        # Results cut short by a cycle are only valid on this path
        if self._cuts == cuts:
            group.best[required] = best
        return best

    def find_best_plan(self, required: Optional[TraitSet] = None) -> RelNode:
        """Explore, then extract the cheapest plan of the root group

        Raises
        ------
        NoExecutablePlan
            If no plan of the root group satisfies the required traits
        """
        if required is None:
            required = root_traits(self._root_rel)
        self.explore(required)
        found = self._cheapest(required)
        if found is None:
            raise NoExecutablePlan("No plan satisfying {} found for group G{}".format(required, self.root_group))
        plan, cost = found
        self._logger.detailed_trace("Best plan cost {} ({:g})".format(cost, scalar_cost(cost, self._config.weights)))
        return plan

    def best_cost(self, required: TraitSet) -> Optional[Cost]:
        found = self._cheapest(required)
        return None if found is None else found[1]

    def optimize(self, rel: RelNode, required: Optional[TraitSet] = None) -> RelNode:
        if required is None:
            required = root_traits(rel)
        self.set_root(rel)
        return self.find_best_plan(required)


def optimize_cost(
    rel: RelNode,
    rules: Iterable[Rule],
    config: Optional[PlannerConfig] = None,
    required: Optional[TraitSet] = None,
) -> RelNode:
    """Optimize a tree with the cost based planner, see Volcano_Planner"""
    return Volcano_Planner(rules, config).optimize(rel, required)
