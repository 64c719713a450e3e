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

"""The memo module

Contains the Memo, the planner's store of equivalence groups. Every expression is registered
together with its digest; the inputs of a registered expression are group placeholders (RelKind
GROUP nodes), so an expression stands for every combination of the alternatives of its inputs.

Registering an expression whose digest is already known returns the existing expression. When a
rule shows two groups to be equivalent they are merged (union-find, the smaller id survives); the
expressions using the absorbed group get their digest recomputed, which can reveal further
duplicates and cascade into more merges.

"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from dataclasses import field
from typing import Callable
from typing import Optional

from ..datatypes import RowType
from ..rel import RelKind
from ..rel import RelNode
from ..rel import group_ref
from ..traits import TraitSet
from .metadata import Metadata_Provider


@dataclass(eq=False)
class MemoExpr:
    """An expression registered in the memo, its inputs are group placeholders"""

    id: int
    rel: RelNode
    group_id: int
    # Name of the rule that produced the expression, None for the registered query
    created_by: Optional[str] = None
    live: bool = True

    @property
    def digest(self) -> str:
        return self.rel.digest

    @property
    def input_groups(self) -> list[int]:
        return [node.attrs.group_id for node in self.rel.inputs]


@dataclass(eq=False)
class EquivalenceGroup:
    """A set of expressions producing the same rows"""

    id: int
    row_type: RowType
    exprs: list[MemoExpr] = field(default_factory=list)
    # Best (plan, cost) found for each required trait set, filled in by plan extraction
    best: dict[TraitSet, tuple] = field(default_factory=dict)

    @property
    def representative(self) -> Optional[MemoExpr]:
        for expr in self.exprs:
            if expr.live:
                return expr
        return None


class Memo:
    """Equivalence groups with digest based deduplication

    Parameters
    ----------
    metadata
        A metadata provider whose cache must follow the changes of the memo

    trace
        Callback receiving the MERGE trace lines

    logger
        The logger to use, a logger named RelOpt_Planner is used when none is given
    """

    def __init__(
        self,
        metadata: Optional[Metadata_Provider] = None,
        trace: Optional[Callable[[str], None]] = None,
        logger: Optional[logging.Logger] = None,
    ):
        self._metadata = metadata
        self._trace = trace
        self._logger = logger if logger is not None else logging.getLogger("RelOpt_Planner")
        self._union: dict[int, int] = {}
        self._groups: dict[int, EquivalenceGroup] = {}
        self._digests: dict[str, MemoExpr] = {}
        # group id -> ids of the expressions having that group as an input
        self._parents: dict[int, set[int]] = {}
        self._exprs: list[MemoExpr] = []
        self._next_group = 1

    @property
    def groups(self) -> dict[int, EquivalenceGroup]:
        return dict(self._groups)

    @property
    def exprs(self) -> list[MemoExpr]:
        """Every live expression, in creation order"""
        return [expr for expr in self._exprs if expr.live]

    def expr(self, expr_id: int) -> MemoExpr:
        return self._exprs[expr_id]

    def find(self, group_id: int) -> int:
        """The canonical id of a group, compressing the union-find path on the way"""
        root = group_id
        while self._union[root] != root:
            root = self._union[root]
        while self._union[group_id] != root:
            self._union[group_id], group_id = root, self._union[group_id]
        return root

    def group(self, group_id: int) -> EquivalenceGroup:
        return self._groups[self.find(group_id)]

    def group_of(self, expr: MemoExpr) -> int:
        return self.find(expr.group_id)

    def representative(self, group_id: int) -> Optional[RelNode]:
        """The first live expression of a group, used to answer metadata questions"""
        expr = self.group(group_id).representative
        return None if expr is None else expr.rel

    def placeholder(self, group_id: int) -> RelNode:
        """A GROUP node standing for the group, carrying the traits of its representative"""
        group = self.group(group_id)
        representative = group.representative
        return group_ref(group.id, group.row_type, representative.rel.traits)

    def _new_group(self, row_type: RowType) -> EquivalenceGroup:
        group = EquivalenceGroup(self._next_group, row_type)
        self._union[group.id] = group.id
        self._groups[group.id] = group
        self._parents[group.id] = set()
        self._next_group += 1
        return group

    def _canonical(self, rel: RelNode) -> RelNode:
        """Rewrite the group placeholders of a memo expression to canonical group ids"""
        inputs = []
        changed = False
        for node in rel.inputs:
            group_id = self.find(node.attrs.group_id)
            if group_id != node.attrs.group_id:
                changed = True
                node = group_ref(group_id, node.row_type, node.traits)
            inputs.append(node)
        if not changed:
            return rel
        return rel.copy(inputs=inputs, traits=rel.traits)

    def register(self, rel: RelNode, target: Optional[int] = None, created_by: Optional[str] = None) -> tuple[int, Optional[MemoExpr]]:
        """Register an expression tree bottom-up

        Parameters
        ----------
        rel
            The expression, its inputs may be real operators or group placeholders

        target
            The group the expression must end up in, it is merged into that group when its digest
            is already known elsewhere

        created_by
            Name of the rule which produced the expression, only recorded on the top node

        Returns
        -------
        tuple
            The canonical group id and the memo expression (None when rel is a group placeholder)
        """
        if rel.kind == RelKind.GROUP:
            group_id = self.find(rel.attrs.group_id)
            if target is not None:
                group_id = self.merge_groups(group_id, target)
            return group_id, None

        inputs = []
        for node in rel.inputs:
            group_id, _ = self.register(node)
            inputs.append(group_ref(group_id, node.row_type, node.traits))
        if inputs:
            rel = rel.copy(inputs=inputs, traits=rel.traits)

        existing = self._digests.get(rel.digest)
        if existing is not None:
            group_id = self.find(existing.group_id)
            if target is not None and self.find(target) != group_id:
                group_id = self.merge_groups(group_id, target)
            return group_id, existing

        if target is None:
            group = self._new_group(rel.row_type)
        else:
            group = self._groups[self.find(target)]
        expr = MemoExpr(len(self._exprs), rel, group.id, created_by)
        self._exprs.append(expr)
        group.exprs.append(expr)
        self._digests[rel.digest] = expr
        for node in rel.inputs:
            self._parents[node.attrs.group_id].add(expr.id)
        self._logger.detailed_trace("Registered G{}.{} {}".format(group.id, expr.id, rel.digest))
        self._changed(group.id)
        return group.id, expr

    def merge_groups(self, first: int, second: int) -> int:
        """Merge two equivalent groups, returning the canonical id of the result"""
        pending = [(first, second)]
        result = self.find(first)
        while pending:
            first, second = pending.pop(0)
            first, second = self.find(first), self.find(second)
            if first == second:
                continue
            keep, gone = min(first, second), max(first, second)
            if self._trace is not None:
                self._trace("MERGE G{} <- G{}".format(keep, gone))
            self._logger.trace("Merging group G{} into G{}".format(gone, keep))
            self._union[gone] = keep
            absorbed = self._groups.pop(gone)
            kept = self._groups[keep]
            for expr in absorbed.exprs:
                expr.group_id = keep
                kept.exprs.append(expr)
            kept.best.clear()
            users = self._parents.pop(gone)
            self._parents[keep] |= users
            for expr_id in sorted(users):
                duplicate = self._rehash(self._exprs[expr_id])
                if duplicate is not None:
                    pending.append(duplicate)
            self._changed(keep, gone)
        return self.find(result)

    def _rehash(self, expr: MemoExpr) -> Optional[tuple[int, int]]:
        """Recompute the digest of an expression whose inputs were merged

        Returns the pair of groups to merge when the new digest collides with another expression.
        """
        if not expr.live:
            return None
        rel = self._canonical(expr.rel)
        if rel is expr.rel:
            return None
        if self._digests.get(expr.rel.digest) is expr:
            del self._digests[expr.rel.digest]
        expr.rel = rel
        other = self._digests.get(rel.digest)
        if other is None or other is expr:
            self._digests[rel.digest] = expr
            return None
        # Same expression twice: the newer copy goes, its group is equivalent to the older one's
        expr.live = False
        self._logger.detailed_trace("Expression {} duplicates {}".format(expr.id, other.id))
        return (self.find(other.group_id), self.find(expr.group_id))

    def _changed(self, *group_ids: int):
        """Invalidate the metadata of the groups and of every group built on top of them"""
        if self._metadata is None:
            return
        affected = set(group_ids)
        frontier = [self.find(group_id) if group_id in self._groups else group_id for group_id in group_ids]
        while frontier:
            group_id = frontier.pop()
            for expr_id in self._parents.get(group_id, ()):
                parent = self.find(self._exprs[expr_id].group_id)
                if parent not in affected:
                    affected.add(parent)
                    frontier.append(parent)
        self._metadata.invalidate(affected)

    def dump(self) -> str:
        """Text listing of the groups and their live expressions"""
        lines = []
        for group_id in sorted(self._groups):
            group = self._groups[group_id]
            lines.append("G{}: {}".format(group_id, group.row_type))
            for expr in group.exprs:
                if expr.live:
                    lines.append("  {}: {}".format(expr.id, expr.rel.digest))
        return "\n".join(lines)
