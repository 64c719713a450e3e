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

"""The session module

Contains the Query_Session class, which ties the pieces of a query's life together: parsing and
validation against a catalog, translation to relational algebra, planning with either planner
engine (offering the registered materializations to the cost based one) and execution of the
chosen plan.

"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from dataclasses import field
from typing import Iterable
from typing import Optional
from typing import Union

from .adapters.catalog import Catalog
from .adapters.schema import Row
from .datatypes import RowType
from .enumerable.operators import Enumerable_Executor
from .errors import PlannerError
from .materialization import register_substitutions
from .planner.cost import PlannerConfig
from .planner.exhaustive import Exhaustive_Planner
from .planner.volcano import Volcano_Planner
from .planner.volcano import root_traits
from .rel import RelNode
from .rel import explain
from .rules import ENUMERABLE_RULES
from .rules import LOGICAL_RULES
from .rules import default_rules
from .sql import parse
from .sql import parse_sql
from .sql import split_statements
from .sql import to_algebra
from .sql import tokenize
from .sql import validate
from .sql.ast import Statement

PLANNERS = ("cost", "exhaustive")


@dataclass
class Query_Result:
    """The outcome of one statement

    For EXPLAIN statements `rows` is empty and `explain_only` is set, `plan_text` holds the rendering.
    """

    row_type: RowType
    rows: list[Row]
    plan: RelNode
    plan_text: str
    trace: list[str] = field(default_factory=list)
    explain_only: bool = False

    def text(self, with_trace: bool = False) -> str:
        """The plan rendering, preceded by the planner trace when asked"""
        if with_trace and self.trace:
            return "\n".join(self.trace) + "\n" + self.plan_text
        return self.plan_text


class Query_Session:
    """Runs SQL statements against a catalog

    Parameters
    ----------
    catalog
        The catalog queries are validated against

    planner
        "cost" for the rule driven cost based planner, "exhaustive" for logical rewriting to a
        fixpoint followed by the cost based planner restricted to the implementation rules

    disabled_rules
        Names of rules to leave out of the rule set

    use_materializations
        Offer the catalog's materializations to the cost based planner

    config
        Settings of the cost based planner

    logger
        The logger to use, a logger named RelOpt_Session is used when none is given

    Raises
    ------
    PlannerError
        If the planner name is not known
    """

    def __init__(
        self,
        catalog: Catalog,
        planner: str = "cost",
        disabled_rules: Iterable[str] = (),
        use_materializations: bool = True,
        config: Optional[PlannerConfig] = None,
        logger: Optional[logging.Logger] = None,
    ):
        if planner not in PLANNERS:
            raise PlannerError("Unknown planner '{}', expected one of {}".format(planner, ", ".join(PLANNERS)))
        self._catalog = catalog
        self._planner = planner
        self._disabled = {name.upper() for name in disabled_rules}
        self._use_materializations = use_materializations
        self._config = config if config is not None else PlannerConfig()
        self._logger = logger if logger is not None else logging.getLogger("RelOpt_Session")
        # Components use their own named loggers unless one was passed in
        self._shared_logger = logger
        self.trace: list[str] = []

    @property
    def catalog(self) -> Catalog:
        return self._catalog

    @property
    def planner(self) -> str:
        return self._planner

    def to_rel(self, statement: Union[str, Statement]) -> tuple[RelNode, bool]:
        """Validate and translate a statement (parsing it first when given as text), returning the
        LOGICAL tree and the EXPLAIN flag"""
        if isinstance(statement, str):
            statement = parse_sql(statement)
        query = validate(statement, self._catalog)
        return to_algebra(query), query.explain

    def _cost_based(self, rel: RelNode, rules) -> RelNode:
        planner = Volcano_Planner(rules, self._config, self._shared_logger)
        planner.set_root(rel)
        if self._use_materializations and self._catalog.materializations:
            added = register_substitutions(planner, rel, self._catalog.materializations)
            self._logger.debug("{} view substitutions offered to the planner".format(added))
        try:
            return planner.find_best_plan(root_traits(rel))
        finally:
            self.trace += planner.trace
            self._logger.detailed_trace("Planner finished after {} rounds".format(planner.iterations))

    def optimize(self, rel: RelNode) -> RelNode:
        """Turn a LOGICAL tree into an executable plan with the configured planner

        Raises
        ------
        NoExecutablePlan
            If no plan in an executable convention exists
        FixpointNotReached
            If the exhaustive planner's rewrites do not settle
        """
        self.trace = []
        if self._planner == "cost":
            return self._cost_based(rel, default_rules(self._catalog, self._disabled))

        rewriter = Exhaustive_Planner([rule for rule in LOGICAL_RULES if rule.name not in self._disabled], logger=self._shared_logger)
        try:
            rel = rewriter.optimize(rel)
        finally:
            self.trace += rewriter.trace
        rules = [rule for rule in ENUMERABLE_RULES + self._catalog.rules() if rule.name not in self._disabled]
        return self._cost_based(rel, rules)

    def explain(self, sql: str, with_trace: bool = False) -> str:
        """The rendered plan of a query, EXPLAIN PLAN FOR prefix optional"""
        rel, _ = self.to_rel(sql)
        plan = self.optimize(rel)
        result = Query_Result(plan.row_type, [], plan, explain(plan), list(self.trace), explain_only=True)
        return result.text(with_trace)

    def execute(self, sql: Union[str, Statement]) -> Query_Result:
        """Plan and run one statement

        The executed plan is the plan rendered in the result. For EXPLAIN PLAN FOR statements the
        plan is not run.
        """
        rel, explain_only = self.to_rel(sql)
        plan = self.optimize(rel)
        plan_text = explain(plan)
        self._logger.debug("Plan:\n{}".format(plan_text))
        if explain_only:
            return Query_Result(plan.row_type, [], plan, plan_text, list(self.trace), explain_only=True)
        rows = list(Enumerable_Executor(logger=self._shared_logger).execute(plan))
        self._logger.info("Query returned {} rows".format(len(rows)))
        return Query_Result(plan.row_type, rows, plan, plan_text, list(self.trace))

    def execute_script(self, sql: str) -> list[Query_Result]:
        """Run the ';' separated statements of a script in order, stopping at the first error

        Error positions are relative to the whole script.
        """
        results = []
        for tokens in split_statements(tokenize(sql)):
            results.append(self.execute(parse(tokens)))
        return results
