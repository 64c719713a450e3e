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

"""The operators module

The ENUMERABLE execution engine. Each physical operator is a generator pulling rows from the
generators of its inputs. Adapter conventions are entered through Converter nodes: the adapter of
the converter's input convention produces the rows of that subtree (a file scan, a remote SQL
statement, ...).

Join, Aggregate and Sort fully materialize what they need in memory: the right input of a join
(the hash table build side), the groups of an aggregate and all the rows of a sort.

"""

from __future__ import annotations

import logging
from collections import defaultdict
from functools import cmp_to_key
from itertools import islice
from typing import Any
from typing import Iterable
from typing import Iterator
from typing import Optional

from ..errors import EvaluationError
from ..errors import UnsupportedOperation
from ..functions import hash_key
from ..rel import AggFunction
from ..rel import JoinType
from ..rel import RelKind
from ..rel import RelNode
from ..rex import and_
from ..rex import equi_keys
from ..traits import ENUMERABLE
from .evaluator import compare_values
from .evaluator import evaluate
from .evaluator import is_true
from .evaluator import sort_compare
from .evaluator import value_kind

Row = tuple


class Accumulator:
    """Running state of one aggregate call over one group"""

    def __init__(self, function: AggFunction, args: tuple[int, ...]):
        self.function = function
        self.args = args
        self.value = 0 if function == AggFunction.COUNT else None

    def add(self, row: Row):
        if self.function == AggFunction.COUNT:
            if not self.args or row[self.args[0]] is not None:
                self.value += 1
            return
        value = row[self.args[0]]
        if value is None:
            return
        if self.value is None:
            if self.function == AggFunction.SUM and (isinstance(value, bool) or not isinstance(value, (int, float))):
                raise EvaluationError("SUM requires numeric values, got {}".format(value_kind(value)))
            self.value = value
            return
        if self.function == AggFunction.SUM:
            if isinstance(value, bool) or not isinstance(value, (int, float)):
                raise EvaluationError("SUM requires numeric values, got {}".format(value_kind(value)))
            self.value += value
        elif self.function == AggFunction.MIN:
            if compare_values(value, self.value) < 0:
                self.value = value
        elif compare_values(value, self.value) > 0:
            self.value = value


class Enumerable_Executor:
    """Runs physical plans

    Parameters
    ----------
    force_nested_loop
        Use nested loops for every join, even when equi-join keys are available

    logger
        The logger to use, a logger named RelOpt_Enumerable is used when none is given
    """

    def __init__(self, force_nested_loop: bool = False, logger: Optional[logging.Logger] = None):
        self._force_nested_loop = force_nested_loop
        self._logger = logger if logger is not None else logging.getLogger("RelOpt_Enumerable")

    def execute(self, rel: RelNode) -> Iterator[Row]:
        """Produce the rows of a physical plan

        Raises
        ------
        UnsupportedOperation
            If the plan still contains LOGICAL nodes or Window nodes
        """
        convention = rel.traits.convention
        if convention.is_logical:
            raise UnsupportedOperation("{} in LOGICAL convention is not executable".format(rel.kind.value))
        if convention != ENUMERABLE:
            if convention.adapter is None:
                raise UnsupportedOperation("No adapter can execute convention {}".format(convention))
            return self._with_context(rel, convention.adapter.execute(rel))
        handler = getattr(self, "_execute_" + rel.kind.name.lower(), None)
        if handler is None:
            raise UnsupportedOperation("Execution of {} nodes is not supported".format(rel.kind.value))
        return self._with_context(rel, handler(rel))

    def _with_context(self, rel: RelNode, rows: Iterable[Row]) -> Iterator[Row]:
        try:
            yield from rows
        except EvaluationError as error:
            error.add_context("{}({})".format(rel.kind.value, rel.traits.convention))
            raise

    def _execute_converter(self, rel: RelNode) -> Iterator[Row]:
        source = rel.input.traits.convention
        if source == ENUMERABLE:
            return self.execute(rel.input)
        if source.adapter is None:
            raise UnsupportedOperation("No adapter can execute convention {}".format(source))
        self._logger.detailed_trace("Converting rows from {}".format(source))
        return source.adapter.execute(rel.input)

    def _execute_table_scan(self, rel: RelNode) -> Iterator[Row]:
        return rel.attrs.table.scan(rel.attrs.columns)

    def _execute_view_scan(self, rel: RelNode) -> Iterator[Row]:
        return rel.attrs.table.scan()

    def _execute_values(self, rel: RelNode) -> Iterator[Row]:
        for row in rel.attrs.tuples:
            yield tuple(row)

    def _execute_filter(self, rel: RelNode) -> Iterator[Row]:
        condition = rel.attrs.condition
        for row in self.execute(rel.input):
            if is_true(condition, row):
                yield row

    def _execute_project(self, rel: RelNode) -> Iterator[Row]:
        exprs = rel.attrs.exprs
        for row in self.execute(rel.input):
            yield tuple(evaluate(expression, row) for expression in exprs)

    def _execute_join(self, rel: RelNode) -> Iterator[Row]:
        left, right = rel.inputs
        left_width = len(left.row_type)
        right_width = len(right.row_type)
        left_keys, right_keys, residual = equi_keys(rel.attrs.condition, left_width)
        outer = rel.attrs.join_type == JoinType.LEFT
        padding = (None,) * right_width

        if self._force_nested_loop or not left_keys:
            condition = rel.attrs.condition
            right_rows = list(self.execute(right))
            for left_row in self.execute(left):
                matched = False
                for right_row in right_rows:
                    row = left_row + right_row
                    if is_true(condition, row):
                        matched = True
                        yield row
                if outer and not matched:
                    yield left_row + padding
            return

        residual_condition = and_(residual) if residual else None
        table = defaultdict(list)
        for right_row in self.execute(right):
            key = tuple(hash_key(right_row[index]) for index in right_keys)
            if None in key:
                continue
            table[key].append(right_row)
        for left_row in self.execute(left):
            key = tuple(hash_key(left_row[index]) for index in left_keys)
            matched = False
            if None not in key:
                for right_row in table.get(key, ()):
                    row = left_row + right_row
                    if residual_condition is None or is_true(residual_condition, row):
                        matched = True
                        yield row
            if outer and not matched:
                yield left_row + padding

    def _execute_aggregate(self, rel: RelNode) -> Iterator[Row]:
        group = rel.attrs.group
        calls = rel.attrs.calls
        groups: dict[Any, tuple[Row, list[Accumulator]]] = {}
        for row in self.execute(rel.input):
            key = tuple(hash_key(row[index]) for index in group)
            if key not in groups:
                groups[key] = (tuple(row[index] for index in group), [Accumulator(call.function, call.args) for call in calls])
            for accumulator in groups[key][1]:
                accumulator.add(row)
        if not group and not groups:
            groups[()] = ((), [Accumulator(call.function, call.args) for call in calls])
        for values, accumulators in groups.values():
            yield values + tuple(accumulator.value for accumulator in accumulators)

    def _execute_sort(self, rel: RelNode) -> Iterator[Row]:
        attrs = rel.attrs
        rows = self.execute(rel.input)
        if attrs.collation:
            collation = attrs.collation
            # list.sort is stable, rows with equal keys keep their input order
            rows = sorted(rows, key=cmp_to_key(lambda left, right: sort_compare(collation, left, right)))
        start = attrs.offset or 0
        stop = None if attrs.fetch is None else start + attrs.fetch
        yield from islice(rows, start, stop)


def execute(rel: RelNode, force_nested_loop: bool = False) -> Iterator[Row]:
    """Run a physical plan, see Enumerable_Executor"""
    return Enumerable_Executor(force_nested_loop).execute(rel)
