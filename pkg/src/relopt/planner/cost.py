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

"""The cost module

The cost model of the planner: a Cost is a (cpu, io, memory) triple in abstract units, plans are
compared on the weighted sum of the three components.

"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Tuple

from ..errors import PlannerError

DEFAULT_WEIGHTS = (1.0, 4.0, 2.0)


@dataclass(frozen=True)
class Cost:
    cpu: float = 0.0
    io: float = 0.0
    memory: float = 0.0

    def __post_init__(self):
        if self.cpu < 0 or self.io < 0 or self.memory < 0:
            raise PlannerError("Cost components can not be negative: {}".format(self))

    def __add__(self, other: Cost) -> Cost:
        return Cost(self.cpu + other.cpu, self.io + other.io, self.memory + other.memory)

    def __str__(self):
        return "{{cpu={:g}, io={:g}, memory={:g}}}".format(self.cpu, self.io, self.memory)


ZERO = Cost()


def scalar_cost(cost: Cost, weights: Tuple[float, float, float] = DEFAULT_WEIGHTS) -> float:
    """Weighted sum of the cost components, the quantity the planner minimizes"""
    w_cpu, w_io, w_memory = weights
    return w_cpu * cost.cpu + w_io * cost.io + w_memory * cost.memory


class PlannerMode(Enum):
    # Fire rules until no rule produces a new expression
    COST_EXHAUSTIVE_SPACE = "exhaustive-space"
    # Stop once the best plan stops improving by more than delta
    COST_THRESHOLD = "threshold"


@dataclass(frozen=True)
class PlannerConfig:
    """Settings of the cost based planner

    Parameters
    ----------
    mode
        When to stop firing rules

    delta
        Relative improvement of the best root cost below which an iteration counts as stalled
        (COST_THRESHOLD mode only)

    patience
        Number of consecutive stalled iterations after which planning stops (COST_THRESHOLD mode only)

    max_iterations
        Hard limit on the number of planner iterations

    weights
        The (cpu, io, memory) weights of scalar_cost

    trace
        Record FIRE and MERGE lines while planning
    """

    mode: PlannerMode = PlannerMode.COST_EXHAUSTIVE_SPACE
    delta: float = 0.01
    patience: int = 3
    max_iterations: int = 10000
    weights: Tuple[float, float, float] = DEFAULT_WEIGHTS
    trace: bool = False

    def __post_init__(self):
        if self.delta <= 0:
            raise PlannerError("The improvement threshold must be positive, got {}".format(self.delta))
        if self.patience < 1:
            raise PlannerError("The patience must be at least 1, got {}".format(self.patience))
        if self.max_iterations < 1:
            raise PlannerError("The iteration limit must be at least 1, got {}".format(self.max_iterations))
        if len(self.weights) != 3 or any(weight < 0 for weight in self.weights) or not any(self.weights):
            raise PlannerError("Cost weights must be three non-negative numbers, not all zero: {}".format(self.weights))
