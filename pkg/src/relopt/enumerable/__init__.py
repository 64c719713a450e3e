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

"""The enumerable package

The ENUMERABLE convention's execution engine, the expression evaluator it shares with the
reference interpreter, and the reference interpreter itself.

"""

from __future__ import annotations

from .evaluator import cast_value
from .evaluator import compare_values
from .evaluator import evaluate
from .evaluator import is_true
from .evaluator import sort_compare
from .naive import naive_execute
from .operators import Enumerable_Executor
from .operators import execute

__all__ = [
    "Enumerable_Executor",
    "cast_value",
    "compare_values",
    "evaluate",
    "execute",
    "is_true",
    "naive_execute",
    "sort_compare",
]
