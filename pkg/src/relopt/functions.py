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

from __future__ import annotations

import json
import logging
import math
from typing import Any
from typing import Iterable


def uniquify_names(names: Iterable[str]) -> list[str]:
    """Make a list of field names unique (case-insensitively) by appending numeric suffixes

    The first occurrence keeps its name, later duplicates get the lowest free suffix starting at 0.

    Example
    -------
    >>> uniquify_names(["id", "name", "ID", "name"])
    ['id', 'name', 'ID0', 'name0']
    """
    used = set()
    result = []
    for name in names:
        candidate = name
        suffix = 0
        while candidate.lower() in used:
            candidate = "{}{}".format(name, suffix)
            suffix += 1
        used.add(candidate.lower())
        result += [candidate]
    return result


def normalize_float(value: float) -> float:
    # -0.0 and 0.0 must group and join together
    if value == 0.0:
        return 0.0
    return value


def hash_key(value: Any):
    """Build a hashable key with the equality used by grouping and hash joins

    Booleans are tagged so they never collide with the integers 0 and 1, floats are normalized
    and INT64/FLOAT64 values which are numerically equal produce equal keys.
    """
    if value is None:
        return None
    if isinstance(value, bool):
        return ("bool", value)
    if isinstance(value, float):
        if math.isnan(value):
            return ("nan",)
        return normalize_float(value)
    if isinstance(value, list):
        return ("array", tuple(hash_key(item) for item in value))
    if isinstance(value, dict):
        return ("map", tuple(sorted((key, hash_key(item)) for key, item in value.items())))
    return value


def quote_identifier(name: str) -> str:
    return '"' + name.replace('"', '""') + '"'


def quote_string(value: str) -> str:
    return "'" + value.replace("'", "''") + "'"


def format_value(value: Any, null: str = "NULL") -> str:
    """Render a runtime value as text for result output"""
    if value is None:
        return null
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, (list, dict)):
        return json.dumps(value, sort_keys=True)
    return str(value)


# Function from: https://stackoverflow.com/a/35804945
def addLoggingLevel(levelName, levelNum, methodName=None):
    """
    Comprehensively adds a new logging level to the `logging` module and the
    currently configured logging class.

    `levelName` becomes an attribute of the `logging` module with the value
    `levelNum`. `methodName` becomes a convenience method for both `logging`
    itself and the class returned by `logging.getLoggerClass()` (usually just
    `logging.Logger`). If `methodName` is not specified, `levelName.lower()` is
    used.

    To avoid accidental clobberings of existing attributes, this method will
    raise an `AttributeError` if the level name is already an attribute of the
    `logging` module or if the method name is already present
    """
    if not methodName:
        methodName = levelName.lower()

    if hasattr(logging, levelName):
        raise AttributeError('{} already defined in logging module'.format(levelName))
    if hasattr(logging, methodName):
        raise AttributeError('{} already defined in logging module'.format(methodName))
    if hasattr(logging.getLoggerClass(), methodName):
        raise AttributeError('{} already defined in logger class'.format(methodName))

    def logForLevel(self, message, *args, **kwargs):
        if self.isEnabledFor(levelNum):
            self._log(levelNum, message, args, **kwargs)

    def logToRoot(message, *args, **kwargs):
        logging.log(levelNum, message, *args, **kwargs)

    logging.addLevelName(levelNum, levelName)
    setattr(logging, levelName, levelNum)
    setattr(logging.getLoggerClass(), methodName, logForLevel)
    setattr(logging, methodName, logToRoot)


def ensureLoggingLevel(levelName, levelNum):
    """Register a custom logging level unless an identical one is already present"""
    if getattr(logging, levelName, None) == levelNum:
        return
    addLoggingLevel(levelName, levelNum)
