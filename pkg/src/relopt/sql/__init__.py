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

"""The sql package

The SQL frontend: tokenizer, parser, validator and the translation to relational algebra.

"""

from __future__ import annotations

from ..adapters.catalog import Catalog
from ..rel import RelNode
from .parser import parse
from .parser import parse_sql
from .parser import split_statements
from .tokenizer import Token
from .tokenizer import TokenKind
from .tokenizer import tokenize
from .translator import to_algebra
from .validator import ValidatedQuery
from .validator import validate


def sql_to_rel(sql: str, catalog: Catalog) -> RelNode:
    """Parse, validate and translate a query in one go"""
    return to_algebra(validate(parse_sql(sql), catalog))


__all__ = [
    "Token",
    "TokenKind",
    "ValidatedQuery",
    "parse",
    "parse_sql",
    "split_statements",
    "sql_to_rel",
    "to_algebra",
    "tokenize",
    "validate",
]
