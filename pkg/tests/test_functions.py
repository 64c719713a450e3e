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

import logging

import pytest

from relopt.functions import ensureLoggingLevel
from relopt.functions import format_value
from relopt.functions import hash_key
from relopt.functions import quote_identifier
from relopt.functions import quote_string
from relopt.functions import uniquify_names


def test_uniquify_names_no_duplicates():
    assert uniquify_names(["a", "b", "c"]) == ["a", "b", "c"]


def test_uniquify_names_case_insensitive():
    assert uniquify_names(["id", "name", "ID", "name"]) == ["id", "name", "ID0", "name0"]


def test_uniquify_names_skips_taken_suffix():
    assert uniquify_names(["a", "a0", "a"]) == ["a", "a0", "a1"]


def test_hash_key_numeric_equality():
    assert hash_key(1) == hash_key(1.0)
    assert hash_key(0.0) == hash_key(-0.0)


def test_hash_key_booleans_are_not_integers():
    assert hash_key(True) != hash_key(1)
    assert hash_key(False) != hash_key(0)


def test_hash_key_nested():
    assert hash_key([1, {"a": 2}]) == hash_key([1.0, {"a": 2.0}])
    assert hash_key(None) is None


def test_quote_identifier():
    assert quote_identifier("Orders") == '"Orders"'
    assert quote_identifier('a"b') == '"a""b"'


def test_quote_string():
    assert quote_string("it's") == "'it''s'"


@pytest.mark.parametrize(
    'value, text',
    [
        (None, "NULL"),
        (True, "true"),
        (False, "false"),
        (3, "3"),
        (0.1, "0.1"),
        ("x", "x"),
        ([1, 2], "[1, 2]"),
        ({"b": 1, "a": 2}, '{"a": 2, "b": 1}'),
    ],
)
def test_format_value(value, text):
    assert format_value(value) == text


def test_format_value_null_text():
    assert format_value(None, null="") == ""


def test_ensure_logging_level_is_idempotent():
    import relopt  # noqa: F401

    ensureLoggingLevel('TRACE', 8)
    assert logging.TRACE == 8


def test_ensure_logging_level_conflict():
    import relopt  # noqa: F401

    with pytest.raises(AttributeError):
        ensureLoggingLevel('TRACE', 9)
