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

"""The tokenizer module

Splits SQL text into tokens. Keywords are case-insensitive (their text is upper-cased),
"double quoted" identifiers keep their case and 'single quoted' strings use doubled quotes as
the escape for a quote character. Positions are (line, column), both starting at 1.

"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from ..errors import IllegalCharacter
from ..errors import Position
from ..errors import UnterminatedString


class TokenKind(Enum):
    KEYWORD = "KEYWORD"
    IDENT = "IDENT"
    QUOTED_IDENT = "QUOTED_IDENT"
    STRING_LIT = "STRING_LIT"
    NUM_LIT = "NUM_LIT"
    SYMBOL = "SYMBOL"


KEYWORDS = frozenset(
    [
        "SELECT",
        "FROM",
        "WHERE",
        "GROUP",
        "BY",
        "HAVING",
        "ORDER",
        "ASC",
        "DESC",
        "LIMIT",
        "OFFSET",
        "JOIN",
        "INNER",
        "LEFT",
        "OUTER",
        "ON",
        "USING",
        "AS",
        "AND",
        "OR",
        "NOT",
        "IS",
        "NULL",
        "TRUE",
        "FALSE",
        "CAST",
        "EXPLAIN",
        "PLAN",
        "FOR",
        "DISTINCT",
        "CASE",
        "WHEN",
        "THEN",
        "ELSE",
        "END",
    ]
)

# Longest symbols first
SYMBOLS = ("<>", "!=", "<=", ">=", "(", ")", ",", ".", "*", "+", "-", "/", "=", "<", ">", "[", "]", ";")


@dataclass(frozen=True)
class Token:
    kind: TokenKind
    text: str
    position: Position

    def __str__(self):
        return "{}({})".format(self.kind.value, self.text)

    def is_keyword(self, *words: str) -> bool:
        return self.kind == TokenKind.KEYWORD and self.text in words

    def is_symbol(self, *symbols: str) -> bool:
        return self.kind == TokenKind.SYMBOL and self.text in symbols


def tokenize(sql: str) -> list[Token]:
    """Split a SQL string into tokens

    Parameters
    ----------
    sql
        The SQL text

    Raises
    ------
    UnterminatedString
        If a string literal or quoted identifier is not closed
    IllegalCharacter
        If a character which can not start any token is found

    Returns
    -------
    list[Token]
        The tokens, in input order
    """
    tokens = []
    index = 0
    line = 1
    line_start = 0
    length = len(sql)

    while index < length:
        char = sql[index]
        position = (line, index - line_start + 1)

        if char == "\n":
            index += 1
            line += 1
            line_start = index
            continue
        if char.isspace():
            index += 1
            continue
        if sql.startswith("--", index):
            while index < length and sql[index] != "\n":
                index += 1
            continue

        if char in ("'", '"'):
            quote = char
            text = []
            cursor = index + 1
            while True:
                if cursor >= length:
                    raise UnterminatedString("Unterminated {}".format("string literal" if quote == "'" else "quoted identifier"), position)
                if sql[cursor] == quote:
                    if cursor + 1 < length and sql[cursor + 1] == quote:
                        text.append(quote)
                        cursor += 2
                        continue
                    break
                if sql[cursor] == "\n":
                    line += 1
                    line_start = cursor + 1
                text.append(sql[cursor])
                cursor += 1
            kind = TokenKind.STRING_LIT if quote == "'" else TokenKind.QUOTED_IDENT
            tokens.append(Token(kind, "".join(text), position))
            index = cursor + 1
            continue

        if char.isdigit() or (char == "." and index + 1 < length and sql[index + 1].isdigit()):
            cursor = index
            while cursor < length and sql[cursor].isdigit():
                cursor += 1
            if cursor < length and sql[cursor] == "." and cursor + 1 < length and sql[cursor + 1].isdigit():
                cursor += 1
                while cursor < length and sql[cursor].isdigit():
                    cursor += 1
            elif cursor < length and sql[cursor] == "." and (cursor + 1 >= length or not sql[cursor + 1].isalpha()):
                cursor += 1
            if cursor < length and sql[cursor] in "eE":
                exponent = cursor + 1
                if exponent < length and sql[exponent] in "+-":
                    exponent += 1
                if exponent < length and sql[exponent].isdigit():
                    cursor = exponent
                    while cursor < length and sql[cursor].isdigit():
                        cursor += 1
            tokens.append(Token(TokenKind.NUM_LIT, sql[index:cursor], position))
            index = cursor
            continue

        if char.isalpha() or char == "_":
            cursor = index
            while cursor < length and (sql[cursor].isalnum() or sql[cursor] in "_$"):
                cursor += 1
            word = sql[index:cursor]
            if word.upper() in KEYWORDS:
                tokens.append(Token(TokenKind.KEYWORD, word.upper(), position))
            else:
                tokens.append(Token(TokenKind.IDENT, word, position))
            index = cursor
            continue

        for symbol in SYMBOLS:
            if sql.startswith(symbol, index):
                tokens.append(Token(TokenKind.SYMBOL, symbol, position))
                index += len(symbol)
                break
        else:
            raise IllegalCharacter("Illegal character '{}'".format(char), position)

    return tokens


def end_position(sql: str) -> Position:
    """The position just past the last character of the text"""
    lines = sql.split("\n")
    return (len(lines), len(lines[-1]) + 1)
