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

"""The parser module

A recursive descent parser for the supported SQL subset. Operator precedence, from loosest to
tightest: OR, AND, NOT, comparisons and IS [NOT] NULL, + and -, * and /, unary minus, and
finally the [] indexing postfix.

"""

from __future__ import annotations

from typing import Optional
from typing import Sequence

from ..errors import SqlSyntaxError
from . import ast
from .tokenizer import Token
from .tokenizer import TokenKind
from .tokenizer import end_position
from .tokenizer import tokenize

COMPARISON_SYMBOLS = ("=", "<>", "!=", "<", "<=", ">", ">=")


class Parser:
    """Parses one statement out of a token list

    Parameters
    ----------
    tokens
        The tokens, as produced by tokenize

    end
        The position reported for errors at the end of the input
    """

    def __init__(self, tokens: Sequence[Token], end: Optional[tuple[int, int]] = None):
        self._tokens = list(tokens)
        self._index = 0
        if end is None:
            if self._tokens:
                last = self._tokens[-1]
                end = (last.position[0], last.position[1] + len(last.text))
            else:
                end = (1, 1)
        self._end = end

    # Token stream helpers
    def _peek(self, offset: int = 0) -> Optional[Token]:
        index = self._index + offset
        if index < len(self._tokens):
            return self._tokens[index]
        return None

    def _position(self) -> tuple[int, int]:
        token = self._peek()
        return token.position if token is not None else self._end

    def _advance(self) -> Token:
        token = self._peek()
        self._index += 1
        return token

    def _error(self, expected: Sequence[str]):
        token = self._peek()
        if token is None:
            raise SqlSyntaxError("Unexpected end of input", self._end, tuple(expected))
        raise SqlSyntaxError("Unexpected {} '{}'".format(token.kind.value, token.text), token.position, tuple(expected))

    def _accept_keyword(self, *words: str) -> Optional[Token]:
        token = self._peek()
        if token is not None and token.is_keyword(*words):
            return self._advance()
        return None

    def _accept_symbol(self, *symbols: str) -> Optional[Token]:
        token = self._peek()
        if token is not None and token.is_symbol(*symbols):
            return self._advance()
        return None

    def _expect_keyword(self, word: str) -> Token:
        token = self._accept_keyword(word)
        if token is None:
            self._error([word])
        return token

    def _expect_symbol(self, symbol: str) -> Token:
        token = self._accept_symbol(symbol)
        if token is None:
            self._error(["'{}'".format(symbol)])
        return token

    def _expect_identifier(self) -> Token:
        token = self._peek()
        if token is None or token.kind not in (TokenKind.IDENT, TokenKind.QUOTED_IDENT):
            self._error(["identifier"])
        return self._advance()

    def _expect_integer(self) -> int:
        token = self._peek()
        if token is None or token.kind != TokenKind.NUM_LIT or not token.text.isdigit():
            self._error(["integer"])
        self._advance()
        return int(token.text)

    @property
    def at_end(self) -> bool:
        return self._index >= len(self._tokens)

    # Statements
    def parse_statement(self) -> ast.Statement:
        start = self._position()
        if self._accept_keyword("EXPLAIN"):
            self._expect_keyword("PLAN")
            self._expect_keyword("FOR")
            statement = ast.Explain(self.parse_select(), start)
        else:
            statement = self.parse_select()
        self._accept_symbol(";")
        if not self.at_end:
            self._error(["end of statement"])
        return statement

    def parse_select(self) -> ast.Select:
        start = self._position()
        self._expect_keyword("SELECT")
        distinct = self._accept_keyword("DISTINCT") is not None
        items = self._parse_select_list()
        from_ = None
        if self._accept_keyword("FROM"):
            from_ = self._parse_from()
        where = None
        if self._accept_keyword("WHERE"):
            where = self.parse_expression()
        group_by = []
        if self._accept_keyword("GROUP"):
            self._expect_keyword("BY")
            group_by = self._parse_expression_list()
        having = None
        if self._accept_keyword("HAVING"):
            having = self.parse_expression()
        order_by = []
        if self._accept_keyword("ORDER"):
            self._expect_keyword("BY")
            order_by = [self._parse_order_item()]
            while self._accept_symbol(","):
                order_by += [self._parse_order_item()]
        limit = None
        offset = None
        if self._accept_keyword("LIMIT"):
            limit = self._expect_integer()
            if self._accept_keyword("OFFSET"):
                offset = self._expect_integer()
        elif self._accept_keyword("OFFSET"):
            offset = self._expect_integer()
            if self._accept_keyword("LIMIT"):
                limit = self._expect_integer()
        return ast.Select(tuple(items), from_, where, tuple(group_by), having, tuple(order_by), limit, offset, start, distinct)

    def _parse_select_list(self) -> list[ast.SelectItem]:
        items = [self._parse_select_item()]
        while self._accept_symbol(","):
            items += [self._parse_select_item()]
        return items

    def _parse_select_item(self) -> ast.SelectItem:
        start = self._position()
        token = self._peek()
        if token is not None and token.is_symbol("*"):
            self._advance()
            return ast.SelectItem(ast.Star(None, start), None, start)
        # qualifier.*
        if token is not None and token.kind in (TokenKind.IDENT, TokenKind.QUOTED_IDENT):
            lookahead = 1
            names = [token]
            while self._peek(lookahead) is not None and self._peek(lookahead).is_symbol("."):
                following = self._peek(lookahead + 1)
                if following is not None and following.is_symbol("*"):
                    self._index += lookahead + 2
                    qualifier = ast.Identifier(
                        tuple(name.text for name in names), tuple(name.kind == TokenKind.QUOTED_IDENT for name in names), start
                    )
                    return ast.SelectItem(ast.Star(qualifier, start), None, start)
                if following is None or following.kind not in (TokenKind.IDENT, TokenKind.QUOTED_IDENT):
                    break
                names += [following]
                lookahead += 2
        if token is None or token.is_keyword("FROM"):
            self._error(["expression", "'*'"])
        expression = self.parse_expression()
        return ast.SelectItem(expression, self._parse_alias(), start)

    def _parse_alias(self) -> Optional[str]:
        if self._accept_keyword("AS"):
            return self._expect_identifier().text
        token = self._peek()
        if token is not None and token.kind in (TokenKind.IDENT, TokenKind.QUOTED_IDENT):
            return self._advance().text
        return None

    def _parse_from(self) -> ast.FromItem:
        item = self._parse_from_primary()
        while True:
            start = self._position()
            join_type = None
            if self._accept_keyword("JOIN"):
                join_type = "INNER"
            elif self._accept_keyword("INNER"):
                self._expect_keyword("JOIN")
                join_type = "INNER"
            elif self._accept_keyword("LEFT"):
                self._accept_keyword("OUTER")
                self._expect_keyword("JOIN")
                join_type = "LEFT"
            if join_type is None:
                return item
            right = self._parse_from_primary()
            if self._accept_keyword("ON"):
                item = ast.JoinRef(item, right, join_type, self.parse_expression(), (), start)
            elif self._accept_keyword("USING"):
                self._expect_symbol("(")
                columns = [self._parse_simple_identifier()]
                while self._accept_symbol(","):
                    columns += [self._parse_simple_identifier()]
                self._expect_symbol(")")
                item = ast.JoinRef(item, right, join_type, None, tuple(columns), start)
            else:
                self._error(["ON", "USING"])

    def _parse_simple_identifier(self) -> ast.Identifier:
        token = self._expect_identifier()
        return ast.Identifier((token.text,), (token.kind == TokenKind.QUOTED_IDENT,), token.position)

    def _parse_from_primary(self) -> ast.FromItem:
        start = self._position()
        if self._accept_symbol("("):
            query = self.parse_select()
            self._expect_symbol(")")
            return ast.SubqueryRef(query, self._parse_alias(), start)
        token = self._peek()
        if token is None or token.kind not in (TokenKind.IDENT, TokenKind.QUOTED_IDENT):
            self._error(["table name", "'('"])
        name = self._parse_compound_identifier()
        return ast.TableRef(name, self._parse_alias(), start)

    def _parse_compound_identifier(self) -> ast.Identifier:
        first = self._expect_identifier()
        tokens = [first]
        while self._peek() is not None and self._peek().is_symbol(".") and self._peek(1) is not None:
            if self._peek(1).kind not in (TokenKind.IDENT, TokenKind.QUOTED_IDENT):
                break
            self._advance()
            tokens += [self._advance()]
        return ast.Identifier(tuple(token.text for token in tokens), tuple(token.kind == TokenKind.QUOTED_IDENT for token in tokens), first.position)

    def _parse_order_item(self) -> ast.OrderItem:
        start = self._position()
        expression = self.parse_expression()
        descending = False
        if self._accept_keyword("DESC"):
            descending = True
        else:
            self._accept_keyword("ASC")
        return ast.OrderItem(expression, descending, start)

    def _parse_expression_list(self) -> list[ast.Expression]:
        expressions = [self.parse_expression()]
        while self._accept_symbol(","):
            expressions += [self.parse_expression()]
        return expressions

    # Expressions
    def parse_expression(self) -> ast.Expression:
        return self._parse_or()

    def _parse_or(self) -> ast.Expression:
        left = self._parse_and()
        while True:
            token = self._accept_keyword("OR")
            if token is None:
                return left
            left = ast.BinaryOp("OR", left, self._parse_and(), token.position)

    def _parse_and(self) -> ast.Expression:
        left = self._parse_not()
        while True:
            token = self._accept_keyword("AND")
            if token is None:
                return left
            left = ast.BinaryOp("AND", left, self._parse_not(), token.position)

    def _parse_not(self) -> ast.Expression:
        token = self._accept_keyword("NOT")
        if token is not None:
            return ast.UnaryOp("NOT", self._parse_not(), token.position)
        return self._parse_comparison()

    def _parse_comparison(self) -> ast.Expression:
        left = self._parse_additive()
        while True:
            token = self._accept_symbol(*COMPARISON_SYMBOLS)
            if token is not None:
                op = "<>" if token.text == "!=" else token.text
                left = ast.BinaryOp(op, left, self._parse_additive(), token.position)
                continue
            token = self._accept_keyword("IS")
            if token is not None:
                negated = self._accept_keyword("NOT") is not None
                self._expect_keyword("NULL")
                left = ast.IsNull(left, negated, token.position)
                continue
            return left

    def _parse_additive(self) -> ast.Expression:
        left = self._parse_multiplicative()
        while True:
            token = self._accept_symbol("+", "-")
            if token is None:
                return left
            left = ast.BinaryOp(token.text, left, self._parse_multiplicative(), token.position)

    def _parse_multiplicative(self) -> ast.Expression:
        left = self._parse_unary()
        while True:
            token = self._accept_symbol("*", "/")
            if token is None:
                return left
            left = ast.BinaryOp(token.text, left, self._parse_unary(), token.position)

    def _parse_unary(self) -> ast.Expression:
        token = self._accept_symbol("-", "+")
        if token is not None:
            operand = self._parse_unary()
            if token.text == "+":
                return operand
            if isinstance(operand, ast.LiteralValue) and isinstance(operand.value, (int, float)) and not isinstance(operand.value, bool):
                return ast.LiteralValue(-operand.value, token.position)
            return ast.UnaryOp("-", operand, token.position)
        return self._parse_postfix()

    def _parse_postfix(self) -> ast.Expression:
        expression = self._parse_primary()
        while True:
            token = self._accept_symbol("[")
            if token is None:
                return expression
            key = self.parse_expression()
            self._expect_symbol("]")
            expression = ast.Index(expression, key, token.position)

    def _parse_primary(self) -> ast.Expression:
        token = self._peek()
        if token is None:
            self._error(["expression"])
        start = token.position
        if token.kind == TokenKind.NUM_LIT:
            self._advance()
            text = token.text
            if any(char in text for char in ".eE"):
                return ast.LiteralValue(float(text), start)
            return ast.LiteralValue(int(text), start)
        if token.kind == TokenKind.STRING_LIT:
            self._advance()
            return ast.LiteralValue(token.text, start)
        if token.is_keyword("TRUE", "FALSE"):
            self._advance()
            return ast.LiteralValue(token.text == "TRUE", start)
        if token.is_keyword("NULL"):
            self._advance()
            return ast.LiteralValue(None, start)
        if token.is_keyword("CAST"):
            self._advance()
            self._expect_symbol("(")
            operand = self.parse_expression()
            self._expect_keyword("AS")
            type_name = self._parse_type_name()
            self._expect_symbol(")")
            return ast.Cast(operand, type_name, start)
        if token.is_keyword("CASE"):
            return self._parse_case()
        if token.is_symbol("("):
            self._advance()
            expression = self.parse_expression()
            self._expect_symbol(")")
            return expression
        if token.kind == TokenKind.IDENT and self._peek(1) is not None and self._peek(1).is_symbol("("):
            return self._parse_function_call()
        if token.kind in (TokenKind.IDENT, TokenKind.QUOTED_IDENT):
            return self._parse_compound_identifier()
        self._error(["expression"])

    def _parse_case(self) -> ast.Case:
        start = self._expect_keyword("CASE").position
        branches = []
        while self._accept_keyword("WHEN"):
            condition = self.parse_expression()
            self._expect_keyword("THEN")
            branches += [(condition, self.parse_expression())]
        if not branches:
            self._error(["WHEN"])
        otherwise = None
        if self._accept_keyword("ELSE"):
            otherwise = self.parse_expression()
        self._expect_keyword("END")
        return ast.Case(tuple(branches), otherwise, start)

    def _parse_type_name(self) -> str:
        token = self._expect_identifier()
        name = token.text.upper()
        if self._accept_symbol("("):
            argument_start = self._peek()
            if argument_start is not None and argument_start.kind == TokenKind.NUM_LIT:
                self._advance()
                name += "({})".format(argument_start.text)
            else:
                name += "({})".format(self._parse_type_name())
            self._expect_symbol(")")
        return name

    def _parse_function_call(self) -> ast.FunctionCall:
        name_token = self._advance()
        self._expect_symbol("(")
        if self._accept_symbol("*"):
            self._expect_symbol(")")
            return ast.FunctionCall(name_token.text.upper(), (), True, name_token.position)
        args = []
        if not self._accept_symbol(")"):
            args = self._parse_expression_list()
            self._expect_symbol(")")
        return ast.FunctionCall(name_token.text.upper(), tuple(args), False, name_token.position)


def parse(tokens: Sequence[Token], end: Optional[tuple[int, int]] = None) -> ast.Statement:
    """Parse a single statement (optionally terminated by ';')

    Raises
    ------
    SqlSyntaxError
        With the set of expected tokens and the position of the offending token
    """
    return Parser(tokens, end).parse_statement()


def parse_sql(sql: str) -> ast.Statement:
    """Tokenize and parse a SQL string"""
    return parse(tokenize(sql), end_position(sql))


def split_statements(tokens: Sequence[Token]) -> list[list[Token]]:
    """Split a token stream on ';' into the token lists of the individual statements"""
    statements = []
    current = []
    for token in tokens:
        if token.is_symbol(";"):
            if current:
                statements.append(current)
            current = []
        else:
            current.append(token)
    if current:
        statements.append(current)
    return statements
