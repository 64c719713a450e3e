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

"""The Entry Points module

This is a utility module holds all the CLI entry points

"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path
from typing import Optional
from typing import Sequence
from typing import TextIO

from relopt import __version__
from relopt.adapters.catalog import Catalog
from relopt.adapters.model import load_model
from relopt.errors import ModelError
from relopt.errors import RelOptError
from relopt.formatting import FORMATS
from relopt.formatting import format_result
from relopt.session import PLANNERS
from relopt.session import Query_Result
from relopt.session import Query_Session

EXIT_OK = 0
EXIT_QUERY_ERROR = 1
EXIT_MODEL_ERROR = 2

LOG_LEVELS = ["DETAILED_TRACE", "TRACE", "DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"]

PROMPT = "relopt> "
CONTINUATION_PROMPT = "   ...> "


def version(args=None):
    """This is the entry function for the command line interface to print out the version"""
    parser = argparse.ArgumentParser(description='Print the RelOpt version')
    args = parser.parse_args(args=args)

    print(f"The RelOpt version is: {__version__}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(description='Run SQL queries over the data sources of a RelOpt model')
    parser.add_argument('--model', metavar='PATH', help="The JSON model file declaring the schemas, views and materializations")
    source = parser.add_mutually_exclusive_group()
    source.add_argument('-e', dest='sql', metavar='SQL', help="The statement to run")
    source.add_argument('--file', metavar='PATH', help="A script of ';' separated statements to run")
    parser.add_argument('--format', dest='output_format', choices=FORMATS, default="table", help="How query results are printed")
    parser.add_argument('--planner', choices=PLANNERS, default="cost", help="The planner engine")
    parser.add_argument(
        '--disable-rule',
        dest='disabled_rules',
        metavar='NAME',
        action='append',
        default=[],
        help="Leave a rule out of the rule set, may be repeated",
    )
    parser.add_argument('--trace', action='store_true', help="Print the planner trace before each plan or result")
    parser.add_argument('--no-materializations', action='store_true', help="Do not substitute materialized views")
    parser.add_argument('--log-level', choices=LOG_LEVELS, default="WARNING", help="The level of the log messages printed on stderr")
    return parser


def print_result(result: Query_Result, output_format: str, trace: bool, out: TextIO):
    if trace and result.trace:
        print("\n".join(result.trace), file=out)
    if result.explain_only:
        print(result.plan_text, file=out)
    else:
        print(format_result(result.row_type, result.rows, output_format), file=out)


def _run_statements(session: Query_Session, sql: str, config: argparse.Namespace, out: TextIO):
    for result in session.execute_script(sql):
        print_result(result, config.output_format, config.trace, out)


def interactive(session: Query_Session, config: argparse.Namespace, stdin: TextIO, out: TextIO, err: TextIO) -> int:
    """Read statements terminated by ';' until end of input, errors are reported and skipped"""
    buffer = []
    while True:
        print(CONTINUATION_PROMPT if buffer else PROMPT, end="", file=out, flush=True)
        line = stdin.readline()
        if line == "":
            print(file=out)
            break
        buffer.append(line)
        if not line.rstrip().endswith(";"):
            continue
        text = "".join(buffer)
        buffer = []
        try:
            _run_statements(session, text, config, out)
        except RelOptError as error:
            print("Error: {}".format(error), file=err)
    return EXIT_OK


def run(argv: Optional[Sequence[str]] = None, stdin: TextIO = None, out: TextIO = None, err: TextIO = None) -> int:
    """Run the command line interface, returning the exit code

    Exit codes are 0 on success, 1 for errors in a query and 2 for errors in the model or the
    command line configuration (a missing script file).
    """
    stdin = stdin if stdin is not None else sys.stdin
    out = out if out is not None else sys.stdout
    err = err if err is not None else sys.stderr

    config = build_parser().parse_args(args=argv)
    logging.basicConfig(
        stream=err,
        level=getattr(logging, config.log_level),
        format='%(asctime)s - %(levelname)s:%(name)s:%(message)s',
    )
    logger = logging.getLogger("RelOpt_CLI")

    try:
        catalog = load_model(Path(config.model)) if config.model is not None else Catalog()
    except ModelError as error:
        print("Error: {}".format(error), file=err)
        return EXIT_MODEL_ERROR

    try:
        session = Query_Session(
            catalog,
            planner=config.planner,
            disabled_rules=config.disabled_rules,
            use_materializations=not config.no_materializations,
        )
        if config.sql is not None:
            _run_statements(session, config.sql, config, out)
        elif config.file is not None:
            path = Path(config.file)
            if not path.is_file():
                print("Error: script file '{}' not found".format(path), file=err)
                return EXIT_MODEL_ERROR
            _run_statements(session, path.read_text(encoding="utf-8"), config, out)
        else:
            return interactive(session, config, stdin, out, err)
    except ModelError as error:
        print("Error: {}".format(error), file=err)
        return EXIT_MODEL_ERROR
    except RelOptError as error:
        logger.debug("Statement failed", exc_info=True)
        print("Error: {}".format(error), file=err)
        return EXIT_QUERY_ERROR
    return EXIT_OK


def main(args=None):
    """This is the main entry function for the command line interface"""
    sys.exit(run(args))
