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

"""The formatting module

Renders query results for the command line: an aligned text table, csv (readable again by the csv
adapter) or documents (one JSON object per row, keyed by column name).

"""

from __future__ import annotations

import csv
import io
import json
from typing import Any
from typing import Sequence

from .datatypes import RowType
from .functions import format_value

FORMATS = ("table", "csv", "docs")


def format_table(row_type: RowType, rows: Sequence[Sequence[Any]]) -> str:
    names = list(row_type.names)
    cells = [[format_value(value) for value in row] for row in rows]
    widths = [len(name) for name in names]
    for row in cells:
        for index, cell in enumerate(row):
            widths[index] = max(widths[index], len(cell))

    def line(values: Sequence[str]) -> str:
        return "| " + " | ".join(value.ljust(width) for value, width in zip(values, widths)) + " |"

    separator = "+-" + "-+-".join("-" * width for width in widths) + "-+"
    lines = [separator, line(names), separator]
    lines += [line(row) for row in cells]
    lines += [separator]
    count = len(cells)
    lines += ["{} row{}".format(count, "" if count == 1 else "s")]
    return "\n".join(lines)


def format_csv(row_type: RowType, rows: Sequence[Sequence[Any]]) -> str:
    # NULL is the empty field, as the csv adapter reads it
    stream = io.StringIO()
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(row_type.names)
    for row in rows:
        writer.writerow([format_value(value, null="") for value in row])
    return stream.getvalue().rstrip("\n")


def format_docs(row_type: RowType, rows: Sequence[Sequence[Any]]) -> str:
    names = row_type.names
    return "\n".join(json.dumps(dict(zip(names, row)), sort_keys=False) for row in rows)


def format_result(row_type: RowType, rows: Sequence[Sequence[Any]], output_format: str = "table") -> str:
    """Render rows in one of the FORMATS

    Raises
    ------
    ValueError
        If the format is not known
    """
    if output_format == "table":
        return format_table(row_type, rows)
    if output_format == "csv":
        return format_csv(row_type, rows)
    if output_format == "docs":
        return format_docs(row_type, rows)
    raise ValueError("Unknown output format '{}', expected one of {}".format(output_format, ", ".join(FORMATS)))
