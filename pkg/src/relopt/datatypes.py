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

"""The datatypes module

Contains the scalar type system (ScalarType, TypeKind) and the RowType describing the output of
every relational operator.

"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable
from typing import Optional
from typing import Sequence
from typing import Tuple

from .errors import TypeMismatch
from .functions import uniquify_names


class TypeKind(Enum):
    BOOLEAN = "BOOLEAN"
    INT64 = "INT64"
    FLOAT64 = "FLOAT64"
    STRING = "STRING"
    ARRAY = "ARRAY"
    MAP = "MAP"
    ANY = "ANY"
    # Type of the untyped NULL literal, assignable to every other type
    NULL = "NULL"


@dataclass(frozen=True)
class ScalarType:
    """A scalar (column) type

    ARRAY and MAP carry the type of their elements (MAP keys are always strings).
    Nullability is carried but is not part of type compatibility.
    """

    kind: TypeKind
    nullable: bool = True
    element: Optional[ScalarType] = None

    def __post_init__(self):
        if self.kind in (TypeKind.ARRAY, TypeKind.MAP):
            if not isinstance(self.element, ScalarType):
                raise TypeMismatch("{} type requires an element type".format(self.kind.value))
        elif self.element is not None:
            raise TypeMismatch("Only ARRAY and MAP types have an element type")

    def __str__(self):
        if self.element is not None:
            return "{}({})".format(self.kind.value, self.element)
        return self.kind.value

    @property
    def is_numeric(self) -> bool:
        return self.kind in (TypeKind.INT64, TypeKind.FLOAT64)

    @property
    def is_dynamic(self) -> bool:
        """ANY and NULL types are only checked at runtime"""
        return self.kind in (TypeKind.ANY, TypeKind.NULL)

    def with_nullable(self, nullable: bool) -> ScalarType:
        return ScalarType(self.kind, nullable, self.element)

    def same_kind(self, other: ScalarType) -> bool:
        """Structural equality ignoring nullability"""
        if self.kind != other.kind:
            return False
        if self.element is None:
            return True
        return self.element.same_kind(other.element)


BOOLEAN = ScalarType(TypeKind.BOOLEAN)
INT64 = ScalarType(TypeKind.INT64)
FLOAT64 = ScalarType(TypeKind.FLOAT64)
STRING = ScalarType(TypeKind.STRING)
ANY = ScalarType(TypeKind.ANY)
NULL = ScalarType(TypeKind.NULL)


def array_of(element: ScalarType, nullable: bool = True) -> ScalarType:
    return ScalarType(TypeKind.ARRAY, nullable, element)


def map_of(value: ScalarType, nullable: bool = True) -> ScalarType:
    return ScalarType(TypeKind.MAP, nullable, value)


_type_names = {
    "BOOLEAN": BOOLEAN,
    "BOOL": BOOLEAN,
    "BIGINT": INT64,
    "INT": INT64,
    "INTEGER": INT64,
    "INT64": INT64,
    "DOUBLE": FLOAT64,
    "FLOAT": FLOAT64,
    "REAL": FLOAT64,
    "FLOAT64": FLOAT64,
    "VARCHAR": STRING,
    "CHAR": STRING,
    "STRING": STRING,
    "ANY": ANY,
}


def type_from_name(name: str) -> Optional[ScalarType]:
    """Map a SQL or model-file type name to a ScalarType, None if the name is unknown

    Length arguments (VARCHAR(20)) are accepted and ignored. ARRAY(x) and MAP(x) are accepted
    in model files.
    """
    text = name.strip().upper()
    if "(" in text and text.endswith(")"):
        base, argument = text[:-1].split("(", 1)
        base = base.strip()
        if base in ("ARRAY", "MAP"):
            element = type_from_name(argument)
            if element is None:
                return None
            return array_of(element) if base == "ARRAY" else map_of(element)
        text = base
    return _type_names.get(text)


def least_restrictive(left: ScalarType, right: ScalarType) -> Optional[ScalarType]:
    """The common type of two compatible types, or None when they are incompatible"""
    if left.kind == TypeKind.NULL:
        return right
    if right.kind == TypeKind.NULL:
        return left
    if left.kind == TypeKind.ANY or right.kind == TypeKind.ANY:
        return ANY
    if left.is_numeric and right.is_numeric:
        if TypeKind.FLOAT64 in (left.kind, right.kind):
            return FLOAT64
        return INT64
    if left.same_kind(right):
        return left.with_nullable(left.nullable or right.nullable)
    return None


@dataclass(frozen=True)
class Field:
    name: str
    type: ScalarType

    def __str__(self):
        return "{}: {}".format(self.name, self.type)


@dataclass(frozen=True)
class RowType:
    """The ordered list of named, typed fields produced by a relational operator

    Field names are unique within a row type, compared case-insensitively. Columns are referenced
    by their index; the names only matter to the SQL frontend and to result output.
    """

    fields: Tuple[Field, ...]

    def __post_init__(self):
        seen = set()
        for field in self.fields:
            if field.name.lower() in seen:
                raise TypeMismatch("Duplicate field name '{}' in row type".format(field.name))
            seen.add(field.name.lower())

    @classmethod
    def of(cls, *pairs: Tuple[str, ScalarType]) -> RowType:
        return cls(tuple(Field(name, field_type) for name, field_type in pairs))

    @classmethod
    def uniquified(cls, names: Sequence[str], types: Sequence[ScalarType]) -> RowType:
        """Build a row type, renaming duplicate field names with numeric suffixes"""
        return cls(tuple(Field(name, field_type) for name, field_type in zip(uniquify_names(names), types)))

    def __len__(self):
        return len(self.fields)

    def __iter__(self):
        return iter(self.fields)

    def __getitem__(self, index: int) -> Field:
        return self.fields[index]

    @property
    def names(self) -> list[str]:
        return [field.name for field in self.fields]

    @property
    def types(self) -> list[ScalarType]:
        return [field.type for field in self.fields]

    def index_of(self, name: str, case_sensitive: bool = False) -> Optional[int]:
        for index, field in enumerate(self.fields):
            if field.name == name:
                return index
        if case_sensitive:
            return None
        matches = [index for index, field in enumerate(self.fields) if field.name.lower() == name.lower()]
        if len(matches) == 1:
            return matches[0]
        return None

    def concat(self, other: RowType) -> RowType:
        return RowType.uniquified(self.names + other.names, self.types + other.types)

    def project(self, indices: Iterable[int]) -> RowType:
        return RowType(tuple(self.fields[index] for index in indices))

    def same_types(self, other: RowType) -> bool:
        """Field-wise type equality ignoring names and nullability"""
        if len(self) != len(other):
            return False
        return all(mine.type.same_kind(theirs.type) for mine, theirs in zip(self.fields, other.fields))

    def __str__(self):
        return "(" + ", ".join(str(field) for field in self.fields) + ")"
