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

"""The traits module

Physical properties attached to every relational operator: the calling convention (which engine
executes the operator) and the collation (the order in which its rows come out).

"""

from __future__ import annotations

from dataclasses import dataclass
from dataclasses import field
from dataclasses import replace
from enum import Enum
from typing import Any
from typing import Iterable
from typing import Optional
from typing import Sequence
from typing import Tuple


class Direction(Enum):
    ASC = "ASC"
    DESC = "DESC"


@dataclass(frozen=True)
class FieldCollation:
    index: int
    direction: Direction = Direction.ASC

    def __str__(self):
        return "{} {}".format(self.index, self.direction.value)


Collation = Tuple[FieldCollation, ...]


def collation_of(*keys: Tuple[int, str]) -> Collation:
    """Shorthand: collation_of((0, "ASC"), (1, "DESC"))"""
    return tuple(FieldCollation(index, Direction(direction.upper())) for index, direction in keys)


def format_collation(collation: Sequence[FieldCollation]) -> str:
    return "[" + ", ".join(str(key) for key in collation) + "]"


@dataclass(frozen=True)
class Convention:
    """A calling convention

    Adapter conventions carry the adapter object which knows how to execute the nodes of that
    convention (``adapter.execute(rel)``) and optionally how to describe them in plan text
    (``adapter.describe(rel)``). The adapter does not take part in equality.

    Remote conventions are per schema, since nodes may only be combined within one backend.
    """

    name: str
    schema: Optional[str] = None
    adapter: Any = field(default=None, compare=False, repr=False)

    def __str__(self):
        if self.schema is None:
            return self.name
        return "{}({})".format(self.name, self.schema)

    @property
    def is_logical(self) -> bool:
        return self.name == "LOGICAL"

    @property
    def discount(self) -> float:
        """Factor applied to the io cost of nodes in this convention"""
        return getattr(self.adapter, "discount", 1.0)


LOGICAL = Convention("LOGICAL")
ENUMERABLE = Convention("ENUMERABLE")


@dataclass(frozen=True)
class TraitSet:
    convention: Convention
    collation: Collation = ()

    def __str__(self):
        return "{}.{}".format(self.convention, format_collation(self.collation))

    def satisfies(self, required: TraitSet) -> bool:
        """True if rows with these traits can be used where `required` is asked for

        The conventions must be equal and the required collation must be a prefix of ours.
        """
        if self.convention != required.convention:
            return False
        return tuple(self.collation[: len(required.collation)]) == tuple(required.collation)

    def with_convention(self, convention: Convention) -> TraitSet:
        return replace(self, convention=convention)

    def with_collation(self, collation: Iterable[FieldCollation]) -> TraitSet:
        return replace(self, collation=tuple(collation))


def traits_of(convention: Convention, collation: Iterable[FieldCollation] = ()) -> TraitSet:
    return TraitSet(convention, tuple(collation))


def is_prefix(prefix: Sequence[FieldCollation], collation: Sequence[FieldCollation]) -> bool:
    return tuple(collation[: len(prefix)]) == tuple(prefix)
