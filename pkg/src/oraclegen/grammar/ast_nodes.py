"""AST for oracle expressions."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Union


@dataclass(frozen=True)
class Literal:
    text: str
    subtype: str  # integer | floating | string | char | boolean | null


@dataclass(frozen=True)
class Member:
    name: str


@dataclass(frozen=True)
class Lambda:
    var: str  # always jdVar
    body: "Prop"


@dataclass(frozen=True)
class Call:
    name: str
    args: tuple[Union["Chain", Literal, Lambda], ...]


@dataclass(frozen=True)
class Chain:
    base: str  # identifier, this, methodResultID, or jdVar
    segments: tuple[Union[Member, Call], ...] = ()


@dataclass(frozen=True)
class Paren:
    prop: "Prop"


@dataclass(frozen=True)
class Arith:
    # terms[0] op[0] terms[1] op[1] terms[2] ...
    terms: tuple[Union[Chain, Literal, Paren], ...]
    ops: tuple[str, ...]


Operand = Union[Chain, Literal, Paren, Arith]


@dataclass(frozen=True)
class Comparison:
    left: Union[Chain, Literal, Paren]
    op: str
    right: Operand


@dataclass(frozen=True)
class Instanceof:
    operand: Chain
    className: str


Atom = Union[Comparison, Instanceof, Chain, Literal, Paren]


@dataclass(frozen=True)
class BoolOp:
    op: str  # && or ||
    operands: tuple["Prop", ...]


Prop = Union[BoolOp, Atom]


@dataclass(frozen=True)
class Ternary:
    guard: Prop
    then: Prop
    els: Prop


@dataclass(frozen=True)
class OracleAst:
    root: Union[Ternary, Prop]
