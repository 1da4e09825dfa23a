"""Syntax tree node definitions.

Declarations, statements, and expressions are separate families of frozen
dataclasses. ``ValueLeaf`` is runtime-only: the evaluator splices already
computed values into thunk bodies, so expression trees must be able to
carry them.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Union

Span = tuple[int, int, int]


class Node:
    pass


# --- expressions ---

class Expr(Node):
    pass


@dataclass(frozen=True)
class IntLit(Expr):
    value: int
    span: Optional[Span] = None


@dataclass(frozen=True)
class Ident(Expr):
    name: str
    span: Optional[Span] = None


@dataclass(frozen=True)
class FailLit(Expr):
    span: Optional[Span] = None


@dataclass(frozen=True)
class Infix(Expr):
    op: str
    lhs: Expr
    rhs: Expr
    span: Optional[Span] = None


@dataclass(frozen=True)
class Prefix(Expr):
    op: str
    operand: Expr
    span: Optional[Span] = None


@dataclass(frozen=True)
class Call(Expr):
    name: str
    args: tuple[Expr, ...]
    span: Optional[Span] = None


@dataclass(frozen=True)
class FieldAccess(Expr):
    obj: Expr
    field: str
    span: Optional[Span] = None


@dataclass(frozen=True)
class InheritedCall(Expr):
    """``Ancestor.(A * B)``: resolve the operator starting at the ancestor."""
    ancestor: str
    expr: Expr
    span: Optional[Span] = None


@dataclass(frozen=True)
class PairLit(Expr):
    """``(re, im)``: componentwise complex constructor literal."""
    first: Expr
    second: Expr
    span: Optional[Span] = None


@dataclass(frozen=True)
class ValueLeaf(Expr):
    """Runtime-only leaf holding an already computed value."""
    value: object
    span: Optional[Span] = None


# --- statements ---

class Stmt(Node):
    pass


@dataclass(frozen=True)
class Assign(Stmt):
    target: str  # identifier or "Return"
    expr: Expr
    span: Optional[Span] = None


@dataclass(frozen=True)
class If(Stmt):
    cond: Expr
    then: Stmt
    els: Optional[Stmt] = None
    span: Optional[Span] = None


@dataclass(frozen=True)
class CallStmt(Stmt):
    name: str
    args: tuple[Expr, ...]
    span: Optional[Span] = None


@dataclass(frozen=True)
class Compound(Stmt):
    body: tuple[Stmt, ...]
    span: Optional[Span] = None


# --- declarations ---

class Decl(Node):
    pass


@dataclass(frozen=True)
class VarBlock(Decl):
    decls: tuple[tuple[str, str], ...]  # (name, type-name)
    span: Optional[Span] = None


@dataclass(frozen=True)
class FunctionDecl(Decl):
    symbol: str            # operator symbol or function name
    fixity: str            # "infix" | "prefix" | "ordinary"
    owner: Optional[str]   # owner type for qualified definitions
    params: tuple[tuple[str, str], ...]
    result_type: str
    par_decls: tuple[tuple[str, str], ...] = ()
    body: Optional[Compound] = None  # None for signatures inside object bodies
    span: Optional[Span] = None


@dataclass(frozen=True)
class ObjectDecl(Decl):
    name: str
    ancestor: Optional[str]
    fields: tuple[tuple[str, str], ...] = ()
    method_sigs: tuple[FunctionDecl, ...] = ()
    span: Optional[Span] = None


Item = Union[Decl, Stmt]


@dataclass(frozen=True)
class Program(Node):
    items: tuple[Item, ...] = field(default_factory=tuple)
