"""Sequential semantic analysis of partial oracle token lists.

The grammar automaton answers "which token shapes may come next"; this walker
tracks what the consumed prefix *means* — operand types, receiver types for
member access, the pending comparison, call frames with expected parameters,
and lambda scopes — so the token filter can prune shape-legal but ill-typed
continuations.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from ..codemodel import (
    CAT_ARRAY,
    CAT_BOOL,
    CAT_CHAR,
    CAT_FLOAT,
    CAT_INT,
    CAT_REF,
    CAT_UNKNOWN,
    FieldInfo,
    MethodInfo,
    TypeRef,
    accessible_members,
    primitive,
)
from ..codemodel.stubs import STREAM_MATCH_METHODS
from ..grammar import (
    ARITHMETIC_OPS,
    COMPARISON_OPS,
    K_CALL,
    K_IDENT,
    K_LITERAL,
    K_MEMBER,
    K_OPERATOR,
    K_PUNCT,
    K_RESERVED,
    LOGICAL_OPS,
    RELATIONAL_OPS,
    Token,
    render_tokens,
)
from .context import (
    BOOL,
    BOOL_PROP,
    CAT_BOOL_PROP,
    CAT_CLASS,
    CAT_NULL,
    NULL,
    UNKNOWN,
    ExprType,
    GenerationContext,
    expr_type_of,
)

_STREAM_NAMES = ("Stream", "java.util.stream.Stream")


class SemanticError(Exception):
    """A token sequence the walker cannot give meaning to."""


def literal_type(tok: Token) -> ExprType:
    if tok.kind == K_RESERVED:
        if tok.text in ("true", "false"):
            return BOOL
        if tok.text == "null":
            return NULL
        raise SemanticError(f"not a literal: {tok.text!r}")
    sub = tok.subtype
    if sub == "integer":
        return ExprType(CAT_INT, "int")
    if sub == "floating":
        return ExprType(CAT_FLOAT, "double")
    if sub == "string":
        return ExprType(CAT_REF, "String")
    if sub == "char":
        return ExprType(CAT_CHAR, "char")
    raise SemanticError(f"not a literal: {tok.text!r}")


def is_stream(et: ExprType) -> bool:
    return et.category == CAT_REF and et.name in _STREAM_NAMES


def members_of(ctx: GenerationContext,
               et: ExprType) -> tuple[tuple[FieldInfo, ...], tuple[MethodInfo, ...]]:
    """Members reachable through '.' on an expression of type `et`."""
    key = (et.category, et.name, et.elem)
    cache = ctx.model.__dict__.setdefault("_membersCache", {})
    if key in cache:
        return cache[key]
    cache[key] = result = _members_of(ctx, et)
    return result


def _members_of(ctx, et):
    if et.category == CAT_CLASS:
        cls = ctx.model.lookup_class(et.name)
        if cls is None:
            return (), ()
        fields = tuple(f for f in cls.fields
                       if f.static and f.visibility != "private")
        methods = tuple(m for m in cls.methods
                        if m.static and m.visibility != "private")
        return fields, methods
    if et.category == CAT_ARRAY:
        return accessible_members(ctx.model, TypeRef(et.name, CAT_ARRAY, elem=et.elem))
    if et.category == CAT_REF:
        return accessible_members(ctx.model, TypeRef(et.name, CAT_REF))
    return (), ()


def member_result_type(ctx: GenerationContext, receiver: ExprType,
                       m: MethodInfo) -> ExprType:
    """Type a call to `m` on `receiver` evaluates to (args already vetted)."""
    if m.owner == "java.util.Arrays" and m.name == "stream":
        # element type filled in from the argument when the call closes
        return ExprType(CAT_REF, "Stream")
    if m.name == "stream" and m.arity == 0:
        elem = receiver.elem if receiver.elem is not None \
            else TypeRef("Object", CAT_UNKNOWN)
        return ExprType(CAT_REF, "Stream", elem=elem)
    result = expr_type_of(ctx.model, m.returnType)
    if is_stream(result) and receiver.elem is not None:
        return ExprType(CAT_REF, "Stream", elem=receiver.elem)
    return result


@dataclass
class Frame:
    """One nesting level: the oracle itself, a '(' group, a lambda body, or
    a call's argument list."""
    kind: str  # "top" | "paren" | "lambda" | "call"

    # -- current operand (chain/literal) under construction --
    operand: Optional[ExprType] = None
    operand_start: int = -1  # token index where the operand began
    after_dot: bool = False
    pending_call: Optional[MethodInfo] = None  # method member awaiting '('
    pending_call_recv: Optional[ExprType] = None

    # -- proposition state (top / paren / lambda frames) --
    cmp_op: str = ""
    cmp_left: Optional[ExprType] = None
    cmp_left_text: str = ""
    rhs_pending_arith: bool = False
    pending_instanceof: bool = False
    instanceof_left: Optional[ExprType] = None
    atoms_closed: int = 0
    ternary_stage: int = 0  # 0 none, 1 in then-branch, 2 in else-branch

    # -- call frames --
    method: Optional[MethodInfo] = None
    recv: Optional[ExprType] = None
    args_given: int = 0
    first_arg: Optional[ExprType] = None

    # -- lambda frames --
    lambda_elem: Optional[ExprType] = None

    # token index of the '(' that opened this paren/call/lambda frame
    group_start: int = -1


class SemState:
    """Semantic state after consuming a token prefix. Mutable; built by
    `analyze` and advanced with `feed`."""

    def __init__(self, ctx: GenerationContext):
        self.ctx = ctx
        self.tokens: list[Token] = []
        self.frames: list[Frame] = [Frame(kind="top")]
        self.complete = False

    # -- accessors --

    @property
    def frame(self) -> Frame:
        return self.frames[-1]

    def in_lambda(self) -> bool:
        return any(f.kind == "lambda" for f in self.frames)

    def lambda_elem_type(self) -> Optional[ExprType]:
        for f in reversed(self.frames):
            if f.kind == "lambda":
                return f.lambda_elem
        return None

    def group_depth(self) -> int:
        return sum(1 for f in self.frames if f.kind in ("paren", "lambda"))

    def operand_text(self, f: Optional[Frame] = None) -> str:
        f = f or self.frame
        if f.operand is None or f.operand_start < 0:
            return ""
        return render_tokens(self.tokens[f.operand_start:])

    def base_type(self, name: str) -> Optional[ExprType]:
        """Resolve a chain base name in the current scope."""
        if name == "jdVar":
            return self.lambda_elem_type()
        return self.ctx.scope_type(name)

    # -- mutation --

    def feed(self, tok: Token) -> None:
        if self.complete:
            raise SemanticError("oracle already complete")
        self._process(tok)
        self.tokens.append(tok)

    def _start_operand(self, et: ExprType) -> None:
        f = self.frame
        f.operand = et
        f.operand_start = len(self.tokens)
        f.rhs_pending_arith = False

    def _finalize_operand(self, f: Frame) -> tuple[ExprType, str]:
        if f.operand is None:
            raise SemanticError("no operand to finalize")
        text = render_tokens(self.tokens[f.operand_start:])
        et = f.operand
        f.operand = None
        f.operand_start = -1
        return et, text

    def _finalize_atom(self, f: Frame) -> None:
        if f.cmp_op:
            self._finalize_operand(f)
            f.cmp_op = ""
            f.cmp_left = None
            f.cmp_left_text = ""
            f.rhs_pending_arith = False
        elif f.operand is not None:
            self._finalize_operand(f)
        f.atoms_closed += 1

    def _process(self, tok: Token) -> None:
        f = self.frame
        text, kind = tok.text, tok.kind

        if kind in (K_IDENT, K_MEMBER, K_CALL) or \
                (kind == K_RESERVED and text in ("this", "methodResultID", "jdVar")):
            if f.pending_instanceof:
                # class name completing an instanceof atom
                f.pending_instanceof = False
                f.instanceof_left = None
                f.atoms_closed += 1
                return
            if f.after_dot:
                recv = f.operand if f.operand is not None else UNKNOWN
                fields, methods = members_of(self.ctx, recv)
                fld = next((x for x in fields if x.name == text), None)
                if fld is not None:
                    f.operand = expr_type_of(self.ctx.model, fld.type)
                else:
                    meth = next((m for m in methods if m.name == text), None)
                    if meth is not None:
                        f.pending_call = meth
                        f.pending_call_recv = recv
                        f.operand = UNKNOWN  # settled when the call closes
                    else:
                        f.operand = UNKNOWN
                f.after_dot = False
                return
            et = self.base_type(text)
            self._start_operand(et if et is not None else UNKNOWN)
            return

        if kind == K_LITERAL or (kind == K_RESERVED and text in ("true", "false", "null")):
            self._start_operand(literal_type(tok))
            return

        if kind == K_PUNCT:
            if text == ".":
                f.after_dot = True
                return
            if text == "(":
                if f.pending_call is not None:
                    meth, recv = f.pending_call, f.pending_call_recv
                    f.pending_call = None
                    f.pending_call_recv = None
                    self.frames.append(Frame(kind="call", method=meth, recv=recv,
                                             group_start=len(self.tokens)))
                else:
                    self.frames.append(Frame(kind="paren",
                                             group_start=len(self.tokens)))
                return
            if text == ")":
                self._close_group()
                return
            if text == ",":
                if f.kind != "call":
                    raise SemanticError("',' outside a call")
                arg, _ = self._finalize_operand(f)
                if f.args_given == 0:
                    f.first_arg = arg
                f.args_given += 1
                return
            if text == ";":
                self._finalize_atom(f)
                self.complete = True
                return

        if kind == K_OPERATOR:
            if text in COMPARISON_OPS:
                left, ltext = self._finalize_operand(f)
                f.cmp_op = text
                f.cmp_left = left
                f.cmp_left_text = ltext
                return
            if text in ARITHMETIC_OPS:
                self._finalize_operand(f)
                f.rhs_pending_arith = True
                return
            if text in LOGICAL_OPS:
                self._finalize_atom(f)
                return
            if text == "instanceof":
                left, _ = self._finalize_operand(f)
                f.pending_instanceof = True
                f.instanceof_left = left
                return
            if text == "?":
                self._finalize_atom(f)
                f.ternary_stage = 1
                return
            if text == ":":
                self._finalize_atom(f)
                f.ternary_stage = 2
                return
            if text == "->":
                if f.kind != "call" or f.operand is None:
                    raise SemanticError("'->' outside a call argument")
                f.operand = None
                f.operand_start = -1
                elem = stream_elem_type(self.ctx, f)
                self.frames.append(Frame(kind="lambda", lambda_elem=elem))
                return

        raise SemanticError(f"walker cannot process token {text!r}")

    def _close_group(self) -> None:
        top = self.frames.pop()
        if top.kind == "lambda":
            self._finalize_atom(top)
            call = self.frames.pop()
            if call.kind != "call":
                raise SemanticError("lambda frame not inside a call")
            parent = self.frame
            parent.operand = BOOL
            return
        if top.kind == "call":
            if top.operand is not None:
                arg, _ = self._finalize_operand(top)
                if top.args_given == 0:
                    top.first_arg = arg
                top.args_given += 1
            parent = self.frame
            result = member_result_type(self.ctx, top.recv or UNKNOWN, top.method) \
                if top.method is not None else UNKNOWN
            if top.method is not None and top.method.owner == "java.util.Arrays" \
                    and top.method.name == "stream":
                elem = top.first_arg.elem if top.first_arg is not None else None
                result = ExprType(CAT_REF, "Stream", elem=elem)
            parent.operand = result
            return
        if top.kind == "paren":
            self._finalize_atom(top)
            parent = self.frame
            parent.operand = BOOL_PROP
            parent.operand_start = top.group_start
            return
        raise SemanticError("unbalanced ')'")


def stream_elem_type(ctx: GenerationContext, call: Frame) -> ExprType:
    """Type of jdVar inside a stream-quantifier lambda on this call frame."""
    recv = call.recv
    if recv is not None and is_stream(recv) and recv.elem is not None:
        return expr_type_of(ctx.model, recv.elem)
    return UNKNOWN


def analyze(ctx: GenerationContext, tokens: list[Token]) -> SemState:
    state = SemState(ctx)
    for tok in tokens:
        state.feed(tok)
    return state


def type_of(ctx: GenerationContext, tokens: list[Token],
            span: tuple[int, int]) -> ExprType:
    """Type of the completed operand occupying tokens[start:end]."""
    start, end = span
    if not 0 <= start < end <= len(tokens):
        raise SemanticError(f"invalid operand span {span}")
    state = analyze(ctx, tokens[:end])
    f = state.frame
    if f.operand is None or f.operand_start != start or f.after_dot \
            or f.pending_call is not None:
        raise SemanticError(f"span {span} does not end a completed operand")
    return f.operand
