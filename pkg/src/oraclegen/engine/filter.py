"""Token Filter: prune candidate tokens by grammar legality and the context
restriction registry (see restrictions.py for the ids cited here)."""

from __future__ import annotations

from typing import Optional, Union

from ..codemodel import CAT_ARRAY, CAT_VOID, MethodInfo
from ..codemodel.stubs import STREAM_MATCH_METHODS
from ..grammar import (
    GrammarState,
    K_LITERAL,
    K_RESERVED,
    RELATIONAL_OPS,
    Token,
    member,
    punct,
    render_tokens,
    replay,
    token_terminal,
)
from .collector import (
    CandidateSet,
    PROV_SPECIFIC,
    collect_generic_tagged,
)
from .context import (
    BOOL,
    BOOL_PROP,
    CAT_CLASS,
    CAT_NULL,
    CAT_UNKNOWN,
    ExprType,
    GenerationContext,
    UNKNOWN,
    category_class,
    expr_type_of,
)
from .semantics import (
    Frame,
    SemState,
    analyze,
    is_stream,
    literal_type,
    member_result_type,
    members_of,
)

_RELATIONAL_TERMS = ("lt", "le", "gt", "ge")
_EQUALITY_TERMS = ("eq", "ne")
_ARITH_TERMS = ("plus", "minus", "star", "slash", "percent")
_CLOSABLE = ("numeric", "boolean", "reference", CAT_UNKNOWN, CAT_NULL)


# ---------------------------------------------------------------------------
# Compatibility rules

def _cmp_ok(op: str, left: ExprType, right: ExprType) -> bool:
    lc, rc = category_class(left), category_class(right)
    if op in RELATIONAL_OPS:
        return lc == "numeric" and rc == "numeric"
    if rc == CAT_NULL:
        return lc in ("reference", CAT_UNKNOWN, CAT_NULL)
    if lc == CAT_NULL:
        return rc in ("reference", CAT_UNKNOWN)
    if lc == CAT_UNKNOWN or rc == CAT_UNKNOWN:
        return False
    return lc == rc and lc in ("numeric", "boolean", "reference")


def _arg_ok(ptype: ExprType, arg: ExprType) -> bool:
    pc, ac = category_class(ptype), category_class(arg)
    if ac == CAT_NULL:
        return pc in ("reference", CAT_UNKNOWN)
    if pc == CAT_UNKNOWN:
        return ac == "reference"
    return pc == ac


class _Checker:
    """Evaluates one candidate at a time against a fixed semantic state."""

    def __init__(self, ctx: GenerationContext, sem: SemState):
        self.ctx = ctx
        self.sem = sem
        self._members_cache: dict = {}

    def _members(self, recv: ExprType):
        key = (recv.category, recv.name, recv.elem)
        if key not in self._members_cache:
            self._members_cache[key] = members_of(self.ctx, recv)
        return self._members_cache[key]

    def _extendable(self, et: ExprType) -> bool:
        if not et.is_reference_like:
            return False
        fields, methods = self._members(et)
        return bool(fields or methods)

    def _arg_extendable(self, ptype: ExprType, et: ExprType) -> bool:
        """Arguments admit at most one field access (no calls), so a reference
        argument base is usable only via a field of the right category."""
        if not et.is_reference_like:
            return False
        fields, _ = self._members(et)
        return any(_arg_ok(ptype, expr_type_of(self.ctx.model, x.type))
                   for x in fields)

    def _scope(self) -> tuple[set[str], bool]:
        """Category classes of in-scope identifiers + whether an array is among
        them (for the Arrays.stream opener)."""
        cats: set[str] = set()
        has_array = False
        unit = self.ctx.unit
        entries: list[ExprType] = []
        for p in unit.parameters:
            entries.append(expr_type_of(self.ctx.model, p.type))
        if not unit.static:
            entries.append(ExprType("reference", unit.owner))
        if self.ctx.allows_result_id:
            entries.append(expr_type_of(self.ctx.model, unit.returnType))
        elem = self.sem.lambda_elem_type()
        if elem is not None:
            entries.append(elem)
        for et in entries:
            cats.add(category_class(et))
            if et.category == CAT_ARRAY:
                has_array = True
        return cats, has_array

    # -- R12: is this method callable with the identifiers in scope? --

    def _callable(self, m: MethodInfo, recv: ExprType) -> bool:
        if m.name in STREAM_MATCH_METHODS and is_stream(recv):
            return True
        if m.owner == "java.util.Arrays" and m.name == "stream":
            _, has_array = self._scope()
            return has_array
        if m.arity == 0:
            return True
        cats, _ = self._scope()
        for p in m.parameters:
            pc = category_class(expr_type_of(self.ctx.model, p.type))
            need = "reference" if pc == CAT_UNKNOWN else pc
            if need not in cats:
                return False
        return True

    # -- positional typing of a (possibly extendable) operand --

    def _position_ok(self, f: Frame, et: ExprType, text: str = "") -> Optional[str]:
        if f.kind == "call":
            m = f.method
            if m.name in STREAM_MATCH_METHODS:
                return "R11"  # quantifier takes exactly a jdVar lambda
            if f.args_given >= m.arity:
                return "R18"
            if m.owner == "java.util.Arrays" and m.name == "stream":
                return None if et.category == CAT_ARRAY else "R11"
            ptype = expr_type_of(self.ctx.model, m.parameters[f.args_given].type)
            if _arg_ok(ptype, et) or self._arg_extendable(ptype, et):
                return None
            return "R17"
        if f.cmp_op:
            if f.rhs_pending_arith:
                if et.comparable_numeric or self._extendable(et):
                    return None
                return "R5"
            if f.cmp_op in ("==", "!=") and text and text == f.cmp_left_text:
                if not (et.comparable_numeric or self._extendable(et)):
                    return "R14"
            if _cmp_ok(f.cmp_op, f.cmp_left, et):
                return None
            # an extendable operand may still grow into a compatible
            # category — except against an unknown left side, which only
            # ever compares with null
            if self._extendable(et) and \
                    category_class(f.cmp_left) != CAT_UNKNOWN:
                return None
            return "R4" if f.cmp_op in RELATIONAL_OPS else "R6"
        # atom start: the operand must be closable into a boolean proposition
        if category_class(et) == CAT_NULL:
            # a leading null needs a reference to compare against later
            cats, _ = self._scope()
            if not cats & {"reference", CAT_UNKNOWN}:
                return "R20"
            return None
        if category_class(et) in _CLOSABLE:
            return None
        return "R16"

    # -- members --

    def _member_allowed(self, f: Frame, recv: ExprType, name: str) -> Optional[str]:
        fields, methods = self._members(recv)
        fld = next((x for x in fields if x.name == name), None)
        if fld is not None:
            ftype = expr_type_of(self.ctx.model, fld.type)
            if f.kind == "call":
                # ARG grammar ends after one field access: strict final check
                rid = self._arg_value_ok(f, ftype)
                if rid is None:
                    rid = self._arg_r14_guard(f, member(name))
                return rid
            pos = self._position_ok(f, ftype)
            if pos is not None:
                return pos
            return self._r14_chain_guard(f, member(name), ftype)
        cands = [m for m in methods if m.name == name]
        if not cands:
            return "R8"
        if f.kind == "call":
            return "R19"  # arguments cannot contain calls
        reason: Optional[str] = "R12"
        for m in cands:
            if not self._callable(m, recv):
                reason = "R12"
                continue
            result = member_result_type(self.ctx, recv, m)
            if result.category == CAT_VOID:
                reason = "R16"
                continue
            pos = self._position_ok(f, result)
            if pos is None:
                return None
            reason = pos
        return reason

    def _dot_ok(self, f: Frame) -> Optional[str]:
        et = f.operand
        if et is None:
            return "R7"
        if et.category == CAT_CLASS:
            pass  # static receiver; member emptiness checked below
        elif not et.is_reference_like:
            return "R7"
        fields, methods = self._members(et)
        if not fields and not methods:
            return "R8"
        for name in {x.name for x in fields} | {m.name for m in methods}:
            if self._member_allowed(f, et, name) is None:
                return None
        return "R20"

    def _r14_chain_guard(self, parent: Frame, closing: Token,
                         result: ExprType, start: int = -1) -> Optional[str]:
        """Veto a token that would make the right side of ==/!= textually
        identical to the left while the result type admits no escape."""
        if start < 0:
            start = parent.operand_start
        if parent.cmp_op not in ("==", "!=") or start < 0:
            return None
        would = render_tokens(self.sem.tokens[start:] + [closing])
        if would != parent.cmp_left_text:
            return None
        if result.comparable_numeric or self._extendable(result):
            return None
        return "R14"

    def _arg_r14_guard(self, f: Frame, closing: Token) -> Optional[str]:
        """A final-argument candidate whose forced ')' would complete a right
        side textually identical to the left of ==/!= is itself a dead end."""
        m = f.method
        if m is None or f.args_given != m.arity - 1:
            return None
        frames = self.sem.frames
        if len(frames) < 2:
            return None
        parent = frames[-2]
        if parent.cmp_op not in ("==", "!=") or parent.operand_start < 0:
            return None
        would = render_tokens(self.sem.tokens[parent.operand_start:]
                              + [closing, punct(")")])
        if would != parent.cmp_left_text:
            return None
        result = member_result_type(self.ctx, f.recv or UNKNOWN, m)
        if result.comparable_numeric or self._extendable(result):
            return None
        # an argument-side '.field' continuation would change the text
        ptype = expr_type_of(self.ctx.model, m.parameters[f.args_given].type)
        if closing.kind == K_LITERAL or \
                (closing.kind == K_RESERVED and closing.text in ("true", "false", "null")):
            cand = literal_type(closing)
        else:
            cand = self.sem.base_type(closing.text)
        if cand is not None and self._arg_extendable(ptype, cand):
            return None
        return "R14"

    # -- closers --

    def _close_ok(self, f: Frame) -> Optional[str]:
        if f.cmp_op:
            right = f.operand
            if right is None:
                return "R16"
            if not _cmp_ok(f.cmp_op, f.cmp_left, right):
                return "R4" if f.cmp_op in RELATIONAL_OPS else "R6"
            if f.cmp_op in ("==", "!=") and \
                    f.cmp_left_text == self.sem.operand_text(f):
                return "R14"
            return None
        if f.operand is not None:
            return None if f.operand.boolean_like else "R16"
        return None

    # -- names --

    def _name_ok(self, f: Frame, text: str) -> Optional[str]:
        if f.pending_instanceof:
            cls = self.ctx.model.lookup_class(text)
            if cls is not None and cls.name == text:
                return None
            return "R3"
        et = self.sem.base_type(text)
        if et is None:
            if text == "this":
                return "R9"
            if text == "methodResultID":
                return "R1" if self.ctx.unit.returnType.category == CAT_VOID \
                    else "R2"
            return "R8"
        if et.category == CAT_CLASS:
            fields, methods = self._members(et)
            if not fields and not methods:
                return "R20"
            for name in {x.name for x in fields} | {m.name for m in methods}:
                if self._member_allowed(f, et, name) is None:
                    return None
            return "R20"
        return self._position_ok(f, et, text)

    # -- the dispatcher --

    def allowed(self, legal: dict, tok: Token) -> Optional[str]:
        """None when the candidate survives, else the veto reason (a
        restriction id, or "grammar")."""
        term = token_terminal(tok)
        if term not in legal:
            return "grammar"
        f = self.sem.frame
        if f.pending_call is not None and tok.text != "(":
            return "R19"

        if term in _RELATIONAL_TERMS:
            et = f.operand
            if et is None or not et.comparable_numeric:
                return "R4"
            return None
        if term in _EQUALITY_TERMS:
            et = f.operand
            if et is None or category_class(et) not in \
                    ("numeric", "boolean", "reference", CAT_UNKNOWN, CAT_NULL):
                return "R6"
            return None
        if term in _ARITH_TERMS:
            et = f.operand
            if et is None or not et.comparable_numeric:
                return "R5"
            if f.cmp_left is None or category_class(f.cmp_left) != "numeric":
                return "R5"
            return None
        if term in ("and", "or"):
            return self._close_ok(f)
        if term == "q":
            if f.kind != "top" or f.ternary_stage:
                return "R15"
            return self._close_ok(f)
        if term == "colon":
            return self._close_ok(f)
        if term == "semi":
            if len(self.sem.tokens) == 1 and \
                    self.sem.tokens[0].text in ("true", "false"):
                return "R13"
            return self._close_ok(f)
        if term == "instanceof":
            et = f.operand
            if et is None or not et.is_reference_like:
                return "R3"
            return None
        if term == "dot":
            if f.pending_call is not None:
                return "R19"
            return self._dot_ok(f)
        if term == "lparen":
            if f.pending_call is not None:
                return None  # the vetted call's argument list opens here
            if f.operand is not None:
                return "R19"  # '(' would invoke a non-method member
            if f.cmp_op:
                if f.rhs_pending_arith:
                    return "R5"
                if f.cmp_op in RELATIONAL_OPS:
                    return "R4"
                if not _cmp_ok(f.cmp_op, f.cmp_left, BOOL_PROP):
                    return "R6"
            return None
        if term == "rparen":
            if f.kind == "call":
                return self._rparen_call(f)
            rid = self._close_ok(f)
            if rid is not None:
                return rid
            frames = self.sem.frames
            if f.kind == "paren" and len(frames) >= 2:
                return self._r14_chain_guard(frames[-2], tok, BOOL_PROP,
                                             start=f.group_start)
            if f.kind == "lambda" and len(frames) >= 3:
                return self._r14_chain_guard(frames[-3], tok, BOOL)
            return None
        if term == "comma":
            if f.kind != "call":
                return "grammar"
            m = f.method
            if m.name in STREAM_MATCH_METHODS:
                return "R11"
            if f.args_given + 1 >= m.arity:
                return "R18"
            return self._arg_final(f)
        if term == "arrow":
            return None
        if term == "member":
            return self._member_allowed(f, f.operand or UNKNOWN, tok.text)
        if term == "jdVar":
            binder = (f.kind == "call" and f.operand is None
                      and f.args_given == 0 and f.method is not None
                      and f.method.name in STREAM_MATCH_METHODS)
            if binder:
                return None
            elem = self.sem.lambda_elem_type()
            if not self.sem.in_lambda():
                if f.kind == "call" and f.method is not None \
                        and f.method.name not in STREAM_MATCH_METHODS:
                    return "R11"
                return "R10"
            return self._position_ok(f, elem if elem is not None else UNKNOWN,
                                     "jdVar")
        if term in ("ident", "this", "methodResultID"):
            rid = self._name_ok(f, tok.text)
            if rid is None and f.kind == "call":
                rid = self._arg_r14_guard(f, tok)
            return rid
        if tok.kind == K_LITERAL or \
                (tok.kind == K_RESERVED and tok.text in ("true", "false", "null")):
            rid = self._position_ok(f, literal_type(tok), tok.text)
            if rid is None and f.kind == "call":
                rid = self._arg_r14_guard(f, tok)
            return rid
        return "grammar"

    def _arg_final(self, f: Frame) -> Optional[str]:
        """Compatibility of the in-progress argument at ',' or ')'."""
        if f.operand is None:
            return "R17"
        return self._arg_value_ok(f, f.operand)

    def _arg_value_ok(self, f: Frame, et: ExprType) -> Optional[str]:
        """Strict check of a completed argument value against its parameter."""
        m = f.method
        if m.name in STREAM_MATCH_METHODS:
            return "R11"
        if f.args_given >= m.arity:
            return "R18"
        if m.owner == "java.util.Arrays" and m.name == "stream":
            return None if et.category == CAT_ARRAY else "R11"
        ptype = expr_type_of(self.ctx.model, m.parameters[f.args_given].type)
        return None if _arg_ok(ptype, et) else "R17"

    def _rparen_call(self, f: Frame) -> Optional[str]:
        m = f.method
        if f.operand is not None:
            if f.args_given + 1 != m.arity:
                return "R18"
            rid = self._arg_final(f)
            if rid is not None:
                return rid
        elif f.args_given != m.arity:
            return "R18"
        frames = self.sem.frames
        if len(frames) >= 2:
            result = member_result_type(self.ctx, f.recv or UNKNOWN, m)
            return self._r14_chain_guard(frames[-2], punct(")"), result)
        return None


Pool = list[Union[Token, tuple[Token, str]]]


def _normalize_pool(ctx: GenerationContext,
                    collected: Optional[Pool]) -> list[tuple[Token, str]]:
    if collected is None:
        return collect_generic_tagged(ctx)
    out: list[tuple[Token, str]] = []
    prov_by_text = None
    for item in collected:
        if isinstance(item, tuple):
            out.append(item)
        else:
            if prov_by_text is None:
                prov_by_text = {t.text: p for t, p in collect_generic_tagged(ctx)}
            out.append((item, prov_by_text.get(item.text, "common")))
    return out


def filter_candidates(ctx: GenerationContext, partial: list[Token],
                      state: Optional[GrammarState] = None,
                      collected: Optional[Pool] = None) -> CandidateSet:
    """Candidates legal after `partial`: grammar-legal and restriction-clean."""
    if state is None:
        state = replay(partial)
    sem = analyze(ctx, partial)
    if sem.complete:
        return CandidateSet((), ())
    pool = list(_normalize_pool(ctx, collected))
    if partial and partial[-1].text == ".":
        recv = sem.frame.operand if sem.frame.operand is not None else UNKNOWN
        fields, methods = members_of(ctx, recv)
        for x in fields:
            pool.append((member(x.name), PROV_SPECIFIC))
        for m in methods:
            pool.append((member(m.name), PROV_SPECIFIC))
    legal = state.legal_terminals()
    checker = _Checker(ctx, sem)
    tokens: list[Token] = []
    provs: list[str] = []
    seen: set[str] = set()
    for tok, prov in pool:
        if tok.text in seen:
            continue
        seen.add(tok.text)
        if checker.allowed(legal, tok) is None:
            tokens.append(tok)
            provs.append(prov)
    return CandidateSet(tuple(tokens), tuple(provs))


def veto_reason(ctx: GenerationContext, partial: list[Token],
                tok: Token, state: Optional[GrammarState] = None) -> Optional[str]:
    """Why `tok` would be pruned after `partial` (None when it survives)."""
    if state is None:
        state = replay(partial)
    sem = analyze(ctx, partial)
    return _Checker(ctx, sem).allowed(state.legal_terminals(), tok)
