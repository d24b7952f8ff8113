"""Recursive-descent parser and canonical renderer for oracle expressions.

Independent of the incremental legality automaton; the two are cross-checked
by the property suites.
"""

from __future__ import annotations

from typing import Union

from . import ast_nodes as A
from .tokens import (
    ARITHMETIC_OPS,
    COMPARISON_OPS,
    EQUALITY_OPS,
    K_CALL,
    K_IDENT,
    K_LITERAL,
    K_MEMBER,
    K_RESERVED,
    Token,
    identifier,
    literal_of,
    member,
    operator,
    punct,
    render_tokens,
    reserved,
    tokenize,
)


class OracleSyntaxError(Exception):
    def __init__(self, message: str, index: int, expected: tuple[str, ...] = ()):
        detail = f"{message} at token index {index}"
        if expected:
            detail += f" (expected {', '.join(expected)})"
        super().__init__(detail)
        self.index = index
        self.expected = expected


_NAME_KINDS = (K_IDENT, K_MEMBER, K_CALL)
_BASE_RESERVED = ("this", "methodResultID", "jdVar")


class _Parser:
    def __init__(self, tokens: list[Token]):
        self.toks = tokens
        self.i = 0

    def peek(self) -> Token | None:
        return self.toks[self.i] if self.i < len(self.toks) else None

    def at(self, text: str) -> bool:
        t = self.peek()
        return t is not None and t.text == text

    def take(self) -> Token:
        if self.i >= len(self.toks):
            raise OracleSyntaxError("unexpected end of input", self.i)
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, text: str) -> Token:
        t = self.peek()
        if t is None or t.text != text:
            raise OracleSyntaxError(
                f"unexpected token {t.text if t else '<end>'!r}", self.i, (text,))
        return self.take()

    # ---- grammar ----

    def parse_oracle(self) -> A.OracleAst:
        prop = self.parse_prop()
        if self.at("?"):
            self.take()
            then = self.parse_prop()
            self.expect(":")
            els = self.parse_prop()
            root: Union[A.Ternary, A.Prop] = A.Ternary(guard=prop, then=then, els=els)
        else:
            root = prop
        self.expect(";")
        if self.i != len(self.toks):
            raise OracleSyntaxError("trailing tokens after ';'", self.i)
        return A.OracleAst(root=root)

    def parse_prop(self) -> A.Prop:
        parts = [self.parse_conj()]
        while self.at("||"):
            self.take()
            parts.append(self.parse_conj())
        if len(parts) == 1:
            return parts[0]
        return A.BoolOp(op="||", operands=tuple(parts))

    def parse_conj(self) -> A.Prop:
        parts = [self.parse_atom()]
        while self.at("&&"):
            self.take()
            parts.append(self.parse_atom())
        if len(parts) == 1:
            return parts[0]
        return A.BoolOp(op="&&", operands=tuple(parts))

    def parse_atom(self) -> A.Atom:
        t = self.peek()
        if t is None:
            raise OracleSyntaxError("unexpected end of input", self.i,
                                    ("operand",))
        if t.text == "(":
            self.take()
            inner = self.parse_prop()
            self.expect(")")
            paren = A.Paren(prop=inner)
            nxt = self.peek()
            if nxt is not None and nxt.text in EQUALITY_OPS:
                op = self.take().text
                return A.Comparison(left=paren, op=op, right=self.parse_rhs())
            return paren
        if t.kind == K_LITERAL or t.text == "null":
            lit = self._take_literal()
            nxt = self.peek()
            if nxt is not None and nxt.text in COMPARISON_OPS:
                op = self.take().text
                return A.Comparison(left=lit, op=op, right=self.parse_rhs())
            raise OracleSyntaxError(
                f"literal {lit.text!r} cannot stand alone", self.i, COMPARISON_OPS)
        if t.text in ("true", "false"):
            lit = self._take_literal()
            nxt = self.peek()
            if nxt is not None and nxt.text in COMPARISON_OPS:
                op = self.take().text
                return A.Comparison(left=lit, op=op, right=self.parse_rhs())
            return lit
        if t.kind in _NAME_KINDS or (t.kind == K_RESERVED and t.text in _BASE_RESERVED):
            chain = self.parse_chain()
            nxt = self.peek()
            if nxt is not None and nxt.text in COMPARISON_OPS:
                op = self.take().text
                return A.Comparison(left=chain, op=op, right=self.parse_rhs())
            if nxt is not None and nxt.text == "instanceof":
                self.take()
                cls = self.take()
                if cls.kind not in _NAME_KINDS:
                    raise OracleSyntaxError(
                        f"expected class name after 'instanceof', got {cls.text!r}",
                        self.i - 1, ("identifier",))
                return A.Instanceof(operand=chain, className=cls.text)
            return chain
        raise OracleSyntaxError(f"unexpected token {t.text!r}", self.i,
                                ("operand",))

    def _take_literal(self) -> A.Literal:
        t = self.take()
        if t.text in ("true", "false"):
            return A.Literal(text=t.text, subtype="boolean")
        if t.text == "null":
            return A.Literal(text=t.text, subtype="null")
        return A.Literal(text=t.text, subtype=t.subtype)

    def parse_rhs(self) -> A.Operand:
        terms = [self.parse_term()]
        ops: list[str] = []
        while (t := self.peek()) is not None and t.text in ARITHMETIC_OPS:
            ops.append(self.take().text)
            terms.append(self.parse_term())
        if not ops:
            return terms[0]
        return A.Arith(terms=tuple(terms), ops=tuple(ops))

    def parse_term(self) -> Union[A.Chain, A.Literal, A.Paren]:
        t = self.peek()
        if t is None:
            raise OracleSyntaxError("unexpected end of input", self.i, ("operand",))
        if t.text == "(":
            self.take()
            inner = self.parse_prop()
            self.expect(")")
            return A.Paren(prop=inner)
        if t.kind == K_LITERAL or t.text in ("true", "false", "null"):
            return self._take_literal()
        if t.kind in _NAME_KINDS or (t.kind == K_RESERVED and t.text in _BASE_RESERVED):
            return self.parse_chain()
        raise OracleSyntaxError(f"unexpected token {t.text!r}", self.i, ("operand",))

    def parse_chain(self) -> A.Chain:
        base = self.take()
        segments: list[Union[A.Member, A.Call]] = []
        while self.at("."):
            self.take()
            name_tok = self.take()
            if name_tok.kind not in _NAME_KINDS:
                raise OracleSyntaxError(
                    f"expected member name after '.', got {name_tok.text!r}",
                    self.i - 1, ("member-name",))
            if self.at("("):
                self.take()
                args = self.parse_call_args()
                segments.append(A.Call(name=name_tok.text, args=tuple(args)))
            else:
                segments.append(A.Member(name=name_tok.text))
        return A.Chain(base=base.text, segments=tuple(segments))

    def parse_call_args(self) -> list[Union[A.Chain, A.Literal, A.Lambda]]:
        if self.at(")"):
            self.take()
            return []
        t = self.peek()
        if t is not None and t.text == "jdVar" and self.i + 1 < len(self.toks) \
                and self.toks[self.i + 1].text == "->":
            self.take()
            self.take()
            body = self.parse_prop()
            self.expect(")")
            return [A.Lambda(var="jdVar", body=body)]
        args: list[Union[A.Chain, A.Literal, A.Lambda]] = []
        while True:
            args.append(self.parse_arg())
            if self.at(","):
                self.take()
                continue
            self.expect(")")
            return args

    def parse_arg(self) -> Union[A.Chain, A.Literal]:
        t = self.peek()
        if t is None:
            raise OracleSyntaxError("unexpected end of input", self.i, ("argument",))
        if t.kind == K_LITERAL or t.text in ("true", "false", "null"):
            return self._take_literal()
        if t.kind in _NAME_KINDS or (t.kind == K_RESERVED and t.text in _BASE_RESERVED):
            base = self.take()
            segments: list[Union[A.Member, A.Call]] = []
            if self.at("."):
                self.take()
                name_tok = self.take()
                if name_tok.kind not in _NAME_KINDS:
                    raise OracleSyntaxError(
                        f"expected member name after '.', got {name_tok.text!r}",
                        self.i - 1, ("member-name",))
                segments.append(A.Member(name=name_tok.text))
            return A.Chain(base=base.text, segments=tuple(segments))
        raise OracleSyntaxError(f"unexpected token {t.text!r}", self.i, ("argument",))


def parse(tokens: list[Token]) -> A.OracleAst:
    if not tokens or tokens[-1].text != ";":
        raise OracleSyntaxError("oracle must end with ';'", len(tokens))
    return _Parser(tokens).parse_oracle()


def parse_text(text: str) -> A.OracleAst:
    return parse(tokenize(text))


# ---------------------------------------------------------------------------
# Rendering

def _lit_token(lit: A.Literal) -> Token:
    if lit.subtype in ("boolean", "null"):
        return reserved(lit.text)
    return literal_of(lit.text)


def _chain_tokens(chain: A.Chain) -> list[Token]:
    base = reserved(chain.base) if chain.base in _BASE_RESERVED else identifier(chain.base)
    out = [base]
    for seg in chain.segments:
        out.append(punct("."))
        if isinstance(seg, A.Member):
            out.append(member(seg.name))
        else:
            out.append(Token(seg.name, K_CALL))
            out.append(punct("("))
            for idx, arg in enumerate(seg.args):
                if idx:
                    out.append(punct(","))
                if isinstance(arg, A.Lambda):
                    out.append(reserved("jdVar"))
                    out.append(operator("->"))
                    out.extend(_prop_tokens(arg.body))
                elif isinstance(arg, A.Literal):
                    out.append(_lit_token(arg))
                else:
                    out.extend(_chain_tokens(arg))
            out.append(punct(")"))
    return out


def _operand_tokens(node) -> list[Token]:
    if isinstance(node, A.Chain):
        return _chain_tokens(node)
    if isinstance(node, A.Literal):
        return [_lit_token(node)]
    if isinstance(node, A.Paren):
        return [punct("(")] + _prop_tokens(node.prop) + [punct(")")]
    if isinstance(node, A.Arith):
        out = _operand_tokens(node.terms[0])
        for op, term in zip(node.ops, node.terms[1:]):
            out.append(operator(op))
            out.extend(_operand_tokens(term))
        return out
    raise TypeError(f"not an operand node: {node!r}")


def _prop_tokens(node: A.Prop) -> list[Token]:
    if isinstance(node, A.BoolOp):
        out = _prop_tokens(node.operands[0])
        for part in node.operands[1:]:
            out.append(operator(node.op))
            out.extend(_prop_tokens(part))
        return out
    if isinstance(node, A.Comparison):
        return (_operand_tokens(node.left) + [operator(node.op)]
                + _operand_tokens(node.right))
    if isinstance(node, A.Instanceof):
        return (_chain_tokens(node.operand) + [operator("instanceof"),
                                               identifier(node.className)])
    return _operand_tokens(node)


def ast_tokens(ast: A.OracleAst) -> list[Token]:
    root = ast.root
    if isinstance(root, A.Ternary):
        out = (_prop_tokens(root.guard) + [operator("?")]
               + _prop_tokens(root.then) + [operator(":")]
               + _prop_tokens(root.els))
    else:
        out = _prop_tokens(root)
    out.append(punct(";"))
    return out


def render(ast: A.OracleAst) -> str:
    return render_tokens(ast_tokens(ast))


def canonicalize(text: str) -> str:
    """Parse and re-render in canonical spacing."""
    return render(parse_text(text))
