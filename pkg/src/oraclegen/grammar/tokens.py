"""Lexical tokens of the oracle expression language."""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Optional

RESERVED = ("true", "false", "null", "this", "methodResultID", "jdVar")

MULTI_OPERATORS = ("==", "!=", "<=", ">=", "&&", "||", "->")
SINGLE_OPERATORS = ("<", ">", "+", "-", "*", "/", "%", "?", ":")
WORD_OPERATORS = ("instanceof",)
PUNCTUATION = ("(", ")", ".", ",", ";")

RELATIONAL_OPS = ("<", "<=", ">", ">=")
EQUALITY_OPS = ("==", "!=")
COMPARISON_OPS = ("==", "!=", "<", "<=", ">", ">=")
LOGICAL_OPS = ("&&", "||")
ARITHMETIC_OPS = ("+", "-", "*", "/", "%")

K_IDENT = "identifier"
K_MEMBER = "member-name"
K_CALL = "method-call-name"
K_RESERVED = "reserved"
K_OPERATOR = "operator"
K_PUNCT = "punctuation"
K_LITERAL = "literal"


class LexicalError(Exception):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset


@dataclass(frozen=True)
class Token:
    text: str
    kind: str
    subtype: str = ""  # literal subtype: integer | floating | string | char

    def __post_init__(self):
        if not self.text:
            raise ValueError("token text must be non-empty")


def operator(text: str) -> Token:
    return Token(text, K_OPERATOR)


def punct(text: str) -> Token:
    return Token(text, K_PUNCT)


def reserved(text: str) -> Token:
    return Token(text, K_RESERVED)


def identifier(text: str) -> Token:
    return Token(text, K_IDENT)


def member(text: str) -> Token:
    return Token(text, K_MEMBER)


def literal_of(text: str) -> Token:
    """Classify a literal lexeme into its subtype."""
    if re.fullmatch(r"-?\d+\.\d+[fFdD]?", text):
        return Token(text, K_LITERAL, "floating")
    if re.fullmatch(r"-?\d+[lL]?", text):
        return Token(text, K_LITERAL, "integer")
    if len(text) >= 2 and text[0] == '"' and text[-1] == '"':
        return Token(text, K_LITERAL, "string")
    if len(text) >= 2 and text[0] == "'" and text[-1] == "'":
        return Token(text, K_LITERAL, "char")
    raise ValueError(f"not a literal lexeme: {text!r}")


_NAME_RE = re.compile(r"[A-Za-z_$][\w$]*")
_NUM_RE = re.compile(r"\d+(?:\.\d+)?[fFdDlL]?")

_OPERAND_END_KINDS = (K_IDENT, K_MEMBER, K_CALL, K_LITERAL)


def _ends_operand(tok: Optional[Token]) -> bool:
    if tok is None:
        return False
    if tok.kind in _OPERAND_END_KINDS:
        return True
    if tok.kind == K_RESERVED and tok.text in ("true", "false", "null", "this",
                                               "methodResultID", "jdVar"):
        return True
    return tok.kind == K_PUNCT and tok.text == ")"


def tokenize(text: str) -> list[Token]:
    """Lossless lexer: rendering the result reproduces `text` modulo spacing."""
    tokens: list[Token] = []
    i, n = 0, len(text)
    while i < n:
        c = text[i]
        if c.isspace():
            i += 1
            continue
        rest = text[i:]
        matched = None
        for op in MULTI_OPERATORS:
            if rest.startswith(op):
                matched = Token(op, K_OPERATOR)
                break
        if matched is None and c == "-" and i + 1 < n and text[i + 1].isdigit() \
                and not _ends_operand(tokens[-1] if tokens else None):
            m = _NUM_RE.match(text, i + 1)
            matched = literal_of(text[i:m.end()])
            i = m.end()
            tokens.append(matched)
            continue
        if matched is not None:
            tokens.append(matched)
            i += len(matched.text)
            continue
        if c.isdigit():
            m = _NUM_RE.match(text, i)
            tokens.append(literal_of(m.group()))
            i = m.end()
            continue
        if c == '"':
            j = i + 1
            while j < n and text[j] != '"':
                j += 2 if text[j] == "\\" else 1
            if j >= n:
                raise LexicalError("unterminated string literal", i)
            tokens.append(Token(text[i:j + 1], K_LITERAL, "string"))
            i = j + 1
            continue
        if c == "'":
            j = i + 1
            while j < n and text[j] != "'":
                j += 2 if text[j] == "\\" else 1
            if j >= n:
                raise LexicalError("unterminated char literal", i)
            tokens.append(Token(text[i:j + 1], K_LITERAL, "char"))
            i = j + 1
            continue
        if _NAME_RE.match(c):
            m = _NAME_RE.match(text, i)
            word = m.group()
            if word in WORD_OPERATORS:
                tokens.append(Token(word, K_OPERATOR))
            elif word in RESERVED:
                tokens.append(Token(word, K_RESERVED))
            else:
                prev = tokens[-1] if tokens else None
                if prev is not None and prev.kind == K_PUNCT and prev.text == ".":
                    tokens.append(Token(word, K_MEMBER))
                else:
                    tokens.append(Token(word, K_IDENT))
            i = m.end()
            continue
        if c in PUNCTUATION:
            tokens.append(Token(c, K_PUNCT))
            i += 1
            continue
        if c in SINGLE_OPERATORS:
            tokens.append(Token(c, K_OPERATOR))
            i += 1
            continue
        raise LexicalError(f"unrecognized character {c!r}", i)
    # Member names directly followed by '(' are method-call names.
    out = []
    for idx, tok in enumerate(tokens):
        nxt = tokens[idx + 1] if idx + 1 < len(tokens) else None
        if tok.kind == K_MEMBER and nxt is not None and nxt.text == "(":
            out.append(Token(tok.text, K_CALL))
        else:
            out.append(tok)
    return out


_NO_SPACE_BEFORE = {".", ",", ";", ")"}
_NO_SPACE_AFTER = {".", "("}


def render_tokens(tokens: list[Token]) -> str:
    """Canonical spacing: single spaces around binary operators, none around
    '.', none before ';', calls tight against their '('."""
    parts: list[str] = []
    prev: Optional[Token] = None
    for tok in tokens:
        if prev is None:
            parts.append(tok.text)
        else:
            sep = " "
            if tok.text in _NO_SPACE_BEFORE or prev.text in _NO_SPACE_AFTER:
                sep = ""
            elif tok.text == "(" and prev.kind in (K_MEMBER, K_CALL):
                sep = ""
            parts.append(sep + tok.text)
        prev = tok
    return "".join(parts)
