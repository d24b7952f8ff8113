"""Token Collector: gather the candidate-token pool for a generation context."""

from __future__ import annotations

import re
from dataclasses import dataclass

from ..codemodel import CAT_ARRAY, CAT_REF, TypeRef, accessible_members, refine_type
from ..grammar import (
    Token,
    identifier,
    literal_of,
    member,
    operator,
    punct,
    reserved,
)
from .context import GenerationContext, UNKNOWN
from .semantics import SemState, analyze, members_of

# Provenance tags, in candidate-ordering priority.
PROV_COMMON = "common"
PROV_DOC_LITERAL = "doc-literal"
PROV_PROJECT = "project"
PROV_METHOD = "method"
PROV_SPECIFIC = "specific-member"
PROVENANCE_ORDER = (PROV_COMMON, PROV_DOC_LITERAL, PROV_PROJECT, PROV_METHOD,
                    PROV_SPECIFIC)


@dataclass(frozen=True)
class CandidateSet:
    tokens: tuple[Token, ...]
    provenance: tuple[str, ...]

    def __post_init__(self):
        assert len(self.tokens) == len(self.provenance)
        texts = [t.text for t in self.tokens]
        assert len(texts) == len(set(texts)), "duplicate candidate texts"

    def texts(self) -> list[str]:
        return [t.text for t in self.tokens]

    def __len__(self) -> int:
        return len(self.tokens)

    def __contains__(self, text: str) -> bool:
        return any(t.text == text for t in self.tokens)


_COMMON_OPERATORS = ("==", "!=", "<", "<=", ">", ">=", "&&", "||",
                    "+", "-", "*", "/", "%", "instanceof", "?", ":", "->")
_COMMON_PUNCT = ("(", ")", ".", ",", ";")
_COMMON_RESERVED = ("true", "false", "null", "jdVar")

# Literals mined verbatim from tag text: quoted strings, chars, and numbers
# (a sign is kept when it is not preceded by a word character).
_DOC_LITERAL_RE = re.compile(
    r'"(?:[^"\\\n]|\\.)*"'
    r"|'(?:[^'\\\n]|\\.)'"
    r"|(?<![\w.])-?\d+\.\d+(?:[eE][+-]?\d+)?"
    r"|(?<![\w.])-?\d+(?![\w.])")


def mine_doc_literals(text: str) -> list[str]:
    out: list[str] = []
    for m in _DOC_LITERAL_RE.finditer(text):
        lit = m.group(0)
        if lit not in out:
            out.append(lit)
    return out


def collect_generic_tagged(ctx: GenerationContext) -> list[tuple[Token, str]]:
    """Candidate pool with provenance tags, in canonical order."""
    pool: list[tuple[Token, str]] = []

    # (i) common tokens
    for op in _COMMON_OPERATORS:
        pool.append((operator(op), PROV_COMMON))
    for word in _COMMON_RESERVED:
        pool.append((reserved(word), PROV_COMMON))
    for p in _COMMON_PUNCT:
        pool.append((punct(p), PROV_COMMON))
    pool.append((literal_of("0"), PROV_COMMON))
    pool.append((literal_of("1"), PROV_COMMON))

    # literals mined from the tag text
    for lit in mine_doc_literals(ctx.tag_text):
        pool.append((literal_of(lit), PROV_DOC_LITERAL))

    # (ii) project tokens: class names with their static member names
    model = ctx.model
    for group in (model.classes, model.externalClasses):
        for qn in sorted(group):
            cls = group[qn]
            pool.append((identifier(cls.name), PROV_PROJECT))
            for f in cls.fields:
                if f.static and f.visibility != "private":
                    pool.append((member(f.name), PROV_PROJECT))
            for m in cls.methods:
                if m.static and m.visibility != "private":
                    pool.append((member(m.name), PROV_PROJECT))

    # (iii) method tokens
    unit = ctx.unit
    reach_types = []
    for p in unit.parameters:
        pool.append((identifier(p.name), PROV_METHOD))
        reach_types.append(p.type)
    if not unit.static:
        pool.append((reserved("this"), PROV_METHOD))
        owner = model.lookup_class(unit.owner)
        if owner is not None:
            reach_types.append(TypeRef(name=owner.name, category=CAT_REF))
    if ctx.allows_result_id:
        pool.append((reserved("methodResultID"), PROV_METHOD))
        reach_types.append(unit.returnType)
    for t in reach_types:
        rt = refine_type(model, t)
        if rt.category not in (CAT_REF, CAT_ARRAY):
            continue
        fields, methods = accessible_members(model, rt)
        for f in fields:
            pool.append((member(f.name), PROV_METHOD))
        for m in methods:
            pool.append((member(m.name), PROV_METHOD))

    return _dedup(pool)


def _dedup(pool: list[tuple[Token, str]]) -> list[tuple[Token, str]]:
    seen: set[str] = set()
    out = []
    for tok, prov in pool:
        if tok.text in seen:
            continue
        seen.add(tok.text)
        out.append((tok, prov))
    return out


def collect_generic(ctx: GenerationContext) -> list[Token]:
    return [tok for tok, _ in collect_generic_tagged(ctx)]


def collect_specific(ctx: GenerationContext, partial: list[Token]) -> list[Token]:
    """Member tokens of the receiver type when the partial ends with '.'."""
    if not partial or partial[-1].text != ".":
        raise ValueError("collect_specific requires a partial ending with '.'")
    sem = analyze(ctx, partial)
    return specific_members(ctx, sem)


def specific_members(ctx: GenerationContext, sem: SemState) -> list[Token]:
    recv = sem.frame.operand if sem.frame.operand is not None else UNKNOWN
    fields, methods = members_of(ctx, recv)
    pool = [(member(f.name), PROV_SPECIFIC) for f in fields]
    pool += [(member(m.name), PROV_SPECIFIC) for m in methods]
    return [tok for tok, _ in _dedup(pool)]
