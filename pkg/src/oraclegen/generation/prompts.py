"""Prompt rendering for the evaluator (generate or not) and selector (next
token) backends. Layout is fixed and byte-deterministic."""

from __future__ import annotations

from dataclasses import dataclass, field

from ..codemodel import ClassInfo, ProjectModel
from ..engine import CandidateSet, GenerationContext, members_of, analyze, UNKNOWN
from ..grammar import K_CALL, K_IDENT, K_MEMBER, Token, render_tokens

EVALUATOR_ARMS = ("assertTrue(", "// No assertion possible")

_ORACLE_TYPE_LABEL = {
    "PRE": "Precondition",
    "NORMAL_POST": "Regular postcondition",
    "EXCEPT_POST": "Exceptional postcondition",
}

DEFAULT_CONTEXT_LINES = 40
DEFAULT_CHAR_BUDGET = 8000


@dataclass(frozen=True)
class PromptBundle:
    renderedText: str
    structured: dict

    def with_reminder(self, line: str) -> "PromptBundle":
        return PromptBundle(self.renderedText + "\n" + line, self.structured)


def _quote_list(items) -> str:
    return "[" + ", ".join(f"'{x}'" for x in items) + "]"


def _base_structured(ctx: GenerationContext) -> dict:
    unit = ctx.unit
    return {
        "className": unit.owner,
        "methodDoc": unit.docText,
        "methodSignature": unit.signatureText,
        "methodSource": unit.sourceText,
        "oracleType": ctx.oracleType,
        "tagTarget": ctx.tag.target if ctx.tag else "",
        "tagText": ctx.tag_text,
    }


def render_evaluator_prompt(ctx: GenerationContext) -> PromptBundle:
    s = _base_structured(ctx)
    s["candidates"] = list(EVALUATOR_ARMS)
    text = (
        f'// {_ORACLE_TYPE_LABEL[ctx.oracleType]}: "{ctx.tag_text}"\n'
        f"// Next possible tokens: {_quote_list(EVALUATOR_ARMS)}\n"
        "// Assertion:\n"
        "<FILL_ME>\n"
        "\n"
        "// Method under test:\n"
        f"{ctx.unit.docText}\n"
        f"{ctx.unit.sourceText}\n"
    )
    return PromptBundle(text, s)


def _class_decl_line(cls: ClassInfo) -> str:
    kind = "interface" if cls.isInterface else "class"
    return f"public {kind} {cls.qualifiedName}"


def _declaration_lines(ctx: GenerationContext, partial: list[Token],
                       candidates: CandidateSet) -> list[str]:
    """One signature/declaration line per member or class candidate, in
    candidate order, deduplicated."""
    model = ctx.model
    receiver = None
    if partial and partial[-1].text == ".":
        sem = analyze(ctx, partial)
        receiver = sem.frame.operand if sem.frame.operand is not None else UNKNOWN

    def member_line(name: str) -> str:
        scopes = []
        if receiver is not None:
            scopes.append(members_of(ctx, receiver))
        else:
            all_classes = [model.lookup_class(ctx.unit.owner)]
            for qn in sorted(model.classes):
                all_classes.append(model.classes[qn])
            for qn in sorted(model.externalClasses):
                all_classes.append(model.externalClasses[qn])
            for cls in all_classes:
                if cls is None:
                    continue
                scopes.append((cls.fields, cls.methods))
        for fields, methods in scopes:
            for f in fields:
                if f.name == name:
                    return f.declarationText
            for m in methods:
                if m.name == name:
                    return m.signatureText
        return ""

    lines: list[str] = []
    for tok in candidates.tokens:
        line = ""
        if tok.kind in (K_MEMBER, K_CALL):
            line = member_line(tok.text)
        elif tok.kind == K_IDENT:
            cls = model.lookup_class(tok.text)
            if cls is not None and cls.name == tok.text:
                line = _class_decl_line(cls)
        if line and line not in lines:
            lines.append(line)
    return lines


def render_selector_prompt(ctx: GenerationContext, partial: list[Token],
                           candidates: CandidateSet,
                           context_lines: int = DEFAULT_CONTEXT_LINES,
                           char_budget: int = DEFAULT_CHAR_BUDGET) -> PromptBundle:
    assert len(candidates) > 0, "selector prompt requires candidates"
    partial_text = render_tokens(partial)
    decls = _declaration_lines(ctx, partial, candidates)
    truncated = False
    if len(decls) > context_lines:
        decls = decls[:context_lines]
        truncated = True
    s = _base_structured(ctx)
    s["candidates"] = candidates.texts()
    s["contextSnippets"] = list(decls)
    s["partialText"] = partial_text
    text = (
        f'// {_ORACLE_TYPE_LABEL[ctx.oracleType]}: "{ctx.tag_text}"\n'
        f"// Next possible tokens: {_quote_list(candidates.texts())}\n"
        "// Assertion:\n"
        f"assertTrue({partial_text}<FILL_ME>\n"
        "\n"
        "// Method under test:\n"
        f"{ctx.unit.docText}\n"
        f"{ctx.unit.sourceText}\n"
        "\n"
        "// Additional context:\n"
        + "".join(line + "\n" for line in decls)
    )
    if len(text) > char_budget:
        text = text[:char_budget]
        truncated = True
    s["truncatedContext"] = truncated
    return PromptBundle(text, s)
