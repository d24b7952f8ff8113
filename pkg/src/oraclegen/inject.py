"""Assertion injection: insert generated oracles into test sources as
assertTrue guards around calls to the method under test.

Inserted text is marked with a `// [oracle]` comment line; re-applying a plan
detects the marker and leaves the file unchanged. The fresh local used to
capture a discarded return value is spelled `__oracle_result` (suffixed with a
number on collision)."""

from __future__ import annotations

import re
from dataclasses import dataclass

from .codemodel import MethodInfo
from .engine import ORACLE_NORMAL_POST, ORACLE_PRE
from .grammar import K_IDENT, K_RESERVED, Token, canonicalize, render_tokens, tokenize

MARKER = "// [oracle]"
RESULT_LOCAL = "__oracle_result"


class InjectionError(Exception):
    pass


@dataclass(frozen=True)
class CallSite:
    line: int
    column: int
    receiverText: str  # "" for unqualified / static calls
    argumentTexts: tuple[str, ...]
    stmtStart: int  # offset of first char of the statement
    stmtEnd: int  # offset just past the terminating ';'
    callStart: int  # offset of the call expression (receiver or 'new')
    resultVar: str  # variable already holding the result, or ""


@dataclass(frozen=True)
class PlannedSite:
    site: CallSite
    binding: tuple[tuple[str, str], ...]  # symbol -> replacement text
    captureType: str = ""  # non-empty => introduce a result-capturing local


@dataclass(frozen=True)
class InjectionPlan:
    testFile: str
    oracle: str
    oracleType: str
    exceptionType: str
    sites: tuple[PlannedSite, ...]
    diagnostics: tuple[str, ...] = ()


_IDENT_CHARS = re.compile(r"[A-Za-z0-9_$]")


def _line_col(source: str, offset: int) -> tuple[int, int]:
    line = source.count("\n", 0, offset) + 1
    col = offset - (source.rfind("\n", 0, offset) + 1) + 1
    return line, col


def _split_args(text: str) -> tuple[str, ...]:
    """Split a parenthesized argument list body at top-level commas."""
    if not text.strip():
        return ()
    args, depth, start = [], 0, 0
    for i, ch in enumerate(text):
        if ch in "([{":
            depth += 1
        elif ch in ")]}":
            depth -= 1
        elif ch == "," and depth == 0:
            args.append(text[start:i].strip())
            start = i + 1
    args.append(text[start:].strip())
    return tuple(args)


def _chain_start(source: str, pos: int) -> int:
    """Back up over a receiver chain ending just before `pos` (e.g. `a.b[0].`)."""
    i = pos
    while i > 0:
        c = source[i - 1]
        if _IDENT_CHARS.match(c) or c in ".[]":
            i -= 1
        else:
            break
    return i


_DECL_PREFIX = re.compile(
    r"(?:final\s+)?[\w$.]+(?:\s*<[^<>]*>)?(?:\s*\[\s*\])*\s+([\w$]+)\s*=\s*$")
_ASSIGN_PREFIX = re.compile(r"([\w$][\w$.]*)\s*=\s*$")


def find_call_sites(source: str, method: MethodInfo) -> list[CallSite]:
    """Direct invocations of `method` by name and arity. Constructors are
    matched as `new <Name>(...)`."""
    is_ctor = method.name == method.owner.rsplit(".", 1)[-1]
    sites: list[CallSite] = []
    for m in re.finditer(r"\b" + re.escape(method.name) + r"\s*\(", source):
        start = m.start()
        # not a declaration: previous non-space char must not be an identifier
        # character (that would make this `Type name(`)
        j = start - 1
        while j >= 0 and source[j] in " \t":
            j -= 1
        open_paren = m.end() - 1
        depth, k = 1, open_paren + 1
        while k < len(source) and depth:
            if source[k] in "([{":
                depth += 1
            elif source[k] in ")]}":
                depth -= 1
            k += 1
        if depth:
            continue
        args = _split_args(source[open_paren + 1:k - 1])
        if len(args) != method.arity:
            continue
        receiver = ""
        call_start = start
        if is_ctor:
            if not re.search(r"\bnew\s*$", source[:start]):
                continue
            call_start = source.rfind("new", 0, start)
        elif j >= 0 and source[j] == ".":
            chain_start = _chain_start(source, j)
            receiver = source[chain_start:j].strip()
            call_start = chain_start
        elif j >= 0 and _IDENT_CHARS.match(source[j]):
            continue  # `Type name(` — a declaration, not a call
        stmt_start = max(source.rfind(c, 0, call_start) for c in ";{}\n") + 1
        while stmt_start < call_start and source[stmt_start] in " \t\n":
            stmt_start += 1
        stmt_end = source.find(";", k)
        stmt_end = (stmt_end + 1) if stmt_end != -1 else len(source)
        prefix = source[stmt_start:call_start]
        result_var = ""
        dm = _DECL_PREFIX.search(prefix) or _ASSIGN_PREFIX.search(prefix)
        if dm:
            result_var = dm.group(1)
        line, col = _line_col(source, call_start)
        sites.append(CallSite(line=line, column=col, receiverText=receiver,
                              argumentTexts=args, stmtStart=stmt_start,
                              stmtEnd=stmt_end, callStart=call_start,
                              resultVar=result_var))
    return sites


def _oracle_symbols(oracle: str) -> list[str]:
    out = []
    for t in tokenize(oracle):
        if t.kind == K_IDENT or (t.kind == K_RESERVED
                                 and t.text in ("this", "methodResultID")):
            if t.text not in out:
                out.append(t.text)
    return out


def _fresh_local(source: str) -> str:
    name = RESULT_LOCAL
    n = 1
    while re.search(r"\b" + re.escape(name) + r"\b", source):
        n += 1
        name = f"{RESULT_LOCAL}{n}"
    return name


def plan_injection(testSource: str, method: MethodInfo, oracle: str,
                   oracleType: str = ORACLE_PRE, exceptionType: str = "",
                   testFile: str = "") -> InjectionPlan:
    oracle = canonicalize(oracle)
    param_names = {p.name for p in method.parameters}
    symbols = _oracle_symbols(oracle)
    planned: list[PlannedSite] = []
    diags: list[str] = []
    for site in find_call_sites(testSource, method):
        binding: dict[str, str] = {}
        capture = ""
        skip = None
        for sym in symbols:
            if sym in param_names:
                idx = next(p.position for p in method.parameters
                           if p.name == sym)
                binding[sym] = site.argumentTexts[idx]
            elif sym == "this":
                if not site.receiverText:
                    skip = f"line {site.line}: 'this' has no receiver binding"
                    break
                binding[sym] = site.receiverText
            elif sym == "methodResultID":
                if oracleType == ORACLE_PRE:
                    skip = (f"line {site.line}: methodResultID in a "
                            f"precondition is unbindable")
                    break
                if site.resultVar:
                    binding[sym] = site.resultVar
                else:
                    local = _fresh_local(testSource)
                    binding[sym] = local
                    capture = method.returnType.name or "var"
            # other symbols: project classes / static members, pass through
        if skip:
            diags.append(skip)
            continue
        planned.append(PlannedSite(site=site,
                                   binding=tuple(sorted(binding.items())),
                                   captureType=capture))
    return InjectionPlan(testFile=testFile, oracle=oracle,
                         oracleType=oracleType, exceptionType=exceptionType,
                         sites=tuple(planned), diagnostics=tuple(diags))


def _substitute(oracle: str, binding: dict[str, str]) -> str:
    toks = tokenize(oracle)
    parts = [binding.get(t.text, t.text)
             if t.kind in (K_IDENT, K_RESERVED) else t.text for t in toks]
    # re-render with canonical spacing over the substituted texts
    rebuilt = [Token(kind=t.kind, text=p) for t, p in zip(toks, parts)]
    return render_tokens(rebuilt)


def _indent_of(source: str, offset: int) -> str:
    line_start = source.rfind("\n", 0, offset) + 1
    i = line_start
    while i < len(source) and source[i] in " \t":
        i += 1
    return source[line_start:i]


def _guard_text(cond: str) -> str:
    return cond[:-1].strip() if cond.endswith(";") else cond


def apply_injection(plan: InjectionPlan, testSource: str) -> str:
    """Insert assertions for every planned site. Existing statements are never
    deleted or reordered; re-application is a no-op."""
    edits: list[tuple[int, str]] = []  # (offset, inserted text)
    for ps in plan.sites:
        site, binding = ps.site, dict(ps.binding)
        sub = _substitute(plan.oracle, binding)
        cond = _guard_text(sub)
        indent = _indent_of(testSource, site.stmtStart)
        if f"{MARKER} {plan.oracleType} {plan.oracle}\n" in testSource:
            continue  # already injected (at any indentation)
        marker = f"{indent}{MARKER} {plan.oracleType} {plan.oracle}\n"
        line_start = testSource.rfind("\n", 0, site.stmtStart) + 1
        if plan.oracleType == ORACLE_PRE:
            block = marker + f"{indent}assertTrue({cond});\n"
            edits.append((line_start, block))
        elif plan.oracleType == ORACLE_NORMAL_POST:
            if ps.captureType:
                local = binding["methodResultID"]
                edits.append((site.callStart, f"{ps.captureType} {local} = "))
            block = marker + f"{indent}assertTrue({cond});\n"
            nl = testSource.find("\n", site.stmtEnd)
            edits.append((nl + 1 if nl != -1 else len(testSource), block))
        else:  # EXCEPT_POST: guarded try/fail/catch before the original call
            stmt = testSource[site.stmtStart:site.stmtEnd]
            exc = plan.exceptionType or "Exception"
            inner = indent + "    "
            block = (marker
                     + f"{indent}if ({cond}) {{\n"
                     + f"{inner}try {{\n"
                     + f"{inner}    {stmt}\n"
                     + f"{inner}    fail(\"Expected {exc}\");\n"
                     + f"{inner}}} catch ({exc} e) {{\n"
                     + f"{inner}    // expected\n"
                     + f"{inner}}}\n"
                     + f"{indent}}}\n")
            edits.append((line_start, block))
    out = testSource
    for offset, text in sorted(edits, key=lambda e: e[0], reverse=True):
        offset = min(offset, len(out))
        out = out[:offset] + text + out[offset:]
    return out
