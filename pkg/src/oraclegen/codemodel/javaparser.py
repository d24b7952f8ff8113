"""Declaration-level parser for Java source.

Parses class/interface declarations, member signatures, doc comments, and
verbatim bodies. Statement-level bodies are kept as text only. Generic type
arguments are erased to the raw type.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .types import (
    CAT_UNKNOWN,
    PRIMITIVE_CATEGORIES,
    ClassInfo,
    DocTag,
    FieldInfo,
    MethodInfo,
    ParameterInfo,
    TypeRef,
    array_of,
    primitive,
)

MODIFIERS = {
    "public", "protected", "private", "static", "final", "abstract",
    "synchronized", "native", "default", "transient", "volatile", "strictfp",
}

_CLASS_KEYWORDS = ("class", "interface", "enum")


class JavaParseError(Exception):
    pass


@dataclass
class _Comment:
    start: int
    end: int
    text: str


def blank_comments(src: str) -> tuple[str, list[_Comment]]:
    """Replace comments with spaces (newlines kept) and collect doc comments."""
    out = list(src)
    comments: list[_Comment] = []
    i, n = 0, len(src)
    state = "code"
    start = 0
    while i < n:
        c = src[i]
        nxt = src[i + 1] if i + 1 < n else ""
        if state == "code":
            if c == "/" and nxt == "/":
                state, start = "line", i
            elif c == "/" and nxt == "*":
                state, start = "block", i
                i += 1
            elif c == '"':
                state = "str"
            elif c == "'":
                state = "char"
        elif state == "line":
            if c == "\n":
                state = "code"
                for j in range(start, i):
                    if out[j] != "\n":
                        out[j] = " "
        elif state == "block":
            if c == "*" and nxt == "/":
                comments.append(_Comment(start, i + 2, src[start:i + 2]))
                for j in range(start, i + 2):
                    if out[j] != "\n":
                        out[j] = " "
                state = "code"
                i += 1
        elif state == "str":
            if c == "\\":
                i += 1
            elif c == '"':
                state = "code"
        elif state == "char":
            if c == "\\":
                i += 1
            elif c == "'":
                state = "code"
        i += 1
    if state == "line":
        for j in range(start, n):
            if out[j] != "\n":
                out[j] = " "
    return "".join(out), comments


def _match_brace(code: str, open_idx: int) -> int:
    """Index just past the '}' matching code[open_idx] == '{'."""
    depth = 0
    for i in range(open_idx, len(code)):
        if code[i] == "{":
            depth += 1
        elif code[i] == "}":
            depth -= 1
            if depth == 0:
                return i + 1
    raise JavaParseError("unbalanced braces")


def erase_generics(text: str) -> str:
    """Drop balanced <...> type-argument sections, keeping them out of names."""
    out = []
    depth = 0
    for ch in text:
        if ch == "<":
            depth += 1
        elif ch == ">":
            if depth > 0:
                depth -= 1
                continue
            out.append(ch)
        elif depth == 0:
            out.append(ch)
    return "".join(out)


def _strip_annotations(text: str) -> str:
    # Annotation arguments, when present, are balanced parens after @Name.
    out = []
    i, n = 0, len(text)
    while i < n:
        if text[i] == "@" and i + 1 < n and (text[i + 1].isalpha() or text[i + 1] == "_"):
            i += 1
            while i < n and (text[i].isalnum() or text[i] in "._"):
                i += 1
            while i < n and text[i].isspace():
                i += 1
            if i < n and text[i] == "(":
                depth = 0
                while i < n:
                    if text[i] == "(":
                        depth += 1
                    elif text[i] == ")":
                        depth -= 1
                        if depth == 0:
                            i += 1
                            break
                    i += 1
        else:
            out.append(text[i])
            i += 1
    return "".join(out)


def parse_type(text: str) -> TypeRef:
    text = erase_generics(text).strip()
    dims = 0
    if text.endswith("..."):
        text = text[:-3].strip()
        dims += 1
    while text.endswith("[]"):
        text = text[:-2].strip()
        dims += 1
    if not text:
        raise JavaParseError("empty type")
    if text in PRIMITIVE_CATEGORIES:
        t = primitive(text)
    else:
        # Category is refined against the model at resolve time; record the name.
        t = TypeRef(name=text, category=CAT_UNKNOWN)
    for _ in range(dims):
        t = array_of(t)
    return t


def split_top_commas(text: str) -> list[str]:
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch in "(<[":
            depth += 1
        elif ch in ")>]":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    if cur and "".join(cur).strip():
        parts.append("".join(cur))
    return [p.strip() for p in parts if p.strip()]


def parse_parameters(params_text: str) -> tuple[ParameterInfo, ...]:
    params = []
    for pos, part in enumerate(split_top_commas(params_text)):
        part = _strip_annotations(part)
        words = erase_generics(part).replace("...", "... ").split()
        words = [w for w in words if w not in ("final",)]
        if len(words) < 2:
            raise JavaParseError(f"cannot parse parameter: {part!r}")
        name = words[-1]
        dims = 0
        while name.endswith("[]"):
            name = name[:-2]
            dims += 1
        type_text = " ".join(words[:-1]) + "[]" * dims
        params.append(ParameterInfo(name=name, type=parse_type(type_text), position=pos))
    return tuple(params)


def parse_method_signature(sig: str, owner: str = "") -> MethodInfo:
    """Parse a declaration header like 'public native boolean isArray()'."""
    sig_clean = _strip_annotations(sig).strip().rstrip(";").strip()
    open_idx = sig_clean.find("(")
    if open_idx < 0:
        raise JavaParseError(f"not a method signature: {sig!r}")
    depth, close_idx = 0, -1
    for i in range(open_idx, len(sig_clean)):
        if sig_clean[i] == "(":
            depth += 1
        elif sig_clean[i] == ")":
            depth -= 1
            if depth == 0:
                close_idx = i
                break
    if close_idx < 0:
        raise JavaParseError(f"unbalanced parens in signature: {sig!r}")
    head = erase_generics(sig_clean[:open_idx]).split()
    params_text = sig_clean[open_idx + 1:close_idx]
    visibility = "package"
    is_static = False
    rest = []
    for w in head:
        if w in ("public", "protected", "private"):
            visibility = w
        elif w == "static":
            is_static = True
        elif w in MODIFIERS:
            pass
        else:
            rest.append(w)
    if not rest:
        raise JavaParseError(f"no method name in signature: {sig!r}")
    name = rest[-1]
    if len(rest) == 1:
        # Constructor: no declared return type.
        return_type = primitive("void")
    else:
        return_type = parse_type(" ".join(rest[:-1]))
    return MethodInfo(
        name=name,
        parameters=parse_parameters(params_text),
        returnType=return_type,
        visibility=visibility,
        static=is_static,
        signatureText=" ".join(sig_clean[:close_idx + 1].split()),
        owner=owner,
    )


def parse_field_declaration(decl: str) -> list[FieldInfo]:
    decl_clean = _strip_annotations(decl).strip().rstrip(";")
    # Drop initializers (top-level '=' onward, per declarator).
    head_words = erase_generics(decl_clean).split()
    visibility = "package"
    is_static = False
    rest = []
    for w in head_words:
        if w in ("public", "protected", "private"):
            visibility = w
        elif w == "static":
            is_static = True
        elif w in MODIFIERS:
            pass
        else:
            rest.append(w)
    if len(rest) < 2:
        raise JavaParseError(f"cannot parse field declaration: {decl!r}")
    body = " ".join(rest)
    # First word(s) up to the first declarator name form the type.
    m = re.match(r"^(.+?)\s+([A-Za-z_$][\w$]*(?:\s*\[\s*\])*)\s*(=.*|,.*)?$", body)
    if not m:
        raise JavaParseError(f"cannot parse field declaration: {decl!r}")
    type_text, declarators = m.group(1), body[m.end(1):]
    fields = []
    for d in split_top_commas(declarators):
        d = d.split("=", 1)[0].strip()
        dims = 0
        while d.endswith("[]"):
            d = d[:-2].strip()
            dims += 1
        if not d:
            continue
        fields.append(FieldInfo(
            name=d,
            type=parse_type(type_text + "[]" * dims),
            visibility=visibility,
            static=is_static,
            declarationText=" ".join(decl_clean.split()),
        ))
    return fields


_TAG_RE = re.compile(r"^@(\w+)\s*(.*)$")


def parse_doc_comment(doc: str) -> tuple[DocTag, ...]:
    """Split a javadoc block into a free-text tag plus @param/@return/@throws tags."""
    if not doc:
        return ()
    body = doc.strip()
    if body.startswith("/**"):
        body = body[3:]
    if body.endswith("*/"):
        body = body[:-2]
    lines = []
    for line in body.splitlines():
        line = line.strip()
        if line.startswith("*"):
            line = line[1:].lstrip()
        lines.append(line)
    tags: list[DocTag] = []
    free: list[str] = []
    cur: list[str] | None = None
    cur_kind = cur_target = ""
    def flush():
        nonlocal cur
        if cur is not None:
            tags.append(DocTag(kind=cur_kind, target=cur_target,
                               text=" ".join(" ".join(cur).split())))
        cur = None
    for line in lines:
        m = _TAG_RE.match(line)
        if m:
            flush()
            kind, rest = m.group(1), m.group(2)
            if kind == "param":
                parts = rest.split(None, 1)
                cur_kind = "param"
                cur_target = parts[0] if parts else ""
                cur = [parts[1] if len(parts) > 1 else ""]
            elif kind == "return":
                cur_kind, cur_target, cur = "return", "", [rest]
            elif kind in ("throws", "exception"):
                parts = rest.split(None, 1)
                cur_kind = "throws"
                cur_target = parts[0] if parts else ""
                cur = [parts[1] if len(parts) > 1 else ""]
            else:
                cur = None  # @see, @since, ... are not oracle-relevant
        elif cur is not None:
            cur.append(line)
        elif line:
            free.append(line)
    flush()
    result: list[DocTag] = []
    free_text = " ".join(" ".join(free).split())
    if free_text:
        result.append(DocTag(kind="free-text", target="", text=free_text))
    result.extend(tags)
    return tuple(result)


def _doc_before(comments: list[_Comment], pos: int, src: str) -> str:
    best = ""
    for c in comments:
        if c.end <= pos and c.text.startswith("/**") and src[c.end:pos].strip() == "":
            best = c.text
    return best


_CLASS_HEAD_RE = re.compile(
    r"(?:^|[;{}\s])((?:(?:public|protected|private|static|final|abstract|strictfp)\s+)*"
    r"(class|interface|enum)\s+([A-Za-z_$][\w$]*)[^{;]*)\{",
)


def parse_compilation_unit(src: str, default_package: str = "") -> list[ClassInfo]:
    """Parse one .java file into ClassInfo records (nested classes flattened)."""
    code, comments = blank_comments(src)
    pkg_m = re.search(r"^\s*package\s+([\w.]+)\s*;", code, re.MULTILINE)
    package = pkg_m.group(1) if pkg_m else default_package
    classes: list[ClassInfo] = []

    def scan_region(start: int, end: int, qualifier: str):
        i = start
        while i < end:
            m = _CLASS_HEAD_RE.search(code, i, end)
            if not m:
                return
            open_idx = m.end() - 1
            body_end = _match_brace(code, open_idx)
            name = m.group(3)
            qn = f"{qualifier}.{name}" if qualifier else name
            head = erase_generics(m.group(1))
            supers = []
            for kw in ("extends", "implements"):
                sm = re.search(rf"\b{kw}\b(.*?)(?=\bimplements\b|$)", head, re.DOTALL)
                if sm:
                    for t in split_top_commas(sm.group(1)):
                        supers.append(parse_type(t))
            is_interface = m.group(2) == "interface"
            fields, methods = parse_class_body(code, src, comments,
                                               open_idx + 1, body_end - 1, qn, name)
            classes.append(ClassInfo(
                name=name, qualifiedName=qn,
                fields=tuple(fields), methods=tuple(methods),
                superTypes=tuple(supers), isInterface=is_interface,
            ))
            scan_region(open_idx + 1, body_end - 1, qn)
            i = body_end

    scan_region(0, len(code), package)
    return classes


def parse_class_body(code: str, src: str, comments: list[_Comment],
                     start: int, end: int, owner_qn: str,
                     owner_simple: str) -> tuple[list[FieldInfo], list[MethodInfo]]:
    fields: list[FieldInfo] = []
    methods: list[MethodInfo] = []
    i = start
    while i < end:
        # Next declaration boundary at this nesting level.
        depth = 0
        j = i
        stmt_start = None
        while j < end:
            c = code[j]
            if stmt_start is None and not c.isspace():
                stmt_start = j
            if c == "(":
                depth += 1
            elif c == ")":
                depth -= 1
            elif c == "{" and depth == 0:
                break
            elif c == ";" and depth == 0:
                break
            j += 1
        if j >= end or stmt_start is None:
            break
        header = code[stmt_start:j].strip()
        if code[j] == "{":
            body_close = _match_brace(code, j)
            decl_end = body_close
            body_text = src[j:body_close]
        else:
            decl_end = j + 1
            body_text = ""
        if not header or header.startswith("static") and header.strip() == "static":
            i = decl_end
            continue
        header_na = _strip_annotations(header).strip()
        if re.search(r"\b(class|interface|enum)\b", header_na):
            pass  # nested class; handled by the enclosing recursive scan
        elif "(" in header_na and not header_na.startswith("="):
            try:
                info = parse_method_signature(header_na, owner=owner_qn)
            except JavaParseError:
                info = None
            if info is not None:
                doc = _doc_before(comments, stmt_start, src)
                tags = list(parse_doc_comment(doc))
                # Flag @param tags that do not name a real parameter.
                names = {p.name for p in info.parameters}
                tags = [
                    t if not (t.kind == "param" and t.target not in names)
                    else DocTag(kind=t.kind, target=t.target, text=t.text, dangling=True)
                    for t in tags
                ]
                if info.name == owner_simple and len(header_na.split("(")[0].split()) <= \
                        len([w for w in header_na.split("(")[0].split() if w in MODIFIERS]) + 1:
                    pass  # constructor, already parsed with void return
                methods.append(MethodInfo(
                    name=info.name, parameters=info.parameters,
                    returnType=info.returnType, visibility=info.visibility,
                    static=info.static, signatureText=info.signatureText,
                    sourceText=body_text, docText=doc, tags=tuple(tags),
                    owner=owner_qn,
                ))
        else:
            try:
                fields.extend(parse_field_declaration(header_na))
            except JavaParseError:
                pass
        i = decl_end
    return fields, methods
