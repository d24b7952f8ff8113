"""Project model construction, type resolution, and member lookup."""

from __future__ import annotations

import json
import os
from typing import Iterable

from .javaparser import (
    JavaParseError,
    parse_compilation_unit,
    parse_field_declaration,
    parse_method_signature,
    parse_type,
)
from .stubs import object_stub_methods, platform_stub_classes
from .types import (
    CAT_ARRAY,
    CAT_INT,
    CAT_REF,
    CAT_UNKNOWN,
    PRIMITIVE_CATEGORIES,
    ClassInfo,
    DocTag,
    FieldInfo,
    MethodInfo,
    ParameterInfo,
    ProjectModel,
    TypeRef,
    primitive,
    unknown,
)


class ModelError(Exception):
    pass


def build_project_model(source_root: str,
                        external_signature_files: Iterable[str] = ()) -> ProjectModel:
    if not os.path.isdir(source_root):
        raise ModelError(f"source root does not exist: {source_root}")
    model = ProjectModel(sourceRoot=source_root)
    java_files = []
    for dirpath, dirnames, filenames in os.walk(source_root):
        dirnames.sort()
        for fn in sorted(filenames):
            if fn.endswith(".java"):
                java_files.append(os.path.join(dirpath, fn))
    parsed_any = False
    for path in java_files:
        try:
            with open(path, encoding="utf-8") as f:
                src = f.read()
            for cls in parse_compilation_unit(src):
                model.classes[cls.qualifiedName] = cls
            parsed_any = True
        except (JavaParseError, UnicodeDecodeError) as exc:
            model.warnings.append(f"{path}: {exc}")
    if not parsed_any:
        raise ModelError(f"no compilation units under {source_root}")
    model.externalClasses.update(platform_stub_classes())
    for sig_file in external_signature_files:
        for cls in load_signature_file(sig_file):
            if cls.qualifiedName not in model.classes:
                model.externalClasses[cls.qualifiedName] = cls
    return model


def load_signature_file(path: str) -> list[ClassInfo]:
    """Line-delimited JSON, one class per line, members as declaration text."""
    classes = []
    with open(path, encoding="utf-8") as f:
        for lineno, line in enumerate(f, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                rec = json.loads(line)
                qn = rec["qualifiedName"]
                fields = []
                for decl in rec.get("fields", ()):
                    fields.extend(parse_field_declaration(decl))
                methods = [parse_method_signature(s, owner=qn)
                           for s in rec.get("methods", ())]
                supers = [parse_type(s) for s in rec.get("superTypes", ())]
                classes.append(ClassInfo(
                    name=qn.rsplit(".", 1)[-1], qualifiedName=qn,
                    fields=tuple(fields), methods=tuple(methods),
                    superTypes=tuple(supers),
                    isInterface=bool(rec.get("isInterface")),
                ))
            except (json.JSONDecodeError, KeyError, JavaParseError) as exc:
                raise ModelError(f"{path}:{lineno}: malformed signature entry: {exc}")
    return classes


def resolve_type(model: ProjectModel, name: str, context: str = "") -> TypeRef:
    """Total: primitives by category, known classes as references, else unknown."""
    if not name:
        raise ValueError("type name must be non-empty")
    base = name
    dims = 0
    while base.endswith("[]"):
        base = base[:-2]
        dims += 1
    if base in PRIMITIVE_CATEGORIES:
        t = primitive(base)
    elif model.lookup_class(base) is not None:
        t = TypeRef(name=base, category=CAT_REF)
    else:
        t = unknown(base)
    for _ in range(dims):
        t = TypeRef(name=t.name + "[]", category=CAT_ARRAY, elem=t)
    return t


def refine_type(model: ProjectModel, t: TypeRef) -> TypeRef:
    """Re-resolve unknown-category names against the model (arrays recursively)."""
    if t.category == CAT_ARRAY and t.elem is not None:
        elem = refine_type(model, t.elem)
        return TypeRef(name=elem.name + "[]", category=CAT_ARRAY, elem=elem)
    if t.category == CAT_UNKNOWN:
        return resolve_type(model, t.name)
    return t


def accessible_members(model: ProjectModel,
                       t: TypeRef) -> tuple[tuple[FieldInfo, ...], tuple[MethodInfo, ...]]:
    """Non-private members, inherited members, and the Object stubs.

    Deterministic: declaration order, then supertype order; first wins on
    duplicate names/arities. Arrays expose `length` plus the Object stubs.
    """
    if t.category == CAT_ARRAY:
        length = FieldInfo(name="length", type=primitive("int"),
                           declarationText="public final int length")
        return (length,), object_stub_methods()
    if t.category != CAT_REF:
        raise ValueError(f"accessible_members requires a reference or array type, got {t.category}")
    fields: list[FieldInfo] = []
    methods: list[MethodInfo] = []
    seen_fields: set[str] = set()
    seen_methods: set[tuple[str, int]] = set()
    visited: set[str] = set()

    def visit(name: str):
        cls = model.lookup_class(name)
        if cls is None or cls.qualifiedName in visited:
            return
        visited.add(cls.qualifiedName)
        for f in cls.fields:
            if f.visibility != "private" and f.name not in seen_fields:
                seen_fields.add(f.name)
                fields.append(f)
        for m in cls.methods:
            key = (m.name, m.arity)
            if m.visibility != "private" and key not in seen_methods:
                seen_methods.add(key)
                methods.append(m)
        for sup in cls.superTypes:
            visit(sup.name)

    visit(t.name)
    for m in object_stub_methods():
        key = (m.name, m.arity)
        if key not in seen_methods:
            seen_methods.add(key)
            methods.append(m)
    return tuple(fields), tuple(methods)


# ---------------------------------------------------------------------------
# Serialization (line-delimited JSON, alphabetical keys, bit-exact)

def _tag_to_dict(t: DocTag) -> dict:
    return {"dangling": t.dangling, "kind": t.kind, "target": t.target, "text": t.text}


def _method_to_dict(m: MethodInfo) -> dict:
    return {
        "docText": m.docText,
        "name": m.name,
        "owner": m.owner,
        "parameters": [{"name": p.name, "position": p.position,
                        "type": p.type.to_dict()} for p in m.parameters],
        "returnType": m.returnType.to_dict(),
        "signatureText": m.signatureText,
        "sourceText": m.sourceText,
        "static": m.static,
        "tags": [_tag_to_dict(t) for t in m.tags],
        "visibility": m.visibility,
    }


def class_to_dict(c: ClassInfo) -> dict:
    return {
        "fields": [{"declarationText": f.declarationText, "name": f.name,
                    "static": f.static, "type": f.type.to_dict(),
                    "visibility": f.visibility} for f in c.fields],
        "isInterface": c.isInterface,
        "methods": [_method_to_dict(m) for m in c.methods],
        "name": c.name,
        "qualifiedName": c.qualifiedName,
        "superTypes": [s.to_dict() for s in c.superTypes],
    }


def class_from_dict(d: dict) -> ClassInfo:
    def type_from(td):
        return TypeRef.from_dict(td)
    methods = tuple(
        MethodInfo(
            name=md["name"],
            parameters=tuple(ParameterInfo(name=p["name"], type=type_from(p["type"]),
                                           position=p["position"])
                             for p in md["parameters"]),
            returnType=type_from(md["returnType"]),
            visibility=md["visibility"], static=md["static"],
            signatureText=md["signatureText"], sourceText=md["sourceText"],
            docText=md["docText"],
            tags=tuple(DocTag(kind=t["kind"], target=t["target"], text=t["text"],
                              dangling=t["dangling"]) for t in md["tags"]),
            owner=md["owner"],
        ) for md in d["methods"])
    fields = tuple(FieldInfo(name=f["name"], type=type_from(f["type"]),
                             visibility=f["visibility"], static=f["static"],
                             declarationText=f["declarationText"])
                   for f in d["fields"])
    return ClassInfo(name=d["name"], qualifiedName=d["qualifiedName"],
                     fields=fields, methods=methods,
                     superTypes=tuple(type_from(s) for s in d["superTypes"]),
                     isInterface=d["isInterface"])


def serialize_model(model: ProjectModel) -> str:
    lines = []
    for qn in sorted(model.classes):
        rec = {"entry": "class", **class_to_dict(model.classes[qn])}
        lines.append(json.dumps(rec, sort_keys=True, ensure_ascii=False))
    for qn in sorted(model.externalClasses):
        rec = {"entry": "external", **class_to_dict(model.externalClasses[qn])}
        lines.append(json.dumps(rec, sort_keys=True, ensure_ascii=False))
    return "\n".join(lines) + "\n"


def deserialize_model(text: str, source_root: str = "") -> ProjectModel:
    model = ProjectModel(sourceRoot=source_root)
    for line in text.splitlines():
        if not line.strip():
            continue
        rec = json.loads(line)
        cls = class_from_dict(rec)
        if rec.get("entry") == "external":
            model.externalClasses[cls.qualifiedName] = cls
        else:
            model.classes[cls.qualifiedName] = cls
    return model
