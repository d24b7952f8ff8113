"""Language-neutral model of Java classes, members, types, and doc tags."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional


# Type categories. "array" additionally carries an element type.
CAT_INT = "numeric-integral"
CAT_FLOAT = "numeric-floating"
CAT_BOOL = "boolean"
CAT_CHAR = "char"
CAT_REF = "reference"
CAT_ARRAY = "array"
CAT_VOID = "void"
CAT_UNKNOWN = "unknown"

PRIMITIVE_CATEGORIES = {
    "byte": CAT_INT,
    "short": CAT_INT,
    "int": CAT_INT,
    "long": CAT_INT,
    "float": CAT_FLOAT,
    "double": CAT_FLOAT,
    "boolean": CAT_BOOL,
    "char": CAT_CHAR,
    "void": CAT_VOID,
}


@dataclass(frozen=True)
class TypeRef:
    name: str
    category: str
    elem: Optional["TypeRef"] = None

    def __post_init__(self):
        if self.category == CAT_ARRAY and self.elem is None:
            raise ValueError("array TypeRef requires an element type")

    @property
    def is_reference_like(self) -> bool:
        return self.category in (CAT_REF, CAT_ARRAY)

    @property
    def is_numeric(self) -> bool:
        return self.category in (CAT_INT, CAT_FLOAT)

    def to_dict(self) -> dict:
        d = {"category": self.category, "name": self.name}
        if self.elem is not None:
            d["elem"] = self.elem.to_dict()
        return d

    @staticmethod
    def from_dict(d: dict) -> "TypeRef":
        elem = TypeRef.from_dict(d["elem"]) if d.get("elem") else None
        return TypeRef(name=d["name"], category=d["category"], elem=elem)


def primitive(name: str) -> TypeRef:
    return TypeRef(name=name, category=PRIMITIVE_CATEGORIES[name])


def reference(name: str) -> TypeRef:
    return TypeRef(name=name, category=CAT_REF)


def array_of(elem: TypeRef) -> TypeRef:
    return TypeRef(name=elem.name + "[]", category=CAT_ARRAY, elem=elem)


def unknown(name: str) -> TypeRef:
    return TypeRef(name=name, category=CAT_UNKNOWN)


@dataclass(frozen=True)
class ParameterInfo:
    name: str
    type: TypeRef
    position: int


@dataclass(frozen=True)
class FieldInfo:
    name: str
    type: TypeRef
    visibility: str = "public"
    static: bool = False
    declarationText: str = ""


@dataclass(frozen=True)
class DocTag:
    kind: str  # param | return | throws | free-text
    target: str  # parameter name, exception type name, or ""
    text: str
    dangling: bool = False  # @param naming a nonexistent parameter; kept, flagged


@dataclass(frozen=True)
class MethodInfo:
    name: str
    parameters: tuple[ParameterInfo, ...]
    returnType: TypeRef
    visibility: str = "public"
    static: bool = False
    signatureText: str = ""
    sourceText: str = ""
    docText: str = ""
    tags: tuple[DocTag, ...] = ()
    owner: str = ""

    @property
    def arity(self) -> int:
        return len(self.parameters)

    def parameter(self, name: str) -> Optional[ParameterInfo]:
        for p in self.parameters:
            if p.name == name:
                return p
        return None


@dataclass(frozen=True)
class ClassInfo:
    name: str
    qualifiedName: str
    fields: tuple[FieldInfo, ...] = ()
    methods: tuple[MethodInfo, ...] = ()
    superTypes: tuple[TypeRef, ...] = ()
    isInterface: bool = False


@dataclass
class ProjectModel:
    """Resolved view of one source tree plus external/stub signatures.

    `classes` and `externalClasses` are keyed by qualified name and must be
    disjoint; lookups consult project classes first, then externals.
    """

    classes: dict[str, ClassInfo] = field(default_factory=dict)
    externalClasses: dict[str, ClassInfo] = field(default_factory=dict)
    sourceRoot: str = ""
    warnings: list[str] = field(default_factory=list)

    def lookup_class(self, name: str) -> Optional[ClassInfo]:
        """Resolve by qualified name, then by simple name (deterministic order)."""
        if name in self.classes:
            return self.classes[name]
        if name in self.externalClasses:
            return self.externalClasses[name]
        # memoize the simple-name scan; keyed by table sizes so lookups made
        # while the model is still being populated never go stale
        key = (len(self.classes), len(self.externalClasses), name)
        cache = self.__dict__.setdefault("_lookupCache", {})
        if key in cache:
            return cache[key]
        result = None
        simple = name.rsplit(".", 1)[-1]
        for table in (self.classes, self.externalClasses):
            for qn in sorted(table):
                if qn.rsplit(".", 1)[-1] == simple:
                    result = table[qn]
                    break
            if result is not None:
                break
        cache[key] = result
        return result

    def find_method(self, class_name: str, method_name: str,
                    arity: Optional[int] = None) -> Optional[MethodInfo]:
        cls = self.lookup_class(class_name)
        if cls is None:
            return None
        for m in cls.methods:
            if m.name == method_name and (arity is None or m.arity == arity):
                return m
        return None
