"""Built-in signature stubs for a small set of platform classes.

Everything beyond this set must come from user-supplied signature files;
unresolvable names stay in the "unknown" category.
"""

from __future__ import annotations

from functools import lru_cache

from .javaparser import parse_method_signature
from .types import ClassInfo, MethodInfo, TypeRef, reference

# Methods every reference type exposes.
OBJECT_METHOD_SIGS = (
    "public boolean equals(Object obj)",
    "public String toString()",
    "public Class getClass()",
    "public int hashCode()",
)

_STUB_SIGS: dict[str, dict] = {
    "java.lang.Object": {"methods": OBJECT_METHOD_SIGS},
    "java.lang.String": {
        "methods": (
            "public int length()",
            "public boolean isEmpty()",
            "public char charAt(int index)",
            "public boolean contains(CharSequence s)",
            "public boolean startsWith(String prefix)",
            "public boolean endsWith(String suffix)",
            "public String trim()",
        ),
    },
    "java.lang.Class": {
        "methods": (
            "public native boolean isArray()",
            "public String getName()",
            "public String getSimpleName()",
            "public native boolean isInterface()",
            "public native boolean isPrimitive()",
            "public ClassLoader getClassLoader()",
        ),
    },
    "java.lang.Iterable": {
        "interface": True,
        "methods": ("public Iterator iterator()",),
    },
    "java.util.Iterator": {
        "interface": True,
        "methods": (
            "public boolean hasNext()",
            "public Object next()",
            "public void remove()",
        ),
    },
    "java.util.Collection": {
        "interface": True,
        "supers": ("Iterable",),
        "methods": (
            "public int size()",
            "public boolean isEmpty()",
            "public boolean contains(Object o)",
            "public Stream stream()",
        ),
    },
    "java.util.Map": {
        "interface": True,
        "methods": (
            "public int size()",
            "public boolean isEmpty()",
            "public boolean containsKey(Object key)",
            "public boolean containsValue(Object value)",
            "public Object get(Object key)",
        ),
    },
    "java.util.Arrays": {
        "methods": (
            "public static Stream stream(Object array)",
            "public static List asList(Object array)",
        ),
    },
    "java.util.List": {"interface": True, "supers": ("Collection",), "methods": ()},
    "java.util.stream.Stream": {
        "interface": True,
        "methods": (
            "public boolean anyMatch(Predicate predicate)",
            "public boolean allMatch(Predicate predicate)",
            "public boolean noneMatch(Predicate predicate)",
            "public long count()",
        ),
    },
    "java.lang.Integer": {"supers": ("Number",), "methods": ("public int intValue()",)},
    "java.lang.Long": {"supers": ("Number",), "methods": ("public long longValue()",)},
    "java.lang.Short": {"supers": ("Number",), "methods": ("public short shortValue()",)},
    "java.lang.Byte": {"supers": ("Number",), "methods": ("public byte byteValue()",)},
    "java.lang.Double": {"supers": ("Number",), "methods": ("public double doubleValue()",)},
    "java.lang.Float": {"supers": ("Number",), "methods": ("public float floatValue()",)},
    "java.lang.Character": {"methods": ("public char charValue()",)},
    "java.lang.Boolean": {"methods": ("public boolean booleanValue()",)},
    "java.lang.Number": {
        "methods": (
            "public int intValue()",
            "public long longValue()",
            "public float floatValue()",
            "public double doubleValue()",
        ),
    },
}

# Stream-quantifier method names whose single argument is a jdVar lambda.
STREAM_MATCH_METHODS = ("anyMatch", "allMatch", "noneMatch")


@lru_cache(maxsize=None)
def object_stub_methods(owner: str = "java.lang.Object") -> tuple[MethodInfo, ...]:
    return tuple(parse_method_signature(s, owner=owner) for s in OBJECT_METHOD_SIGS)


def platform_stub_classes() -> dict[str, ClassInfo]:
    out: dict[str, ClassInfo] = {}
    for qn, spec in _STUB_SIGS.items():
        simple = qn.rsplit(".", 1)[-1]
        methods = tuple(parse_method_signature(s, owner=qn) for s in spec.get("methods", ()))
        supers: tuple[TypeRef, ...] = tuple(reference(s) for s in spec.get("supers", ()))
        if qn != "java.lang.Object" and not supers:
            supers = (reference("Object"),)
        out[qn] = ClassInfo(
            name=simple, qualifiedName=qn,
            fields=(), methods=methods,
            superTypes=supers, isInterface=bool(spec.get("interface")),
        )
    return out
