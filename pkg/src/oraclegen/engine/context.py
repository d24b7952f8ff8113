"""Generation context and expression types."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from ..codemodel import (
    CAT_ARRAY,
    CAT_BOOL,
    CAT_CHAR,
    CAT_FLOAT,
    CAT_INT,
    CAT_REF,
    CAT_UNKNOWN,
    CAT_VOID,
    DocTag,
    MethodInfo,
    ProjectModel,
    TypeRef,
    refine_type,
)

ORACLE_PRE = "PRE"
ORACLE_NORMAL_POST = "NORMAL_POST"
ORACLE_EXCEPT_POST = "EXCEPT_POST"
ORACLE_TYPES = (ORACLE_PRE, ORACLE_NORMAL_POST, ORACLE_EXCEPT_POST)

# Extra expression-type categories beyond TypeRef's.
CAT_BOOL_PROP = "boolean-proposition"
CAT_CLASS = "class"  # a class name used as a static-member receiver
CAT_NULL = "null"


class ContextError(Exception):
    pass


@dataclass(frozen=True)
class ExprType:
    category: str
    name: str = ""
    elem: Optional[TypeRef] = None  # array element or stream element type

    @property
    def is_reference_like(self) -> bool:
        return self.category in (CAT_REF, CAT_ARRAY)

    @property
    def comparable_numeric(self) -> bool:
        # char takes part in numeric comparisons and arithmetic in Java
        return self.category in (CAT_INT, CAT_FLOAT, CAT_CHAR)

    @property
    def boolean_like(self) -> bool:
        return self.category in (CAT_BOOL, CAT_BOOL_PROP)


BOOL = ExprType(CAT_BOOL, "boolean")
BOOL_PROP = ExprType(CAT_BOOL_PROP)
NULL = ExprType(CAT_NULL, "null")
UNKNOWN = ExprType(CAT_UNKNOWN)


def expr_type_of(model: ProjectModel, t: TypeRef) -> ExprType:
    t = refine_type(model, t)
    if t.category == CAT_ARRAY:
        return ExprType(CAT_ARRAY, t.name, elem=t.elem)
    return ExprType(t.category, t.name)


# Category classes used by the comparison/arithmetic compatibility rules.
def category_class(et: ExprType) -> str:
    if et.comparable_numeric:
        return "numeric"
    if et.boolean_like:
        return "boolean"
    if et.is_reference_like:
        return "reference"
    return et.category  # unknown, null, class, void


@dataclass(frozen=True)
class GenerationContext:
    model: ProjectModel
    unit: MethodInfo
    oracleType: str
    tag: Optional[DocTag] = None
    exceptionType: str = ""

    def __post_init__(self):
        if self.oracleType not in ORACLE_TYPES:
            raise ContextError(f"invalid oracle type: {self.oracleType}")
        if self.oracleType == ORACLE_NORMAL_POST and \
                self.unit.returnType.category == CAT_VOID:
            raise ContextError(
                f"normal postcondition requires a non-void method: {self.unit.name}")
        if self.tag is not None:
            expected = {ORACLE_PRE: ("param", "free-text"),
                        ORACLE_NORMAL_POST: ("return", "free-text"),
                        ORACLE_EXCEPT_POST: ("throws", "free-text")}[self.oracleType]
            if self.tag.kind not in expected:
                raise ContextError(
                    f"tag kind {self.tag.kind!r} inconsistent with {self.oracleType}")

    @property
    def tag_text(self) -> str:
        if self.tag is None:
            return ""
        if self.tag.kind == "free-text":
            return self.tag.text
        prefix = {"param": "@param", "return": "@return", "throws": "@throws"}[self.tag.kind]
        parts = [prefix]
        if self.tag.target:
            parts.append(self.tag.target)
        if self.tag.text:
            parts.append(self.tag.text)
        return " ".join(parts)

    @property
    def allows_result_id(self) -> bool:
        return (self.oracleType != ORACLE_PRE
                and self.unit.returnType.category != CAT_VOID)

    def scope_type(self, name: str) -> Optional[ExprType]:
        """Type of a bare operand name: parameter, this, methodResultID, or a
        class name (static receiver). None when not in scope."""
        p = self.unit.parameter(name)
        if p is not None:
            return expr_type_of(self.model, p.type)
        if name == "this":
            if self.unit.static:
                return None
            return ExprType(CAT_REF, self.unit.owner)
        if name == "methodResultID":
            if not self.allows_result_id:
                return None
            return expr_type_of(self.model, self.unit.returnType)
        cls = self.model.lookup_class(name)
        if cls is not None and cls.name == name:
            return ExprType(CAT_CLASS, cls.qualifiedName)
        return None

    def context_id(self) -> str:
        tag = self.tag_text
        return f"{self.unit.owner}#{self.unit.name}/{self.unit.arity}:{self.oracleType}:{tag}"
