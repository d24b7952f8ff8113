from .types import (  # noqa: F401
    CAT_ARRAY,
    CAT_BOOL,
    CAT_CHAR,
    CAT_FLOAT,
    CAT_INT,
    CAT_REF,
    CAT_UNKNOWN,
    CAT_VOID,
    ClassInfo,
    DocTag,
    FieldInfo,
    MethodInfo,
    ParameterInfo,
    ProjectModel,
    TypeRef,
    array_of,
    primitive,
    reference,
    unknown,
)
from .model import (  # noqa: F401
    ModelError,
    accessible_members,
    build_project_model,
    deserialize_model,
    load_signature_file,
    refine_type,
    resolve_type,
    serialize_model,
)
from .javaparser import (  # noqa: F401
    JavaParseError,
    parse_compilation_unit,
    parse_doc_comment,
    parse_method_signature,
    parse_type,
)
from .stubs import STREAM_MATCH_METHODS, object_stub_methods, platform_stub_classes  # noqa: F401
