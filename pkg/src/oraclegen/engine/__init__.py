from .context import (  # noqa: F401
    BOOL,
    BOOL_PROP,
    CAT_BOOL_PROP,
    CAT_CLASS,
    CAT_NULL,
    ContextError,
    ExprType,
    GenerationContext,
    NULL,
    ORACLE_EXCEPT_POST,
    ORACLE_NORMAL_POST,
    ORACLE_PRE,
    ORACLE_TYPES,
    UNKNOWN,
    category_class,
    expr_type_of,
)
from .semantics import (  # noqa: F401
    SemanticError,
    SemState,
    analyze,
    is_stream,
    literal_type,
    member_result_type,
    members_of,
    type_of,
)
from .collector import (  # noqa: F401
    CandidateSet,
    PROVENANCE_ORDER,
    collect_generic,
    collect_generic_tagged,
    collect_specific,
    mine_doc_literals,
)
from .restrictions import (  # noqa: F401
    RestrictionDescriptor,
    list_restrictions,
    registry_markdown,
    restriction,
)
from .filter import (  # noqa: F401
    filter_candidates,
    veto_reason,
)
