from .tokens import (  # noqa: F401
    ARITHMETIC_OPS,
    COMPARISON_OPS,
    EQUALITY_OPS,
    K_CALL,
    K_IDENT,
    K_LITERAL,
    K_MEMBER,
    K_OPERATOR,
    K_PUNCT,
    K_RESERVED,
    LOGICAL_OPS,
    RELATIONAL_OPS,
    RESERVED,
    LexicalError,
    Token,
    identifier,
    literal_of,
    member,
    operator,
    punct,
    render_tokens,
    reserved,
    tokenize,
)
from . import ast_nodes  # noqa: F401
from .parser import (  # noqa: F401
    OracleSyntaxError,
    ast_tokens,
    canonicalize,
    parse,
    parse_text,
    render,
)
from .automaton import (  # noqa: F401
    GrammarState,
    IllegalTokenError,
    initial_state,
    replay,
    token_terminal,
)
