from .prompts import (  # noqa: F401
    DEFAULT_CHAR_BUDGET,
    DEFAULT_CONTEXT_LINES,
    EVALUATOR_ARMS,
    PromptBundle,
    render_evaluator_prompt,
    render_selector_prompt,
)
from .backends import (  # noqa: F401
    Backend,
    BackendError,
    BackendSpec,
    HeuristicBackend,
    RemoteBackend,
    ScriptedBackend,
    heuristic_backend,
    make_backend,
    remote_backend,
    scripted_backend,
)
from .loop import (  # noqa: F401
    InvalidReplyError,
    OracleResult,
    STATUS_ABORTED,
    STATUS_DECLINED,
    STATUS_GENERATED,
    TraceStep,
    generate_oracle,
    should_generate,
)
