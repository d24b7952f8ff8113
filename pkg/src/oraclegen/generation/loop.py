"""Token-by-token generation loop: evaluate whether to generate, then collect,
filter, prompt, select, validate, and advance until ';'."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Optional

from ..engine import GenerationContext, collect_generic_tagged, filter_candidates
from ..grammar import Token, initial_state, parse, render_tokens
from .backends import Backend, BackendError
from .prompts import (
    EVALUATOR_ARMS,
    PromptBundle,
    render_evaluator_prompt,
    render_selector_prompt,
)

STATUS_GENERATED = "generated"
STATUS_DECLINED = "declined"
STATUS_ABORTED = "aborted"

_RETRY_REMINDER = "// Choose exactly one token from the list above."


@dataclass(frozen=True)
class TraceStep:
    candidates: tuple[str, ...]
    chosen: str


@dataclass(frozen=True)
class OracleResult:
    status: str
    oracleText: str = ""
    trace: tuple[TraceStep, ...] = ()
    diagnostic: str = ""


class InvalidReplyError(BackendError):
    pass


def should_generate(ctx: GenerationContext, evaluator: Backend) -> bool:
    """Ask the evaluator backend; exact-prefix match against the two arms."""
    bundle = render_evaluator_prompt(ctx)
    reply = evaluator.evaluate(bundle)
    matches = [arm for arm in EVALUATOR_ARMS if reply.startswith(arm)]
    if len(matches) != 1:
        raise InvalidReplyError(f"invalid evaluator reply: {reply!r}")
    return matches[0] == EVALUATOR_ARMS[0]


def _select_with_retry(selector: Backend, bundle: PromptBundle,
                       texts: list[str]) -> Optional[str]:
    choice = selector.select(bundle)
    if choice in texts:
        return choice
    retry = bundle.with_reminder(_RETRY_REMINDER)
    choice = selector.select(retry)
    if choice in texts:
        return choice
    return None


def generate_oracle(ctx: GenerationContext, evaluator: Backend,
                    selector: Backend, max_tokens: int = 64,
                    max_seconds: Optional[float] = None) -> OracleResult:
    trace: list[TraceStep] = []
    try:
        if not should_generate(ctx, evaluator):
            return OracleResult(status=STATUS_DECLINED)
    except BackendError as exc:
        return OracleResult(status=STATUS_ABORTED, diagnostic=str(exc))

    pool = collect_generic_tagged(ctx)
    partial: list[Token] = []
    state = initial_state()
    deadline = time.monotonic() + max_seconds if max_seconds else None
    while len(partial) < max_tokens:
        if deadline is not None and time.monotonic() > deadline:
            return OracleResult(status=STATUS_ABORTED, trace=tuple(trace),
                                diagnostic="time budget exceeded")
        candidates = filter_candidates(ctx, partial, state, pool)
        if not len(candidates):
            return OracleResult(
                status=STATUS_ABORTED, trace=tuple(trace),
                diagnostic=f"empty candidate set after "
                           f"{render_tokens(partial)!r}")
        bundle = render_selector_prompt(ctx, partial, candidates)
        texts = candidates.texts()
        try:
            choice = _select_with_retry(selector, bundle, texts)
        except BackendError as exc:
            return OracleResult(status=STATUS_ABORTED, trace=tuple(trace),
                                diagnostic=str(exc))
        if choice is None:
            return OracleResult(status=STATUS_ABORTED, trace=tuple(trace),
                                diagnostic="selector chose a token outside "
                                           "the candidate list twice")
        tok = candidates.tokens[texts.index(choice)]
        trace.append(TraceStep(candidates=tuple(texts), chosen=choice))
        state = state.advance(tok)
        partial.append(tok)
        if tok.text == ";":
            parse(partial)  # generated oracles always parse, by construction
            return OracleResult(status=STATUS_GENERATED,
                                oracleText=render_tokens(partial),
                                trace=tuple(trace))
    return OracleResult(status=STATUS_ABORTED, trace=tuple(trace),
                        diagnostic=f"token budget ({max_tokens}) exceeded")
