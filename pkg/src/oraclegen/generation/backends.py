"""Selector/evaluator backends: scripted replay, deterministic heuristics, and
a remote HTTP client. All three expose evaluate(bundle) and select(bundle)."""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from typing import Optional, Protocol

import requests

from ..grammar import tokenize
from .prompts import EVALUATOR_ARMS, PromptBundle


class BackendError(Exception):
    pass


class Backend(Protocol):
    serial: bool

    def evaluate(self, bundle: PromptBundle) -> str: ...

    def select(self, bundle: PromptBundle) -> str: ...


@dataclass(frozen=True)
class BackendSpec:
    kind: str  # scripted | heuristic | remote
    scriptPath: str = ""
    tokens: tuple[str, ...] = ()
    endpoint: str = ""
    timeout: float = 10.0
    retries: int = 2
    options: tuple[tuple[str, str], ...] = ()

    def __post_init__(self):
        if self.kind not in ("scripted", "heuristic", "remote"):
            raise ValueError(f"unknown backend kind: {self.kind}")


class ScriptedBackend:
    """Replays a fixed token sequence, or a keyed script file holding one
    entry per (class, method signature, oracle type, tag text)."""

    serial = True

    def __init__(self, tokens: Optional[list[str]] = None,
                 entries: Optional[list[dict]] = None):
        self._tokens = list(tokens) if tokens is not None else None
        self._cursor = 0
        self._entries = {}
        for e in entries or ():
            key = (e["className"], e["methodSignature"], e["oracleType"],
                   e.get("tagText", ""))
            self._entries[key] = list(e.get("tokens", ()))

    @classmethod
    def from_file(cls, path: str) -> "ScriptedBackend":
        with open(path, encoding="utf-8") as f:
            data = json.load(f)
        if isinstance(data, list):
            return cls(entries=data)
        if isinstance(data, dict) and "entries" in data:
            return cls(entries=data["entries"])
        if isinstance(data, dict) and "tokens" in data:
            return cls(tokens=data["tokens"])
        raise BackendError(f"{path}: unrecognized script layout")

    def _entry_for(self, bundle: PromptBundle) -> Optional[list[str]]:
        s = bundle.structured
        key = (s["className"], s["methodSignature"], s["oracleType"],
               s["tagText"])
        return self._entries.get(key)

    def evaluate(self, bundle: PromptBundle) -> str:
        if self._tokens is not None:
            return EVALUATOR_ARMS[0] if self._tokens else EVALUATOR_ARMS[1]
        entry = self._entry_for(bundle)
        if entry:
            return EVALUATOR_ARMS[0]
        return EVALUATOR_ARMS[1]

    def select(self, bundle: PromptBundle) -> str:
        if self._tokens is not None:
            if self._cursor >= len(self._tokens):
                raise BackendError(
                    f"script exhausted after {self._cursor} tokens")
            tok = self._tokens[self._cursor]
            self._cursor += 1
            return tok
        entry = self._entry_for(bundle)
        if entry is None:
            raise BackendError("no script entry for this context")
        pos = len(tokenize(bundle.structured.get("partialText", "")))
        if pos >= len(entry):
            raise BackendError(f"script exhausted at position {pos}")
        return entry[pos]


_NULL_GUARD = re.compile(r"\bnull\b", re.IGNORECASE)
_NEGATED = re.compile(r"\b(must not|may not|cannot|not null|non-null)\b",
                      re.IGNORECASE)
_NON_NEGATIVE = re.compile(r"\(zero based\)|\bnon-negative\b|>= 0",
                           re.IGNORECASE)
_CODE_REF = re.compile(r"<code>\s*(\w+)\s*</code>")


class HeuristicBackend:
    """Small deterministic rule list over the tag text; declines otherwise."""

    serial = False

    def _target(self, bundle: PromptBundle) -> str:
        s = bundle.structured
        if s.get("tagTarget"):
            return s["tagTarget"]
        m = _CODE_REF.search(s.get("tagText", ""))
        if m:
            return m.group(1)
        return ""

    def _plan(self, bundle: PromptBundle) -> Optional[list[str]]:
        s = bundle.structured
        text = s.get("tagText", "")
        target = self._target(bundle)
        if not target:
            return None
        otype = s["oracleType"]
        if _NULL_GUARD.search(text) and _NEGATED.search(text):
            if otype == "PRE":
                return ["(", target, "==", "null", ")", "==", "false", ";"]
            return [target, "==", "null", ";"]
        if _NON_NEGATIVE.search(text):
            if otype == "PRE":
                return [target, ">=", "0", ";"]
            return ["(", target, ">=", "0", ")", "==", "false", ";"]
        return None

    def evaluate(self, bundle: PromptBundle) -> str:
        return EVALUATOR_ARMS[0] if self._plan(bundle) else EVALUATOR_ARMS[1]

    def select(self, bundle: PromptBundle) -> str:
        plan = self._plan(bundle)
        if plan is None:
            raise BackendError("heuristic backend has no plan for this context")
        pos = len(tokenize(bundle.structured.get("partialText", "")))
        if pos >= len(plan):
            raise BackendError(f"heuristic plan exhausted at position {pos}")
        return plan[pos]


class RemoteBackend:
    """HTTP client for the reference model-server wire protocol."""

    serial = False

    def __init__(self, endpoint: str, timeout: float = 10.0, retries: int = 2):
        self.endpoint = endpoint.rstrip("/")
        self.timeout = timeout
        self.retries = retries

    def _post(self, path: str, bundle: PromptBundle) -> str:
        payload = {
            "prompt": bundle.renderedText,
            "candidates": list(bundle.structured.get("candidates", ())),
            "meta": {k: v for k, v in bundle.structured.items()
                     if k != "candidates"},
        }
        last_exc: Optional[Exception] = None
        for attempt in range(self.retries + 1):
            try:
                resp = requests.post(self.endpoint + path, json=payload,
                                     timeout=self.timeout)
            except requests.RequestException as exc:
                last_exc = exc
                continue
            if resp.status_code != 200:
                try:
                    detail = resp.json().get("error", resp.text)
                except ValueError:
                    detail = resp.text
                raise BackendError(
                    f"{path} returned {resp.status_code}: {detail}")
            try:
                choice = resp.json()["choice"]
            except (ValueError, KeyError):
                raise BackendError(f"{path}: malformed response body")
            return choice
        raise BackendError(
            f"{path} unreachable after {self.retries + 1} attempts: {last_exc}")

    def evaluate(self, bundle: PromptBundle) -> str:
        return self._post("/v1/evaluate", bundle)

    def select(self, bundle: PromptBundle) -> str:
        return self._post("/v1/select", bundle)


def make_backend(spec: BackendSpec) -> Backend:
    if spec.kind == "scripted":
        if spec.scriptPath:
            return ScriptedBackend.from_file(spec.scriptPath)
        return ScriptedBackend(tokens=list(spec.tokens))
    if spec.kind == "heuristic":
        return HeuristicBackend()
    return RemoteBackend(spec.endpoint, spec.timeout, spec.retries)


def scripted_backend(tokens: list[str]) -> ScriptedBackend:
    return ScriptedBackend(tokens=tokens)


def heuristic_backend(**_options) -> HeuristicBackend:
    return HeuristicBackend()


def remote_backend(endpoint: str, timeout: float = 10.0,
                   retries: int = 2) -> RemoteBackend:
    return RemoteBackend(endpoint, timeout, retries)
