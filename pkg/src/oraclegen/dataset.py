"""Oracle and token datasets: line-delimited JSON with alphabetical keys, plus
the disaggregation of oracles into per-position token samples."""

from __future__ import annotations

import json
import logging
from dataclasses import asdict, dataclass
from typing import Optional

from .codemodel import DocTag, MethodInfo, ProjectModel
from .engine import GenerationContext, collect_generic_tagged, filter_candidates, veto_reason
from .grammar import Token, canonicalize, initial_state, render_tokens, tokenize

logger = logging.getLogger(__name__)

SCHEMA_VERSION = "v1"

_ORACLE_FIELDS = ("projectName", "className", "methodSignature", "methodSource",
                  "methodJavadoc", "oracleType", "tagText", "oracleText")
_TOKEN_FIELDS = _ORACLE_FIELDS + ("partialOracleText", "legalTokens", "nextToken")


class DatasetError(Exception):
    pass


class ReplayBreachError(DatasetError):
    def __init__(self, position: int, token: str, restriction: str):
        super().__init__(
            f"true next token {token!r} at position {position} is not in the "
            f"candidate set (violates {restriction})")
        self.position = position
        self.token = token
        self.restriction = restriction


@dataclass(frozen=True)
class OracleSample:
    projectName: str
    className: str
    methodSignature: str
    methodSource: str
    methodJavadoc: str
    oracleType: str
    tagText: str
    oracleText: str  # empty => negative sample

    @property
    def positive(self) -> bool:
        return bool(self.oracleText)


@dataclass(frozen=True)
class TokenSample:
    projectName: str
    className: str
    methodSignature: str
    methodSource: str
    methodJavadoc: str
    oracleType: str
    tagText: str
    oracleText: str
    partialOracleText: str
    legalTokens: tuple[str, ...]
    nextToken: str

    def __post_init__(self):
        if self.nextToken not in self.legalTokens:
            raise DatasetError(
                f"nextToken {self.nextToken!r} not in legalTokens")


def _check_fields(rec: dict, fields, lineno: int, path: str) -> None:
    if rec.get("schemaVersion") != SCHEMA_VERSION:
        raise DatasetError(
            f"{path}:{lineno}: missing or unsupported schemaVersion "
            f"(expected {SCHEMA_VERSION!r})")
    for f in fields:
        if f not in rec:
            raise DatasetError(f"{path}:{lineno}: missing field {f!r}")


def read_oracle_dataset(path: str) -> list[OracleSample]:
    samples: list[OracleSample] = []
    seen: set[tuple] = set()
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                rec = json.loads(line)
            except json.JSONDecodeError as exc:
                raise DatasetError(f"{path}:{lineno}: malformed JSON: {exc}")
            _check_fields(rec, _ORACLE_FIELDS, lineno, path)
            s = OracleSample(**{f: rec[f] for f in _ORACLE_FIELDS})
            if s.positive:
                try:
                    canonicalize(s.oracleText)
                except Exception as exc:
                    raise DatasetError(
                        f"{path}:{lineno}: oracleText does not parse: {exc}")
            key = (s.methodSignature, s.oracleType, s.tagText, s.oracleText)
            if key in seen:
                logger.warning("%s:%d: duplicate sample %s", path, lineno, key)
            seen.add(key)
            samples.append(s)
    return samples


def write_oracle_dataset(samples: list[OracleSample], path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for s in samples:
            rec = {"schemaVersion": SCHEMA_VERSION, **asdict(s)}
            fh.write(json.dumps(rec, sort_keys=True, ensure_ascii=False) + "\n")


def read_token_dataset(path: str) -> list[TokenSample]:
    samples: list[TokenSample] = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                rec = json.loads(line)
            except json.JSONDecodeError as exc:
                raise DatasetError(f"{path}:{lineno}: malformed JSON: {exc}")
            _check_fields(rec, _TOKEN_FIELDS, lineno, path)
            try:
                samples.append(TokenSample(**{
                    **{f: rec[f] for f in _ORACLE_FIELDS},
                    "partialOracleText": rec["partialOracleText"],
                    "legalTokens": tuple(rec["legalTokens"]),
                    "nextToken": rec["nextToken"],
                }))
            except DatasetError as exc:
                raise DatasetError(f"{path}:{lineno}: {exc}")
    return samples


def write_token_dataset(samples: list[TokenSample], path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for s in samples:
            rec = {"schemaVersion": SCHEMA_VERSION, **asdict(s)}
            rec["legalTokens"] = list(s.legalTokens)
            fh.write(json.dumps(rec, sort_keys=True, ensure_ascii=False) + "\n")


# ---------------------------------------------------------------------------
# Context reconstruction

def tag_from_text(tagText: str, oracleType: str) -> Optional[DocTag]:
    """Rebuild a DocTag from its flattened text form."""
    if not tagText:
        return None
    kind_by_prefix = {"@param": "param", "@return": "return",
                      "@throws": "throws", "@exception": "throws"}
    parts = tagText.split(None, 1)
    kind = kind_by_prefix.get(parts[0])
    if kind is None:
        return DocTag(kind="free-text", target="", text=tagText)
    rest = parts[1] if len(parts) > 1 else ""
    if kind in ("param", "throws"):
        sub = rest.split(None, 1)
        target = sub[0] if sub else ""
        text = sub[1] if len(sub) > 1 else ""
        return DocTag(kind=kind, target=target, text=text)
    return DocTag(kind=kind, target="", text=rest)


def resolve_sample_method(model: ProjectModel,
                          sample: OracleSample) -> MethodInfo:
    cls = model.lookup_class(sample.className)
    if cls is None:
        raise DatasetError(f"unknown class {sample.className!r}")
    for m in cls.methods:
        if m.signatureText == sample.methodSignature:
            return m
    # fall back to name/arity extracted from the signature text
    head = sample.methodSignature.split("(")[0].strip().split()
    name = head[-1] if head else ""
    arity = 0
    inner = sample.methodSignature.split("(", 1)[-1].rsplit(")", 1)[0].strip()
    if inner:
        arity = inner.count(",") + 1
    for m in cls.methods:
        if m.name == name and m.arity == arity:
            return m
    raise DatasetError(
        f"method {sample.methodSignature!r} not found in {sample.className}")


def context_for_sample(model: ProjectModel,
                       sample: OracleSample) -> GenerationContext:
    unit = resolve_sample_method(model, sample)
    tag = tag_from_text(sample.tagText, sample.oracleType)
    exc = tag.target if tag is not None and tag.kind == "throws" else ""
    return GenerationContext(model=model, unit=unit,
                             oracleType=sample.oracleType, tag=tag,
                             exceptionType=exc)


# ---------------------------------------------------------------------------
# Disaggregation (one oracle -> N per-position token samples)

def disaggregate(sample: OracleSample, model: ProjectModel) -> list[TokenSample]:
    if not sample.positive:
        raise DatasetError("cannot disaggregate a negative sample")
    ctx = context_for_sample(model, sample)
    canonical = canonicalize(sample.oracleText)
    tokens = tokenize(canonical)
    pool = collect_generic_tagged(ctx)
    out: list[TokenSample] = []
    partial: list[Token] = []
    state = initial_state()
    for i, tok in enumerate(tokens):
        cs = filter_candidates(ctx, partial, state, pool)
        texts = cs.texts()
        if tok.text not in texts:
            reason = veto_reason(ctx, partial, tok, state) or "grammar"
            raise ReplayBreachError(i, tok.text, reason)
        out.append(TokenSample(
            projectName=sample.projectName, className=sample.className,
            methodSignature=sample.methodSignature,
            methodSource=sample.methodSource,
            methodJavadoc=sample.methodJavadoc,
            oracleType=sample.oracleType, tagText=sample.tagText,
            oracleText=canonical,
            partialOracleText=render_tokens(partial),
            legalTokens=tuple(texts), nextToken=tok.text))
        state = state.advance(tok)
        partial.append(tok)
    return out


def reassemble(samples: list[TokenSample]) -> str:
    if not samples:
        raise DatasetError("no token samples to reassemble")
    ident = {(s.methodSignature, s.oracleType, s.tagText, s.oracleText)
             for s in samples}
    if len(ident) != 1:
        raise DatasetError("token samples from more than one oracle")
    ordered = sorted(samples, key=lambda s: len(tokenize(s.partialOracleText))
                     if s.partialOracleText else 0)
    tokens: list[Token] = []
    for i, s in enumerate(ordered):
        expect = render_tokens(tokens)
        if s.partialOracleText != expect:
            raise DatasetError(
                f"gap at position {i}: partial {s.partialOracleText!r} != "
                f"{expect!r}")
        tokens.extend(tokenize_fragment(s.nextToken, tokens))
    text = render_tokens(tokens)
    if text != ordered[0].oracleText:
        raise DatasetError(
            f"reassembled text {text!r} != oracleText {ordered[0].oracleText!r}")
    return text


def tokenize_fragment(text: str, prefix: list[Token]) -> list[Token]:
    """Tokenize one token text in the context of the prefix (member names and
    '-1'-style literals depend on what precedes them)."""
    toks = tokenize(render_tokens(prefix) + " " + text if prefix else text)
    return toks[len(prefix):]


def statistics(samples: list[OracleSample]) -> dict:
    by_type: dict[str, int] = {}
    positive = negative = 0
    for s in samples:
        by_type[s.oracleType] = by_type.get(s.oracleType, 0) + 1
        if s.positive:
            positive += 1
        else:
            negative += 1
    return {"byOracleType": dict(sorted(by_type.items())),
            "negative": negative, "positive": positive,
            "total": len(samples)}
