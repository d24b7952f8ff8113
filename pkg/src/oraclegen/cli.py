"""Command-line pipeline: analyze, generate, disaggregate, evaluate, inject,
and registry export. A YAML config file supplies defaults; flags override."""

from __future__ import annotations

import difflib
import hashlib
import json
import os
import platform
import sys
from dataclasses import dataclass

import click
import yaml

from .codemodel import ModelError, ProjectModel, build_project_model, serialize_model
from .dataset import (
    DatasetError,
    OracleSample,
    ReplayBreachError,
    disaggregate,
    read_oracle_dataset,
    statistics,
    write_oracle_dataset,
    write_token_dataset,
)
from .engine import (
    ContextError,
    GenerationContext,
    ORACLE_EXCEPT_POST,
    ORACLE_NORMAL_POST,
    ORACLE_PRE,
    registry_markdown,
)
from .evaluation import (
    NONE,
    near_misses,
    read_groundtruth,
    run_evaluation,
    write_outcomes,
)
from .generation import (
    BackendError,
    BackendSpec,
    STATUS_GENERATED,
    generate_oracle,
    make_backend,
)
from .inject import apply_injection, plan_injection

__version__ = "0.1.0"

EXIT_OK = 0
EXIT_PARTIAL = 1
EXIT_FATAL = 2


class ConfigError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    sourceRoot: str
    signatureFiles: tuple[str, ...]
    backend: BackendSpec
    outputDir: str
    limitTokens: int = 64
    parallelism: int = 1
    strictMetrics: bool = False
    freeTextAttempts: bool = False

    def __post_init__(self):
        if self.parallelism < 1:
            raise ConfigError("parallelism must be >= 1")

    def to_dict(self) -> dict:
        return {
            "backend": {"endpoint": self.backend.endpoint,
                        "kind": self.backend.kind,
                        "scriptPath": self.backend.scriptPath},
            "freeTextAttempts": self.freeTextAttempts,
            "limitTokens": self.limitTokens,
            "outputDir": self.outputDir,
            "parallelism": self.parallelism,
            "signatureFiles": list(self.signatureFiles),
            "sourceRoot": self.sourceRoot,
            "strictMetrics": self.strictMetrics,
        }


def parse_backend_flag(text: str) -> BackendSpec:
    if text == "heuristic":
        return BackendSpec(kind="heuristic")
    if text.startswith("scripted:"):
        return BackendSpec(kind="scripted", scriptPath=text[len("scripted:"):])
    if text.startswith("remote:"):
        return BackendSpec(kind="remote", endpoint=text[len("remote:"):])
    raise ConfigError(
        f"backend: expected scripted:<file>, heuristic, or remote:<url>, "
        f"got {text!r}")


def load_config(path: str | None, **overrides) -> RunConfig:
    data: dict = {}
    if path:
        try:
            with open(path, encoding="utf-8") as f:
                data = yaml.safe_load(f) or {}
        except (OSError, yaml.YAMLError) as exc:
            raise ConfigError(f"config: {exc}")
        if not isinstance(data, dict):
            raise ConfigError("config: top level must be a mapping")
    def pick(key, default=None):
        ov = overrides.get(key)
        return ov if ov not in (None, ()) else data.get(key, default)
    backend_text = pick("backend", "heuristic")
    backend = (backend_text if isinstance(backend_text, BackendSpec)
               else parse_backend_flag(str(backend_text)))
    source_root = pick("sourceRoot", "")
    if not source_root:
        raise ConfigError("sourceRoot: required (flag --source-root)")
    sigs = pick("signatureFiles", ())
    if isinstance(sigs, str):
        sigs = (sigs,)
    return RunConfig(
        sourceRoot=str(source_root),
        signatureFiles=tuple(str(s) for s in sigs),
        backend=backend,
        outputDir=str(pick("outputDir", "out")),
        limitTokens=int(pick("limitTokens", 64)),
        parallelism=int(pick("parallelism", 1)),
        strictMetrics=bool(pick("strictMetrics", False)),
        freeTextAttempts=bool(pick("freeTextAttempts", False)),
    )


def config_hash(cfg: RunConfig) -> str:
    payload = json.dumps(cfg.to_dict(), sort_keys=True).encode("utf-8")
    return hashlib.sha256(payload).hexdigest()


def write_manifest(cfg: RunConfig, command: str, counts: dict) -> None:
    os.makedirs(cfg.outputDir, exist_ok=True)
    manifest = {
        "command": command,
        "configHash": config_hash(cfg),
        "counts": dict(sorted(counts.items())),
        "versions": {"package": __version__,
                     "python": platform.python_version()},
    }
    path = os.path.join(cfg.outputDir, "run.json")
    with open(path, "w", encoding="utf-8") as f:
        json.dump(manifest, f, sort_keys=True, indent=2)
        f.write("\n")


def _build_model(cfg: RunConfig) -> ProjectModel:
    return build_project_model(cfg.sourceRoot, cfg.signatureFiles)


def _project_name(cfg: RunConfig) -> str:
    return os.path.basename(os.path.normpath(cfg.sourceRoot))


_TAG_ORACLE_TYPE = {"param": ORACLE_PRE, "return": ORACLE_NORMAL_POST,
                    "throws": ORACLE_EXCEPT_POST}


def generation_contexts(model: ProjectModel, cfg: RunConfig,
                        name_filter: str = "") -> list[GenerationContext]:
    """One context per (method, tag); free-text tags only when enabled."""
    out: list[GenerationContext] = []
    for qn in sorted(model.classes):
        cls = model.classes[qn]
        for m in cls.methods:
            label = f"{cls.name}.{m.name}"
            if name_filter and name_filter not in label:
                continue
            for tag in m.tags:
                if tag.kind == "free-text":
                    if not cfg.freeTextAttempts:
                        continue
                    types = [ORACLE_PRE, ORACLE_NORMAL_POST]
                else:
                    types = [_TAG_ORACLE_TYPE[tag.kind]]
                for otype in types:
                    exc = tag.target if tag.kind == "throws" else ""
                    try:
                        out.append(GenerationContext(
                            model=model, unit=m, oracleType=otype, tag=tag,
                            exceptionType=exc))
                    except ContextError:
                        continue  # e.g. NORMAL_POST on a void method
    return out


# ---------------------------------------------------------------------------

@click.group()
@click.version_option(__version__)
def main():
    """Generate, replay, and evaluate axiomatic test oracles for Java."""


_common = [
    click.option("--config", "config_path", type=click.Path(exists=True),
                 default=None, help="YAML config file; flags override it."),
    click.option("--source-root", default=None,
                 help="Root of the Java source tree to analyze."),
    click.option("--sig", "signature_files", multiple=True,
                 help="External signature file (JSONL); repeatable."),
    click.option("--backend", "backend_text", default=None,
                 help="scripted:<file> | heuristic | remote:<url>"),
    click.option("--out", "output_dir", default=None,
                 help="Output directory (default: out)."),
    click.option("--limit-tokens", type=int, default=None,
                 help="Maximum oracle length in tokens (default: 64)."),
    click.option("--parallel", "parallelism", type=int, default=None,
                 help="Evaluation parallelism (default: 1)."),
    click.option("--strict-metrics", is_flag=True, default=False,
                 help="Count a wrong oracle as FN in addition to FP."),
    click.option("--free-text", "free_text", is_flag=True, default=False,
                 help="Also attempt oracles from free-text doc sentences."),
]


def common_options(fn):
    for opt in reversed(_common):
        fn = opt(fn)
    return fn


def _config_from_flags(config_path, source_root, signature_files, backend_text,
                       output_dir, limit_tokens, parallelism, strict_metrics,
                       free_text) -> RunConfig:
    return load_config(
        config_path, sourceRoot=source_root, signatureFiles=signature_files,
        backend=backend_text, outputDir=output_dir, limitTokens=limit_tokens,
        parallelism=parallelism,
        strictMetrics=strict_metrics or None,
        freeTextAttempts=free_text or None)


def _fatal(message: str):
    click.echo(f"error: {message}", err=True)
    sys.exit(EXIT_FATAL)


@main.command("analyze")
@common_options
def cmd_analyze(**kw):
    """Build and serialize the project model."""
    try:
        cfg = _config_from_flags(**kw)
        model = _build_model(cfg)
    except (ConfigError, ModelError) as exc:
        _fatal(str(exc))
    os.makedirs(cfg.outputDir, exist_ok=True)
    out_path = os.path.join(cfg.outputDir, "model.json")
    with open(out_path, "w", encoding="utf-8") as f:
        f.write(serialize_model(model))
    write_manifest(cfg, "analyze", {
        "classes": len(model.classes),
        "externalClasses": len(model.externalClasses),
        "warnings": len(model.warnings)})
    for w in model.warnings:
        click.echo(f"warning: {w}", err=True)
    click.echo(out_path)
    sys.exit(EXIT_PARTIAL if model.warnings else EXIT_OK)


@main.command("generate")
@click.argument("name_filter", default="", required=False)
@common_options
def cmd_generate(name_filter, **kw):
    """Generate oracles for every documented method (optionally filtered by a
    Class.method substring)."""
    try:
        cfg = _config_from_flags(**kw)
        model = _build_model(cfg)
        backend = make_backend(cfg.backend)
    except (ConfigError, ModelError, BackendError, OSError) as exc:
        _fatal(str(exc))
    project = _project_name(cfg)
    samples: list[OracleSample] = []
    traces: list[dict] = []
    counts = {"aborted": 0, "declined": 0, "generated": 0}
    for ctx in generation_contexts(model, cfg, name_filter):
        try:
            result = generate_oracle(ctx, backend, backend,
                                     max_tokens=cfg.limitTokens)
        except BackendError as exc:
            _fatal(f"{cfg.backend.kind} backend: {exc}")
        counts[result.status] += 1
        samples.append(OracleSample(
            projectName=project, className=ctx.unit.owner,
            methodSignature=ctx.unit.signatureText,
            methodSource=ctx.unit.sourceText, methodJavadoc=ctx.unit.docText,
            oracleType=ctx.oracleType, tagText=ctx.tag_text,
            oracleText=result.oracleText if result.status == STATUS_GENERATED
            else ""))
        traces.append({
            "className": ctx.unit.owner, "diagnostic": result.diagnostic,
            "methodSignature": ctx.unit.signatureText,
            "oracleType": ctx.oracleType, "status": result.status,
            "steps": [{"candidates": list(s.candidates), "chosen": s.chosen}
                      for s in result.trace],
            "tagText": ctx.tag_text})
    os.makedirs(cfg.outputDir, exist_ok=True)
    oracles_path = os.path.join(cfg.outputDir, "oracles.jsonl")
    write_oracle_dataset(samples, oracles_path)
    with open(os.path.join(cfg.outputDir, "traces.jsonl"), "w",
              encoding="utf-8") as f:
        for t in traces:
            f.write(json.dumps(t, sort_keys=True, ensure_ascii=False) + "\n")
    write_manifest(cfg, "generate", {**counts, "contexts": len(samples)})
    click.echo(oracles_path)
    sys.exit(EXIT_PARTIAL if counts["aborted"] else EXIT_OK)


@main.command("disaggregate")
@click.argument("oracles_file", type=click.Path(exists=True))
@common_options
def cmd_disaggregate(oracles_file, **kw):
    """Split positive oracles into per-position token samples."""
    try:
        cfg = _config_from_flags(**kw)
        model = _build_model(cfg)
        samples = read_oracle_dataset(oracles_file)
    except (ConfigError, ModelError, DatasetError) as exc:
        _fatal(str(exc))
    tokens = []
    breaches = 0
    for s in samples:
        if not s.positive:
            continue
        try:
            tokens.extend(disaggregate(s, model))
        except (ReplayBreachError, DatasetError) as exc:
            breaches += 1
            click.echo(f"warning: {s.className} {s.methodSignature}: {exc}",
                       err=True)
    os.makedirs(cfg.outputDir, exist_ok=True)
    tokens_path = os.path.join(cfg.outputDir, "tokens.jsonl")
    write_token_dataset(tokens, tokens_path)
    stats = statistics(samples)
    write_manifest(cfg, "disaggregate", {
        "breaches": breaches, "oracles": stats["total"],
        "positives": stats["positive"], "tokenSamples": len(tokens)})
    click.echo(tokens_path)
    sys.exit(EXIT_PARTIAL if breaches else EXIT_OK)


@main.command("evaluate")
@click.argument("groundtruth_file", type=click.Path(exists=True))
@click.option("--review", is_flag=True, default=False,
              help="Also export wrong-oracle near misses for human review.")
@common_options
def cmd_evaluate(groundtruth_file, review, **kw):
    """Generate against a ground-truth file and report TP/TN/FP/FN metrics."""
    try:
        cfg = _config_from_flags(**kw)
        model = _build_model(cfg)
        backend = make_backend(cfg.backend)
        entries = read_groundtruth(groundtruth_file)
    except (ConfigError, ModelError, DatasetError, BackendError, OSError) as exc:
        _fatal(str(exc))
    try:
        report, outcomes = run_evaluation(
            model, entries, backend, backend, max_tokens=cfg.limitTokens,
            parallelism=cfg.parallelism, strict=cfg.strictMetrics)
    except BackendError as exc:
        _fatal(f"{cfg.backend.kind} backend: {exc}")
    os.makedirs(cfg.outputDir, exist_ok=True)
    write_outcomes(outcomes, os.path.join(cfg.outputDir, "outcomes.jsonl"))
    text = report.render_text()
    with open(os.path.join(cfg.outputDir, "report.txt"), "w",
              encoding="utf-8") as f:
        f.write(text)
    with open(os.path.join(cfg.outputDir, "report.json"), "w",
              encoding="utf-8") as f:
        json.dump(report.to_dict(), f, sort_keys=True, indent=2)
        f.write("\n")
    if review:
        with open(os.path.join(cfg.outputDir, "review.jsonl"), "w",
                  encoding="utf-8") as f:
            for o in near_misses(outcomes):
                f.write(json.dumps(
                    {"className": o.entry.className,
                     "expected": o.entry.expectedOracle,
                     "generated": o.generated,
                     "methodSignature": o.entry.methodSignature,
                     "oracleType": o.entry.oracleType,
                     "tagText": o.entry.tagText},
                    sort_keys=True, ensure_ascii=False) + "\n")
    c = report.total
    write_manifest(cfg, "evaluate", {
        "entries": len(entries), "fn": c.fn, "fp": c.fp,
        "skipped": report.skipped, "tn": c.tn, "tp": c.tp})
    click.echo(text, nl=False)
    sys.exit(EXIT_PARTIAL if report.skipped else EXIT_OK)


@main.command("inject")
@click.argument("outcomes_file", type=click.Path(exists=True))
@click.argument("test_dir", type=click.Path(exists=True, file_okay=False))
@common_options
def cmd_inject(outcomes_file, test_dir, **kw):
    """Insert generated oracles from an outcomes file into test sources."""
    try:
        cfg = _config_from_flags(**kw)
        model = _build_model(cfg)
    except (ConfigError, ModelError) as exc:
        _fatal(str(exc))
    records = []
    try:
        with open(outcomes_file, encoding="utf-8") as f:
            for lineno, line in enumerate(f, start=1):
                if line.strip():
                    records.append(json.loads(line))
    except (OSError, json.JSONDecodeError) as exc:
        _fatal(f"{outcomes_file}: {exc}")
    test_files = []
    for dirpath, dirnames, filenames in os.walk(test_dir):
        dirnames.sort()
        for fn in sorted(filenames):
            if fn.endswith(".java"):
                test_files.append(os.path.join(dirpath, fn))
    injected_dir = os.path.join(cfg.outputDir, "injected")
    diff_lines: list[str] = []
    injections = skipped = 0
    rewritten: dict[str, str] = {}
    originals: dict[str, str] = {}
    for path in test_files:
        with open(path, encoding="utf-8") as f:
            originals[path] = f.read()
        rewritten[path] = originals[path]
    for rec in records:
        oracle = rec.get("generated") or rec.get("oracleText") or NONE
        if oracle == NONE or not oracle:
            continue
        cls = model.lookup_class(rec["className"])
        method = None
        if cls is not None:
            for m in cls.methods:
                if m.signatureText == rec["methodSignature"]:
                    method = m
        if method is None:
            skipped += 1
            click.echo(f"warning: cannot resolve {rec['className']} "
                       f"{rec['methodSignature']}", err=True)
            continue
        exc_type = ""
        if rec.get("oracleType") == ORACLE_EXCEPT_POST:
            tag = rec.get("tagText", "")
            parts = tag.split()
            exc_type = parts[1] if len(parts) > 1 else "Exception"
        for path in test_files:
            plan = plan_injection(rewritten[path], method, oracle,
                                  rec.get("oracleType", ORACLE_PRE),
                                  exceptionType=exc_type, testFile=path)
            for d in plan.diagnostics:
                click.echo(f"warning: {path}: {d}", err=True)
            if plan.sites:
                rewritten[path] = apply_injection(plan, rewritten[path])
                injections += len(plan.sites)
    os.makedirs(injected_dir, exist_ok=True)
    for path in test_files:
        if rewritten[path] == originals[path]:
            continue
        rel = os.path.relpath(path, test_dir)
        dest = os.path.join(injected_dir, rel)
        os.makedirs(os.path.dirname(dest), exist_ok=True)
        with open(dest, "w", encoding="utf-8") as f:
            f.write(rewritten[path])
        diff_lines.extend(difflib.unified_diff(
            originals[path].splitlines(keepends=True),
            rewritten[path].splitlines(keepends=True),
            fromfile=rel, tofile=rel))
    with open(os.path.join(cfg.outputDir, "injections.diff"), "w",
              encoding="utf-8") as f:
        f.writelines(diff_lines)
    write_manifest(cfg, "inject", {
        "injections": injections, "skipped": skipped,
        "testFiles": len(test_files)})
    click.echo(injected_dir)
    sys.exit(EXIT_PARTIAL if skipped else EXIT_OK)


@main.command("registry")
@click.option("--out", "out_path", default="-",
              help="Write the restriction table to this file ('-' = stdout).")
def cmd_registry(out_path):
    """Export the context-restriction registry as a markdown table."""
    text = registry_markdown()
    if out_path == "-":
        click.echo(text, nl=False)
    else:
        with open(out_path, "w", encoding="utf-8") as f:
            f.write(text)
        click.echo(out_path)
    sys.exit(EXIT_OK)


if __name__ == "__main__":
    main()
