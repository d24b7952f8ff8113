"""Ground-truth evaluation: normalize generated oracles, classify them into
TP/TN/FP/FN, and report accuracy/precision/recall/F1 per project and total."""

from __future__ import annotations

import json
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Optional

from .codemodel import ProjectModel
from .dataset import DatasetError, OracleSample, context_for_sample
from .generation import Backend, STATUS_GENERATED, generate_oracle
from .grammar import ast_nodes as A
from .grammar import parse_text, render

logger = logging.getLogger(__name__)

NONE = "NONE"

_GT_FIELDS = ("projectName", "className", "methodSignature", "oracleType",
              "tagText", "expectedOracle")

KLASSES = ("TP", "TN", "FP", "FN")


@dataclass(frozen=True)
class GroundTruthEntry:
    projectName: str
    className: str
    methodSignature: str
    oracleType: str
    tagText: str
    expectedOracle: str  # canonical text, or NONE


@dataclass(frozen=True)
class Outcome:
    entry: GroundTruthEntry
    generated: str  # canonical text, or NONE
    klass: str
    # a wrong (non-matching, non-NONE) oracle: FP by default, plus an FN
    # in strict accounting
    wrongOracle: bool = False


def _is_literalish(node) -> bool:
    return isinstance(node, A.Literal)


def _swap_comparisons(node):
    if isinstance(node, A.OracleAst):
        return A.OracleAst(root=_swap_comparisons(node.root))
    if isinstance(node, A.Ternary):
        return A.Ternary(guard=_swap_comparisons(node.guard),
                         then=_swap_comparisons(node.then),
                         els=_swap_comparisons(node.els))
    if isinstance(node, A.BoolOp):
        return A.BoolOp(op=node.op, operands=tuple(
            _swap_comparisons(p) for p in node.operands))
    if isinstance(node, A.Paren):
        return A.Paren(prop=_swap_comparisons(node.prop))
    if isinstance(node, A.Comparison):
        left = _swap_comparisons(node.left)
        right = _swap_comparisons(node.right)
        if (node.op in ("==", "!=") and _is_literalish(left)
                and not _is_literalish(right)
                and not isinstance(right, A.Arith)):
            left, right = right, left
        return A.Comparison(left=left, op=node.op, right=right)
    if isinstance(node, A.Lambda):
        return A.Lambda(var=node.var, body=_swap_comparisons(node.body))
    if isinstance(node, A.Call):
        return A.Call(name=node.name, args=tuple(
            _swap_comparisons(a) for a in node.args))
    if isinstance(node, A.Chain):
        return A.Chain(base=node.base, segments=tuple(
            _swap_comparisons(s) for s in node.segments))
    if isinstance(node, A.Arith):
        return A.Arith(terms=tuple(_swap_comparisons(t) for t in node.terms),
                       ops=node.ops)
    return node


def normalize(oracleText: str) -> str:
    """Canonical rendering plus literal/null-on-the-right for ==/!=."""
    if oracleText == NONE:
        return NONE
    return render(_swap_comparisons(parse_text(oracleText)))


def classify(expected: str, generated: str) -> str:
    """Both arguments normalized; returns one of TP/TN/FP/FN. A wrong oracle
    (both non-NONE, unequal) counts as FP; strict accounting adds the FN at
    reporting time, never here."""
    if expected == NONE:
        return "TN" if generated == NONE else "FP"
    if generated == NONE:
        return "FN"
    return "TP" if generated == expected else "FP"


def make_outcome(entry: GroundTruthEntry, generated: str) -> Outcome:
    klass = classify(entry.expectedOracle, generated)
    wrong = (entry.expectedOracle != NONE and generated != NONE
             and generated != entry.expectedOracle)
    return Outcome(entry=entry, generated=generated, klass=klass,
                   wrongOracle=wrong)


# ---------------------------------------------------------------------------
# Metrics

@dataclass(frozen=True)
class Counts:
    tp: int = 0
    tn: int = 0
    fp: int = 0
    fn: int = 0

    @property
    def total(self) -> int:
        return self.tp + self.tn + self.fp + self.fn

    @property
    def accuracy(self) -> Optional[Fraction]:
        return _ratio(self.tp + self.tn, self.total)

    @property
    def precision(self) -> Optional[Fraction]:
        return _ratio(self.tp, self.tp + self.fp)

    @property
    def recall(self) -> Optional[Fraction]:
        return _ratio(self.tp, self.tp + self.fn)

    @property
    def f1(self) -> Optional[Fraction]:
        p, r = self.precision, self.recall
        if p is None or r is None or p + r == 0:
            return None
        return 2 * p * r / (p + r)


def _ratio(num: int, den: int) -> Optional[Fraction]:
    return None if den == 0 else Fraction(num, den)


def percent(value: Optional[Fraction]) -> Optional[int]:
    """Half-up rounding to an integer percent; None stays None (N/A)."""
    if value is None:
        return None
    scaled = value * 100
    return int(scaled + Fraction(1, 2)) if scaled >= 0 else -int(-scaled + Fraction(1, 2))


def fmt_percent(value: Optional[Fraction]) -> str:
    p = percent(value)
    return "N/A" if p is None else f"{p}%"


@dataclass(frozen=True)
class MetricsReport:
    groups: tuple[tuple[str, Counts], ...]  # per project, input order
    total: Counts
    strict: bool = False
    skipped: int = 0

    def to_dict(self) -> dict:
        def group(name: str, c: Counts) -> dict:
            return {"accuracy": fmt_percent(c.accuracy),
                    "f1": fmt_percent(c.f1),
                    "fn": c.fn, "fp": c.fp,
                    "precision": fmt_percent(c.precision),
                    "project": name,
                    "recall": fmt_percent(c.recall),
                    "tn": c.tn, "tp": c.tp}
        return {"groups": [group(n, c) for n, c in self.groups],
                "skipped": self.skipped,
                "strict": self.strict,
                "total": group("Total", self.total)}

    def render_text(self) -> str:
        header = ("Project", "TP", "TN", "FP", "FN", "A", "P", "R", "F1")
        rows = [header]
        for name, c in self.groups + (("Total", self.total),):
            rows.append((name, str(c.tp), str(c.tn), str(c.fp), str(c.fn),
                         fmt_percent(c.accuracy), fmt_percent(c.precision),
                         fmt_percent(c.recall), fmt_percent(c.f1)))
        widths = [max(len(r[i]) for r in rows) for i in range(len(header))]
        lines = []
        for i, r in enumerate(rows):
            cells = [r[0].ljust(widths[0])]
            cells += [r[j].rjust(widths[j]) for j in range(1, len(header))]
            lines.append("  ".join(cells).rstrip())
            if i == 0:
                lines.append("-" * len(lines[0]))
        if self.skipped:
            lines.append(f"(skipped: {self.skipped} unresolvable entries)")
        return "\n".join(lines) + "\n"


def counts_from_outcomes(outcomes: list[Outcome], strict: bool = False) -> Counts:
    tally = {k: 0 for k in KLASSES}
    for o in outcomes:
        tally[o.klass] += 1
        if strict and o.wrongOracle:
            tally["FN"] += 1
    return Counts(tp=tally["TP"], tn=tally["TN"], fp=tally["FP"],
                  fn=tally["FN"])


def compute_metrics(outcomes: list[Outcome], strict: bool = False,
                    skipped: int = 0) -> MetricsReport:
    by_project: dict[str, list[Outcome]] = {}
    for o in outcomes:
        by_project.setdefault(o.entry.projectName, []).append(o)
    groups = tuple((name, counts_from_outcomes(group, strict))
                   for name, group in sorted(by_project.items()))
    return MetricsReport(groups=groups,
                         total=counts_from_outcomes(outcomes, strict),
                         strict=strict, skipped=skipped)


# ---------------------------------------------------------------------------
# Ground truth I/O and the end-to-end run

def read_groundtruth(path: str) -> list[GroundTruthEntry]:
    entries: list[GroundTruthEntry] = []
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
            for f in _GT_FIELDS:
                if f not in rec:
                    raise DatasetError(f"{path}:{lineno}: missing field {f!r}")
            e = GroundTruthEntry(**{f: rec[f] for f in _GT_FIELDS})
            if e.expectedOracle != NONE:
                try:
                    e = replace(e, expectedOracle=normalize(e.expectedOracle))
                except Exception as exc:
                    raise DatasetError(
                        f"{path}:{lineno}: expectedOracle does not parse: {exc}")
            key = (e.className, e.methodSignature, e.oracleType, e.tagText)
            if key in seen:
                raise DatasetError(f"{path}:{lineno}: duplicate entry {key}")
            seen.add(key)
            entries.append(e)
    return entries


def write_outcomes(outcomes: list[Outcome], path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for o in outcomes:
            rec = {**{f: getattr(o.entry, f) for f in _GT_FIELDS},
                   "generated": o.generated, "klass": o.klass,
                   "wrongOracle": o.wrongOracle}
            fh.write(json.dumps(rec, sort_keys=True, ensure_ascii=False) + "\n")


def near_misses(outcomes: list[Outcome]) -> list[Outcome]:
    """Wrong-oracle outcomes for human review (possible semantic matches)."""
    return [o for o in outcomes if o.wrongOracle]


def _sample_for(entry: GroundTruthEntry) -> OracleSample:
    return OracleSample(projectName=entry.projectName,
                        className=entry.className,
                        methodSignature=entry.methodSignature,
                        methodSource="", methodJavadoc="",
                        oracleType=entry.oracleType, tagText=entry.tagText,
                        oracleText="")


def _evaluate_entry(model: ProjectModel, entry: GroundTruthEntry,
                    evaluator: Backend, selector: Backend,
                    max_tokens: int) -> Outcome:
    ctx = context_for_sample(model, _sample_for(entry))
    result = generate_oracle(ctx, evaluator, selector, max_tokens=max_tokens)
    if result.status == STATUS_GENERATED:
        generated = normalize(result.oracleText)
    else:
        generated = NONE
        if result.diagnostic:
            logger.warning("generation aborted for %s %s: %s",
                           entry.className, entry.methodSignature,
                           result.diagnostic)
    return make_outcome(entry, generated)


def run_evaluation(model: ProjectModel, entries: list[GroundTruthEntry],
                   evaluator: Backend, selector: Backend,
                   max_tokens: int = 64, parallelism: int = 1,
                   strict: bool = False) -> tuple[MetricsReport, list[Outcome]]:
    """Outcome list is ordered by input order regardless of completion order."""
    resolvable: list[GroundTruthEntry] = []
    skipped = 0
    for e in entries:
        try:
            context_for_sample(model, _sample_for(e))
        except Exception as exc:
            logger.warning("skipping unresolvable entry %s %s: %s",
                           e.className, e.methodSignature, exc)
            skipped += 1
            continue
        resolvable.append(e)

    serial = getattr(evaluator, "serial", True) or getattr(
        selector, "serial", True)
    if parallelism > 1 and not serial:
        with ThreadPoolExecutor(max_workers=parallelism) as pool:
            futures = [pool.submit(_evaluate_entry, model, e, evaluator,
                                   selector, max_tokens) for e in resolvable]
            outcomes = [f.result() for f in futures]
    else:
        outcomes = [_evaluate_entry(model, e, evaluator, selector, max_tokens)
                    for e in resolvable]
    report = compute_metrics(outcomes, strict=strict, skipped=skipped)
    return report, outcomes
