"""Fixture oracle corpus: every sample replays through the candidate filter,
and the scripted backend reproduces each oracle byte-for-byte."""

import os

from oraclegen.codemodel import build_project_model
from oraclegen.dataset import OracleSample
from oraclegen.engine import GenerationContext

FIXTURES = os.path.join(os.path.dirname(__file__), "fixtures")
PROJECT_SRC = os.path.join(FIXTURES, "project", "src")
SIG_FILES = (os.path.join(FIXTURES, "sig", "external.jsonl"),)
PROJECT_NAME = "fixture-project"

# (className, methodName, oracleType, tagKind, tagTarget, oracleText)
# oracleText "" marks a negative sample (no oracle should be generated).
CORPUS = [
    # quoted oracle: precondition from "the series index (zero based)"
    ("ChartRenderer", "setSeriesItemLabelGenerator", "PRE", "param", "series",
     "series >= 0;"),
    ("ChartRenderer", "setSeriesItemLabelGenerator", "PRE", "param",
     "generator", ""),
    ("ChartRenderer", "getSeriesItemLabelGenerator", "PRE", "param", "series",
     "series >= 0;"),
    ("ChartRenderer", "getSeriesItemLabelGenerator", "NORMAL_POST", "return",
     "", ""),
    # quoted oracle: the four-token disaggregation example
    ("HashContainer", "HashContainer", "EXCEPT_POST", "throws",
     "IllegalArgumentException", "loadFactor <= 0;"),
    ("HashContainer", "HashContainer", "PRE", "param", "loadFactor",
     "loadFactor > 0;"),
    ("HashContainer", "HashContainer", "PRE", "param", "initialCapacity",
     "initialCapacity >= 0;"),
    ("HashContainer", "size", "NORMAL_POST", "return", "",
     "methodResultID >= 0;"),
    # quoted oracle: stream quantifier with ternary over the return value
    ("ArrayTools", "contains", "NORMAL_POST", "return", "",
     "Arrays.stream(array).anyMatch(jdVar -> jdVar == target)"
     " ? methodResultID == true : methodResultID == false;"),
    ("ArrayTools", "contains", "PRE", "param", "array",
     "(array == null) == false;"),
    ("ArrayTools", "indexOf", "NORMAL_POST", "return", "",
     "methodResultID >= -1;"),
    ("ArrayTools", "indexOf", "EXCEPT_POST", "throws", "NullPointerException",
     "array == null;"),
    # quoted oracle: external-interface member call
    ("CsvPrinter", "printHeaders", "EXCEPT_POST", "throws", "SQLException",
     "resultSet.isClosed();"),
    ("CsvPrinter", "printHeaders", "EXCEPT_POST", "throws", "IOException",
     ""),
    ("CsvPrinter", "printHeaders", "PRE", "param", "resultSet",
     "(resultSet == null) == false;"),
    # quoted oracle: exceptional null-parameter condition
    ("Decoder", "decode", "EXCEPT_POST", "throws", "DecoderException",
     "source == null;"),
    ("Decoder", "decode", "NORMAL_POST", "return", "",
     "(methodResultID == null) == false;"),
    ("Decoder", "decode", "PRE", "param", "source", ""),
    # quoted oracle: exceptional null-parameter condition
    ("Codec64", "encodeInteger", "EXCEPT_POST", "throws",
     "NullPointerException", "bigInteger == null;"),
    ("Codec64", "encodeInteger", "NORMAL_POST", "return", "",
     "(methodResultID == null) == false;"),
    # the Class.isArray() selector step
    ("ArrayListIterator", "ArrayListIterator", "EXCEPT_POST", "throws",
     "IllegalArgumentException", "array.getClass().isArray() == false;"),
    ("ArrayListIterator", "ArrayListIterator", "EXCEPT_POST", "throws",
     "NullPointerException", "array == null;"),
    ("ArrayListIterator", "ArrayListIterator", "PRE", "param", "array",
     "(array == null) == false && array.getClass().isArray();"),
    # quoted oracle: negated null-check precondition
    ("ObjectConverter", "convert", "PRE", "param", "object",
     "(object == null) == false;"),
    ("ObjectConverter", "convert", "NORMAL_POST", "return", "",
     "(methodResultID == null) == false;"),
    ("Account", "deposit", "PRE", "param", "amount", "amount > 0;"),
    ("Account", "deposit", "EXCEPT_POST", "throws", "IllegalStateException",
     "this.closed == true;"),
    ("Account", "deposit", "EXCEPT_POST", "throws",
     "IllegalArgumentException", "amount <= 0;"),
    ("Account", "withdraw", "PRE", "param", "amount",
     "amount <= this.balance;"),
    ("Account", "withdraw", "EXCEPT_POST", "throws",
     "IllegalArgumentException", "amount > this.balance;"),
    ("Account", "getBalance", "NORMAL_POST", "return", "",
     "methodResultID >= 0;"),
    ("Account", "isClosed", "NORMAL_POST", "return", "",
     "methodResultID == this.closed;"),
    ("RangeSlice", "clamp", "PRE", "param", "low", "low <= high;"),
    ("RangeSlice", "clamp", "NORMAL_POST", "return", "",
     "methodResultID >= low && methodResultID <= high;"),
    ("RangeSlice", "clamp", "EXCEPT_POST", "throws",
     "IllegalArgumentException", "low > high;"),
    ("TextScanner", "startsWith", "PRE", "param", "prefix",
     "(prefix == null) == false && prefix.length() > 0;"),
    ("TextScanner", "startsWith", "NORMAL_POST", "return", "", ""),
    ("TextScanner", "compareTo", "EXCEPT_POST", "throws", "ClassCastException",
     "(other instanceof TextScanner) == false;"),
]


def fixture_model():
    return build_project_model(PROJECT_SRC, SIG_FILES)


def _tag_text(tag) -> str:
    if tag.kind == "param":
        return f"@param {tag.target} {tag.text}"
    if tag.kind == "return":
        return f"@return {tag.text}"
    if tag.kind == "throws":
        return f"@throws {tag.target} {tag.text}"
    return tag.text


def corpus_samples(model=None) -> list[OracleSample]:
    model = model or fixture_model()
    samples = []
    for cls_name, m_name, otype, kind, target, oracle in CORPUS:
        cls = model.lookup_class(cls_name)
        method = next(m for m in cls.methods if m.name == m_name)
        tag = next(t for t in method.tags
                   if t.kind == kind and (not target or t.target == target))
        samples.append(OracleSample(
            projectName=PROJECT_NAME, className=cls_name,
            methodSignature=method.signatureText,
            methodSource=method.sourceText, methodJavadoc=method.docText,
            oracleType=otype, tagText=_tag_text(tag), oracleText=oracle))
    return samples


def positive_samples(model=None) -> list[OracleSample]:
    return [s for s in corpus_samples(model) if s.positive]


def context_for(model, cls_name, m_name, otype, kind=None, target=None):
    cls = model.lookup_class(cls_name)
    method = next(m for m in cls.methods if m.name == m_name)
    tag = next(t for t in method.tags
               if (kind is None or t.kind == kind)
               and (target is None or t.target == target))
    exc = tag.target if tag.kind == "throws" else ""
    return GenerationContext(model=model, unit=method, oracleType=otype,
                             tag=tag, exceptionType=exc)
