"""Candidate-pool collection: provenance order, doc literals, dedup."""

import pytest

from corpus import context_for

from oraclegen.engine import (
    PROVENANCE_ORDER,
    collect_generic,
    collect_generic_tagged,
    collect_specific,
    mine_doc_literals,
)
from oraclegen.grammar import tokenize


class TestDocLiterals:
    def test_negative_number_from_tag(self, model):
        # "or -1 when absent" mines the literal -1
        ctx = context_for(model, "ArrayTools", "indexOf", "NORMAL_POST",
                          "return")
        assert "-1" in mine_doc_literals(ctx.tag_text)

    def test_quoted_and_numeric(self):
        lits = mine_doc_literals('returns "N/A" or 3.5 units, never -2')
        assert '"N/A"' in lits
        assert "3.5" in lits
        assert "-2" in lits

    def test_no_literal_inside_word(self):
        assert mine_doc_literals("utf8 encoding") == []

    def test_dedup_preserves_first_occurrence(self):
        assert mine_doc_literals("0 or 1 or 0") == ["0", "1"]


class TestGenericPool:
    def test_provenance_monotone(self, model):
        # pool sections appear in canonical order: common, doc-literal,
        # project, method
        ctx = context_for(model, "ArrayTools", "indexOf", "NORMAL_POST",
                          "return")
        pool = collect_generic_tagged(ctx)
        rank = {p: i for i, p in enumerate(PROVENANCE_ORDER)}
        ranks = [rank[prov] for _, prov in pool]
        assert ranks == sorted(ranks)

    def test_no_duplicate_texts(self, model):
        ctx = context_for(model, "Account", "deposit", "PRE", "param")
        texts = [t.text for t in collect_generic(ctx)]
        assert len(texts) == len(set(texts))

    def test_common_tokens_present(self, model):
        ctx = context_for(model, "ObjectConverter", "convert", "PRE")
        texts = [t.text for t in collect_generic(ctx)]
        for t in ("==", "!=", "&&", "(", ")", ";", "true", "false", "null",
                  "0", "1"):
            assert t in texts

    def test_method_tokens(self, model):
        ctx = context_for(model, "Account", "deposit", "PRE", "param")
        texts = [t.text for t in collect_generic(ctx)]
        assert "amount" in texts  # parameter
        assert "this" in texts  # instance method
        assert "balance" in texts  # reachable field of the owner
        assert "methodResultID" not in texts  # precondition

    def test_result_id_in_postcondition(self, model):
        ctx = context_for(model, "Account", "getBalance", "NORMAL_POST")
        assert "methodResultID" in [t.text for t in collect_generic(ctx)]

    def test_no_this_in_static(self, model):
        ctx = context_for(model, "ArrayTools", "contains", "PRE", "param",
                          "array")
        assert "this" not in [t.text for t in collect_generic(ctx)]

    def test_project_class_names(self, model):
        ctx = context_for(model, "ObjectConverter", "convert", "PRE")
        texts = [t.text for t in collect_generic(ctx)]
        assert "Arrays" in texts  # external helper class
        assert "ArrayTools" in texts  # project class with static members


class TestSpecificPool:
    def test_members_of_receiver(self, model):
        ctx = context_for(model, "CsvPrinter", "printHeaders", "EXCEPT_POST",
                          "throws", "SQLException")
        texts = [t.text for t in
                 collect_specific(ctx, tokenize("resultSet."))]
        assert "isClosed" in texts
        assert "close" in texts  # unfiltered pool keeps even void members
        assert "equals" in texts  # Object methods always reachable

    def test_requires_trailing_dot(self, model):
        ctx = context_for(model, "CsvPrinter", "printHeaders", "EXCEPT_POST",
                          "throws", "SQLException")
        with pytest.raises(ValueError):
            collect_specific(ctx, [])
