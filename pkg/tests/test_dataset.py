"""Dataset round-trips, disaggregation/reassembly, and validation errors."""

import json

import pytest

from corpus import corpus_samples, positive_samples

from oraclegen.dataset import (
    DatasetError,
    OracleSample,
    ReplayBreachError,
    TokenSample,
    disaggregate,
    read_oracle_dataset,
    read_token_dataset,
    reassemble,
    statistics,
    tag_from_text,
    write_oracle_dataset,
    write_token_dataset,
)


class TestOracleRoundTrip:
    def test_write_read_identity(self, model, samples, tmp_path):
        path = tmp_path / "oracles.jsonl"
        write_oracle_dataset(samples, str(path))
        assert read_oracle_dataset(str(path)) == samples

    def test_lines_sorted_and_versioned(self, samples, tmp_path):
        path = tmp_path / "oracles.jsonl"
        write_oracle_dataset(samples, str(path))
        for line in path.read_text().splitlines():
            rec = json.loads(line)
            assert rec["schemaVersion"] == "v1"
            assert list(rec) == sorted(rec)

    def test_malformed_json_cites_line(self, samples, tmp_path):
        path = tmp_path / "bad.jsonl"
        write_oracle_dataset(samples[:2], str(path))
        with open(path, "a") as fh:
            fh.write("{nope\n")
        with pytest.raises(DatasetError, match=r"bad\.jsonl:3: malformed"):
            read_oracle_dataset(str(path))

    def test_missing_field_cites_line(self, tmp_path):
        path = tmp_path / "bad.jsonl"
        path.write_text('{"schemaVersion": "v1", "className": "C"}\n')
        with pytest.raises(DatasetError, match=r"bad\.jsonl:1: missing field"):
            read_oracle_dataset(str(path))

    def test_wrong_schema_version(self, tmp_path):
        path = tmp_path / "bad.jsonl"
        path.write_text('{"schemaVersion": "v0"}\n')
        with pytest.raises(DatasetError, match="schemaVersion"):
            read_oracle_dataset(str(path))

    def test_unparsable_oracle_rejected(self, samples, tmp_path):
        path = tmp_path / "bad.jsonl"
        broken = OracleSample(**{**samples[0].__dict__,
                                 "oracleText": "a == ;"})
        write_oracle_dataset([broken], str(path))
        with pytest.raises(DatasetError, match="does not parse"):
            read_oracle_dataset(str(path))

    def test_duplicate_sample_warns(self, samples, tmp_path, caplog):
        path = tmp_path / "dup.jsonl"
        write_oracle_dataset([samples[0], samples[0]], str(path))
        with caplog.at_level("WARNING", logger="oraclegen.dataset"):
            out = read_oracle_dataset(str(path))
        assert len(out) == 2
        assert any("duplicate sample" in r.message for r in caplog.records)


class TestTagFromText:
    def test_param(self):
        t = tag_from_text("@param series the series index (zero based)", "PRE")
        assert (t.kind, t.target) == ("param", "series")
        assert t.text.startswith("the series index")

    def test_throws_exception_alias(self):
        t = tag_from_text("@exception IOException on failure", "EXCEPT_POST")
        assert (t.kind, t.target) == ("throws", "IOException")

    def test_return(self):
        t = tag_from_text("@return the balance", "NORMAL_POST")
        assert (t.kind, t.target, t.text) == ("return", "", "the balance")

    def test_free_text(self):
        t = tag_from_text("Converts the object.", "PRE")
        assert t.kind == "free-text"

    def test_empty(self):
        assert tag_from_text("", "PRE") is None


class TestDisaggregate:
    def test_round_trip_identity(self, model, samples):
        # reassemble(disaggregate(s)) is the canonical oracle text, for the
        # whole corpus
        for s in samples:
            if not s.positive:
                continue
            token_samples = disaggregate(s, model)
            assert reassemble(token_samples) == \
                token_samples[0].oracleText

    def test_negative_rejected(self, model, samples):
        neg = next(s for s in samples if not s.positive)
        with pytest.raises(DatasetError, match="negative"):
            disaggregate(neg, model)

    def test_every_prefix_contains_truth(self, model, samples):
        for s in positive_samples(model)[:5]:
            for ts in disaggregate(s, model):
                assert ts.nextToken in ts.legalTokens

    def test_breach_reports_restriction(self, model, samples):
        # a trivially-true oracle is vetoed at the closing ';' (R13)
        base = next(s for s in samples if s.positive)
        trivial = OracleSample(**{**base.__dict__, "oracleText": "true;"})
        with pytest.raises(ReplayBreachError) as exc:
            disaggregate(trivial, model)
        assert exc.value.position == 1
        assert exc.value.token == ";"
        assert exc.value.restriction == "R13"
        assert "violates R13" in str(exc.value)

    def test_token_round_trip_via_file(self, model, samples, tmp_path):
        s = next(x for x in samples if x.positive)
        token_samples = disaggregate(s, model)
        path = tmp_path / "tokens.jsonl"
        write_token_dataset(token_samples, str(path))
        assert read_token_dataset(str(path)) == token_samples

    def test_invalid_next_token_rejected(self, model, samples, tmp_path):
        s = next(x for x in samples if x.positive)
        ts = disaggregate(s, model)[0]
        path = tmp_path / "tokens.jsonl"
        write_token_dataset([ts], str(path))
        rec = json.loads(path.read_text())
        rec["nextToken"] = "definitely-not-legal"
        path.write_text(json.dumps(rec) + "\n")
        with pytest.raises(DatasetError, match="not in legalTokens"):
            read_token_dataset(str(path))


class TestReassemble:
    def test_empty_rejected(self):
        with pytest.raises(DatasetError, match="no token samples"):
            reassemble([])

    def test_mixed_oracles_rejected(self, model, samples):
        pos = [s for s in samples if s.positive]
        a = disaggregate(pos[0], model)
        b = disaggregate(pos[1], model)
        with pytest.raises(DatasetError, match="more than one oracle"):
            reassemble(a + b)

    def test_gap_detected(self, model, samples):
        s = next(x for x in samples if x.positive)
        ts = disaggregate(s, model)
        assert len(ts) >= 3
        with pytest.raises(DatasetError, match="gap at position"):
            reassemble([ts[0], ts[2]])


class TestStatistics:
    def test_counts(self, samples):
        st = statistics(samples)
        assert st["total"] == len(samples)
        assert st["positive"] + st["negative"] == st["total"]
        assert sum(st["byOracleType"].values()) == st["total"]
        assert st["positive"] >= 30
