"""Lexer, parser, renderer, and incremental-legality automaton."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oraclegen.grammar import (
    IllegalTokenError,
    LexicalError,
    OracleSyntaxError,
    canonicalize,
    initial_state,
    parse_text,
    render,
    render_tokens,
    replay,
    token_terminal,
    tokenize,
)


class TestTokenize:
    def test_operators_and_idents(self):
        toks = tokenize("loadFactor <= 0;")
        assert [t.text for t in toks] == ["loadFactor", "<=", "0", ";"]

    def test_member_after_dot(self):
        toks = tokenize("resultSet.isClosed();")
        assert [t.text for t in toks] == ["resultSet", ".", "isClosed", "(",
                                          ")", ";"]

    def test_negative_literal(self):
        toks = tokenize("methodResultID >= -1;")
        assert [t.text for t in toks] == ["methodResultID", ">=", "-1", ";"]

    def test_reserved_words(self):
        texts = [t.text for t in tokenize("this == null;")]
        assert texts == ["this", "==", "null", ";"]

    def test_lexical_error(self):
        with pytest.raises(LexicalError):
            tokenize("a @ b;")


class TestParseRender:
    def test_canonical_spacing(self):
        assert canonicalize("loadFactor<=0;") == "loadFactor <= 0;"
        assert canonicalize("( a == null ) == false ;") == \
            "(a == null) == false;"

    def test_call_rendering_tight(self):
        assert canonicalize("resultSet . isClosed ( ) ;") == \
            "resultSet.isClosed();"

    def test_stream_ternary(self):
        text = ("Arrays.stream(array).anyMatch(jdVar -> jdVar == target)"
                " ? methodResultID == true : methodResultID == false;")
        assert canonicalize(text) == text

    def test_syntax_error(self):
        with pytest.raises(OracleSyntaxError):
            parse_text("a ==;")

    def test_missing_semicolon(self):
        with pytest.raises(OracleSyntaxError):
            parse_text("a == b")

    def test_render_parse_roundtrip(self, samples):
        for s in samples:
            if s.positive:
                canon = canonicalize(s.oracleText)
                assert canonicalize(canon) == canon  # idempotent


class TestAutomaton:
    def test_replay_accepts_corpus(self, samples):
        for s in samples:
            if not s.positive:
                continue
            state = replay(tokenize(canonicalize(s.oracleText)))
            assert state.is_accepting

    def test_prefix_legality(self, samples):
        # every true next token is grammar-legal after its prefix
        for s in samples:
            if not s.positive:
                continue
            toks = tokenize(canonicalize(s.oracleText))
            state = initial_state()
            for t in toks:
                assert token_terminal(t) in state.legal_terminals()
                state = state.advance(t)

    def test_illegal_token_rejected(self):
        state = initial_state()
        with pytest.raises(IllegalTokenError):
            state.advance(tokenize("a == b;")[1])  # '==' cannot start

    def test_no_nested_ternary(self):
        toks = tokenize("a == b ? a == b : a")
        state = replay(toks)
        assert "q" not in state.legal_terminals()


@st.composite
def random_oracle_tokens(draw):
    """Grammar-directed random token sequences (no typing), always accepted."""
    from oraclegen.grammar import identifier, literal_of, operator, punct
    state = initial_state()
    out = []
    mk = {
        "ident": lambda: identifier("x"),
        "member": lambda: tokenize("x.y")[2],
        "intlit": lambda: literal_of("1"),
        "semi": lambda: punct(";"),
        "lparen": lambda: punct("("),
        "rparen": lambda: punct(")"),
        "dot": lambda: punct("."),
        "comma": lambda: punct(","),
        "eq": lambda: operator("=="),
        "lt": lambda: operator("<"),
        "and": lambda: operator("&&"),
    }
    for _ in range(24):
        legal = [t for t in state.legal_terminals() if t in mk]
        if not legal:
            break
        if "semi" in legal and len(out) >= 3:
            term = "semi"
        else:
            term = draw(st.sampled_from(sorted(legal)))
        tok = mk[term]()
        out.append(tok)
        state = state.advance(tok)
        if term == "semi":
            break
    return out, state


@given(random_oracle_tokens())
@settings(max_examples=60, deadline=None)
def test_automaton_agrees_with_parser(pair):
    toks, state = pair
    if toks and toks[-1].text == ";":
        assert state.is_accepting
        text = render_tokens(toks)
        assert render(parse_text(text)) == text
