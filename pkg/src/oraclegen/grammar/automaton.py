"""Incremental next-token legality for the oracle grammar.

An Earley recognizer over token-kind terminals. States are immutable; each
`advance` returns a new state. `legal_next` reports the terminals that may
follow, each tagged with the grammar slot it would fill; the token engine
refines those slots with type information.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .tokens import (
    K_CALL,
    K_IDENT,
    K_LITERAL,
    K_MEMBER,
    K_OPERATOR,
    K_PUNCT,
    K_RESERVED,
    Token,
)

# Productions. Nonterminals are uppercase; everything else is a terminal.
_RULES: list[tuple[str, tuple[str, ...]]] = [
    ("S", ("PROP", "semi")),
    ("S", ("PROP", "q", "PROP", "colon", "PROP", "semi")),
    ("PROP", ("CONJ",)),
    ("PROP", ("PROP", "or", "CONJ")),
    ("CONJ", ("ATOM",)),
    ("CONJ", ("CONJ", "and", "ATOM")),
    ("ATOM", ("PARENP",)),
    ("ATOM", ("PARENP", "EQOP", "RHS")),
    ("ATOM", ("CHAIN",)),
    ("ATOM", ("CHAIN", "CMPOP", "RHS")),
    ("ATOM", ("CHAIN", "instanceof", "CNAME")),
    ("ATOM", ("LIT", "CMPOP", "RHS")),
    ("ATOM", ("true",)),
    ("ATOM", ("false",)),
    ("PARENP", ("lparen", "PROP", "rparen")),
    ("CMPOP", ("eq",)), ("CMPOP", ("ne",)),
    ("CMPOP", ("lt",)), ("CMPOP", ("le",)),
    ("CMPOP", ("gt",)), ("CMPOP", ("ge",)),
    ("EQOP", ("eq",)), ("EQOP", ("ne",)),
    ("RHS", ("TERM",)),
    ("RHS", ("RHS", "AOP", "TERM")),
    ("AOP", ("plus",)), ("AOP", ("minus",)), ("AOP", ("star",)),
    ("AOP", ("slash",)), ("AOP", ("percent",)),
    ("TERM", ("CHAIN",)), ("TERM", ("LIT",)), ("TERM", ("PARENP",)),
    ("LIT", ("intlit",)), ("LIT", ("floatlit",)), ("LIT", ("strlit",)),
    ("LIT", ("charlit",)), ("LIT", ("null",)), ("LIT", ("true",)),
    ("LIT", ("false",)),
    ("CNAME", ("ident",)),
    ("CHAIN", ("BASE",)),
    ("CHAIN", ("CHAIN", "dot", "member")),
    ("CHAIN", ("CHAIN", "dot", "member", "CALL")),
    ("BASE", ("ident",)), ("BASE", ("this",)),
    ("BASE", ("methodResultID",)), ("BASE", ("jdVar",)),
    ("CALL", ("lparen", "rparen")),
    ("CALL", ("lparen", "ARGS", "rparen")),
    ("CALL", ("lparen", "jdVar", "arrow", "PROP", "rparen")),
    ("ARGS", ("ARG",)),
    ("ARGS", ("ARGS", "comma", "ARG")),
    ("ARG", ("LIT",)),
    ("ARG", ("ABASE",)),
    ("ARG", ("ABASE", "dot", "member")),
    ("ABASE", ("ident",)), ("ABASE", ("this",)),
    ("ABASE", ("methodResultID",)), ("ABASE", ("jdVar",)),
]

_NONTERMINALS = {lhs for lhs, _ in _RULES}
_BY_LHS: dict[str, list[int]] = {}
for _i, (_lhs, _) in enumerate(_RULES):
    _BY_LHS.setdefault(_lhs, []).append(_i)

_OP_TERMINAL = {
    "==": "eq", "!=": "ne", "<": "lt", "<=": "le", ">": "gt", ">=": "ge",
    "&&": "and", "||": "or", "+": "plus", "-": "minus", "*": "star",
    "/": "slash", "%": "percent", "instanceof": "instanceof",
    "?": "q", ":": "colon", "->": "arrow",
}
_PUNCT_TERMINAL = {"(": "lparen", ")": "rparen", ".": "dot", ",": "comma",
                   ";": "semi"}
_LIT_TERMINAL = {"integer": "intlit", "floating": "floatlit",
                 "string": "strlit", "char": "charlit"}


def token_terminal(tok: Token) -> str:
    """Map a concrete token to its grammar terminal."""
    if tok.kind == K_OPERATOR:
        return _OP_TERMINAL[tok.text]
    if tok.kind == K_PUNCT:
        return _PUNCT_TERMINAL[tok.text]
    if tok.kind == K_LITERAL:
        return _LIT_TERMINAL[tok.subtype]
    if tok.kind == K_RESERVED:
        return tok.text  # true/false/null/this/methodResultID/jdVar
    if tok.kind in (K_MEMBER, K_CALL):
        return "member"
    if tok.kind == K_IDENT:
        return "ident"
    raise ValueError(f"unmappable token: {tok!r}")


# The kind and slot constraint a terminal stands for in legal_next_kinds.
# ident and jdVar are further disambiguated by the predicting nonterminal.
_TERMINAL_INFO = {
    "eq": (K_OPERATOR, "comparison-after-operand"),
    "ne": (K_OPERATOR, "comparison-after-operand"),
    "lt": (K_OPERATOR, "comparison-after-operand"),
    "le": (K_OPERATOR, "comparison-after-operand"),
    "gt": (K_OPERATOR, "comparison-after-operand"),
    "ge": (K_OPERATOR, "comparison-after-operand"),
    "and": (K_OPERATOR, "boolean-connective"),
    "or": (K_OPERATOR, "boolean-connective"),
    "plus": (K_OPERATOR, "arithmetic-in-rhs"),
    "minus": (K_OPERATOR, "arithmetic-in-rhs"),
    "star": (K_OPERATOR, "arithmetic-in-rhs"),
    "slash": (K_OPERATOR, "arithmetic-in-rhs"),
    "percent": (K_OPERATOR, "arithmetic-in-rhs"),
    "instanceof": (K_OPERATOR, "type-test-after-operand"),
    "q": (K_OPERATOR, "ternary-after-guard"),
    "colon": (K_OPERATOR, "ternary-else"),
    "arrow": (K_OPERATOR, "lambda-arrow"),
    "lparen": (K_PUNCT, "open-group-or-call"),
    "rparen": (K_PUNCT, "close-group"),
    "dot": (K_PUNCT, "member-access"),
    "comma": (K_PUNCT, "argument-separator"),
    "semi": (K_PUNCT, "oracle-end"),
    "member": (K_MEMBER, "member-after-dot"),
    "intlit": (K_LITERAL, "operand"),
    "floatlit": (K_LITERAL, "operand"),
    "strlit": (K_LITERAL, "operand"),
    "charlit": (K_LITERAL, "operand"),
    "true": (K_RESERVED, "operand"),
    "false": (K_RESERVED, "operand"),
    "null": (K_RESERVED, "operand"),
    "this": (K_RESERVED, "operand-start"),
    "methodResultID": (K_RESERVED, "operand-start"),
}


class IllegalTokenError(Exception):
    pass


# Memoized (chart, terminal) -> successor state transitions.
_TRANSITIONS: dict = {}


# An Earley item: (rule index, dot position, origin set index).
Item = tuple[int, int, int]


def _closure(sets: list[set[Item]]) -> None:
    """Predict and complete the last item set in place."""
    pos = len(sets) - 1
    current = sets[pos]
    work = list(current)
    while work:
        rule_idx, dot, origin = work.pop()
        lhs, rhs = _RULES[rule_idx]
        if dot < len(rhs):
            sym = rhs[dot]
            if sym in _NONTERMINALS:
                for ridx in _BY_LHS[sym]:
                    item = (ridx, 0, pos)
                    if item not in current:
                        current.add(item)
                        work.append(item)
        else:
            for p_idx, p_dot, p_origin in list(sets[origin]):
                p_rhs = _RULES[p_idx][1]
                if p_dot < len(p_rhs) and p_rhs[p_dot] == lhs:
                    item = (p_idx, p_dot + 1, p_origin)
                    if item not in current:
                        current.add(item)
                        work.append(item)


@dataclass(frozen=True)
class GrammarState:
    """Immutable recognizer state after consuming a token prefix."""
    _chart: tuple[frozenset[Item], ...]

    @property
    def position(self) -> int:
        return len(self._chart) - 1

    def legal_terminals(self) -> dict[str, frozenset[str]]:
        """Terminal -> set of predicting nonterminals."""
        cached = self.__dict__.get("_legal")
        if cached is not None:
            return cached
        out: dict[str, set[str]] = {}
        for rule_idx, dot, _ in self._chart[-1]:
            lhs, rhs = _RULES[rule_idx]
            if dot < len(rhs) and rhs[dot] not in _NONTERMINALS:
                out.setdefault(rhs[dot], set()).add(lhs)
        result = {t: frozenset(s) for t, s in out.items()}
        self.__dict__["_legal"] = result
        return result

    def legal_next_kinds(self) -> frozenset[tuple[str, str]]:
        """(token kind, slot constraint) pairs legal at this position."""
        pairs: set[tuple[str, str]] = set()
        for term, lhss in self.legal_terminals().items():
            if term == "ident":
                if lhss & {"BASE", "ABASE"}:
                    pairs.add((K_IDENT, "operand-start"))
                if "CNAME" in lhss:
                    pairs.add((K_IDENT, "class-name-after-instanceof"))
                continue
            if term == "jdVar":
                if lhss & {"BASE", "ABASE"}:
                    pairs.add((K_RESERVED, "operand-start"))
                if "CALL" in lhss:
                    pairs.add((K_RESERVED, "lambda-binder"))
                continue
            kind, constraint = _TERMINAL_INFO[term]
            pairs.add((kind, constraint))
        return frozenset(pairs)

    def accepts(self, tok: Token) -> bool:
        return token_terminal(tok) in self.legal_terminals()

    def advance(self, tok: Token) -> "GrammarState":
        term = token_terminal(tok)
        legal = self.legal_terminals()
        if term not in legal:
            raise IllegalTokenError(
                f"token {tok.text!r} ({term}) illegal at position {self.position}; "
                f"legal: {sorted(legal)}")
        key = (self._chart, term)
        memo = _TRANSITIONS.get(key)
        if memo is not None:
            return memo
        new: set[Item] = set()
        for rule_idx, dot, origin in self._chart[-1]:
            rhs = _RULES[rule_idx][1]
            if dot < len(rhs) and rhs[dot] == term:
                new.add((rule_idx, dot + 1, origin))
        # _closure only mutates the final set; earlier sets are read-only and
        # can be shared with this state's chart
        sets: list = list(self._chart)
        sets.append(new)
        _closure(sets)
        result = GrammarState(tuple(self._chart) + (frozenset(new),))
        _TRANSITIONS[key] = result
        return result

    def is_accepting(self) -> bool:
        """True when the consumed prefix is a complete oracle (';' included)."""
        for rule_idx, dot, origin in self._chart[-1]:
            lhs, rhs = _RULES[rule_idx]
            if lhs == "S" and dot == len(rhs) and origin == 0:
                return True
        return False


def initial_state() -> GrammarState:
    start: set[Item] = {(ridx, 0, 0) for ridx in _BY_LHS["S"]}
    sets = [start]
    _closure(sets)
    return GrammarState((frozenset(sets[0]),))


def replay(tokens: list[Token]) -> GrammarState:
    state = initial_state()
    for tok in tokens:
        state = state.advance(tok)
    return state
