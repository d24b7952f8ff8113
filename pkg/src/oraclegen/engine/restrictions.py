"""Registry of context restrictions applied by the token filter.

Each restriction has a stable id; filter vetoes cite these ids in their
diagnostics, and the registry is exportable as a markdown table.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class RestrictionDescriptor:
    id: str
    description: str
    applicability: str  # grammar slots the restriction guards


_REGISTRY: tuple[RestrictionDescriptor, ...] = (
    RestrictionDescriptor(
        "R1", "methodResultID is forbidden when the method under test is void.",
        "operand-start"),
    RestrictionDescriptor(
        "R2", "methodResultID is forbidden in precondition oracles.",
        "operand-start"),
    RestrictionDescriptor(
        "R3", "'instanceof' requires a reference or array left operand and a "
              "known class name on the right.",
        "type-test-after-operand, class-name-after-instanceof"),
    RestrictionDescriptor(
        "R4", "Relational operators <, <=, >, >= require numeric operands on "
              "both sides.",
        "comparison-after-operand, operand"),
    RestrictionDescriptor(
        "R5", "Arithmetic operators +, -, *, /, % require numeric operands.",
        "arithmetic-in-rhs, operand"),
    RestrictionDescriptor(
        "R6", "'==' and '!=' require same-category operands; 'null' is legal "
              "only against reference or array operands.",
        "comparison-after-operand, operand"),
    RestrictionDescriptor(
        "R7", "'.' is legal only after reference or array operands (or a class "
              "name with static members).",
        "member-access"),
    RestrictionDescriptor(
        "R8", "Member tokens are restricted to the accessible members of the "
              "receiver's static type.",
        "member-after-dot"),
    RestrictionDescriptor(
        "R9", "'this' is legal only inside instance methods.",
        "operand-start"),
    RestrictionDescriptor(
        "R10", "'jdVar' is legal only inside a stream-quantifier lambda body, "
               "where it has the stream's element type.",
        "operand-start"),
    RestrictionDescriptor(
        "R11", "A stream-quantifier opener requires an array or Iterable "
               "receiver, and its argument must be a jdVar lambda.",
        "member-after-dot, lambda-binder"),
    RestrictionDescriptor(
        "R12", "Method-call candidates are limited to zero-argument methods "
               "plus methods whose every parameter is satisfiable by an "
               "in-scope identifier of matching category.",
        "member-after-dot"),
    RestrictionDescriptor(
        "R13", "A bare top-level 'true;' or 'false;' oracle is forbidden.",
        "oracle-end"),
    RestrictionDescriptor(
        "R14", "The two sides of '==' / '!=' must not be the identical "
               "expression (reject x == x).",
        "oracle-end, boolean-connective, close-group, operand"),
    RestrictionDescriptor(
        "R15", "The ternary '?' is legal only after a complete boolean "
               "proposition at top level.",
        "ternary-after-guard"),
    # Extension point beyond the documented minimum.
    RestrictionDescriptor(
        "R16", "Closing an atom (';', '&&', '||', ')', '?', ':') requires the "
               "expression closed to be a boolean proposition.",
        "oracle-end, boolean-connective, close-group, ternary-after-guard, "
        "ternary-else"),
    RestrictionDescriptor(
        "R17", "A call argument's category must match the parameter's "
               "category.",
        "operand, argument-separator, close-group"),
    RestrictionDescriptor(
        "R18", "A call must supply exactly as many arguments as the method "
               "declares parameters.",
        "argument-separator, close-group"),
    RestrictionDescriptor(
        "R19", "A method-valued member must be invoked: only '(' may follow "
               "it, and method members cannot appear where calls are not "
               "allowed.",
        "member-after-dot, member-access"),
    RestrictionDescriptor(
        "R20", "A candidate is dropped when no legal continuation could exist "
               "after it (one-step dead-end avoidance).",
        "member-access, operand-start"),
)

_BY_ID = {r.id: r for r in _REGISTRY}


def list_restrictions() -> tuple[RestrictionDescriptor, ...]:
    return _REGISTRY


def restriction(rid: str) -> RestrictionDescriptor:
    return _BY_ID[rid]


def registry_markdown() -> str:
    lines = ["| id | guards | description |", "| --- | --- | --- |"]
    for r in _REGISTRY:
        lines.append(f"| {r.id} | {r.applicability} | {r.description} |")
    return "\n".join(lines) + "\n"
