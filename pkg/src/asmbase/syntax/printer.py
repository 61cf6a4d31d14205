"""
Canonical text for terms, formulas, rules and machines.

The printer folds the core back into the surface abbreviations (or, ->,
<->, exists, !=, true, false). Parsing the output gives back the same AST,
and printing is deterministic, so printed text is the canonical form.
"""

# Internal dependencies
from asmbase.core.signature import Sort
from asmbase.syntax.formulas import (
    BOTTOM,
    TOP,
    And,
    Box,
    Eq,
    Forall,
    Mem1,
    Mem2,
    Not,
    Upd,
    as_disjunction,
    as_equivalence,
    as_existential,
    as_implication,
)
from asmbase.syntax.rules import Choose, Cond, ForallRule, Par, Seq, UpdateRule
from asmbase.syntax.terms import App, Var

_SIGILS = {Sort.POINT: "", Sort.ALGO: "$", Sort.PRED1: "@", Sort.PRED2: "@@"}
INDENT = "  "


def format_variable(var: Var) -> str:
    return f"{_SIGILS[var.sort]}{var.name}"


def format_term(t) -> str:
    if isinstance(t, Var):
        return format_variable(t)
    if not t.args:
        return t.function
    return f"{t.function}({', '.join(format_term(a) for a in t.args)})"


def _format_args(args: tuple) -> str:
    if len(args) == 1:
        return format_term(args[0])
    return f"({', '.join(format_term(a) for a in args)})"


def format_formula(phi) -> str:
    if phi == TOP:
        return "true"
    if phi == BOTTOM:
        return "false"
    if isinstance(phi, Eq):
        return f"{format_term(phi.left)} = {format_term(phi.right)}"
    if isinstance(phi, Not):
        if isinstance(phi.body, Eq) and phi.body not in (TOP, BOTTOM):
            return f"{format_term(phi.body.left)} != {format_term(phi.body.right)}"
        parts = as_disjunction(phi)
        if parts:
            return f"({format_formula(parts[0])} or {format_formula(parts[1])})"
        parts = as_implication(phi)
        if parts:
            return f"({format_formula(parts[0])} -> {format_formula(parts[1])})"
        quantified = as_existential(phi)
        if quantified:
            var, body = quantified
            return f"exists {format_variable(var)} ({format_formula(body)})"
        return f"not {format_formula(phi.body)}"
    if isinstance(phi, And):
        parts = as_equivalence(phi)
        if parts:
            return f"({format_formula(parts[0])} <-> {format_formula(parts[1])})"
        return f"({format_formula(phi.left)} and {format_formula(phi.right)})"
    if isinstance(phi, Forall):
        return f"forall {format_variable(phi.var)} ({format_formula(phi.body)})"
    if isinstance(phi, Mem1):
        return (
            f"{format_variable(phi.var)}({phi.function}, {_format_args(phi.args)}, "
            f"{format_term(phi.value)})"
        )
    if isinstance(phi, Mem2):
        return (
            f"{format_variable(phi.var)}({phi.function}, {_format_args(phi.args)}, "
            f"{format_term(phi.value)}, {format_term(phi.tag)})"
        )
    if isinstance(phi, Upd):
        return f"upd({format_rule(phi.rule, inline=True)}, {format_variable(phi.var)})"
    if isinstance(phi, Box):
        return f"[{format_variable(phi.var)}] {format_formula(phi.body)}"
    raise TypeError(f"Not a formula: {phi!r}")


def _spine(rule, kind):
    items = []
    while isinstance(rule, kind):
        first, rest = (rule.left, rule.right) if kind is Par else (rule.first, rule.second)
        items.append(first)
        rule = rest
    items.append(rule)
    return items


def _rule_lines(rule, depth: int) -> list[str]:
    pad = INDENT * depth
    if isinstance(rule, UpdateRule):
        target = rule.function if not rule.args else f"{rule.function}({', '.join(format_term(a) for a in rule.args)})"
        return [f"{pad}{target} := {format_term(rule.value)}"]
    if isinstance(rule, Cond):
        return [
            f"{pad}if {format_formula(rule.guard)} then",
            *_rule_lines(rule.body, depth + 1),
            f"{pad}endif",
        ]
    if isinstance(rule, (ForallRule, Choose)):
        keyword = "forall" if isinstance(rule, ForallRule) else "choose"
        return [
            f"{pad}{keyword} {format_variable(rule.var)} with {format_formula(rule.guard)} do",
            *_rule_lines(rule.body, depth + 1),
            f"{pad}enddo",
        ]
    if isinstance(rule, (Par, Seq)):
        kind = type(rule)
        keyword = "par" if kind is Par else "seq"
        lines = [f"{pad}{keyword}"]
        for item in _spine(rule, kind):
            lines.extend(_rule_lines(item, depth + 1))
        lines.append(f"{pad}end{keyword}")
        return lines
    raise TypeError(f"Not a rule: {rule!r}")


def format_rule(rule, inline: bool = False) -> str:
    lines = _rule_lines(rule, 0)
    if inline:
        return " ".join(line.strip() for line in lines)
    return "\n".join(lines)


def format_machine(machine) -> str:
    body = "\n".join(INDENT + line for line in format_rule(machine.main).splitlines())
    return (
        f"rule main =\n{body}\n;\n"
        f"initial: {format_formula(machine.initial)} ;\n"
        f"final: {format_formula(machine.final)} ;\n"
    )
