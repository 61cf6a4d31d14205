"""
Formulas of the one-step logic.

The core constructors are equality, negation, conjunction, universal
quantification over any of the four sorts, the two membership atoms, upd
atoms and the modal operator. Every other connective is an abbreviation
built by the helpers below, so the evaluator and translator only ever see
the core.

Key components:
1. Eq, Not, And, Forall -- first-order core (guards use only these)
2. Mem1, Mem2 -- membership of an update triple / tagged quadruple
3. Upd -- the update set of a variable is one of a rule's update sets
4. Box -- truth after applying a variable's update set
5. conj, disj, implies, iff, exists, neq, TOP, BOTTOM -- abbreviations

Notes:
- Membership atoms carry an argument tuple so functions of any arity can be
  named; unary functions are the common case.
"""

# Standard library
from dataclasses import dataclass
from typing import Iterable

# Internal dependencies
from asmbase.syntax.terms import App, Term, Var


class _Printable:
    def __str__(self) -> str:
        from asmbase.syntax.printer import format_formula

        return format_formula(self)


@dataclass(frozen=True)
class Eq(_Printable):
    left: Term
    right: Term


@dataclass(frozen=True)
class Not(_Printable):
    body: "Formula"


@dataclass(frozen=True)
class And(_Printable):
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Forall(_Printable):
    var: Var
    body: "Formula"


@dataclass(frozen=True)
class Mem1(_Printable):
    var: Var
    function: str
    args: tuple
    value: Term


@dataclass(frozen=True)
class Mem2(_Printable):
    var: Var
    function: str
    args: tuple
    value: Term
    tag: Term


@dataclass(frozen=True)
class Upd(_Printable):
    rule: object
    var: Var


@dataclass(frozen=True)
class Box(_Printable):
    var: Var
    body: "Formula"


Formula = Eq | Not | And | Forall | Mem1 | Mem2 | Upd | Box

TOP = Eq(App("true"), App("true"))
BOTTOM = Eq(App("true"), App("false"))


def neq(s: Term, t: Term) -> Formula:
    return Not(Eq(s, t))


def conj(*parts: Formula) -> Formula:
    if not parts:
        return TOP
    result = parts[0]
    for part in parts[1:]:
        result = And(result, part)
    return result


def disj2(a: Formula, b: Formula) -> Formula:
    return Not(And(Not(a), Not(b)))


def disj(*parts: Formula) -> Formula:
    if not parts:
        return BOTTOM
    result = parts[0]
    for part in parts[1:]:
        result = disj2(result, part)
    return result


def implies(a: Formula, b: Formula) -> Formula:
    return Not(And(a, Not(b)))


def iff(a: Formula, b: Formula) -> Formula:
    return And(implies(a, b), implies(b, a))


def exists(var: Var, body: Formula) -> Formula:
    return Not(Forall(var, Not(body)))


def forall_all(variables: Iterable[Var], body: Formula) -> Formula:
    for var in reversed(list(variables)):
        body = Forall(var, body)
    return body


def exists_all(variables: Iterable[Var], body: Formula) -> Formula:
    for var in reversed(list(variables)):
        body = exists(var, body)
    return body


def conjuncts(phi: Formula) -> list[Formula]:
    """Flatten a nest of And nodes into its leaves, left to right."""
    if isinstance(phi, And):
        return conjuncts(phi.left) + conjuncts(phi.right)
    return [phi]


# Recognisers for the abbreviations, used by the printer and the checker


def as_disjunction(phi: Formula) -> tuple[Formula, Formula] | None:
    if (
        isinstance(phi, Not)
        and isinstance(phi.body, And)
        and isinstance(phi.body.left, Not)
        and isinstance(phi.body.right, Not)
    ):
        return phi.body.left.body, phi.body.right.body
    return None


def as_implication(phi: Formula) -> tuple[Formula, Formula] | None:
    if isinstance(phi, Not) and isinstance(phi.body, And) and isinstance(phi.body.right, Not):
        return phi.body.left, phi.body.right.body
    return None


def as_equivalence(phi: Formula) -> tuple[Formula, Formula] | None:
    if isinstance(phi, And):
        first = as_implication(phi.left)
        second = as_implication(phi.right)
        if first and second and first[0] == second[1] and first[1] == second[0]:
            return first
    return None


def as_existential(phi: Formula) -> tuple[Var, Formula] | None:
    if isinstance(phi, Not) and isinstance(phi.body, Forall) and isinstance(phi.body.body, Not):
        return phi.body.var, phi.body.body.body
    return None
