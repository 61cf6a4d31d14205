# Standard library
from dataclasses import dataclass, field

# Internal dependencies
from asmbase.core.signature import Kind, Signature, Sort
from asmbase.syntax.formulas import Formula, TOP, BOTTOM
from asmbase.syntax.terms import Term, Var


class _Printable:
    def __str__(self) -> str:
        from asmbase.syntax.printer import format_rule

        return format_rule(self)


@dataclass(frozen=True)
class UpdateRule(_Printable):
    """f(t1, ..., tn) := s; kind records which of the three update forms it is."""

    function: str
    args: tuple
    value: Term
    kind: Kind = Kind.PRIMARY


@dataclass(frozen=True)
class Cond(_Printable):
    guard: Formula
    body: "Rule"


@dataclass(frozen=True)
class ForallRule(_Printable):
    var: Var
    guard: Formula
    body: "Rule"


@dataclass(frozen=True)
class Choose(_Printable):
    """Bounded choice when the binder is a point variable, unbounded when algorithmic."""

    var: Var
    guard: Formula
    body: "Rule"

    @property
    def bounded(self) -> bool:
        return self.var.sort is Sort.POINT


@dataclass(frozen=True)
class Par(_Printable):
    left: "Rule"
    right: "Rule"


@dataclass(frozen=True)
class Seq(_Printable):
    first: "Rule"
    second: "Rule"


Rule = UpdateRule | Cond | ForallRule | Choose | Par | Seq


def par(*rules: "Rule") -> "Rule":
    """Right-nested parallel composition, matching how a block of rules parses."""
    if not rules:
        raise ValueError("par needs at least one rule")
    result = rules[-1]
    for rule in reversed(rules[:-1]):
        result = Par(rule, result)
    return result


def seq(*rules: "Rule") -> "Rule":
    if not rules:
        raise ValueError("seq needs at least one rule")
    result = rules[-1]
    for rule in reversed(rules[:-1]):
        result = Seq(rule, result)
    return result


def is_deterministic(rule: "Rule") -> bool:
    """True for rules without choose, which always yield exactly one update set."""
    if isinstance(rule, Choose):
        return False
    if isinstance(rule, UpdateRule):
        return True
    if isinstance(rule, (Cond, ForallRule)):
        return is_deterministic(rule.body)
    if isinstance(rule, Par):
        return is_deterministic(rule.left) and is_deterministic(rule.right)
    return is_deterministic(rule.first) and is_deterministic(rule.second)


def subrules(rule: "Rule"):
    yield rule
    if isinstance(rule, (Cond, ForallRule, Choose)):
        yield from subrules(rule.body)
    elif isinstance(rule, Par):
        yield from subrules(rule.left)
        yield from subrules(rule.right)
    elif isinstance(rule, Seq):
        yield from subrules(rule.first)
        yield from subrules(rule.second)


@dataclass(frozen=True)
class Machine:
    """
    A machine: signature, closed main rule, and the initial and final state
    predicates (closed first-order formulas evaluated on a state).
    """

    signature: Signature
    main: "Rule"
    initial: Formula = TOP
    final: Formula = BOTTOM
    rules: dict = field(default_factory=dict, compare=False, hash=False)

    def __str__(self) -> str:
        from asmbase.syntax.printer import format_machine

        return format_machine(self)
