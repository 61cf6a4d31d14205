"""
Sort checking for formulas and rules against a signature.
"""

# Internal dependencies
from asmbase.core.signature import Kind, Signature, Sort
from asmbase.errors import SortError
from asmbase.syntax.formulas import And, Box, Eq, Forall, Formula, Mem1, Mem2, Not, Upd
from asmbase.syntax.rules import Choose, Cond, ForallRule, Par, Rule, Seq, UpdateRule
from asmbase.syntax.terms import Term, Var, sort_of


def _expect_var(var: Var, sort: Sort, where: str) -> None:
    if not isinstance(var, Var) or var.sort is not sort:
        raise SortError(f"{where} expects a {sort.value} variable, got {var}")


def _check_arguments(function: str, args: tuple, value: Term, signature: Signature) -> None:
    symbol = signature[function]
    if len(args) != symbol.arity:
        raise SortError(f"Function {function!r} expects {symbol.arity} arguments, got {len(args)}")
    for arg in args:
        if sort_of(arg, signature) is not symbol.argument_sort:
            raise SortError(
                f"Argument {arg} of {function!r} must be a {symbol.argument_sort.value} term"
            )
    if sort_of(value, signature) is not symbol.result_sort:
        raise SortError(f"Value {value} for {function!r} must be a {symbol.result_sort.value} term")


def check_guard(phi: Formula, signature: Signature) -> None:
    """Guards are first-order: equalities, negation, conjunction, individual quantifiers."""
    if isinstance(phi, Eq):
        left, right = sort_of(phi.left, signature), sort_of(phi.right, signature)
        if left is not right:
            raise SortError(f"Equality between a {left.value} and a {right.value} term: {phi}")
    elif isinstance(phi, Not):
        check_guard(phi.body, signature)
    elif isinstance(phi, And):
        check_guard(phi.left, signature)
        check_guard(phi.right, signature)
    elif isinstance(phi, Forall):
        if not phi.var.sort.individual:
            raise SortError(f"Guard quantifies over predicate variable {phi.var}")
        check_guard(phi.body, signature)
    else:
        raise SortError(f"Guard formulas must be first-order, got {type(phi).__name__}")


def check_formula(phi: Formula, signature: Signature) -> None:
    if isinstance(phi, Eq):
        check_guard(phi, signature)
    elif isinstance(phi, Not):
        check_formula(phi.body, signature)
    elif isinstance(phi, And):
        check_formula(phi.left, signature)
        check_formula(phi.right, signature)
    elif isinstance(phi, Forall):
        check_formula(phi.body, signature)
    elif isinstance(phi, Mem1):
        _expect_var(phi.var, Sort.PRED1, "Membership atom")
        _check_dynamic(phi.function, signature)
        _check_arguments(phi.function, phi.args, phi.value, signature)
    elif isinstance(phi, Mem2):
        _expect_var(phi.var, Sort.PRED2, "Tagged membership atom")
        _check_dynamic(phi.function, signature)
        _check_arguments(phi.function, phi.args, phi.value, signature)
        if sort_of(phi.tag, signature) is not Sort.POINT:
            raise SortError(f"Tag {phi.tag} of a tagged membership atom must be a point term")
    elif isinstance(phi, Upd):
        _expect_var(phi.var, Sort.PRED1, "upd")
        check_rule(phi.rule, signature)
    elif isinstance(phi, Box):
        _expect_var(phi.var, Sort.PRED1, "Modal operator")
        check_formula(phi.body, signature)
    else:
        raise SortError(f"Not a formula: {phi!r}")


def _check_dynamic(function: str, signature: Signature) -> None:
    if not signature[function].dynamic:
        raise SortError(f"Function {function!r} is static and cannot be updated")


_UPDATE_KIND = {
    Kind.PRIMARY: "update of a primary function",
    Kind.SECONDARY: "update of a secondary function",
    Kind.BRIDGE: "update of a bridge function",
}


def check_rule(rule: Rule, signature: Signature) -> None:
    if isinstance(rule, UpdateRule):
        _check_dynamic(rule.function, signature)
        symbol = signature[rule.function]
        if symbol.kind is not rule.kind:
            raise SortError(
                f"{rule.function!r} is a {symbol.kind.value} function, not an {_UPDATE_KIND[rule.kind]}"
            )
        _check_arguments(rule.function, rule.args, rule.value, signature)
    elif isinstance(rule, Cond):
        check_guard(rule.guard, signature)
        check_rule(rule.body, signature)
    elif isinstance(rule, ForallRule):
        if rule.var.sort is not Sort.POINT:
            raise SortError(f"forall binds point variables only, got {rule.var}")
        check_guard(rule.guard, signature)
        check_rule(rule.body, signature)
    elif isinstance(rule, Choose):
        if not rule.var.sort.individual:
            raise SortError(f"choose binds individual variables only, got {rule.var}")
        check_guard(rule.guard, signature)
        check_rule(rule.body, signature)
    elif isinstance(rule, Par):
        check_rule(rule.left, signature)
        check_rule(rule.right, signature)
    elif isinstance(rule, Seq):
        check_rule(rule.first, signature)
        check_rule(rule.second, signature)
    else:
        raise SortError(f"Not a rule: {rule!r}")
