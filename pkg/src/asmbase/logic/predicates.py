"""
Consistency predicates, modal abbreviations and rule equivalence.

Every derived predicate exists twice: as a formula builder whose output the
evaluator and the translator work on, and as a direct computation over
update-set families. Tests compare the two.

Key components:
1. con_uset_formula / con_formula / wcon_formula / scon_formula /
   joinable_formula -- the defining formulas, expanded for a signature
2. empty_formula -- X holds no update at all
3. box / diamond -- `[r]phi` and `<r>phi` over a fresh predicate variable
4. con_uset / con / wcon / scon / joinable -- direct versions
5. rules_equivalent -- equal families on every given state

Notes:
- Conjunctions over the dynamic functions are expanded concretely, so the
  formula builders need the signature.
"""

# Standard library
import logging
from typing import Iterable

# Internal dependencies
from asmbase.config import DEFAULT_LIMITS, Limits
from asmbase.core.signature import FunctionSymbol, Signature, Sort
from asmbase.core.state import State
from asmbase.core.updates import is_consistent
from asmbase.semantics.families import delta
from asmbase.semantics.valuation import EMPTY_VALUATION, Valuation
from asmbase.syntax.analysis import FreshNames
from asmbase.syntax.formulas import (
    And,
    Box,
    Eq,
    Forall,
    Formula,
    Mem1,
    Not,
    Upd,
    conj,
    exists,
    exists_all,
    forall_all,
    implies,
)
from asmbase.syntax.terms import Var

logger = logging.getLogger(__name__)


def fresh_names(signature: Signature, *nodes) -> FreshNames:
    """A name supply avoiding every variable of the nodes and every function name."""
    names = FreshNames.for_nodes(*nodes)
    names.used.update(s.name for s in signature)
    return names


def location_variables(names: FreshNames, symbol: FunctionSymbol) -> tuple[Var, ...]:
    return tuple(names.fresh("x", symbol.argument_sort) for _ in range(symbol.arity))


def per_function(signature: Signature, names: FreshNames, body) -> Formula:
    """
    The conjunction over dynamic functions f of `forall xs, y (body(f, xs, y))`.

    `body` receives the symbol, its argument variables and a value variable
    and may take further names from `names`.
    """
    parts = []
    for symbol in signature.dynamic:
        local = FreshNames(names.used)
        xs = location_variables(local, symbol)
        y = local.fresh("y", symbol.result_sort)
        parts.append(forall_all((*xs, y), body(symbol, xs, y, local)))
    return conj(*parts)


def con_uset_formula(x: Var, signature: Signature) -> Formula:
    """
    conUSet(X): no location receives two distinct values.

    Example:
    >>> from asmbase.syntax.terms import pred1
    >>> sig = Signature.from_groups(primary={"c": (0, True)})
    >>> print(con_uset_formula(pred1("X"), sig))
    forall y (forall z (((@X(c, (), y) and @X(c, (), z)) -> y = z)))
    """
    names = fresh_names(signature, x)

    def no_clash(symbol, xs, y, local):
        z = local.fresh("z", symbol.result_sort)
        return Forall(z, implies(And(Mem1(x, symbol.name, xs, y), Mem1(x, symbol.name, xs, z)), Eq(y, z)))

    return per_function(signature, names, no_clash)


def empty_formula(x: Var, signature: Signature) -> Formula:
    """X contains no update of any dynamic function."""
    names = fresh_names(signature, x)
    return per_function(signature, names, lambda symbol, xs, y, _: Not(Mem1(x, symbol.name, xs, y)))


def con_formula(rule, x: Var, signature: Signature) -> Formula:
    return And(Upd(rule, x), con_uset_formula(x, signature))


def wcon_formula(rule, signature: Signature) -> Formula:
    x = fresh_names(signature, rule).fresh("X", Sort.PRED1)
    return exists(x, con_formula(rule, x, signature))


def scon_formula(rule, signature: Signature) -> Formula:
    x = fresh_names(signature, rule).fresh("X", Sort.PRED1)
    return Forall(x, implies(Upd(rule, x), con_formula(rule, x, signature)))


def joinable_formula(first, second, signature: Signature) -> Formula:
    """Some update set of `first` and some of `second` agree wherever both write."""
    names = fresh_names(signature, first, second)
    x1 = names.fresh("X1", Sort.PRED1)
    x2 = names.fresh("X2", Sort.PRED1)

    def agree(symbol, xs, y, local):
        z = local.fresh("z", symbol.result_sort)
        return Forall(z, implies(And(Mem1(x1, symbol.name, xs, y), Mem1(x2, symbol.name, xs, z)), Eq(y, z)))

    cross = per_function(signature, names, agree)
    return exists_all((x1, x2), conj(Upd(first, x1), Upd(second, x2), cross))


def box(rule, phi: Formula, signature: Signature | None = None) -> Formula:
    """[r]phi, i.e. forall X (upd(r, X) -> [X]phi) for a fresh X."""
    x = _fresh_pred(signature, rule, phi)
    return Forall(x, implies(Upd(rule, x), Box(x, phi)))


def diamond(rule, phi: Formula, signature: Signature | None = None) -> Formula:
    """<r>phi, i.e. exists X (upd(r, X) and [X]phi) for a fresh X."""
    x = _fresh_pred(signature, rule, phi)
    return exists(x, And(Upd(rule, x), Box(x, phi)))


def _fresh_pred(signature: Signature | None, *nodes) -> Var:
    names = FreshNames.for_nodes(*nodes)
    if signature is not None:
        names.used.update(s.name for s in signature)
    return names.fresh("X", Sort.PRED1)


# Direct versions


def con_uset(u: frozenset) -> bool:
    return is_consistent(u)


def con(rule, u: frozenset, s: State, zeta: Valuation = EMPTY_VALUATION, limits: Limits = DEFAULT_LIMITS) -> bool:
    return is_consistent(u) and u in delta(rule, s, zeta, limits)


def wcon(rule, s: State, zeta: Valuation = EMPTY_VALUATION, limits: Limits = DEFAULT_LIMITS) -> bool:
    """
    Weak consistency: some update set of the rule is consistent.

    Example:
    >>> from asmbase.parser import parse_rule, parse_state
    >>> s = parse_state("primary-carrier: true, false\\nsecondary-carrier: 0\\n"
    ...                 "functions:\\n  c: primary dynamic arity 0 default false\\n")
    >>> wcon(parse_rule("c := true c := false", s.signature), s)
    False
    """
    return any(is_consistent(u) for u in delta(rule, s, zeta, limits))


def scon(rule, s: State, zeta: Valuation = EMPTY_VALUATION, limits: Limits = DEFAULT_LIMITS) -> bool:
    """Strong consistency: every update set of the rule is consistent (vacuous for an empty family)."""
    return all(is_consistent(u) for u in delta(rule, s, zeta, limits))


def compatible(u1: frozenset, u2: frozenset) -> bool:
    """No location is written with two distinct values across u1 and u2."""
    values: dict[tuple, set] = {}
    for update in u1:
        values.setdefault((update.function, update.argument), set()).add(update.value)
    for update in u2:
        seen = values.get((update.function, update.argument))
        if seen is not None and seen != {update.value}:
            return False
    return True


def joinable(first, second, s: State, zeta: Valuation = EMPTY_VALUATION, limits: Limits = DEFAULT_LIMITS) -> bool:
    family = delta(second, s, zeta, limits)
    return any(compatible(u1, u2) for u1 in delta(first, s, zeta, limits) for u2 in family)


def rules_equivalent(first, second, states: Iterable[State], limits: Limits = DEFAULT_LIMITS) -> bool:
    """
    True when both closed rules yield the same family in every given state.

    This checks rule equivalence over a finite scope only.
    """
    for s in states:
        if delta(first, s, EMPTY_VALUATION, limits) != delta(second, s, EMPTY_VALUATION, limits):
            logger.info("rules differ in state %s", s)
            return False
    return True
