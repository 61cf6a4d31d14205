"""
Truth of formulas of the one-step logic in a finite state.

Key components:
1. Evaluator -- evaluates formulas in one state, caching update-set families
   per (rule, relevant valuation) and one child evaluator per successor state
2. evaluate -- one-shot evaluation under a valuation
3. holds -- truth of the universal closure of a formula

Notes:
- `[X]phi` is true whenever the update set bound to X is inconsistent (or
  does not fit the state), including under negations and quantifiers.
- Quantifiers over predicate sorts are exact. Before walking the whole
  domain the evaluator looks for a conjunct `upd(r, X)` (possibly under a
  modal atom or a quantifier) that confines X to a family it can compute
  directly, and only tries the members of that family. Otherwise it walks
  the domain from `asmbase.logic.domains`, which raises ResourceLimit
  when the domain is over the cap.
"""

# Standard library
import logging

# Internal dependencies
from asmbase.config import DEFAULT_LIMITS, Limits
from asmbase.core.state import State, apply
from asmbase.core.updates import TaggedUpdate, Update, is_consistent
from asmbase.errors import SortError
from asmbase.logic.domains import enumerate_domain, is_well_kinded
from asmbase.semantics.evaluation import eval_term
from asmbase.semantics.families import delta
from asmbase.semantics.valuation import EMPTY_VALUATION, Valuation
from asmbase.syntax.analysis import free_variables
from asmbase.syntax.formulas import And, Box, Eq, Forall, Mem1, Mem2, Not, Upd, conjuncts, forall_all

logger = logging.getLogger(__name__)


def _variable_order(var):
    return (list(type(var.sort)).index(var.sort), var.name)


class Evaluator:
    """
    Evaluate formulas in one state.

    Parameters:
    - state (State): the state formulas are evaluated in
    - limits (Limits): caps for delta and predicate-sort enumeration

    Example:
    >>> from asmbase.parser import parse_lformula, parse_state
    >>> s = parse_state("primary-carrier: true, false\\nsecondary-carrier: 0\\n"
    ...                 "functions:\\n  c: primary dynamic arity 0 default false\\n")
    >>> phi = parse_lformula("[c := true] c = true", s.signature)
    >>> Evaluator(s).eval(phi)
    True
    """

    def __init__(self, state: State, limits: Limits = DEFAULT_LIMITS, _free: dict | None = None) -> None:
        self.state = state
        self.limits = limits
        self._families: dict = {}
        self._successors: dict[frozenset, "Evaluator"] = {}
        self._free = {} if _free is None else _free

    def free(self, node) -> frozenset:
        """Free variables of a node, cached by identity."""
        hit = self._free.get(id(node))
        if hit is None or hit[0] is not node:
            hit = (node, free_variables(node))
            self._free[id(node)] = hit
        return hit[1]

    def delta(self, rule, zeta: Valuation = EMPTY_VALUATION) -> frozenset:
        key = (id(rule), zeta.restrict(self.free(rule)))
        hit = self._families.get(key)
        if hit is None or hit[0] is not rule:
            hit = (rule, delta(rule, self.state, key[1], self.limits))
            self._families[key] = hit
        return hit[1]

    def successor(self, u: frozenset) -> "Evaluator":
        child = self._successors.get(u)
        if child is None:
            child = Evaluator(apply(self.state, u), self.limits, self._free)
            self._successors[u] = child
        return child

    def applicable(self, u) -> bool:
        """True when u is a consistent update set that fits the state."""
        return all(isinstance(x, Update) for x in u) and is_consistent(u) and is_well_kinded(u, self.state)

    def eval(self, phi, zeta: Valuation = EMPTY_VALUATION) -> bool:
        if isinstance(phi, Eq):
            return eval_term(phi.left, self.state, zeta) == eval_term(phi.right, self.state, zeta)
        if isinstance(phi, Not):
            return not self.eval(phi.body, zeta)
        if isinstance(phi, And):
            return self.eval(phi.left, zeta) and self.eval(phi.right, zeta)
        if isinstance(phi, Forall):
            if phi.var.sort.individual:
                return all(
                    self.eval(phi.body, zeta.bind(phi.var, atom))
                    for atom in self.state.carrier(phi.var.sort)
                )
            return self._forall_predicate(phi.var, phi.body, zeta)
        if isinstance(phi, Mem1):
            triple = Update(phi.function, self._arguments(phi.args, zeta), eval_term(phi.value, self.state, zeta))
            return triple in zeta.lookup(phi.var)
        if isinstance(phi, Mem2):
            quadruple = TaggedUpdate(
                phi.function,
                self._arguments(phi.args, zeta),
                eval_term(phi.value, self.state, zeta),
                eval_term(phi.tag, self.state, zeta),
            )
            return quadruple in zeta.lookup(phi.var)
        if isinstance(phi, Upd):
            return zeta.lookup(phi.var) in self.delta(phi.rule, zeta)
        if isinstance(phi, Box):
            u = zeta.lookup(phi.var)
            if not self.applicable(u):
                return True
            return self.successor(u).eval(phi.body, zeta)
        raise SortError(f"Not a formula: {phi!r}")

    def _arguments(self, args: tuple, zeta: Valuation) -> tuple:
        return tuple(eval_term(a, self.state, zeta) for a in args)

    # Predicate-sort quantifiers

    def _forall_predicate(self, var, body, zeta: Valuation) -> bool:
        if isinstance(body, And):
            return self._forall_predicate(var, body.left, zeta) and self._forall_predicate(var, body.right, zeta)
        if var not in self.free(body):
            return self.eval(body, zeta)
        if isinstance(body, Not):
            parts = conjuncts(body.body)
            dependent = []
            for part in parts:
                if var in self.free(part):
                    dependent.append(part)
                elif not self.eval(part, zeta):
                    return True
            candidates = self._candidates(var, dependent, zeta, frozenset())
            if candidates is not None:
                logger.debug("quantifier over %s confined to %d update sets", var, len(candidates))
                for u in candidates:
                    inner = zeta.bind(var, u)
                    if all(self.eval(part, inner) for part in dependent):
                        return False
                return True
        for u in enumerate_domain(var.sort, self.state, self.limits):
            if not self.eval(body, zeta.bind(var, u)):
                return False
        return True

    def _candidates(self, var, parts, zeta: Valuation, bound: frozenset) -> frozenset | None:
        """A family outside of which one of the conjuncts is false, when one can be found."""
        for part in parts:
            found = self._confining(var, part, zeta, bound)
            if found is not None:
                return found
        return None

    def _confining(self, var, part, zeta: Valuation, bound: frozenset) -> frozenset | None:
        if isinstance(part, Upd):
            rule_free = self.free(part.rule)
            if part.var == var and var not in rule_free and not rule_free & bound:
                return self.delta(part.rule, zeta)
            return None
        if isinstance(part, Box):
            inner = part.body
            if not isinstance(inner, Upd) or inner.var != var or part.var == var or part.var in bound:
                return None
            rule_free = self.free(inner.rule)
            if var in rule_free or rule_free & bound:
                return None
            u = zeta.lookup(part.var)
            if not self.applicable(u):
                return None
            return self.successor(u).delta(inner.rule, zeta)
        if isinstance(part, Not) and isinstance(part.body, Not):
            return self._candidates(var, conjuncts(part.body.body), zeta, bound)
        if isinstance(part, Not) and isinstance(part.body, Forall) and isinstance(part.body.body, Not):
            # exists y (...): some witness satisfies every conjunct
            if part.body.var == var:
                return None
            return self._candidates(var, conjuncts(part.body.body.body), zeta, bound | {part.body.var})
        if isinstance(part, Forall):
            if part.var == var:
                return None
            return self._candidates(var, conjuncts(part.body), zeta, bound | {part.var})
        return None


def evaluate(phi, s: State, zeta: Valuation = EMPTY_VALUATION, limits: Limits = DEFAULT_LIMITS) -> bool:
    """
    Truth value of a formula in a state under a valuation.

    Raises:
    - UnboundVariable: when a free variable of phi is missing from zeta
    - ResourceLimit: when delta or a predicate-sort quantifier exceeds its cap
    """
    return Evaluator(s, limits).eval(phi, zeta)


def closure(phi, zeta: Valuation = EMPTY_VALUATION):
    """Universal closure over the free variables zeta leaves unbound, in canonical order."""
    unbound = sorted((v for v in free_variables(phi) if v not in zeta), key=_variable_order)
    return forall_all(unbound, phi)


def holds(phi, s: State, zeta: Valuation = EMPTY_VALUATION, limits: Limits = DEFAULT_LIMITS) -> bool:
    """True when the formula holds in s for every value of its free variables."""
    return Evaluator(s, limits).eval(closure(phi, zeta), zeta)
