"""
Seeded random instances for validating schemas and lemmas.

Key components:
1. Profile -- carriers and function table of the sampled states
2. PROFILES -- "tiny" (one nullary dynamic function) and "small"
3. Sampler -- states, terms, guards, rules, formulas, update sets and
   valuations drawn from one numpy generator

Notes:
- Predicate-sort values are biased: some are members of a rule's family,
  some are deliberately inconsistent, the rest are random subsets of the
  well-kinded triples. Unsound mutations only show up on the latter two.
- `Sampler.spawn(n)` gives independent child samplers, one per trial, from
  `numpy.random.SeedSequence`, so a trial can be replayed from its seed.
"""

# Standard library
import itertools
import logging
from dataclasses import dataclass

# Third-party dependencies
import numpy as np

# Internal dependencies
from asmbase.config import DEFAULT_LIMITS, Limits
from asmbase.core.signature import FunctionSymbol, Kind, Signature, Sort
from asmbase.core.state import State
from asmbase.core.updates import Update, sorted_family
from asmbase.logic.domains import quadruples, triples
from asmbase.semantics.families import delta
from asmbase.semantics.valuation import EMPTY_VALUATION, Valuation
from asmbase.syntax.formulas import And, Box, Eq, Forall, Mem1, Not, Upd
from asmbase.syntax.rules import Choose, Cond, ForallRule, Par, Seq, UpdateRule
from asmbase.syntax.terms import App, Var, algo, point, pred1

logger = logging.getLogger(__name__)

RULE_FORMS = (UpdateRule, Cond, ForallRule, Choose, Par, Seq)


@dataclass(frozen=True)
class Profile:
    """
    Shape of sampled instances.

    Parameters:
    - name (str): profile name
    - primary (tuple): primary carrier, booleans first
    - secondary (tuple): secondary carrier
    - functions (tuple): declared function symbols
    - rule_depth (int): nesting depth of sampled rules
    - formula_depth (int): nesting depth of sampled formulas
    """

    name: str
    primary: tuple
    secondary: tuple
    functions: tuple
    rule_depth: int = 2
    formula_depth: int = 2

    @property
    def signature(self) -> Signature:
        return Signature(self.functions)


PROFILES = {
    "tiny": Profile(
        "tiny",
        primary=("true", "false"),
        secondary=("0",),
        functions=(FunctionSymbol("c", Kind.PRIMARY, 0, dynamic=True),),
        rule_depth=1,
        formula_depth=1,
    ),
    "small": Profile(
        "small",
        primary=("true", "false", "a"),
        secondary=("0", "1"),
        functions=(
            FunctionSymbol("c", Kind.PRIMARY, 0, dynamic=True),
            FunctionSymbol("f", Kind.PRIMARY, 1, dynamic=True),
            FunctionSymbol("g", Kind.SECONDARY, 1, dynamic=True),
            FunctionSymbol("h", Kind.BRIDGE, 1, dynamic=True),
            FunctionSymbol("k", Kind.PRIMARY, 1),
            FunctionSymbol("e", Kind.SECONDARY, 0),
        ),
    ),
}

# Variables sampled terms, guards and rules may use freely
POOL = (point("x"), point("y"), algo("u"))


def variable_order(var: Var) -> tuple:
    return (list(Sort).index(var.sort), var.name)


class Sampler:
    """
    Random instances from one seeded generator.

    Parameters:
    - seed (int | np.random.SeedSequence | None): seed of the generator
    - profile (str | Profile): "tiny", "small" or a custom profile
    - limits (Limits): caps for the families used to bias update sets

    Example:
    >>> sampler = Sampler(7, "tiny")
    >>> s = sampler.state()
    >>> s.primary
    ('true', 'false')
    """

    def __init__(self, seed=None, profile="small", limits: Limits = DEFAULT_LIMITS) -> None:
        self.profile = PROFILES[profile] if isinstance(profile, str) else profile
        self.seed = seed
        self.limits = limits
        self.rng = np.random.default_rng(seed)
        self._signature = self.profile.signature

    def spawn(self, n: int) -> list["Sampler"]:
        """Independent child samplers, reproducible from this sampler's seed."""
        sequence = self.seed if isinstance(self.seed, np.random.SeedSequence) else np.random.SeedSequence(self.seed)
        return [Sampler(child, self.profile, self.limits) for child in sequence.spawn(n)]

    # Basic draws

    def choice(self, items):
        items = tuple(items)
        if not items:
            raise ValueError("Cannot choose from an empty sequence")
        return items[int(self.rng.integers(len(items)))]

    def chance(self, p: float) -> bool:
        return bool(self.rng.random() < p)

    # States

    def signature(self) -> Signature:
        return self._signature

    def state(self) -> State:
        """A state over the profile signature with random defaults and a few explicit rows."""
        sig = self._signature
        carriers = {Sort.POINT: self.profile.primary, Sort.ALGO: self.profile.secondary}
        defaults, graphs = {}, {}
        for symbol in sig:
            if symbol.name in ("true", "false"):
                continue
            values = carriers[symbol.result_sort]
            defaults[symbol.name] = self.choice(values)
            rows = {}
            if symbol.arity:
                for argument in itertools.product(carriers[symbol.argument_sort], repeat=symbol.arity):
                    if self.chance(0.5):
                        rows[argument] = self.choice(values)
            graphs[symbol.name] = rows
        return State(sig, self.profile.primary, self.profile.secondary, defaults, graphs)

    # Terms, guards and formulas

    def term(self, sort: Sort, variables=POOL, depth: int = 1, static: bool = False):
        sig = self._signature
        options = [v for v in variables if v.sort is sort]
        functions = [
            s
            for s in sig
            if s.result_sort is sort and (not static or not s.dynamic) and (depth > 0 or s.arity == 0)
        ]
        options.extend(functions)
        picked = self.choice(options)
        if isinstance(picked, Var):
            return picked
        args = tuple(self.term(picked.argument_sort, variables, depth - 1, static) for _ in range(picked.arity))
        return App(picked.name, args)

    def equation(self, variables=POOL, depth: int = 1, static: bool = False) -> Eq:
        sort = self.choice((Sort.POINT, Sort.ALGO))
        return Eq(self.term(sort, variables, depth, static), self.term(sort, variables, depth, static))

    def guard(self, variables=POOL, depth: int = 1, static: bool = False):
        """A first-order formula without membership, upd or modal atoms."""
        roll = self.rng.random()
        if depth <= 0 or roll < 0.4:
            return self.equation(variables, 1, static)
        if roll < 0.6:
            return Not(self.guard(variables, depth - 1, static))
        if roll < 0.85:
            return And(self.guard(variables, depth - 1, static), self.guard(variables, depth - 1, static))
        var = self.choice(v for v in variables if v.sort.individual)
        return Forall(var, self.guard(variables, depth - 1, static))

    def formula(self, variables=POOL, predicates=(pred1("X"),), depth: int | None = None, static: bool = False):
        """
        A formula of the logic over the pool variables and the given free predicate variables.

        Predicate quantifiers only appear through upd atoms they are confined by.
        """
        depth = self.profile.formula_depth if depth is None else depth
        roll = self.rng.random()
        if static or not predicates:
            if depth <= 0 or roll < 0.5:
                return self.guard(variables, 1, static)
            return self._connective(variables, predicates, depth, static)
        if depth <= 0 or roll < 0.3:
            return self.equation(variables, 1)
        x = self.choice(predicates)
        if roll < 0.4:
            symbol = self.choice(self._signature.dynamic)
            args = tuple(self.term(symbol.argument_sort, variables, 0) for _ in range(symbol.arity))
            return Mem1(x, symbol.name, args, self.term(symbol.result_sort, variables, 0))
        if roll < 0.5:
            return Upd(self.rule(variables, 1), x)
        if roll < 0.65:
            return Box(x, self.formula(variables, predicates, depth - 1))
        return self._connective(variables, predicates, depth, static)

    def _connective(self, variables, predicates, depth, static):
        roll = self.rng.random()
        if roll < 0.35:
            return Not(self.formula(variables, predicates, depth - 1, static))
        if roll < 0.75:
            return And(
                self.formula(variables, predicates, depth - 1, static),
                self.formula(variables, predicates, depth - 1, static),
            )
        var = self.choice(v for v in variables if v.sort.individual)
        return Forall(var, self.formula(variables, predicates, depth - 1, static))

    # Rules

    def update_rule(self, variables=POOL, depth: int = 1) -> UpdateRule:
        symbol = self.choice(self._signature.dynamic)
        args = tuple(self.term(symbol.argument_sort, variables, depth) for _ in range(symbol.arity))
        return UpdateRule(symbol.name, args, self.term(symbol.result_sort, variables, depth), symbol.kind)

    def rule(self, variables=POOL, depth: int | None = None, deterministic: bool = False, form: type | None = None):
        """
        A rule of the given form (random when None).

        Parameters:
        - variables: free variables guards and terms may mention
        - depth (int): nesting depth of sub-rules
        - deterministic (bool): no choose anywhere
        - form (type): outermost form, one of UpdateRule, Cond, ForallRule,
          Choose, Par, Seq
        """
        depth = self.profile.rule_depth if depth is None else depth
        if form is None:
            forms = RULE_FORMS if depth > 0 else (UpdateRule,)
            if deterministic:
                forms = tuple(f for f in forms if f is not Choose)
            form = self.choice(forms)
        if form is UpdateRule:
            return self.update_rule(variables, 1)
        sub = max(depth - 1, 0)
        if form is Cond:
            return Cond(self.guard(variables, 1), self.rule(variables, sub, deterministic))
        if form is ForallRule:
            var = self.choice(v for v in variables if v.sort is Sort.POINT)
            return ForallRule(var, self.guard(variables, 1), self.rule(variables, sub, deterministic))
        if form is Choose:
            var = self.choice(v for v in variables if v.sort.individual)
            return Choose(var, self.guard(variables, 1), self.rule(variables, sub, deterministic))
        if form is Par:
            return Par(self.rule(variables, sub, deterministic), self.rule(variables, sub, deterministic))
        if form is Seq:
            return Seq(self.rule(variables, sub, deterministic), self.rule(variables, sub, deterministic))
        raise TypeError(f"Not a rule form: {form!r}")

    # Values

    def update_set(self, s: State, rules=(), zeta: Valuation = EMPTY_VALUATION) -> frozenset:
        """An update set, biased toward family members and inconsistent sets."""
        roll = self.rng.random()
        if rules and roll < 0.4:
            family = sorted_family(delta(self.choice(rules), s, zeta, self.limits), key=s.atom_key)
            if family:
                return self.choice(family)
        pool = triples(s)
        if roll < 0.7:
            clash = self._inconsistent(s)
            if clash is not None:
                extra = {t for t in pool if self.chance(1 / max(len(pool), 1))}
                return frozenset(clash | extra)
        return frozenset(t for t in pool if self.chance(min(2 / max(len(pool), 1), 0.5)))

    def _inconsistent(self, s: State) -> set | None:
        candidates = [sym for sym in s.signature.dynamic if len(s.codomain(sym.name)) > 1]
        if not candidates:
            return None
        symbol = self.choice(candidates)
        argument = self.choice(s.domain(symbol.name))
        values = list(s.codomain(symbol.name))
        first = self.choice(values)
        second = self.choice(v for v in values if v != first)
        return {Update(symbol.name, argument, first), Update(symbol.name, argument, second)}

    def tagged_set(self, s: State) -> frozenset:
        pool = quadruples(s)
        return frozenset(q for q in pool if self.chance(min(2 / max(len(pool), 1), 0.5)))

    def valuation(self, s: State, variables, rules=(), zeta: Valuation = EMPTY_VALUATION) -> Valuation:
        """
        Bind every given variable not yet in zeta.

        Individual variables come first so the families biasing the
        predicate variables can be computed under them.
        """
        ordered = sorted((v for v in variables if v not in zeta), key=variable_order)
        for var in ordered:
            if var.sort is Sort.POINT:
                zeta = zeta.bind(var, self.choice(s.primary))
            elif var.sort is Sort.ALGO:
                zeta = zeta.bind(var, self.choice(s.secondary))
            elif var.sort is Sort.PRED1:
                zeta = zeta.bind(var, self.update_set(s, rules, zeta))
            else:
                zeta = zeta.bind(var, self.tagged_set(s))
        return zeta


def main():
    sampler = Sampler(7)
    s = sampler.state()
    print(s.value("c", ()))
    print(sampler.rule())
    print(sampler.formula())


if __name__ == "__main__":
    main()
