"""
Update-set families of non-deterministic parallel rules.

`delta(r, s, zeta)` computes the family of update sets a rule may yield in a
state under a valuation, one clause per rule form:

1. update rules yield one singleton update set
2. a conditional yields its body's family when the guard holds, else {{}}
3. forall takes one update set per witness of its guard and joins them, in
   every combination
4. choose collects the families of all witnesses (none: empty family)
5. par joins one update set of each side, in every combination
6. seq keeps inconsistent update sets of its first rule as they are and
   merges each consistent one with the update sets the second rule yields in
   the successor state

Families are frozensets of frozensets, so duplicates from distinct choices
collapse. The configured caps are checked as families grow and exceeding
one raises ResourceLimit rather than truncating.
"""

# Standard library
import itertools
import logging

# Internal dependencies
from asmbase.config import DEFAULT_LIMITS, Limits
from asmbase.core.state import State, apply
from asmbase.core.updates import EMPTY_FAMILY, Update, is_consistent, seq_merge
from asmbase.semantics.evaluation import eval_guard, eval_term
from asmbase.semantics.valuation import EMPTY_VALUATION, Valuation
from asmbase.syntax.rules import Choose, Cond, ForallRule, Par, Seq, UpdateRule

logger = logging.getLogger(__name__)


def _join(left: frozenset, right: frozenset, limits: Limits) -> frozenset:
    """Pairwise unions of two families."""
    result = set()
    for a in left:
        for b in right:
            u = a | b
            limits.check("max_set", len(u))
            result.add(u)
        limits.check("max_family", len(result))
    return frozenset(result)


def delta(rule, s: State, zeta: Valuation = EMPTY_VALUATION, limits: Limits = DEFAULT_LIMITS) -> frozenset:
    """
    Family of update sets yielded by a rule.

    Parameters:
    - rule: any rule AST
    - s (State): the current state
    - zeta (Valuation): values for the free variables of the rule
    - limits (Limits): family and set size caps

    Returns:
    - frozenset[frozenset[Update]]: the deduplicated family

    Raises:
    - UnboundVariable: for a free variable missing from zeta
    - ResourceLimit: when a family or update set outgrows its cap

    Example:
    >>> from asmbase.core.signature import Signature
    >>> from asmbase.syntax.terms import App
    >>> sig = Signature.from_groups(primary={"c": (0, True)})
    >>> s = State(sig, ["true", "false"], ["0"], {"c": "false"})
    >>> delta(UpdateRule("c", (), App("true")), s)
    frozenset({frozenset({Update(function='c', argument=(), value='true')})})
    """
    if isinstance(rule, UpdateRule):
        argument = tuple(eval_term(a, s, zeta) for a in rule.args)
        value = eval_term(rule.value, s, zeta)
        return frozenset({frozenset({Update(rule.function, argument, value)})})

    if isinstance(rule, Cond):
        if eval_guard(rule.guard, s, zeta):
            return delta(rule.body, s, zeta, limits)
        return EMPTY_FAMILY

    if isinstance(rule, ForallRule):
        family = EMPTY_FAMILY
        witnesses = 0
        for atom in s.carrier(rule.var.sort):
            inner = zeta.bind(rule.var, atom)
            if not eval_guard(rule.guard, s, inner):
                continue
            witnesses += 1
            family = _join(family, delta(rule.body, s, inner, limits), limits)
            if not family:
                break
        logger.debug("forall %s: %d witnesses, %d update sets", rule.var, witnesses, len(family))
        return family

    if isinstance(rule, Choose):
        result = set()
        for atom in s.carrier(rule.var.sort):
            inner = zeta.bind(rule.var, atom)
            if eval_guard(rule.guard, s, inner):
                result.update(delta(rule.body, s, inner, limits))
                limits.check("max_family", len(result))
        return frozenset(result)

    if isinstance(rule, Par):
        return _join(delta(rule.left, s, zeta, limits), delta(rule.right, s, zeta, limits), limits)

    if isinstance(rule, Seq):
        result = set()
        for first in delta(rule.first, s, zeta, limits):
            if not is_consistent(first):
                result.add(first)
                continue
            successor = apply(s, first)
            for second in delta(rule.second, successor, zeta, limits):
                result.add(seq_merge(first, second))
            limits.check("max_family", len(result))
        return frozenset(result)

    raise TypeError(f"Not a rule: {rule!r}")


def successors(rule, s: State, limits: Limits = DEFAULT_LIMITS) -> frozenset:
    """States reachable in one step: apply every consistent update set of a closed rule."""
    return frozenset(apply(s, u) for u in delta(rule, s, EMPTY_VALUATION, limits) if is_consistent(u))


def is_defined(rule, s: State, zeta: Valuation = EMPTY_VALUATION, limits: Limits = DEFAULT_LIMITS) -> bool:
    return bool(delta(rule, s, zeta, limits))


def brute_force_delta(rule, s: State, zeta: Valuation = EMPTY_VALUATION) -> frozenset:
    """
    Naive enumeration of the same family, for cross-checking `delta`.

    Every choice is kept in a list and nothing is deduplicated until the end;
    forall and par combinations come from itertools.product.
    """
    return frozenset(frozenset(u) for u in _brute(rule, s, dict(zeta)))


def _brute(rule, s: State, env: dict) -> list:
    zeta = Valuation(env)
    if isinstance(rule, UpdateRule):
        argument = tuple(eval_term(a, s, zeta) for a in rule.args)
        return [[Update(rule.function, argument, eval_term(rule.value, s, zeta))]]
    if isinstance(rule, Cond):
        return _brute(rule.body, s, env) if eval_guard(rule.guard, s, zeta) else [[]]
    if isinstance(rule, ForallRule):
        per_witness = [
            _brute(rule.body, s, {**env, rule.var: atom})
            for atom in s.carrier(rule.var.sort)
            if eval_guard(rule.guard, s, zeta.bind(rule.var, atom))
        ]
        return [[u for part in combo for u in part] for combo in itertools.product(*per_witness)]
    if isinstance(rule, Choose):
        found = []
        for atom in s.carrier(rule.var.sort):
            if eval_guard(rule.guard, s, zeta.bind(rule.var, atom)):
                found.extend(_brute(rule.body, s, {**env, rule.var: atom}))
        return found
    if isinstance(rule, Par):
        return [a + b for a in _brute(rule.left, s, env) for b in _brute(rule.right, s, env)]
    if isinstance(rule, Seq):
        found = []
        for first in _brute(rule.first, s, env):
            locations = {}
            clash = False
            for u in first:
                if locations.setdefault(u.location, u.value) != u.value:
                    clash = True
            if clash:
                found.append(first)
                continue
            successor = apply(s, first)
            for second in _brute(rule.second, successor, env):
                written = {u.location for u in second}
                found.append(second + [u for u in first if u.location not in written])
        return found
    raise TypeError(f"Not a rule: {rule!r}")


def main():
    from asmbase.parser.asm_parser import parse_rule
    from asmbase.parser.state_file import parse_state

    s = parse_state(
        "primary-carrier: true, false, a, b\nsecondary-carrier: 0\n"
        "functions:\n  f: primary dynamic arity 1 default a\n"
    )
    rule = parse_rule("choose x with x != true do f(x) := b enddo", s.signature)
    for u in sorted(delta(rule, s), key=sorted):
        print(sorted(u))


if __name__ == "__main__":
    main()
