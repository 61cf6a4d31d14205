"""
Structural analysis of terms, formulas and rules.

Key components:
1. free_variables / is_closed -- binding structure (forall and choose rules
   bind their variable in guard and body, quantifiers bind in their body)
2. is_static / is_pure -- the syntactic side conditions of the proof system
3. substitute -- capture-avoiding substitution, raising on capture unless
   asked to rename
4. alpha_equivalent / canonical_names -- comparison and normalisation up to
   renaming of bound variables
5. FreshNames -- hygienic variable supply
"""

# Standard library
import itertools
from typing import Iterable, Iterator, Mapping

# Internal dependencies
from asmbase.core.signature import Signature, Sort
from asmbase.errors import IllFormedInstantiation
from asmbase.syntax.formulas import And, Box, Eq, Forall, Mem1, Mem2, Not, Upd
from asmbase.syntax.rules import Choose, Cond, ForallRule, Par, Seq, UpdateRule
from asmbase.syntax.terms import App, Var

_BINDERS = (Forall, ForallRule, Choose)


def children(node) -> tuple:
    """Immediate sub-terms, sub-formulas and sub-rules of any syntax node."""
    if isinstance(node, Var):
        return ()
    if isinstance(node, App):
        return node.args
    if isinstance(node, Eq):
        return (node.left, node.right)
    if isinstance(node, (Not,)):
        return (node.body,)
    if isinstance(node, And):
        return (node.left, node.right)
    if isinstance(node, Forall):
        return (node.var, node.body)
    if isinstance(node, Mem1):
        return (node.var, *node.args, node.value)
    if isinstance(node, Mem2):
        return (node.var, *node.args, node.value, node.tag)
    if isinstance(node, Upd):
        return (node.rule, node.var)
    if isinstance(node, Box):
        return (node.var, node.body)
    if isinstance(node, UpdateRule):
        return (*node.args, node.value)
    if isinstance(node, Cond):
        return (node.guard, node.body)
    if isinstance(node, (ForallRule, Choose)):
        return (node.var, node.guard, node.body)
    if isinstance(node, Par):
        return (node.left, node.right)
    if isinstance(node, Seq):
        return (node.first, node.second)
    raise TypeError(f"Not a syntax node: {node!r}")


def walk(node) -> Iterator:
    stack = [node]
    while stack:
        current = stack.pop()
        yield current
        stack.extend(reversed(children(current)))


def node_count(node) -> int:
    return sum(1 for _ in walk(node))


def free_variables(node) -> frozenset[Var]:
    """
    Free variables of a term, formula or rule.

    Example:
    >>> from asmbase.syntax.terms import point
    >>> sorted(v.name for v in free_variables(UpdateRule("f", (point("x"),), point("y"))))
    ['x', 'y']
    """
    if isinstance(node, Var):
        return frozenset({node})
    if isinstance(node, _BINDERS):
        inner = frozenset().union(*(free_variables(c) for c in children(node)[1:]))
        return inner - {node.var}
    return frozenset().union(*(free_variables(c) for c in children(node)))


def all_variables(node) -> frozenset[Var]:
    return frozenset(n for n in walk(node) if isinstance(n, Var))


def is_closed(rule) -> bool:
    return not free_variables(rule)


def function_symbols(node) -> frozenset[str]:
    names = set()
    for n in walk(node):
        if isinstance(n, (App, Mem1, Mem2, UpdateRule)):
            names.add(n.function)
    return frozenset(names)


def is_static(phi, signature: Signature) -> bool:
    """True when every function symbol mentioned in the formula is static."""
    return all(not signature[name].dynamic for name in function_symbols(phi))


def is_pure(phi) -> bool:
    """True for formulas built from equalities, negation, conjunction and individual quantifiers."""
    if isinstance(phi, Eq):
        return True
    if isinstance(phi, Not):
        return is_pure(phi.body)
    if isinstance(phi, And):
        return is_pure(phi.left) and is_pure(phi.right)
    if isinstance(phi, Forall):
        return phi.var.sort.individual and is_pure(phi.body)
    return False


class FreshNames:
    """
    Supply of variable names that clash with nothing seen so far.

    Example:
    >>> names = FreshNames(["x", "x1"])
    >>> names.fresh("x", Sort.POINT).name
    'x2'
    """

    def __init__(self, avoid: Iterable[str] = ()) -> None:
        self.used = set(avoid)

    @classmethod
    def for_nodes(cls, *nodes) -> "FreshNames":
        return cls(v.name for node in nodes for v in all_variables(node))

    def fresh(self, base: str, sort: Sort) -> Var:
        base = base.rstrip("0123456789") or "v"
        if base not in self.used:
            self.used.add(base)
            return Var(base, sort)
        for i in itertools.count(1):
            name = f"{base}{i}"
            if name not in self.used:
                self.used.add(name)
                return Var(name, sort)


def substitute(node, mapping: Mapping[Var, object], rename: bool = False, avoid: Iterable[str] = ()):
    """
    Replace free occurrences of variables.

    Parameters:
    - node: term, formula or rule
    - mapping: variable -> term (individual sorts) or variable (predicate sorts)
    - rename (bool): rename binders that would capture instead of raising
    - avoid (Iterable[str]): extra names renamed binders must not take, such as
      function names of the signature

    Raises:
    - IllFormedInstantiation: when a substituted term would be captured and
      rename is False, or when a predicate variable is mapped to a non-variable
      of another sort
    """
    for key, value in mapping.items():
        if not key.sort.individual and not (isinstance(value, Var) and value.sort is key.sort):
            raise IllFormedInstantiation(f"{key} must be replaced by a {key.sort.value} variable")
    mapping = {k: v for k, v in mapping.items() if k != v}
    if not mapping:
        return node
    fresh = FreshNames.for_nodes(node, *mapping.values(), *mapping.keys())
    fresh.used.update(avoid)
    return _substitute(node, mapping, rename, fresh)


def _substitute(node, mapping, rename, fresh):
    if isinstance(node, Var):
        return mapping.get(node, node)
    if isinstance(node, _BINDERS):
        return _substitute_binder(node, mapping, rename, fresh)
    if isinstance(node, App):
        return App(node.function, tuple(_substitute(a, mapping, rename, fresh) for a in node.args))
    if isinstance(node, Eq):
        return Eq(_substitute(node.left, mapping, rename, fresh), _substitute(node.right, mapping, rename, fresh))
    if isinstance(node, Not):
        return Not(_substitute(node.body, mapping, rename, fresh))
    if isinstance(node, And):
        return And(_substitute(node.left, mapping, rename, fresh), _substitute(node.right, mapping, rename, fresh))
    if isinstance(node, Mem1):
        return Mem1(
            mapping.get(node.var, node.var),
            node.function,
            tuple(_substitute(a, mapping, rename, fresh) for a in node.args),
            _substitute(node.value, mapping, rename, fresh),
        )
    if isinstance(node, Mem2):
        return Mem2(
            mapping.get(node.var, node.var),
            node.function,
            tuple(_substitute(a, mapping, rename, fresh) for a in node.args),
            _substitute(node.value, mapping, rename, fresh),
            _substitute(node.tag, mapping, rename, fresh),
        )
    if isinstance(node, Upd):
        return Upd(_substitute(node.rule, mapping, rename, fresh), mapping.get(node.var, node.var))
    if isinstance(node, Box):
        return Box(mapping.get(node.var, node.var), _substitute(node.body, mapping, rename, fresh))
    if isinstance(node, UpdateRule):
        return UpdateRule(
            node.function,
            tuple(_substitute(a, mapping, rename, fresh) for a in node.args),
            _substitute(node.value, mapping, rename, fresh),
            node.kind,
        )
    if isinstance(node, Cond):
        return Cond(_substitute(node.guard, mapping, rename, fresh), _substitute(node.body, mapping, rename, fresh))
    if isinstance(node, Par):
        return Par(_substitute(node.left, mapping, rename, fresh), _substitute(node.right, mapping, rename, fresh))
    if isinstance(node, Seq):
        return Seq(_substitute(node.first, mapping, rename, fresh), _substitute(node.second, mapping, rename, fresh))
    raise TypeError(f"Not a syntax node: {node!r}")


def _rebuild_binder(node, var, parts):
    if isinstance(node, Forall):
        return Forall(var, parts[0])
    return type(node)(var, parts[0], parts[1])


def _substitute_binder(node, mapping, rename, fresh):
    var = node.var
    parts = children(node)[1:]
    inner_free = frozenset().union(*(free_variables(p) for p in parts))
    active = {k: v for k, v in mapping.items() if k != var and k in inner_free}
    if not active:
        return node
    incoming = frozenset().union(*(free_variables(v) for v in active.values()))
    if var in incoming:
        if not rename:
            raise IllFormedInstantiation(
                f"Substituting {', '.join(str(v) for v in active.values())} would be captured by {var}"
            )
        new_var = fresh.fresh(var.name, var.sort)
        parts = tuple(_substitute(p, {var: new_var}, rename, fresh) for p in parts)
        var = new_var
    parts = tuple(_substitute(p, active, rename, fresh) for p in parts)
    return _rebuild_binder(node, var, parts)


def alpha_equivalent(a, b) -> bool:
    """Structural equality up to consistent renaming of bound variables."""
    return _alpha(a, b, {}, {}, 0)


def _alpha(a, b, env_a, env_b, depth) -> bool:
    if type(a) is not type(b):
        return False
    if isinstance(a, Var):
        level_a, level_b = env_a.get(a), env_b.get(b)
        if level_a is None and level_b is None:
            return a == b
        return level_a == level_b and a.sort is b.sort
    if isinstance(a, _BINDERS):
        if a.var.sort is not b.var.sort:
            return False
        env_a = {**env_a, a.var: depth}
        env_b = {**env_b, b.var: depth}
        parts_a, parts_b = children(a)[1:], children(b)[1:]
        return all(_alpha(x, y, env_a, env_b, depth + 1) for x, y in zip(parts_a, parts_b))
    if isinstance(a, (App, Mem1, Mem2, UpdateRule)):
        if a.function != b.function:
            return False
    if isinstance(a, UpdateRule) and a.kind is not b.kind:
        return False
    parts_a, parts_b = children(a), children(b)
    if len(parts_a) != len(parts_b):
        return False
    return all(_alpha(x, y, env_a, env_b, depth) for x, y in zip(parts_a, parts_b))


def canonical_names(node, avoid: Iterable[str] = ()):
    """Rename bound variables to v, v1, v2, ... in binding order, avoiding free names."""
    fresh = FreshNames([*(v.name for v in free_variables(node)), *avoid])
    return _canonical(node, {}, fresh)


def _canonical(node, env, fresh):
    if isinstance(node, Var):
        return env.get(node, node)
    if isinstance(node, _BINDERS):
        new_var = fresh.fresh("v", node.var.sort)
        inner = {**env, node.var: new_var}
        parts = tuple(_canonical(p, inner, fresh) for p in children(node)[1:])
        return _rebuild_binder(node, new_var, parts)
    if isinstance(node, App):
        return App(node.function, tuple(_canonical(a, env, fresh) for a in node.args))
    if isinstance(node, Eq):
        return Eq(_canonical(node.left, env, fresh), _canonical(node.right, env, fresh))
    if isinstance(node, Not):
        return Not(_canonical(node.body, env, fresh))
    if isinstance(node, And):
        return And(_canonical(node.left, env, fresh), _canonical(node.right, env, fresh))
    if isinstance(node, Mem1):
        return Mem1(
            env.get(node.var, node.var),
            node.function,
            tuple(_canonical(a, env, fresh) for a in node.args),
            _canonical(node.value, env, fresh),
        )
    if isinstance(node, Mem2):
        return Mem2(
            env.get(node.var, node.var),
            node.function,
            tuple(_canonical(a, env, fresh) for a in node.args),
            _canonical(node.value, env, fresh),
            _canonical(node.tag, env, fresh),
        )
    if isinstance(node, Upd):
        return Upd(_canonical(node.rule, env, fresh), env.get(node.var, node.var))
    if isinstance(node, Box):
        return Box(env.get(node.var, node.var), _canonical(node.body, env, fresh))
    if isinstance(node, UpdateRule):
        return UpdateRule(
            node.function,
            tuple(_canonical(a, env, fresh) for a in node.args),
            _canonical(node.value, env, fresh),
            node.kind,
        )
    if isinstance(node, Cond):
        return Cond(_canonical(node.guard, env, fresh), _canonical(node.body, env, fresh))
    if isinstance(node, Par):
        return Par(_canonical(node.left, env, fresh), _canonical(node.right, env, fresh))
    if isinstance(node, Seq):
        return Seq(_canonical(node.first, env, fresh), _canonical(node.second, env, fresh))
    raise TypeError(f"Not a syntax node: {node!r}")
