"""
Derived properties of the logic, as formula builders.

Each builder takes the parts of one instance and returns a formula that
should hold in every state under every valuation (rule equivalences return
a formula over a fresh predicate variable). The validation module samples
the parts and evaluates the result.

Key components:
1. Box properties -- distribution, necessitation for static formulas,
   duality for weakly consistent rules, conditionals and choice
2. Update-set properties -- frame, consistency, existentials, conjunction
3. Assignment properties -- what `[f(t) := s] f(x) = y` says about x and y
4. Consistency properties -- wcon of each rule form
5. Rule equivalences -- par commutes and associates, seq associates,
   extensionality of equivalent rules

Notes:
- `box_distribution` takes the conjunctive reading
  `([r](phi -> psi) and [r]phi) -> [r]psi`.
- `box_duality` is guarded by wcon(r): a deterministic rule whose only
  update set is inconsistent makes both boxes true.
- `wcon_forall` and `wcon_par` hold for deterministic bodies; with choice
  inside, joinable only looks at one pair of update sets at a time.
"""

# Internal dependencies
from asmbase.core.signature import Signature, Sort
from asmbase.errors import IllFormedInstantiation
from asmbase.logic.predicates import (
    box,
    con_formula,
    fresh_names,
    joinable_formula,
    wcon_formula,
)
from asmbase.syntax.analysis import free_variables, substitute
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
    disj2,
    exists,
    iff,
    implies,
)
from asmbase.syntax.rules import Choose, Cond, ForallRule, Par, Seq, UpdateRule
from asmbase.syntax.terms import App, Var


def _require_fresh(var: Var, *nodes) -> None:
    for node in nodes:
        if var in free_variables(node):
            raise IllFormedInstantiation(f"{var} must not occur free in {node}")


# Box properties


def box_distribution(rule, phi: Formula, psi: Formula, signature: Signature) -> Formula:
    return implies(And(box(rule, implies(phi, psi), signature), box(rule, phi, signature)), box(rule, psi, signature))


def necessitation(rule, phi: Formula, signature: Signature) -> Formula:
    """phi -> [r]phi, for static phi."""
    return implies(phi, box(rule, phi, signature))


def no_consistent_set(rule, phi: Formula, signature: Signature) -> Formula:
    return implies(Not(wcon_formula(rule, signature)), box(rule, phi, signature))


def box_duality(rule, phi: Formula, signature: Signature) -> Formula:
    """wcon(r) -> ([r]phi <-> not [r] not phi), for deterministic r."""
    return implies(
        wcon_formula(rule, signature),
        iff(box(rule, phi, signature), Not(box(rule, Not(phi), signature))),
    )


def box_cond(guard: Formula, body, psi: Formula, signature: Signature) -> Formula:
    left = box(Cond(guard, body), psi, signature)
    return iff(left, disj2(And(guard, box(body, psi, signature)), And(Not(guard), psi)))


def box_choose(var: Var, guard: Formula, body, psi: Formula, signature: Signature) -> Formula:
    """[choose x with phi do r]psi <-> forall x (phi -> [r]psi), x not free in psi."""
    _require_fresh(var, psi)
    left = box(Choose(var, guard, body), psi, signature)
    return iff(left, Forall(var, implies(guard, box(body, psi, signature))))


# Update-set properties


def frame(rule, x: Var, function: str, args: tuple, y: Var, z: Var, signature: Signature) -> Formula:
    """con(r, X) and [X]f(xs) = y -> X(f, xs, y) or (no update of f(xs) in X and f(xs) = y)."""
    _require_fresh(z, *args, y)
    current = Eq(App(function, tuple(args)), y)
    untouched = And(Forall(z, Not(Mem1(x, function, tuple(args), z))), current)
    return implies(
        And(con_formula(rule, x, signature), Box(x, current)),
        disj2(Mem1(x, function, tuple(args), y), untouched),
    )


def consistent_box(rule, x: Var, phi: Formula, signature: Signature) -> Formula:
    return implies(And(con_formula(rule, x, signature), Box(x, phi)), Not(Box(x, Not(phi))))


def box_exists(x: Var, var: Var, phi: Formula) -> Formula:
    if var == x:
        raise IllFormedInstantiation(f"{var} cannot be bound inside a box over itself")
    return implies(Box(x, exists(var, phi)), exists(var, Box(x, phi)))


def box_conjunction(x: Var, phi: Formula, psi: Formula) -> Formula:
    return implies(And(Box(x, phi), Box(x, psi)), Box(x, And(phi, psi)))


# Assignment properties


def _assignment(function: str, targets: tuple, value, xs: tuple, signature: Signature):
    symbol = signature[function]
    rule = UpdateRule(function, tuple(targets), value, symbol.kind)
    same = conj(*(Eq(x, t) for x, t in zip(xs, targets)))
    return rule, same


def update_hit(function: str, targets: tuple, value, xs: tuple, y: Var, signature: Signature) -> Formula:
    """xs = ts -> (y = s <-> [f(ts) := s] f(xs) = y)."""
    rule, same = _assignment(function, targets, value, xs, signature)
    after = box(rule, Eq(App(function, tuple(xs)), y), signature)
    return implies(same, iff(Eq(y, value), after))


def update_miss(function: str, targets: tuple, value, xs: tuple, y: Var, signature: Signature) -> Formula:
    """xs != ts -> (y = f(xs) <-> [f(ts) := s] f(xs) = y)."""
    rule, same = _assignment(function, targets, value, xs, signature)
    current = Eq(App(function, tuple(xs)), y)
    return implies(Not(same), iff(Eq(y, App(function, tuple(xs))), box(rule, current, signature)))


# Consistency properties


def wcon_update(rule: UpdateRule, signature: Signature) -> Formula:
    return wcon_formula(rule, signature)


def wcon_cond(guard: Formula, body, signature: Signature) -> Formula:
    right = disj2(Not(guard), And(guard, wcon_formula(body, signature)))
    return iff(wcon_formula(Cond(guard, body), signature), right)


def wcon_forall(var: Var, guard: Formula, body, signature: Signature) -> Formula:
    """
    wcon(forall x with phi do r) <->
    forall x (phi -> wcon(r) and forall y (phi[y/x] -> joinable(r, r[y/x]))).
    """
    y = fresh_names(signature, var, guard, body).fresh("y", var.sort)
    renamed_guard = substitute(guard, {var: y})
    renamed_body = substitute(body, {var: y})
    pairwise = Forall(y, implies(renamed_guard, joinable_formula(body, renamed_body, signature)))
    right = Forall(var, implies(guard, And(wcon_formula(body, signature), pairwise)))
    return iff(wcon_formula(ForallRule(var, guard, body), signature), right)


def wcon_par(first, second, signature: Signature) -> Formula:
    right = conj(wcon_formula(first, signature), wcon_formula(second, signature), joinable_formula(first, second, signature))
    return iff(wcon_formula(Par(first, second), signature), right)


def wcon_choose(var: Var, guard: Formula, body, signature: Signature) -> Formula:
    right = exists(var, And(guard, wcon_formula(body, signature)))
    return iff(wcon_formula(Choose(var, guard, body), signature), right)


def wcon_seq(first, second, signature: Signature) -> Formula:
    later = wcon_formula(second, signature)
    x = fresh_names(signature, first, later).fresh("X", Sort.PRED1)
    right = exists(x, And(con_formula(first, x, signature), Box(x, later)))
    return iff(wcon_formula(Seq(first, second), signature), right)


# Rule equivalences


def equivalence_formula(first, second, signature: Signature) -> Formula:
    """forall X (upd(r1, X) <-> upd(r2, X))."""
    x = fresh_names(signature, first, second).fresh("X", Sort.PRED1)
    return Forall(x, iff(Upd(first, x), Upd(second, x)))


def par_commutes(first, second) -> tuple:
    return Par(first, second), Par(second, first)


def par_associates(first, second, third) -> tuple:
    return Par(Par(first, second), third), Par(first, Par(second, third))


def seq_associates(first, second, third) -> tuple:
    return Seq(Seq(first, second), third), Seq(first, Seq(second, third))


def extensionality(first, second, phi: Formula, signature: Signature) -> Formula:
    """r1 == r2 -> ([r1]phi <-> [r2]phi), with the equivalence written as a formula."""
    return implies(
        equivalence_formula(first, second, signature),
        iff(box(first, phi, signature), box(second, phi, signature)),
    )