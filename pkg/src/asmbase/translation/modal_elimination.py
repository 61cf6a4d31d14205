"""
Pushing the modal operator down to the atoms and removing it there.

Rewrites, applied innermost box first:

    [X] x = y           ->  conUSet(X) -> x = y
    [X] f(xs) = y       ->  conUSet(X) -> f(xs) = y                       (f static)
    [X] f(xs) = y       ->  conUSet(X) -> X(f, xs, y)
                                or (forall z (not X(f, xs, z)) and f(xs) = y)  (f dynamic)
    [X] membership      ->  conUSet(X) -> membership
    [X] not phi         ->  conUSet(X) -> not [X] phi
    [X] (phi and psi)   ->  [X] phi and [X] psi
    [X] forall v (phi)  ->  forall v ([X] phi)

Notes:
- The input must be free of upd atoms. Atoms are flattened first.
- The rewrites agree with the evaluator whenever the sets bound to the box
  variables are well-kinded, which is every value of the default domains.
"""

# Internal dependencies
from asmbase.core.signature import Signature
from asmbase.errors import SortError
from asmbase.logic.predicates import con_uset_formula, fresh_names
from asmbase.syntax.analysis import substitute
from asmbase.syntax.formulas import And, Box, Eq, Forall, Mem1, Mem2, Not, Upd, disj2, implies
from asmbase.syntax.terms import App, Var
from asmbase.translation.flatten import flatten_atoms, is_flat_atom


class _ModalEliminator:
    def __init__(self, signature: Signature, phi):
        self.signature = signature
        self.names = fresh_names(signature, phi)
        self._guards: dict[Var, object] = {}

    def consistent(self, x: Var):
        if x not in self._guards:
            self._guards[x] = con_uset_formula(x, self.signature)
        return self._guards[x]

    def formula(self, phi):
        if isinstance(phi, (Eq, Mem1, Mem2)):
            return phi
        if isinstance(phi, Not):
            return Not(self.formula(phi.body))
        if isinstance(phi, And):
            return And(self.formula(phi.left), self.formula(phi.right))
        if isinstance(phi, Forall):
            return Forall(phi.var, self.formula(phi.body))
        if isinstance(phi, Box):
            return self.push(phi.var, self.formula(phi.body))
        if isinstance(phi, Upd):
            raise SortError("Modal elimination needs a formula without upd atoms")
        raise TypeError(f"Not a formula: {phi!r}")

    def push(self, x: Var, phi):
        """[x] phi for a modality-free phi, as a modality-free formula."""
        if isinstance(phi, Eq):
            if not is_flat_atom(phi):
                raise SortError(f"Atom {phi} is not flattened")
            if isinstance(phi.left, App) and self.signature[phi.left.function].dynamic:
                return implies(self.consistent(x), self.location(x, phi.left, phi.right))
            return implies(self.consistent(x), phi)
        if isinstance(phi, (Mem1, Mem2)):
            return implies(self.consistent(x), phi)
        if isinstance(phi, Not):
            return implies(self.consistent(x), Not(self.push(x, phi.body)))
        if isinstance(phi, And):
            return And(self.push(x, phi.left), self.push(x, phi.right))
        if isinstance(phi, Forall):
            var, body = phi.var, phi.body
            if var == x:
                renamed = self.names.fresh(var.name, var.sort)
                var, body = renamed, substitute(body, {x: renamed})
            return Forall(var, self.push(x, body))
        raise TypeError(f"Not a modality-free formula: {phi!r}")

    def location(self, x: Var, app: App, y: Var):
        """The value of a dynamic location after the update set x."""
        symbol = self.signature[app.function]
        z = self.names.fresh("z", symbol.result_sort)
        untouched = And(Forall(z, Not(Mem1(x, app.function, app.args, z))), Eq(app, y))
        return disj2(Mem1(x, app.function, app.args, y), untouched)


def eliminate_modal(phi, signature: Signature):
    """
    An equivalent formula without the modal operator.

    Raises:
    - SortError: when phi still contains upd atoms

    Example:
    >>> from asmbase.syntax.terms import point, pred1
    >>> sig = Signature.from_groups(primary={"c": (0, True)})
    >>> print(eliminate_modal(Box(pred1("X"), Eq(point("x"), point("y"))), sig))
    (forall y (forall z (((@X(c, (), y) and @X(c, (), z)) -> y = z))) -> x = y)
    """
    phi = flatten_atoms(phi, signature)
    return _ModalEliminator(signature, phi).formula(phi)
