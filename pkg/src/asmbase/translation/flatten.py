"""
Flattening atoms into the canonical shapes of the membership fragment.

After flattening, every equation is `x = y` or `f(x1, ..., xn) = y`, and
membership atoms take variables only. Nested terms are named by fresh
existentially bound variables:

    f(g(x)) = y   becomes   exists z (g(x) = z and f(z) = y)

Upd atoms are left alone; their rules still hold compound terms until the
upd axioms replace them.
"""

# Internal dependencies
from asmbase.core.signature import Signature
from asmbase.logic.predicates import fresh_names
from asmbase.syntax.analysis import FreshNames
from asmbase.syntax.formulas import And, Box, Eq, Forall, Mem1, Mem2, Not, Upd, conj, exists_all
from asmbase.syntax.terms import App, Var, sort_of


def is_flat_atom(phi) -> bool:
    if isinstance(phi, Eq):
        if isinstance(phi.right, Var) and isinstance(phi.left, Var):
            return True
        return isinstance(phi.left, App) and isinstance(phi.right, Var) and all(isinstance(a, Var) for a in phi.left.args)
    if isinstance(phi, Mem1):
        return all(isinstance(a, Var) for a in (*phi.args, phi.value))
    if isinstance(phi, Mem2):
        return all(isinstance(a, Var) for a in (*phi.args, phi.value, phi.tag))
    return False


class _Flattener:
    def __init__(self, signature: Signature, names: FreshNames):
        self.signature = signature
        self.names = names

    def formula(self, phi):
        if isinstance(phi, Eq):
            return self.equation(phi.left, phi.right)
        if isinstance(phi, Not):
            return Not(self.formula(phi.body))
        if isinstance(phi, And):
            return And(self.formula(phi.left), self.formula(phi.right))
        if isinstance(phi, Forall):
            return Forall(phi.var, self.formula(phi.body))
        if isinstance(phi, Box):
            return Box(phi.var, self.formula(phi.body))
        if isinstance(phi, Mem1):
            bound, defs = [], []
            args = tuple(self.name(a, bound, defs) for a in phi.args)
            value = self.name(phi.value, bound, defs)
            return exists_all(bound, conj(*defs, Mem1(phi.var, phi.function, args, value)))
        if isinstance(phi, Mem2):
            bound, defs = [], []
            args = tuple(self.name(a, bound, defs) for a in phi.args)
            value = self.name(phi.value, bound, defs)
            tag = self.name(phi.tag, bound, defs)
            return exists_all(bound, conj(*defs, Mem2(phi.var, phi.function, args, value, tag)))
        if isinstance(phi, Upd):
            return phi
        raise TypeError(f"Not a formula: {phi!r}")

    def equation(self, left, right):
        if isinstance(left, Var) and isinstance(right, Var):
            return Eq(left, right)
        if isinstance(left, Var):
            return self.application(right, left)
        if isinstance(right, Var):
            return self.application(left, right)
        z = self.names.fresh("z", sort_of(left, self.signature))
        return exists_all((z,), And(self.application(left, z), self.application(right, z)))

    def application(self, app: App, var: Var):
        """app = var with every compound argument named."""
        bound, defs = [], []
        args = tuple(self.name(a, bound, defs) for a in app.args)
        return exists_all(bound, conj(*defs, Eq(App(app.function, args), var)))

    def name(self, t, bound: list, defs: list) -> Var:
        if isinstance(t, Var):
            return t
        z = self.names.fresh("z", sort_of(t, self.signature))
        bound.append(z)
        defs.append(self.application(t, z))
        return z


def flatten_atoms(phi, signature: Signature):
    """
    Rewrite every atom of phi into canonical shape.

    Example:
    >>> from asmbase.syntax.terms import point
    >>> sig = Signature.from_groups(primary={"f": (1, True), "g": (1, False)})
    >>> x, y = point("x"), point("y")
    >>> print(flatten_atoms(Eq(App("f", (App("g", (x,)),)), y), sig))
    exists z ((g(x) = z and f(z) = y))
    """
    return _Flattener(signature, fresh_names(signature, phi)).formula(phi)
