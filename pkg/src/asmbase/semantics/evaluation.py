"""
Values of terms and truth of first-order guards in a state.
"""

# Internal dependencies
from asmbase.core.state import State
from asmbase.errors import SortError
from asmbase.semantics.valuation import EMPTY_VALUATION, Valuation
from asmbase.syntax.formulas import And, Eq, Forall, Not
from asmbase.syntax.terms import App, Var


def eval_term(t, s: State, zeta: Valuation = EMPTY_VALUATION) -> str:
    """
    Value of a term.

    Raises:
    - UnboundVariable: when a variable of the term has no value in zeta

    Example:
    >>> from asmbase.core.signature import Signature
    >>> sig = Signature.from_groups(primary={"f": (1, False)})
    >>> s = State(sig, ["true", "false", "a"], ["0"], {"f": "a"})
    >>> eval_term(App("f", (App("true"),)), s)
    'a'
    """
    if isinstance(t, Var):
        return zeta.lookup(t)
    return s.value(t.function, tuple(eval_term(a, s, zeta) for a in t.args))


def eval_guard(phi, s: State, zeta: Valuation = EMPTY_VALUATION) -> bool:
    """Truth of a first-order formula; quantifiers range over the binder's carrier."""
    if isinstance(phi, Eq):
        return eval_term(phi.left, s, zeta) == eval_term(phi.right, s, zeta)
    if isinstance(phi, Not):
        return not eval_guard(phi.body, s, zeta)
    if isinstance(phi, And):
        return eval_guard(phi.left, s, zeta) and eval_guard(phi.right, s, zeta)
    if isinstance(phi, Forall):
        return all(
            eval_guard(phi.body, s, zeta.bind(phi.var, atom)) for atom in s.carrier(phi.var.sort)
        )
    raise SortError(f"Not a first-order formula: {phi}")
