"""
Removing upd atoms with the upd axioms.

Each `upd(r, X)` is replaced by the right-hand side of the axiom for the
outermost form of r, and the result is rewritten again until no upd atom is
left. Sub-rules are strictly smaller than the rule they came from, so the
rewriting terminates. The sequential axiom leaves `[Y1] upd(r2, Y2)` behind;
the upd atom under the box is rewritten in place, since the axioms hold in
every state.
"""

# Standard library
import logging

# Internal dependencies
from asmbase.core.signature import Signature
from asmbase.logic.schemas import upd_expansion
from asmbase.syntax.formulas import And, Box, Eq, Forall, Mem1, Mem2, Not, Upd

logger = logging.getLogger(__name__)


def has_upd(phi) -> bool:
    if isinstance(phi, Upd):
        return True
    if isinstance(phi, Not):
        return has_upd(phi.body)
    if isinstance(phi, And):
        return has_upd(phi.left) or has_upd(phi.right)
    if isinstance(phi, (Forall, Box)):
        return has_upd(phi.body)
    return False


def eliminate_upd(phi, signature: Signature):
    """
    An equivalent formula without upd atoms.

    Example:
    >>> from asmbase.syntax.rules import UpdateRule
    >>> from asmbase.syntax.terms import App, pred1
    >>> sig = Signature.from_groups(primary={"c": (0, True)})
    >>> print(eliminate_upd(Upd(UpdateRule("c", (), App("true")), pred1("X")), sig))
    (@X(c, (), true) and forall y ((@X(c, (), y) -> y = true)))
    """
    if isinstance(phi, (Eq, Mem1, Mem2)):
        return phi
    if isinstance(phi, Upd):
        expanded = upd_expansion(phi.rule, phi.var, signature)
        logger.debug("expanded upd over a %s rule", type(phi.rule).__name__)
        return eliminate_upd(expanded, signature)
    if isinstance(phi, Not):
        return Not(eliminate_upd(phi.body, signature))
    if isinstance(phi, And):
        return And(eliminate_upd(phi.left, signature), eliminate_upd(phi.right, signature))
    if isinstance(phi, Forall):
        return Forall(phi.var, eliminate_upd(phi.body, signature))
    if isinstance(phi, Box):
        return Box(phi.var, eliminate_upd(phi.body, signature))
    raise TypeError(f"Not a formula: {phi!r}")
