"""
Translation of formulas of the logic into the membership fragment.

The membership fragment has no upd atoms and no modal operator, and its
atoms are flat: `x = y`, `f(xs) = y` and membership atoms over variables.
`to_lin` composes flattening, upd elimination, flattening again and modal
elimination, and repeats until the result is in the fragment.

Key components:
1. is_lin -- syntax check for the fragment
2. TranslationSummary -- node counts and iterations of one translation
3. translate / to_lin -- the pipeline
"""

# Standard library
import logging
from dataclasses import dataclass

# Internal dependencies
from asmbase.config import DEFAULT_LIMITS, Limits
from asmbase.core.signature import Signature
from asmbase.syntax.analysis import node_count
from asmbase.syntax.formulas import And, Box, Eq, Forall, Mem1, Mem2, Not, Upd
from asmbase.translation.flatten import flatten_atoms, is_flat_atom
from asmbase.translation.modal_elimination import eliminate_modal
from asmbase.translation.upd_elimination import eliminate_upd

logger = logging.getLogger(__name__)

# Each round removes every upd atom and every box; a second round only
# happens if a pass leaves something behind.
MAX_ROUNDS = 8


def is_lin(phi) -> bool:
    """True when phi is in the flattened membership fragment."""
    if isinstance(phi, (Eq, Mem1, Mem2)):
        return is_flat_atom(phi)
    if isinstance(phi, Not):
        return is_lin(phi.body)
    if isinstance(phi, And):
        return is_lin(phi.left) and is_lin(phi.right)
    if isinstance(phi, Forall):
        return is_lin(phi.body)
    if isinstance(phi, (Upd, Box)):
        return False
    raise TypeError(f"Not a formula: {phi!r}")


@dataclass(frozen=True)
class TranslationSummary:
    input_nodes: int
    output_nodes: int
    iterations: int

    def as_dict(self) -> dict:
        return {
            "input_nodes": self.input_nodes,
            "output_nodes": self.output_nodes,
            "iterations": self.iterations,
        }


def translate(phi, signature: Signature, limits: Limits = DEFAULT_LIMITS) -> tuple:
    """
    Translate phi and report what it took.

    The output is equivalent to phi but is not always cheaper to evaluate:
    the update-set quantifiers introduced for `upd` atoms range over every
    update set of the signature, where the evaluator confines the quantifiers
    of phi to the family of the rule. Beyond tiny signatures, evaluating the
    translation can exceed max_pred_enum even though phi evaluates.

    Returns:
    - tuple: (formula in the membership fragment, TranslationSummary)

    Raises:
    - ResourceLimit: when an intermediate formula exceeds max_nodes
    - RuntimeError: when the passes stop making progress
    """
    before = node_count(phi)
    current = phi
    rounds = 0
    while not is_lin(current):
        if rounds == MAX_ROUNDS:
            raise RuntimeError(f"Translation did not reach the membership fragment after {rounds} rounds")
        rounds += 1
        for name, step in (
            ("flatten", flatten_atoms),
            ("upd elimination", eliminate_upd),
            ("flatten", flatten_atoms),
            ("modal elimination", eliminate_modal),
        ):
            current = step(current, signature)
            size = node_count(current)
            logger.debug("round %d, %s: %d nodes", rounds, name, size)
            limits.check("max_nodes", size)
    summary = TranslationSummary(before, node_count(current), rounds)
    logger.info("translated %d nodes into %d in %d rounds", before, summary.output_nodes, rounds)
    return current, summary


def to_lin(phi, signature: Signature, limits: Limits = DEFAULT_LIMITS):
    """
    An equivalent formula of the membership fragment.

    Example:
    >>> from asmbase.syntax.terms import point
    >>> sig = Signature()
    >>> print(to_lin(Eq(point("x"), point("y")), sig))
    x = y
    """
    return translate(phi, signature, limits)[0]
