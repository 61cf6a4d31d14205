"""
Derivations: numbered formulas, each with its justification.
"""

# Standard library
from dataclasses import dataclass, field

# Internal dependencies
from asmbase.core.signature import Signature


@dataclass(frozen=True)
class Certificate:
    """Discharge of a semantic side condition: `finite` over named state files, or `axiomatic`."""

    kind: str
    files: tuple = ()


@dataclass(frozen=True)
class Hypothesis:
    pass


@dataclass(frozen=True)
class AxiomUse:
    schema: str
    bindings: dict = field(default_factory=dict, hash=False)


@dataclass(frozen=True)
class RuleUse:
    schema: str
    premises: tuple = ()
    bindings: dict = field(default_factory=dict, hash=False)
    certificate: Certificate | None = None


Justification = Hypothesis | AxiomUse | RuleUse


@dataclass(frozen=True)
class Line:
    """
    One step of a derivation.

    Parameters:
    - number (int): the step number written in the file
    - source_line (int): line of the file the step starts on, for diagnostics
    - formula: the formula the step claims
    - justification (Justification): why it holds
    """

    number: int
    source_line: int
    formula: object
    justification: Justification


@dataclass(frozen=True)
class Derivation:
    signature: Signature
    lines: tuple
    hypotheses: tuple = ()
    rules: dict = field(default_factory=dict, compare=False, hash=False)
    signature_file: str | None = None
