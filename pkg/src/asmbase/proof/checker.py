"""
Checking Hilbert-style derivations line by line.

Every line must be a hypothesis, an instance of an axiom schema, or follow
from earlier lines by an inference rule. Formulas are compared up to the
names of bound variables, so macro expansions and hand-written quantifiers
match whatever fresh names they use.

Key components:
1. LineReport / CheckReport -- per-line and overall verdicts
2. check -- a parsed derivation
3. check_file -- a `.asmd` file, with certificates resolved next to it

Notes:
- UG and EI have semantic side conditions. A line using them names a
  certificate: `cert finite [...]` lists state files over which the
  condition is verified by evaluation, `cert axiomatic` accepts it and
  marks the result `ok-modulo-certificates`.
- E needs a `cert finite` over which the two rules have the same families;
  `cert axiomatic` again downgrades the result.
- The mutation schemas never justify a line.
"""

# Standard library
import logging
from dataclasses import dataclass
from pathlib import Path

# Internal dependencies
from asmbase.config import DEFAULT_LIMITS, Limits
from asmbase.core.state import State
from asmbase.errors import AsmError, IllFormedInstantiation, LineError, SortError
from asmbase.logic.evaluator import holds
from asmbase.logic.predicates import rules_equivalent
from asmbase.logic.schemas import get_schema, instantiate_rule, instantiate_schema
from asmbase.parser.asm_parser import parse_derivation
from asmbase.parser.state_file import read_state
from asmbase.syntax.analysis import alpha_equivalent
from asmbase.syntax.derivations import AxiomUse, Derivation, Hypothesis, Line, RuleUse
from asmbase.syntax.formulas import Box, Forall, exists, implies
from asmbase.syntax.printer import format_formula
from asmbase.syntax.sorts import check_formula

logger = logging.getLogger(__name__)

OK = "ok"
OK_MODULO = "ok-modulo-certificates"

PREMISE_COUNTS = {"M2": 1, "M3": 2, "UI": 1, "EG": 1, "UG": 1, "EI": 1, "E": 0}
CERTIFIED = ("UG", "EI", "E")


@dataclass(frozen=True)
class LineReport:
    number: int
    justification: str
    status: str = OK


@dataclass(frozen=True)
class CheckReport:
    """
    Verdict on a whole derivation.

    Parameters:
    - status (str): "ok" or "ok-modulo-certificates"
    - lines (tuple[LineReport]): one entry per line, in order
    """

    status: str
    lines: tuple

    def as_dict(self) -> dict:
        return {
            "status": self.status,
            "lines": [{"line": r.number, "justification": r.justification, "status": r.status} for r in self.lines],
        }


class _Checker:
    def __init__(self, derivation: Derivation, hypotheses, base_dir: Path | None, limits: Limits):
        self.derivation = derivation
        self.signature = derivation.signature
        self.hypotheses = tuple(derivation.hypotheses) + tuple(hypotheses)
        self.base_dir = base_dir
        self.limits = limits
        self.proved: dict[int, object] = {}
        self._states: dict[str, State] = {}

    def line(self, line: Line) -> LineReport:
        if line.number in self.proved:
            raise LineError(line.number, f"step number {line.number} is used twice")
        try:
            check_formula(line.formula, self.signature)
        except SortError as error:
            raise LineError(line.number, f"ill-sorted formula: {error}") from None

        j = line.justification
        if isinstance(j, Hypothesis):
            if not any(alpha_equivalent(line.formula, h) for h in self.hypotheses):
                raise LineError(line.number, "formula is not one of the hypotheses")
            report = LineReport(line.number, "hyp")
        elif isinstance(j, AxiomUse):
            report = self._axiom(line, j)
        elif isinstance(j, RuleUse):
            report = self._rule(line, j)
        else:
            raise LineError(line.number, f"unknown justification {j!r}")
        self.proved[line.number] = line.formula
        logger.debug("line %d accepted by %s", line.number, report.justification)
        return report

    def _axiom(self, line: Line, j: AxiomUse) -> LineReport:
        schema = self._schema(line, j.schema)
        if schema.kind == "mutation":
            raise LineError(line.number, f"{j.schema} is not an axiom of the proof system")
        if schema.kind == "rule":
            raise LineError(line.number, f"{j.schema} is an inference rule; cite it with 'by'")
        try:
            instance = instantiate_schema(j.schema, j.bindings, self.signature)
        except IllFormedInstantiation as error:
            raise LineError(line.number, str(error)) from None
        self._match(line, instance, f"the {j.schema} instance")
        return LineReport(line.number, f"axiom {j.schema}")

    def _rule(self, line: Line, j: RuleUse) -> LineReport:
        schema = self._schema(line, j.schema)
        if schema.kind != "rule":
            raise LineError(line.number, f"{j.schema} is an axiom; cite it with 'axiom'")
        expected = PREMISE_COUNTS[j.schema]
        if len(j.premises) != expected:
            raise LineError(line.number, f"{j.schema} takes {expected} premises, got {len(j.premises)}")
        premises = []
        for number in j.premises:
            if number not in self.proved:
                raise LineError(line.number, f"premise {number} is not an earlier line")
            premises.append(self.proved[number])

        bindings = self._infer(line, j, premises)
        try:
            wanted, conclusion = instantiate_rule(j.schema, bindings, self.signature)
        except IllFormedInstantiation as error:
            raise LineError(line.number, str(error)) from None
        for number, have, want in zip(j.premises, premises, wanted):
            if not alpha_equivalent(have, want):
                raise LineError(line.number, f"premise {number} should be {format_formula(want)}")
        self._match(line, conclusion, f"the conclusion of {j.schema}")

        label = f"{j.schema}({', '.join(str(p) for p in j.premises)})"
        if j.schema not in CERTIFIED:
            if j.certificate is not None:
                raise LineError(line.number, f"{j.schema} takes no certificate")
            return LineReport(line.number, label)
        return LineReport(line.number, label, self._certificate(line, j, bindings))

    def _infer(self, line: Line, j: RuleUse, premises: list) -> dict:
        """Fill in the metavariables the lines themselves determine."""
        bindings = dict(j.bindings)
        if j.schema == "M2":
            bindings.setdefault("phi", premises[0])
            if "X" not in bindings and isinstance(line.formula, Box):
                bindings["X"] = line.formula.var
        elif j.schema == "M3":
            bindings.setdefault("phi", premises[0])
            bindings.setdefault("psi", line.formula)
        elif j.schema == "UG" and isinstance(line.formula, Forall):
            bindings.setdefault("x", line.formula.var)
            bindings.setdefault("phi", line.formula.body)
        elif j.schema == "UI" and isinstance(premises[0], Forall):
            bindings.setdefault("x", premises[0].var)
            bindings.setdefault("phi", premises[0].body)
        return bindings

    def _certificate(self, line: Line, j: RuleUse, bindings: dict) -> str:
        cert = j.certificate
        if cert is None:
            raise LineError(line.number, f"{j.schema} needs a certificate (cert finite [...] or cert axiomatic)")
        if cert.kind == "axiomatic":
            logger.info("line %d: %s accepted on an axiomatic certificate", line.number, j.schema)
            return OK_MODULO
        states = [self._state(line, name) for name in cert.files]
        if j.schema == "E":
            if not rules_equivalent(bindings["r1"], bindings["r2"], states, self.limits):
                raise LineError(line.number, "certificate: the rules differ on a listed state")
            return OK
        phi, var = bindings["phi"], bindings["x"]
        if j.schema == "UG":
            condition = line.formula
        else:
            condition = implies(exists(var, phi), line.formula)
        for name, state in zip(cert.files, states):
            if not holds(condition, state, limits=self.limits):
                raise LineError(line.number, f"certificate: side condition of {j.schema} fails in {name}")
        return OK

    def _state(self, line: Line, name: str) -> State:
        if name not in self._states:
            path = Path(name) if self.base_dir is None else self.base_dir / name
            try:
                state = read_state(path)
            except OSError as error:
                raise LineError(line.number, f"certificate state {name}: {error.strerror}") from None
            except AsmError as error:
                raise LineError(line.number, f"certificate state {name}: {error}") from None
            if state.signature != self.signature:
                raise LineError(line.number, f"certificate state {name} has a different signature")
            self._states[name] = state
        return self._states[name]

    def _schema(self, line: Line, schema_id: str):
        try:
            return get_schema(schema_id)
        except IllFormedInstantiation as error:
            raise LineError(line.number, str(error)) from None

    def _match(self, line: Line, expected, what: str) -> None:
        if not alpha_equivalent(line.formula, expected):
            raise LineError(line.number, f"formula is not {what}: expected {format_formula(expected)}")


def check(
    derivation: Derivation,
    hypotheses=(),
    base_dir: str | Path | None = None,
    limits: Limits = DEFAULT_LIMITS,
) -> CheckReport:
    """
    Check every line of a derivation.

    Parameters:
    - derivation (Derivation): parsed derivation
    - hypotheses: formulas usable with `hyp` besides the file's own
    - base_dir (str | Path): directory certificate files are relative to

    Returns:
    - CheckReport: "ok", or "ok-modulo-certificates" when any line rests on
      an axiomatic certificate

    Raises:
    - LineError: for the first rejected line
    - ResourceLimit: when a certificate check exceeds a cap
    """
    checker = _Checker(derivation, hypotheses, Path(base_dir) if base_dir is not None else None, limits)
    reports = tuple(checker.line(line) for line in derivation.lines)
    status = OK_MODULO if any(r.status == OK_MODULO for r in reports) else OK
    logger.info("derivation of %d lines: %s", len(reports), status)
    return CheckReport(status, reports)


def load_derivation(path: str | Path) -> Derivation:
    """Parse a derivation file; its `signature:` header is resolved next to it."""
    path = Path(path)
    return parse_derivation(path.read_text(), lambda name: read_state(path.parent / name).signature)


def check_file(path: str | Path, hypotheses=(), limits: Limits = DEFAULT_LIMITS) -> CheckReport:
    path = Path(path)
    return check(load_derivation(path), hypotheses, path.parent, limits)


def main():
    import sys

    print(check_file(sys.argv[1]).status)


if __name__ == "__main__":
    main()
