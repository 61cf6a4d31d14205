"""
Parsing of rules, formulas, machines and derivations.

The grammar lives next to this module as ``asm.lark`` and is loaded through
importlib.resources. One Earley parser serves every entry point; an
``AstBuilder`` transformer turns parse trees into the immutable ASTs of
``asmbase.syntax``, resolving names against the signature and desugaring the
surface abbreviations on the way.

Key components:
1. parse_rule / parse_lformula / parse_term -- single constructs
2. parse_machine / parse_formula_file -- whole files with rule definitions
3. parse_derivation -- derivation files, checked by asmbase.proof

Notes:
- A bare identifier is a 0-ary function if the signature declares one, and
  a point variable otherwise. Algorithmic variables carry a `$` prefix,
  predicate variables `@` and `@@`.
- `choose x, y with phi do r` is read as
  `choose x with exists y (phi) do choose y with phi do r`.
"""

# Standard library
import importlib.resources
import logging
from functools import lru_cache

# Third-party dependencies
from lark import Lark, Token, Transformer
from lark.exceptions import UnexpectedInput, VisitError

# Internal dependencies
from asmbase.core.signature import Signature, Sort
from asmbase.errors import AsmError, AsmSyntaxError, SortError
from asmbase.syntax.analysis import FreshNames
from asmbase.syntax.derivations import AxiomUse, Certificate, Derivation, Hypothesis, Line, RuleUse
from asmbase.syntax.formulas import (
    BOTTOM,
    TOP,
    And,
    Box,
    Eq,
    Forall,
    Mem1,
    Mem2,
    Not,
    Upd,
    disj2,
    exists,
    exists_all,
    forall_all,
    iff,
    implies,
)
from asmbase.syntax.rules import Choose, Cond, ForallRule, Machine, Par, Seq, UpdateRule, par
from asmbase.syntax.sorts import check_formula, check_guard, check_rule
from asmbase.syntax.terms import App, Var

logger = logging.getLogger(__name__)

_ENTRY_POINTS = [
    "rule_text",
    "formula_text",
    "term_text",
    "machine_file",
    "formula_file",
    "derivation_file",
]


@lru_cache(maxsize=1)
def _parser() -> Lark:
    grammar = importlib.resources.files("asmbase.parser").joinpath("asm.lark").read_text()
    return Lark(grammar, start=_ENTRY_POINTS, parser="earley", propagate_positions=True)


class AstBuilder(Transformer):
    """
    Build ASTs from parse trees.

    Parameters:
    - signature (Signature | None): resolves names and fixes update kinds;
      None parses without sort information
    - rules (dict | None): rule definitions available to rule references
    """

    def __init__(self, signature: Signature | None = None, rules: dict | None = None) -> None:
        super().__init__()
        self.signature = signature
        self.rules = dict(rules or {})

    # Helpers

    def _is_function(self, name: str) -> bool:
        return self.signature is not None and name in self.signature

    def _binder_name(self, name: str) -> str:
        if self._is_function(name):
            raise SortError(f"{name!r} is a function symbol and cannot be bound")
        return name

    def _block(self, rules):
        return par(*rules)

    # Entry points

    def rule_text(self, children):
        return children[0]

    def formula_text(self, children):
        return children[0]

    def term_text(self, children):
        return children[0]

    def rule_def(self, children):
        name, rule = children
        if self.signature is not None:
            check_rule(rule, self.signature)
        self.rules[str(name)] = rule
        return ("rule", str(name), rule)

    def initial_decl(self, children):
        return ("initial", children[0])

    def final_decl(self, children):
        return ("final", children[0])

    def formula_stmt(self, children):
        return ("formula", children[0])

    def signature_decl(self, children):
        return ("signature", _unquote(children[0]))

    def hypothesis_decl(self, children):
        return ("hypothesis", children[0])

    def machine_file(self, children):
        return list(children)

    def formula_file(self, children):
        return list(children)

    def derivation_file(self, children):
        return list(children)

    # Rules

    def rule_block(self, children):
        return self._block(children)

    def update(self, children):
        name = str(children[0])
        value = children[-1]
        args = children[1] if len(children) == 3 else ()
        kind = self.signature[name].kind if self._is_function(name) else None
        if self.signature is not None and kind is None:
            raise SortError(f"Update of undeclared function {name!r}")
        if kind is None:
            return UpdateRule(name, tuple(args), value)
        return UpdateRule(name, tuple(args), value, kind)

    def cond(self, children):
        guard, body = children
        return Cond(guard, body)

    def _binding_rule(self, cls, children):
        variables, guard, body = children
        if cls is ForallRule:
            for var in variables:
                if var.sort is not Sort.POINT:
                    raise SortError(f"forall binds point variables only, got {var}")
        for var in variables:
            if not var.sort.individual:
                raise SortError(f"Rules bind individual variables only, got {var}")
        result = body
        for i in reversed(range(len(variables))):
            result = cls(variables[i], exists_all(variables[i + 1 :], guard), result)
        return result

    def forall_rule(self, children):
        return self._binding_rule(ForallRule, children)

    def choose_rule(self, children):
        return self._binding_rule(Choose, children)

    def par_rule(self, children):
        return par(*children)

    def seq_rule(self, children):
        result = children[-1]
        for rule in reversed(children[:-1]):
            result = Seq(rule, result)
        return result

    def rule_ref(self, children):
        name = str(children[0])
        try:
            return self.rules[name]
        except KeyError:
            raise SortError(f"Reference to undefined rule {name!r}") from None

    def binders(self, children):
        return list(children)

    def point_binder(self, children):
        return Var(self._binder_name(str(children[0])), Sort.POINT)

    def algo_binder(self, children):
        return Var(str(children[0])[1:], Sort.ALGO)

    def pred1_binder(self, children):
        return Var(str(children[0])[1:], Sort.PRED1)

    def pred2_binder(self, children):
        return Var(str(children[0])[2:], Sort.PRED2)

    # Formulas

    def iff(self, children):
        return iff(*children)

    def implies(self, children):
        return implies(*children)

    def or_(self, children):
        return disj2(*children)

    def and_(self, children):
        return And(*children)

    def not_(self, children):
        return Not(children[0])

    def forall_formula(self, children):
        variables, body = children
        return forall_all(variables, body)

    def exists_formula(self, children):
        variables, body = children
        return exists_all(variables, body)

    def box(self, children):
        return Box(_pred1(children[0]), children[1])

    def _fresh_pred(self, *nodes) -> Var:
        names = FreshNames.for_nodes(*nodes)
        if self.signature is not None:
            names.used.update(s.name for s in self.signature)
        return names.fresh("X", Sort.PRED1)

    def box_rule(self, children):
        rule, body = children
        var = self._fresh_pred(rule, body)
        return Forall(var, implies(Upd(rule, var), Box(var, body)))

    def diamond_rule(self, children):
        rule, body = children
        var = self._fresh_pred(rule, body)
        return exists(var, And(Upd(rule, var), Box(var, body)))

    def eq(self, children):
        return Eq(*children)

    def neq(self, children):
        return Not(Eq(*children))

    def top(self, children):
        return TOP

    def bottom(self, children):
        return BOTTOM

    def mem1(self, children):
        var, function, args, value = children
        return Mem1(_pred1(var), str(function), args, value)

    def mem2(self, children):
        var, function, args, value, tag = children
        return Mem2(Var(str(var)[2:], Sort.PRED2), str(function), args, value, tag)

    def single_arg(self, children):
        return (children[0],)

    def tuple_args(self, children):
        return tuple(children[0]) if children else ()

    def upd(self, children):
        return Upd(children[0], _pred1(children[1]))

    def _require_signature(self, macro: str) -> Signature:
        if self.signature is None:
            raise SortError(f"{macro} needs a signature to expand")
        return self.signature

    def con_uset(self, children):
        from asmbase.logic.predicates import con_uset_formula

        return con_uset_formula(_pred1(children[0]), self._require_signature("conUSet"))

    def con(self, children):
        from asmbase.logic.predicates import con_formula

        return con_formula(children[0], _pred1(children[1]), self._require_signature("con"))

    def wcon(self, children):
        from asmbase.logic.predicates import wcon_formula

        return wcon_formula(children[0], self._require_signature("wcon"))

    def scon(self, children):
        from asmbase.logic.predicates import scon_formula

        return scon_formula(children[0], self._require_signature("scon"))

    def joinable(self, children):
        from asmbase.logic.predicates import joinable_formula

        return joinable_formula(children[0], children[1], self._require_signature("joinable"))

    # Terms

    def app(self, children):
        name = str(children[0])
        args = tuple(children[1]) if len(children) > 1 else ()
        return App(name, args)

    def name(self, children):
        name = str(children[0])
        if self._is_function(name):
            arity = self.signature[name].arity
            if arity != 0:
                raise SortError(f"Function {name!r} expects {arity} arguments")
            return App(name)
        return Var(name, Sort.POINT)

    def algo_var(self, children):
        return Var(str(children[0])[1:], Sort.ALGO)

    def true_term(self, children):
        return App("true")

    def false_term(self, children):
        return App("false")

    def arglist(self, children):
        return list(children)

    # Derivations

    def step(self, children):
        number, formula, justification = children
        return ("step", Line(int(number), number.line, formula, justification))

    def hyp(self, children):
        return Hypothesis()

    def axiom_step(self, children):
        schema = str(children[0])
        bindings = children[1] if len(children) > 1 else {}
        return AxiomUse(schema, bindings)

    def rule_step(self, children):
        schema, premises, *rest = children
        bindings, certificate = {}, None
        for item in rest:
            if isinstance(item, dict):
                bindings = item
            else:
                certificate = item
        return RuleUse(str(schema), premises, bindings, certificate)

    def premises(self, children):
        return tuple(int(c) for c in children)

    def instantiation(self, children):
        result = {}
        for key, value in children:
            if key in result:
                raise SortError(f"Metavariable {key!r} bound twice")
            result[key] = value
        return result

    def formula_binding(self, children):
        return (str(children[0]), children[1])

    def term_binding(self, children):
        return (str(children[0]), children[1])

    def terms_binding(self, children):
        return (str(children[0]), tuple(children[1]) if len(children) > 1 else ())

    def rule_binding(self, children):
        return (str(children[0]), children[1])

    def var_binding(self, children):
        return (str(children[0]), children[1])

    def vars_binding(self, children):
        return (str(children[0]), tuple(children[1]) if len(children) > 1 else ())

    def function_binding(self, children):
        return (str(children[0]), str(children[1]))

    def finite_certificate(self, children):
        return Certificate("finite", tuple(_unquote(c) for c in children))

    def axiomatic_certificate(self, children):
        return Certificate("axiomatic")


def _pred1(token: Token) -> Var:
    return Var(str(token)[1:], Sort.PRED1)


def _unquote(token: Token) -> str:
    return str(token)[1:-1]


def _parse(text: str, start: str, signature: Signature | None, rules: dict | None = None):
    try:
        tree = _parser().parse(text, start=start)
    except UnexpectedInput as error:
        line = getattr(error, "line", None)
        column = getattr(error, "column", None)
        if line is not None and line < 0:
            line, column = None, None
        snippet = error.get_context(text).strip().splitlines()[0] if line else ""
        raise AsmSyntaxError(f"Invalid syntax near {snippet!r}", line, column) from None
    builder = AstBuilder(signature, rules)
    try:
        return builder.transform(tree), builder
    except VisitError as error:
        if isinstance(error.orig_exc, AsmError):
            raise error.orig_exc from None
        raise


def parse_rule(text: str, signature: Signature | None = None, rules: dict | None = None):
    """
    Parse a rule; several juxtaposed rules form a parallel block.

    Raises:
    - AsmSyntaxError: positioned, on malformed text
    - SortError: on sort or rule-form violations

    Example:
    >>> sig = Signature.from_groups(primary={"f": (1, True)})
    >>> parse_rule("f(x) := y", sig).kind
    <Kind.PRIMARY: 'primary'>
    """
    rule, _ = _parse(text, "rule_text", signature, rules)
    if signature is not None:
        check_rule(rule, signature)
    return rule


def parse_lformula(text: str, signature: Signature | None = None, rules: dict | None = None):
    formula, _ = _parse(text, "formula_text", signature, rules)
    if signature is not None:
        check_formula(formula, signature)
    return formula


def parse_guard(text: str, signature: Signature | None = None):
    formula, _ = _parse(text, "formula_text", signature)
    if signature is not None:
        check_guard(formula, signature)
    return formula


def parse_term(text: str, signature: Signature | None = None):
    term, _ = _parse(text, "term_text", signature)
    return term


def parse_machine(text: str, signature: Signature) -> Machine:
    """
    Parse a machine file: rule definitions (one named `main`), optional
    `initial:` and `final:` state predicates.

    Raises:
    - SortError: when `main` is missing or not closed, or a predicate is not
      a closed first-order formula
    """
    from asmbase.syntax.analysis import free_variables, is_closed

    items, builder = _parse(text, "machine_file", signature)
    initial, final = TOP, BOTTOM
    for item in items:
        if item[0] == "initial":
            initial = item[1]
        elif item[0] == "final":
            final = item[1]
    if "main" not in builder.rules:
        raise SortError("Machine file defines no rule named 'main'")
    main = builder.rules["main"]
    if not is_closed(main):
        names = ", ".join(sorted(str(v) for v in free_variables(main)))
        raise SortError(f"Main rule is not closed, free variables: {names}")
    for label, predicate in (("initial", initial), ("final", final)):
        check_guard(predicate, signature)
        if free_variables(predicate):
            raise SortError(f"The {label} predicate must be closed")
    logger.debug("parsed machine with %d rule definitions", len(builder.rules))
    return Machine(signature, main, initial, final, builder.rules)


def parse_formula_file(text: str, signature: Signature, rules: dict | None = None) -> list:
    """Formulas of a `.asml` file, in order, with rule definitions inlined."""
    items, _ = _parse(text, "formula_file", signature, rules)
    formulas = [item[1] for item in items if item[0] == "formula"]
    for formula in formulas:
        check_formula(formula, signature)
    return formulas


def parse_derivation(text: str, signature_loader) -> Derivation:
    """
    Parse a derivation file.

    Parameters:
    - signature_loader: callable mapping the file named by the
      `signature:` header to a Signature; the formulas of the file are
      resolved against it

    Raises:
    - AsmSyntaxError: on malformed text or a missing header
    - SortError: on ill-sorted formulas
    """
    # The header fixes the signature, so it is read before the full parse.
    header_lines = [line for line in text.splitlines() if line.strip().startswith("signature")]
    header, _ = _parse("\n".join(header_lines), "derivation_file", None)
    signature_file = next((item[1] for item in header if item[0] == "signature"), None)
    if signature_file is None:
        raise AsmSyntaxError("Derivation file has no 'signature:' header", 1, 1)
    signature = signature_loader(signature_file)
    items, builder = _parse(text, "derivation_file", signature)
    hypotheses, lines = [], []
    for item in items:
        if item[0] == "hypothesis":
            check_formula(item[1], signature)
            hypotheses.append(item[1])
        elif item[0] == "step":
            lines.append(item[1])
    return Derivation(signature, tuple(lines), tuple(hypotheses), builder.rules, signature_file)


def main():
    sig = Signature.from_groups(primary={"f": (1, True), "c": (0, False)})
    rule = parse_rule("choose x, y with f(x) = y do f(x) := c enddo", sig)
    print(rule)
    print(parse_lformula("[f(c) := c] f(c) = c", sig))


if __name__ == "__main__":
    main()
