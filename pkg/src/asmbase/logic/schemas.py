"""
Axiom schemas and inference rules of the proof system.

A schema is identified by a short id (M1, U3, DY1, ...) and lists its
metavariables. Instantiating it with a binding for every metavariable gives
a concrete formula; inference rules give their premises and conclusion.
The same registry feeds the proof checker and the soundness validator.

Key components:
1. Meta -- what a metavariable stands for
2. Schema -- id, kind, metavariables and builder
3. SCHEMAS -- the registry, in canonical order
4. instantiate_schema / instantiate_rule -- checked instantiation
5. upd_expansion -- right-hand side of the upd axiom for one rule form

Notes:
- Quantified variables of every schema may be of any of the four sorts; the
  sort of the variable bound to `x` selects the variant.
- `A2-unguarded` and `M5-converse` are deliberately unsound mutations, kept
  to check that validation finds counterexamples. The checker rejects them.
- `E` is a rule without premises: its conclusion needs a certificate that
  the two rules are equivalent.
"""

# Standard library
import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Mapping

# Internal dependencies
from asmbase.core.signature import Signature, Sort
from asmbase.errors import AsmError, IllFormedInstantiation, SortError
from asmbase.logic.predicates import (
    con_formula,
    con_uset_formula,
    empty_formula,
    fresh_names,
    location_variables,
    per_function,
)
from asmbase.syntax.analysis import free_variables, is_pure, is_static, substitute
from asmbase.syntax.formulas import (
    And,
    Box,
    Eq,
    Forall,
    Mem1,
    Mem2,
    Not,
    Upd,
    conj,
    disj2,
    exists,
    exists_all,
    forall_all,
    iff,
    implies,
)
from asmbase.syntax.rules import Choose, Cond, ForallRule, Par, Seq, UpdateRule
from asmbase.syntax.sorts import check_formula, check_rule
from asmbase.syntax.terms import App, Var, sort_of

logger = logging.getLogger(__name__)


class Meta(Enum):
    FORMULA = "formula"
    TERM = "term"
    TERMS = "terms"
    RULE = "rule"
    VAR = "variable"
    VARS = "variables"
    FUNCTION = "function"


@dataclass(frozen=True)
class Schema:
    """
    One axiom schema or inference rule.

    Parameters:
    - id (str): the name used in derivations and on the command line
    - kind (str): "axiom", "rule" or "mutation"
    - metavariables (tuple): (name, Meta) pairs
    - description (str): the schema in surface syntax
    - build (Callable): bindings, signature -> formula for axioms and
      mutations, (premises, conclusion) for rules
    - optional (tuple): metavariables a rule can infer from its lines
    """

    id: str
    kind: str
    metavariables: tuple
    description: str
    build: Callable = field(compare=False, repr=False)
    optional: tuple = ()

    @property
    def names(self) -> tuple:
        return tuple(name for name, _ in self.metavariables)


# Binding checks


def _formula(b: Mapping, name: str, signature: Signature):
    value = b[name]
    try:
        check_formula(value, signature)
    except (SortError, TypeError, AttributeError) as error:
        raise IllFormedInstantiation(f"{name} must be a formula: {error}") from None
    return value


def _rule(b: Mapping, name: str, signature: Signature):
    value = b[name]
    try:
        check_rule(value, signature)
    except (SortError, TypeError, AttributeError) as error:
        raise IllFormedInstantiation(f"{name} must be a rule: {error}") from None
    return value


def _term(value, name: str, signature: Signature):
    try:
        sort_of(value, signature)
    except (SortError, TypeError, AttributeError) as error:
        raise IllFormedInstantiation(f"{name} must be a term: {error}") from None
    return value


def _terms(b: Mapping, name: str, signature: Signature) -> tuple:
    value = b[name]
    items = value if isinstance(value, tuple) else (value,)
    return tuple(_term(item, name, signature) for item in items)


def _var(b: Mapping, name: str, sort: Sort | None = None) -> Var:
    value = b[name]
    if not isinstance(value, Var):
        raise IllFormedInstantiation(f"{name} must be a variable, got {value}")
    if sort is not None and value.sort is not sort:
        raise IllFormedInstantiation(f"{name} must be a {sort.value} variable, got {value}")
    return value


def _vars(b: Mapping, name: str) -> tuple:
    value = b[name]
    items = value if isinstance(value, tuple) else (value,)
    for item in items:
        if not isinstance(item, Var) or not item.sort.individual:
            raise IllFormedInstantiation(f"{name} must list individual variables, got {item}")
    return items


def _dynamic_function(b: Mapping, name: str, signature: Signature):
    value = b[name]
    if not isinstance(value, str) or value not in signature:
        raise IllFormedInstantiation(f"{name} must name a function of the signature, got {value!r}")
    symbol = signature[value]
    if not symbol.dynamic:
        raise IllFormedInstantiation(f"{value!r} is static; update sets only hold dynamic functions")
    return symbol


def _distinct(*variables: Var) -> None:
    if len(set(variables)) != len(variables):
        raise IllFormedInstantiation(f"Variables {', '.join(str(v) for v in variables)} must be distinct")


def _not_free(var: Var, *nodes) -> None:
    for node in nodes:
        if var in free_variables(node):
            raise IllFormedInstantiation(f"{var} must not occur free in {node}")


def _location(b: Mapping, signature: Signature):
    """f, the argument variables x and the value variable y of A1/A2."""
    symbol = _dynamic_function(b, "f", signature)
    xs = _vars(b, "x")
    y = _var(b, "y")
    if len(xs) != symbol.arity:
        raise IllFormedInstantiation(f"{symbol.name!r} takes {symbol.arity} arguments, x lists {len(xs)}")
    for x in xs:
        if x.sort is not symbol.argument_sort:
            raise IllFormedInstantiation(f"Argument {x} of {symbol.name!r} must be a {symbol.argument_sort.value} variable")
    if y.sort is not symbol.result_sort:
        raise IllFormedInstantiation(f"Value {y} of {symbol.name!r} must be a {symbol.result_sort.value} variable")
    return symbol, xs, y


def _static_or_pure(phi, signature: Signature) -> None:
    if not (is_static(phi, signature) or is_pure(phi)):
        raise IllFormedInstantiation(f"side condition: {phi} is neither static nor pure")


# Axioms


def _m1(b, sig):
    phi, psi, x = _formula(b, "phi", sig), _formula(b, "psi", sig), _var(b, "X", Sort.PRED1)
    return implies(Box(x, implies(phi, psi)), implies(Box(x, phi), Box(x, psi)))


def _m4(b, sig):
    phi, x = _formula(b, "phi", sig), _var(b, "X", Sort.PRED1)
    return implies(Not(con_uset_formula(x, sig)), Box(x, phi))


def _m5(b, sig):
    phi, x = _formula(b, "phi", sig), _var(b, "X", Sort.PRED1)
    return implies(Not(Box(x, phi)), Box(x, Not(phi)))


def _m6(b, sig):
    phi, var, x = _formula(b, "phi", sig), _var(b, "x"), _var(b, "X", Sort.PRED1)
    _distinct(var, x)
    return implies(Forall(var, Box(x, phi)), Box(x, Forall(var, phi)))


def _m7(b, sig):
    rule, x, phi = _rule(b, "r", sig), _var(b, "X", Sort.PRED1), _formula(b, "phi", sig)
    _static_or_pure(phi, sig)
    return implies(And(con_formula(rule, x, sig), phi), Box(x, phi))


def _m8(b, sig):
    rule, x, phi = _rule(b, "r", sig), _var(b, "X", Sort.PRED1), _formula(b, "phi", sig)
    _static_or_pure(phi, sig)
    return implies(And(con_formula(rule, x, sig), Box(x, phi)), phi)


def _a1(b, sig):
    symbol, xs, y = _location(b, sig)
    z, x = _var(b, "z", symbol.result_sort), _var(b, "X", Sort.PRED1)
    _distinct(*xs, y, z)
    current = Eq(App(symbol.name, xs), y)
    untouched = Forall(z, Not(Mem1(x, symbol.name, xs, z)))
    return implies(conj(con_uset_formula(x, sig), untouched, current), Box(x, current))


def _a2(b, sig):
    symbol, xs, y = _location(b, sig)
    x = _var(b, "X", Sort.PRED1)
    return implies(And(con_uset_formula(x, sig), Mem1(x, symbol.name, xs, y)), Box(x, Eq(App(symbol.name, xs), y)))


def _a2_unguarded(b, sig):
    symbol, xs, y = _location(b, sig)
    x = _var(b, "X", Sort.PRED1)
    return implies(Mem1(x, symbol.name, xs, y), Not(Box(x, Not(Eq(App(symbol.name, xs), y)))))


def _m5_converse(b, sig):
    phi, x = _formula(b, "phi", sig), _var(b, "X", Sort.PRED1)
    return implies(Box(x, Not(phi)), Not(Box(x, phi)))


def _p1(b, sig):
    phi, psi = _formula(b, "phi", sig), _formula(b, "psi", sig)
    return implies(phi, implies(psi, phi))


def _p2(b, sig):
    phi, psi, chi = _formula(b, "phi", sig), _formula(b, "psi", sig), _formula(b, "chi", sig)
    return implies(implies(phi, implies(psi, chi)), implies(implies(phi, psi), implies(phi, chi)))


def _p3(b, sig):
    phi, psi = _formula(b, "phi", sig), _formula(b, "psi", sig)
    return implies(implies(Not(phi), Not(psi)), implies(psi, phi))


def _eq1(b, sig):
    (t,) = _terms(b, "t", sig)
    if not is_static(Eq(t, t), sig):
        raise IllFormedInstantiation(f"side condition: {t} is not static")
    return Eq(t, t)


def _eq2(b, sig):
    name = b["f"]
    if not isinstance(name, str) or name not in sig:
        raise IllFormedInstantiation(f"f must name a function of the signature, got {name!r}")
    symbol = sig[name]
    ts, ss = _terms(b, "t", sig), _terms(b, "s", sig)
    if len(ts) != symbol.arity or len(ss) != symbol.arity:
        raise IllFormedInstantiation(f"{name!r} takes {symbol.arity} arguments on both sides")
    equalities = tuple(Eq(t, s) for t, s in zip(ts, ss))
    for eq in equalities:
        if not is_static(eq, sig):
            raise IllFormedInstantiation(f"side condition: {eq} has non-static terms")
        if sort_of(eq.left, sig) is not symbol.argument_sort or sort_of(eq.right, sig) is not symbol.argument_sort:
            raise IllFormedInstantiation(f"Arguments of {name!r} must be {symbol.argument_sort.value} terms")
    return implies(conj(*equalities), Eq(App(name, ts), App(name, ss)))


def _dy1(b, sig):
    first, second, phi = _rule(b, "r1", sig), _rule(b, "r2", sig), _formula(b, "phi", sig)
    x, x1, x2 = _var(b, "X", Sort.PRED1), _var(b, "X1", Sort.PRED1), _var(b, "X2", Sort.PRED1)
    _distinct(x, x1, x2)
    for var in (x, x1, x2):
        _not_free(var, first, second, phi)
    left = exists(x, And(Upd(Seq(first, second), x), Box(x, phi)))
    inner = exists(x2, And(Upd(second, x2), Box(x2, phi)))
    right = exists(x1, And(Upd(first, x1), Box(x1, inner)))
    return iff(left, right)


def _upd_axiom(form: type, label: str):
    def build(b, sig):
        rule, x = _rule(b, "r", sig), _var(b, "X", Sort.PRED1)
        if not isinstance(rule, form):
            raise IllFormedInstantiation(f"{label} expects a {form.__name__} rule, got {rule}")
        if isinstance(rule, Choose) and (rule.var.sort is Sort.POINT) != (label == "U5"):
            raise IllFormedInstantiation(f"{label} expects a choice over the {'primary' if label == 'U5' else 'secondary'} sort")
        _not_free(x, rule)
        return iff(Upd(rule, x), upd_expansion(rule, x, sig))

    return build


# Inference rules: (premises, conclusion)


def _m2(b, sig):
    phi, x = _formula(b, "phi", sig), _var(b, "X", Sort.PRED1)
    return (phi,), Box(x, phi)


def _m3(b, sig):
    phi, psi = _formula(b, "phi", sig), _formula(b, "psi", sig)
    return (phi, implies(phi, psi)), psi


def _instance(b, sig):
    phi, var = _formula(b, "phi", sig), _var(b, "x")
    t = b.get("t", var)
    if var.sort.individual:
        _term(t, "t", sig)
        if sort_of(t, sig) is not var.sort:
            raise IllFormedInstantiation(f"t must be a {var.sort.value} term, got {t}")
    elif not (isinstance(t, Var) and t.sort is var.sort):
        raise IllFormedInstantiation(f"t must be a {var.sort.value} variable, got {t}")
    if var.sort.individual and not (is_pure(phi) or is_static(Eq(t, t), sig)):
        raise IllFormedInstantiation(f"side condition: {phi} is not pure and {t} is not static")
    return phi, var, substitute(phi, {var: t})


def _ui(b, sig):
    phi, var, instance = _instance(b, sig)
    return (Forall(var, phi),), instance


def _eg(b, sig):
    phi, var, instance = _instance(b, sig)
    return (instance,), exists(var, phi)


def _ug(b, sig):
    phi, var, instance = _instance(b, sig)
    return (instance,), Forall(var, phi)


def _ei(b, sig):
    phi, var, instance = _instance(b, sig)
    return (exists(var, phi),), instance


def _e(b, sig):
    first, second, phi = _rule(b, "r1", sig), _rule(b, "r2", sig), _formula(b, "phi", sig)
    x1, x2 = _var(b, "X1", Sort.PRED1), _var(b, "X2", Sort.PRED1)
    _distinct(x1, x2)
    for var in (x1, x2):
        _not_free(var, first, second, phi)
    body = iff(And(Upd(first, x1), Box(x1, phi)), And(Upd(second, x2), Box(x2, phi)))
    return (), exists_all((x1, x2), body)


F, T, TS, R, V, VS, FN = Meta.FORMULA, Meta.TERM, Meta.TERMS, Meta.RULE, Meta.VAR, Meta.VARS, Meta.FUNCTION

SCHEMAS: dict[str, Schema] = {
    s.id: s
    for s in (
        Schema("M1", "axiom", (("phi", F), ("psi", F), ("X", V)), "[X](phi -> psi) -> ([X]phi -> [X]psi)", _m1),
        Schema("M2", "rule", (("phi", F), ("X", V)), "phi |- [X]phi", _m2, optional=("phi",)),
        Schema("M3", "rule", (("phi", F), ("psi", F)), "phi, phi -> psi |- psi", _m3, optional=("phi", "psi")),
        Schema("M4", "axiom", (("phi", F), ("X", V)), "not conUSet(X) -> [X]phi", _m4),
        Schema("M5", "axiom", (("phi", F), ("X", V)), "not [X]phi -> [X]not phi", _m5),
        Schema("M6", "axiom", (("phi", F), ("x", V), ("X", V)), "forall x ([X]phi) -> [X]forall x (phi)", _m6),
        Schema("M7", "axiom", (("r", R), ("X", V), ("phi", F)), "con(r, X) and phi -> [X]phi, phi static or pure", _m7),
        Schema("M8", "axiom", (("r", R), ("X", V), ("phi", F)), "con(r, X) and [X]phi -> phi, phi static or pure", _m8),
        Schema(
            "A1",
            "axiom",
            (("f", FN), ("x", VS), ("y", V), ("z", V), ("X", V)),
            "conUSet(X) and forall z (not X(f, x, z)) and f(x) = y -> [X]f(x) = y",
            _a1,
        ),
        Schema("A2", "axiom", (("f", FN), ("x", VS), ("y", V), ("X", V)), "conUSet(X) and X(f, x, y) -> [X]f(x) = y", _a2),
        Schema("P1", "axiom", (("phi", F), ("psi", F)), "phi -> (psi -> phi)", _p1),
        Schema(
            "P2",
            "axiom",
            (("phi", F), ("psi", F), ("chi", F)),
            "(phi -> (psi -> chi)) -> ((phi -> psi) -> (phi -> chi))",
            _p2,
        ),
        Schema("P3", "axiom", (("phi", F), ("psi", F)), "(not phi -> not psi) -> (psi -> phi)", _p3),
        Schema("UI", "rule", (("phi", F), ("x", V), ("t", T)), "forall x (phi) |- phi[t/x]", _ui),
        Schema("EG", "rule", (("phi", F), ("x", V), ("t", T)), "phi[t/x] |- exists x (phi)", _eg),
        Schema("UG", "rule", (("phi", F), ("x", V), ("t", T)), "phi[t/x] |- forall x (phi), certified", _ug, optional=("t",)),
        Schema("EI", "rule", (("phi", F), ("x", V), ("t", T)), "exists x (phi) |- phi[t/x], certified", _ei),
        Schema("EQ1", "axiom", (("t", T),), "t = t, t static", _eq1),
        Schema("EQ2", "axiom", (("f", FN), ("t", TS), ("s", TS)), "t1 = s1 and ... -> f(t1, ...) = f(s1, ...), static terms", _eq2),
        Schema(
            "DY1",
            "axiom",
            (("r1", R), ("r2", R), ("phi", F), ("X", V), ("X1", V), ("X2", V)),
            "exists X (upd(seq r1 r2 endseq, X) and [X]phi) <-> "
            "exists X1 (upd(r1, X1) and [X1]exists X2 (upd(r2, X2) and [X2]phi))",
            _dy1,
        ),
        Schema(
            "E",
            "rule",
            (("r1", R), ("r2", R), ("phi", F), ("X1", V), ("X2", V)),
            "r1 == r2 |- exists X1, X2 ((upd(r1, X1) and [X1]phi) <-> (upd(r2, X2) and [X2]phi))",
            _e,
        ),
        Schema("U1", "axiom", (("r", R), ("X", V)), "upd(f(t) := s, X) <-> ...", _upd_axiom(UpdateRule, "U1")),
        Schema("U2", "axiom", (("r", R), ("X", V)), "upd(if phi then r endif, X) <-> ...", _upd_axiom(Cond, "U2")),
        Schema("U3", "axiom", (("r", R), ("X", V)), "upd(forall x with phi do r enddo, X) <-> ...", _upd_axiom(ForallRule, "U3")),
        Schema("U4", "axiom", (("r", R), ("X", V)), "upd(par r1 r2 endpar, X) <-> ...", _upd_axiom(Par, "U4")),
        Schema("U5", "axiom", (("r", R), ("X", V)), "upd(choose x with phi do r enddo, X) <-> ...", _upd_axiom(Choose, "U5")),
        Schema("U6", "axiom", (("r", R), ("X", V)), "upd(choose $x with phi do r enddo, X) <-> ...", _upd_axiom(Choose, "U6")),
        Schema("U7", "axiom", (("r", R), ("X", V)), "upd(seq r1 r2 endseq, X) <-> ...", _upd_axiom(Seq, "U7")),
        Schema("A2-unguarded", "mutation", (("f", FN), ("x", VS), ("y", V), ("X", V)), "X(f, x, y) -> not [X]not f(x) = y", _a2_unguarded),
        Schema("M5-converse", "mutation", (("phi", F), ("X", V)), "[X]not phi -> not [X]phi", _m5_converse),
    )
}

AXIOM_IDS = tuple(k for k, s in SCHEMAS.items() if s.kind == "axiom")
RULE_IDS = tuple(k for k, s in SCHEMAS.items() if s.kind == "rule")
MUTATION_IDS = tuple(k for k, s in SCHEMAS.items() if s.kind == "mutation")


def get_schema(schema_id: str) -> Schema:
    try:
        return SCHEMAS[schema_id]
    except KeyError:
        raise IllFormedInstantiation(f"Unknown schema {schema_id!r}") from None


def _checked_bindings(schema: Schema, bindings: Mapping) -> dict:
    known = set(schema.names)
    extra = set(bindings) - known
    if extra:
        raise IllFormedInstantiation(f"{schema.id} has no metavariables {sorted(extra)}")
    missing = [n for n in schema.names if n not in bindings and n not in schema.optional]
    if missing:
        raise IllFormedInstantiation(f"{schema.id} needs a binding for {', '.join(missing)}")
    return dict(bindings)


def _build(schema: Schema, bindings: Mapping, signature: Signature):
    b = _checked_bindings(schema, bindings)
    try:
        return schema.build(b, signature)
    except KeyError as error:
        raise IllFormedInstantiation(f"{schema.id} needs a binding for {error.args[0]}") from None
    except IllFormedInstantiation:
        raise
    except AsmError as error:
        raise IllFormedInstantiation(f"{schema.id}: {error}") from None


def instantiate_schema(schema_id: str, bindings: Mapping, signature: Signature):
    """
    The axiom instance for a complete binding of the schema's metavariables.

    Raises:
    - IllFormedInstantiation: unknown schema, missing or extra metavariables,
      ill-sorted values, violated side conditions, or variable capture

    Example:
    >>> from asmbase.syntax.terms import point
    >>> sig = Signature()
    >>> x, y = point("x"), point("y")
    >>> print(instantiate_schema("P1", {"phi": Eq(x, x), "psi": Eq(y, y)}, sig))
    (x = x -> (y = y -> x = x))
    """
    schema = get_schema(schema_id)
    if schema.kind == "rule":
        raise IllFormedInstantiation(f"{schema_id} is an inference rule, not an axiom")
    return _build(schema, bindings, signature)


def instantiate_rule(schema_id: str, bindings: Mapping, signature: Signature) -> tuple:
    """Premises and conclusion of an inference rule for a binding of its metavariables."""
    schema = get_schema(schema_id)
    if schema.kind != "rule":
        raise IllFormedInstantiation(f"{schema_id} is an axiom, not an inference rule")
    return _build(schema, bindings, signature)


# The upd axioms


def _slices(signature: Signature, names, body):
    """Conjunction over dynamic f of forall ys, z (body(f, ys, z, local))."""
    return per_function(signature, names, body)


def upd_expansion(rule, x: Var, signature: Signature):
    """
    Right-hand side of the upd axiom for the outermost form of a rule.

    Sub-rules stay inside upd atoms; repeated application removes them.

    Example:
    >>> from asmbase.syntax.terms import pred1
    >>> sig = Signature.from_groups(primary={"c": (0, True)})
    >>> print(upd_expansion(UpdateRule("c", (), App("true")), pred1("X"), sig))
    (@X(c, (), true) and forall y ((@X(c, (), y) -> y = true)))
    """
    names = fresh_names(signature, rule, x)

    if isinstance(rule, UpdateRule):
        symbol = signature[rule.function]
        xs = location_variables(names, symbol)
        y = names.fresh("y", symbol.result_sort)
        only = forall_all(
            (*xs, y),
            implies(Mem1(x, rule.function, xs, y), conj(*(Eq(a, t) for a, t in zip(xs, rule.args)), Eq(y, rule.value))),
        )
        others = per_function(
            Signature(s for s in signature if s.name != rule.function),
            names,
            lambda s, ys, z, _: Not(Mem1(x, s.name, ys, z)),
        )
        parts = [Mem1(x, rule.function, tuple(rule.args), rule.value), only]
        if any(s.name != rule.function for s in signature.dynamic):
            parts.append(others)
        return conj(*parts)

    if isinstance(rule, Cond):
        return disj2(And(rule.guard, Upd(rule.body, x)), And(Not(rule.guard), empty_formula(x, signature)))

    if isinstance(rule, ForallRule):
        tagged = names.fresh("XX", Sort.PRED2)
        y = names.fresh("Y", Sort.PRED1)
        tag = rule.var
        slice_of = _slices(signature, names, lambda s, ys, z, _: iff(Mem1(y, s.name, ys, z), Mem2(tagged, s.name, ys, z, tag)))
        blank = _slices(signature, names, lambda s, ys, z, _: Not(Mem2(tagged, s.name, ys, z, tag)))
        per_witness = Forall(
            tag,
            And(
                implies(rule.guard, exists(y, And(Upd(rule.body, y), slice_of))),
                implies(Not(rule.guard), blank),
            ),
        )
        w = names.fresh("w", Sort.POINT)
        union = _slices(signature, names, lambda s, ys, z, _: iff(Mem1(x, s.name, ys, z), exists(w, Mem2(tagged, s.name, ys, z, w))))
        return exists(tagged, And(per_witness, union))

    if isinstance(rule, Par):
        y1, y2 = names.fresh("Y1", Sort.PRED1), names.fresh("Y2", Sort.PRED1)
        union = _slices(
            signature,
            names,
            lambda s, ys, z, _: iff(Mem1(x, s.name, ys, z), disj2(Mem1(y1, s.name, ys, z), Mem1(y2, s.name, ys, z))),
        )
        return exists_all((y1, y2), conj(Upd(rule.left, y1), Upd(rule.right, y2), union))

    if isinstance(rule, Choose):
        return exists(rule.var, And(rule.guard, Upd(rule.body, x)))

    if isinstance(rule, Seq):
        y1, y2 = names.fresh("Y1", Sort.PRED1), names.fresh("Y2", Sort.PRED1)

        def merged(s, ys, z, local):
            w = local.fresh("w", s.result_sort)
            kept = And(Mem1(y1, s.name, ys, z), Forall(w, Not(Mem1(y2, s.name, ys, w))))
            return iff(Mem1(x, s.name, ys, z), disj2(kept, Mem1(y2, s.name, ys, z)))

        failed = And(Upd(rule.first, x), Not(con_uset_formula(x, signature)))
        succeeded = exists_all(
            (y1, y2),
            conj(
                Upd(rule.first, y1),
                con_uset_formula(y1, signature),
                Box(y1, Upd(rule.second, y2)),
                _slices(signature, names, merged),
            ),
        )
        return disj2(failed, succeeded)

    raise TypeError(f"Not a rule: {rule!r}")
