"""
Sampling-based soundness checks for axiom schemas and derived lemmas.

Every trial draws a state, an instance and a valuation for the instance's
free variables from its own child sampler, then evaluates the instance.
A sound schema has no counterexamples; the two mutation schemas should
have some.

Key components:
1. Counterexample -- the trial, state, valuation and instance that failed
2. SchemaReport -- trials run, counterexamples found, the seed to replay
3. validate_schema / validate_lemma / validate_all -- the checks
4. SCHEMA_PROFILES -- schemas that need the tiny profile

Notes:
- Inference rules are checked pointwise (premises true implies conclusion
  true under the same valuation) only where that is sound: UI, EG, M3. E
  is checked on pairs of equivalent rules.
- A trial that hits a resource cap is counted as skipped, never as a pass.
"""

# Standard library
import logging
from dataclasses import dataclass
from typing import Callable

# Third-party dependencies
import numpy as np

# Internal dependencies
from asmbase.config import DEFAULT_LIMITS, Limits
from asmbase.constants.keywords import BOOLEANS
from asmbase.constants.limits import DEFAULT_TRIALS
from asmbase.core.signature import Signature, Sort
from asmbase.core.state import State
from asmbase.core.updates import format_update_set
from asmbase.errors import IllFormedInstantiation, ResourceLimit
from asmbase.logic import lemmas
from asmbase.logic.evaluator import evaluate
from asmbase.logic.sampling import POOL, PROFILES, Profile, Sampler, variable_order
from asmbase.logic.schemas import AXIOM_IDS, MUTATION_IDS, get_schema, instantiate_rule, instantiate_schema
from asmbase.semantics.valuation import Valuation
from asmbase.syntax.analysis import free_variables
from asmbase.syntax.formulas import conj, implies
from asmbase.syntax.rules import Choose, Cond, ForallRule, Par, Seq, UpdateRule
from asmbase.syntax.terms import Var, pred1

logger = logging.getLogger(__name__)

X, X1, X2, Z = pred1("X"), pred1("X1"), pred1("X2"), pred1("Z")

RETRIES = 10

SCHEMA_PROFILES = {
    "U3": "tiny",
    "E": "tiny",
    "A2-unguarded": "tiny",
    "M5-converse": "tiny",
}

POINTWISE_RULES = ("UI", "EG", "M3", "E")


@dataclass(frozen=True)
class Counterexample:
    trial: int
    state: State
    valuation: Valuation
    instance: object

    def describe(self) -> str:
        bindings = []
        for var in sorted(self.valuation, key=variable_order):
            value = self.valuation[var]
            if var.sort.individual:
                bindings.append(f"{var} = {value}")
            else:
                bindings.append(f"{var} = {format_update_set(value, self.state.atom_key)}")
        return f"trial {self.trial}: {self.instance} under {', '.join(bindings) or 'no bindings'}"


@dataclass(frozen=True)
class SchemaReport:
    """
    Outcome of validating one schema or lemma.

    Example:
    >>> SchemaReport("M4", 100, (), 7).line()
    'M4, 100, 0, 7'
    """

    schema: str
    trials: int
    counterexamples: tuple = ()
    seed: int | None = None
    skipped: int = 0
    profile: str = "small"

    @property
    def ok(self) -> bool:
        return not self.counterexamples

    def line(self) -> str:
        return f"{self.schema}, {self.trials}, {len(self.counterexamples)}, {self.seed}"

    def as_dict(self) -> dict:
        return {
            "schema": self.schema,
            "trials": self.trials,
            "counterexamples": len(self.counterexamples),
            "skipped": self.skipped,
            "seed": self.seed,
            "profile": self.profile,
            "examples": [c.describe() for c in self.counterexamples[:3]],
        }


# Instance generators: sampler -> (formula, rules that bias predicate values)


def _result_var(sort: Sort, name: str = "v") -> Var:
    return Var(name, sort)


def _location(sp: Sampler):
    symbol = sp.choice(sp.signature().dynamic)
    xs = tuple(Var(f"x{i + 1}", symbol.argument_sort) for i in range(symbol.arity))
    y = Var("y1", symbol.result_sort)
    z = Var("z1", symbol.result_sort)
    bias = (UpdateRule(symbol.name, xs, y, symbol.kind),)
    return symbol, xs, y, z, bias


def _axiom(schema_id: str) -> Callable:
    def generate(sp: Sampler):
        bindings, bias = _SCHEMA_BINDINGS[schema_id](sp)
        return instantiate_schema(schema_id, bindings, sp.signature()), bias

    return generate


def _pointwise(schema_id: str) -> Callable:
    def generate(sp: Sampler):
        bindings, bias = _SCHEMA_BINDINGS[schema_id](sp)
        premises, conclusion = instantiate_rule(schema_id, bindings, sp.signature())
        return (implies(conj(*premises), conclusion) if premises else conclusion), bias

    return generate


def _phi(sp: Sampler, predicates=(X,)):
    return sp.formula(POOL, predicates)


def _equivalent_pair(sp: Sampler) -> tuple:
    first, second = sp.rule(depth=1), sp.rule(depth=1)
    roll = sp.rng.random()
    if roll < 0.4:
        return lemmas.par_commutes(first, second)
    if roll < 0.7:
        return lemmas.seq_associates(first, second, sp.rule(depth=0))
    return first, first


def _upd_rule(form: type, sort: Sort | None = None) -> Callable:
    def bindings(sp: Sampler):
        if form is Choose:
            var = sp.choice(v for v in POOL if v.sort is sort)
            rule = Choose(var, sp.guard(), sp.rule(depth=1))
        else:
            rule = sp.rule(form=form)
        return {"r": rule, "X": X}, (rule,)

    return bindings


def _a_bindings(sp: Sampler, with_z: bool):
    symbol, xs, y, z, bias = _location(sp)
    bindings = {"f": symbol.name, "x": xs, "y": y, "X": X}
    if with_z:
        bindings["z"] = z
    return bindings, bias


def _eq2_bindings(sp: Sampler):
    symbol = sp.choice(s for s in sp.signature() if s.arity > 0)
    ts = tuple(sp.term(symbol.argument_sort, POOL, 0, static=True) for _ in range(symbol.arity))
    ss = tuple(sp.term(symbol.argument_sort, POOL, 0, static=True) for _ in range(symbol.arity))
    return {"f": symbol.name, "t": ts, "s": ss}, ()


def _instance_bindings(sp: Sampler):
    var = sp.choice(POOL)
    return {"phi": _phi(sp), "x": var, "t": sp.term(var.sort, POOL, 1, static=True)}, ()


def _e_bindings(sp: Sampler):
    first, second = _equivalent_pair(sp)
    return {"r1": first, "r2": second, "phi": _phi(sp, (Z,)), "X1": X1, "X2": X2}, (first,)


def _m78_bindings(sp: Sampler):
    rule = sp.rule()
    return {"r": rule, "X": X, "phi": sp.formula(POOL, (), static=True)}, (rule,)


_SCHEMA_BINDINGS: dict[str, Callable] = {
    "M1": lambda sp: ({"phi": _phi(sp), "psi": _phi(sp), "X": X}, ()),
    "M3": lambda sp: ({"phi": _phi(sp), "psi": _phi(sp)}, ()),
    "M4": lambda sp: ({"phi": _phi(sp), "X": X}, ()),
    "M5": lambda sp: ({"phi": _phi(sp), "X": X}, ()),
    "M6": lambda sp: ({"phi": _phi(sp), "x": sp.choice(POOL), "X": X}, ()),
    "M7": _m78_bindings,
    "M8": _m78_bindings,
    "A1": lambda sp: _a_bindings(sp, True),
    "A2": lambda sp: _a_bindings(sp, False),
    "P1": lambda sp: ({"phi": _phi(sp), "psi": _phi(sp)}, ()),
    "P2": lambda sp: ({"phi": _phi(sp), "psi": _phi(sp), "chi": _phi(sp)}, ()),
    "P3": lambda sp: ({"phi": _phi(sp), "psi": _phi(sp)}, ()),
    "UI": _instance_bindings,
    "EG": _instance_bindings,
    "EQ1": lambda sp: ({"t": sp.term(sp.choice((Sort.POINT, Sort.ALGO)), POOL, 1, static=True)}, ()),
    "EQ2": _eq2_bindings,
    "DY1": lambda sp: (
        {"r1": sp.rule(), "r2": sp.rule(), "phi": _phi(sp, (Z,)), "X": X, "X1": X1, "X2": X2},
        (),
    ),
    "E": _e_bindings,
    "U1": _upd_rule(UpdateRule),
    "U2": _upd_rule(Cond),
    "U3": _upd_rule(ForallRule),
    "U4": _upd_rule(Par),
    "U5": _upd_rule(Choose, Sort.POINT),
    "U6": _upd_rule(Choose, Sort.ALGO),
    "U7": _upd_rule(Seq),
    "A2-unguarded": lambda sp: _a_bindings(sp, False),
    "M5-converse": lambda sp: ({"phi": _phi(sp), "X": X}, ()),
}

SCHEMA_GENERATORS: dict[str, Callable] = {
    schema_id: (_pointwise(schema_id) if schema_id in POINTWISE_RULES else _axiom(schema_id))
    for schema_id in _SCHEMA_BINDINGS
}


# Lemma generators


def _box_choose(sp: Sampler):
    var = sp.choice(POOL)
    rest = tuple(v for v in POOL if v != var)
    body = sp.rule(depth=1)
    formula = lemmas.box_choose(var, sp.guard(), body, sp.formula(rest, (Z,)), sp.signature())
    return formula, ()


def _frame(sp: Sampler):
    symbol = sp.choice(sp.signature().dynamic)
    rule = sp.rule()
    args = tuple(sp.term(symbol.argument_sort, POOL, 0, static=True) for _ in range(symbol.arity))
    y = _result_var(symbol.result_sort)
    z = _result_var(symbol.result_sort, "z1")
    return lemmas.frame(rule, X, symbol.name, args, y, z, sp.signature()), (rule,)


def _assignment(builder: Callable) -> Callable:
    def generate(sp: Sampler):
        symbol = sp.choice(sp.signature().dynamic)
        targets = tuple(sp.term(symbol.argument_sort, POOL, 1) for _ in range(symbol.arity))
        value = sp.term(symbol.result_sort, POOL, 1)
        xs = tuple(Var(f"x{i + 1}", symbol.argument_sort) for i in range(symbol.arity))
        y = _result_var(symbol.result_sort)
        return builder(symbol.name, targets, value, xs, y, sp.signature()), ()

    return generate


def _wcon_forall(sp: Sampler):
    var = sp.choice(v for v in POOL if v.sort is Sort.POINT)
    return lemmas.wcon_forall(var, sp.guard(), sp.rule(depth=1, deterministic=True), sp.signature()), ()


def _equivalence(pair_of: Callable) -> Callable:
    def generate(sp: Sampler):
        first, second = pair_of(sp)
        return lemmas.equivalence_formula(first, second, sp.signature()), (first,)

    return generate


def _extensionality(sp: Sampler):
    if sp.chance(0.5):
        first, second = _equivalent_pair(sp)
    else:
        first, second = sp.rule(depth=1), sp.rule(depth=1)
    return lemmas.extensionality(first, second, _phi(sp, (Z,)), sp.signature()), ()


LEMMA_GENERATORS: dict[str, Callable] = {
    "box-distribution": lambda sp: (
        lemmas.box_distribution(sp.rule(), _phi(sp, (Z,)), _phi(sp, (Z,)), sp.signature()),
        (),
    ),
    "necessitation": lambda sp: (lemmas.necessitation(sp.rule(), sp.formula(POOL, (), static=True), sp.signature()), ()),
    "no-consistent-set": lambda sp: (lemmas.no_consistent_set(sp.rule(), _phi(sp, (Z,)), sp.signature()), ()),
    "box-duality": lambda sp: (
        lemmas.box_duality(sp.rule(deterministic=True), _phi(sp, (Z,)), sp.signature()),
        (),
    ),
    "box-cond": lambda sp: (lemmas.box_cond(sp.guard(), sp.rule(depth=1), _phi(sp, (Z,)), sp.signature()), ()),
    "box-choose": _box_choose,
    "frame": _frame,
    "consistent-box": lambda sp: (lambda r: (lemmas.consistent_box(r, X, _phi(sp, (Z,)), sp.signature()), (r,)))(sp.rule()),
    "box-exists": lambda sp: (lemmas.box_exists(X, sp.choice(POOL), _phi(sp)), ()),
    "box-conjunction": lambda sp: (lemmas.box_conjunction(X, _phi(sp), _phi(sp)), ()),
    "update-hit": _assignment(lemmas.update_hit),
    "update-miss": _assignment(lemmas.update_miss),
    "wcon-update": lambda sp: (lemmas.wcon_update(sp.update_rule(), sp.signature()), ()),
    "wcon-cond": lambda sp: (lemmas.wcon_cond(sp.guard(), sp.rule(depth=1), sp.signature()), ()),
    "wcon-forall": _wcon_forall,
    "wcon-par": lambda sp: (
        lemmas.wcon_par(sp.rule(depth=1, deterministic=True), sp.rule(depth=1, deterministic=True), sp.signature()),
        (),
    ),
    "wcon-choose": lambda sp: (
        lemmas.wcon_choose(sp.choice(POOL), sp.guard(), sp.rule(depth=1), sp.signature()),
        (),
    ),
    "wcon-seq": lambda sp: (lemmas.wcon_seq(sp.rule(depth=1), sp.rule(depth=1), sp.signature()), ()),
    "par-commutes": _equivalence(lambda sp: lemmas.par_commutes(sp.rule(depth=1), sp.rule(depth=1))),
    "par-associates": _equivalence(
        lambda sp: lemmas.par_associates(sp.rule(depth=0), sp.rule(depth=1), sp.rule(depth=0))
    ),
    "seq-associates": _equivalence(
        lambda sp: lemmas.seq_associates(sp.rule(depth=0), sp.rule(depth=1), sp.rule(depth=0))
    ),
    "extensionality": _extensionality,
}


# Runner


def _profile_for(signature: Signature | None, name: str) -> Profile | str:
    if signature is None:
        return SCHEMA_PROFILES.get(name, "small")
    base = PROFILES["small"]
    functions = tuple(s for s in signature if s.name not in BOOLEANS)
    return Profile("custom", base.primary, base.secondary, functions, base.rule_depth, base.formula_depth)


def _run(
    name: str,
    generator: Callable,
    signature: Signature | None,
    sampler: Sampler | None,
    trials: int,
    seed: int | None,
    limits: Limits,
) -> SchemaReport:
    if sampler is None:
        if seed is None:
            seed = int(np.random.SeedSequence().entropy % 2**63)
        sampler = Sampler(seed, _profile_for(signature, name), limits)
    elif seed is None:
        seed = sampler.seed.entropy if isinstance(sampler.seed, np.random.SeedSequence) else sampler.seed

    found, skipped = [], 0
    for trial, child in enumerate(sampler.spawn(trials)):
        try:
            failure = _trial(trial, child, generator, limits)
        except ResourceLimit as error:
            logger.warning("%s trial %d skipped: %s", name, trial, error)
            skipped += 1
            continue
        except IllFormedInstantiation as error:
            logger.debug("%s trial %d skipped: %s", name, trial, error)
            skipped += 1
            continue
        if failure is not None:
            logger.info("%s counterexample: %s", name, failure.describe())
            found.append(failure)

    report = SchemaReport(name, trials, tuple(found), seed, skipped, sampler.profile.name)
    logger.info("validated %s: %s (skipped %d)", name, report.line(), skipped)
    return report


def _trial(trial: int, sp: Sampler, generator: Callable, limits: Limits) -> Counterexample | None:
    state = sp.state()
    for attempt in range(RETRIES):
        try:
            formula, bias = generator(sp)
            break
        except IllFormedInstantiation:
            if attempt == RETRIES - 1:
                raise
    zeta = sp.valuation(state, free_variables(formula), bias)
    if evaluate(formula, state, zeta, limits):
        return None
    return Counterexample(trial, state, zeta, formula)


def validate_schema(
    schema_id: str,
    signature: Signature | None = None,
    sampler: Sampler | None = None,
    trials: int = DEFAULT_TRIALS,
    seed: int | None = None,
    limits: Limits = DEFAULT_LIMITS,
) -> SchemaReport:
    """
    Evaluate random instances of a schema and collect counterexamples.

    Parameters:
    - schema_id (str): an axiom, a mutation, or one of UI, EG, M3, E
    - signature (Signature): functions of the sampled states (profile default)
    - sampler (Sampler): source of randomness; built from seed when absent
    - trials (int): number of instances
    - seed (int): seed of the run, reported for replay

    Returns:
    - SchemaReport: `report.line()` gives `schema, trials, counterexamples, seed`

    Raises:
    - IllFormedInstantiation: for unknown schema ids
    - ValueError: for inference rules that are not sound pointwise

    Example:
    >>> validate_schema("M4", trials=5, seed=1).counterexamples
    ()
    """
    get_schema(schema_id)
    if schema_id not in SCHEMA_GENERATORS:
        raise ValueError(f"{schema_id} is an inference rule that cannot be checked on single instances")
    return _run(schema_id, SCHEMA_GENERATORS[schema_id], signature, sampler, trials, seed, limits)


def validate_lemma(
    lemma_id: str,
    sampler: Sampler | None = None,
    trials: int = DEFAULT_TRIALS,
    seed: int | None = None,
    limits: Limits = DEFAULT_LIMITS,
) -> SchemaReport:
    """Evaluate random instances of a derived lemma (see LEMMA_GENERATORS for the ids)."""
    try:
        generator = LEMMA_GENERATORS[lemma_id]
    except KeyError:
        raise ValueError(f"Unknown lemma {lemma_id!r}") from None
    return _run(lemma_id, generator, None, sampler, trials, seed, limits)


def validate_all(
    trials: int = DEFAULT_TRIALS,
    seed: int | None = None,
    limits: Limits = DEFAULT_LIMITS,
    include_mutations: bool = False,
) -> list[SchemaReport]:
    """Every axiom, the pointwise rules and, optionally, the mutations, in registry order."""
    ids = [s for s in (*AXIOM_IDS, *POINTWISE_RULES)]
    if include_mutations:
        ids.extend(MUTATION_IDS)
    return [validate_schema(schema_id, trials=trials, seed=seed, limits=limits) for schema_id in ids]


def main():
    for report in validate_all(trials=10, seed=0):
        print(report.line())


if __name__ == "__main__":
    main()
