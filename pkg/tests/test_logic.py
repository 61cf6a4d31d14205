import pytest

from asmbase import corpus
from asmbase.config import Limits
from asmbase.core import Signature, Sort, update_set
from asmbase.errors import IllFormedInstantiation, ResourceLimit, SortError, UnboundVariable
from asmbase.logic import (
    AXIOM_IDS,
    LEMMA_GENERATORS,
    MUTATION_IDS,
    POINTWISE_RULES,
    Sampler,
    closure,
    compatible,
    con,
    diamond,
    domain_size,
    enumerate_domain,
    evaluate,
    holds,
    instantiate_rule,
    instantiate_schema,
    joinable,
    joinable_formula,
    rules_equivalent,
    scon,
    scon_formula,
    validate_all,
    validate_lemma,
    validate_schema,
    wcon,
    wcon_formula,
)
from asmbase.parser import parse_lformula, parse_rule, parse_state
from asmbase.semantics import Valuation
from asmbase.syntax import Box, Eq, Forall, Par, Upd, point
from asmbase.syntax.terms import pred1

X = pred1("X")

RULES = [
    "c := true",
    "c := true c := false",
    "choose x with x != x do c := x enddo",
    "choose x with x = x do c := x enddo",
    "choose x with x = x do c := x enddo c := true",
    "if c = true then c := false endif",
    "seq c := true c := false endseq",
]


@pytest.fixture
def flag():
    return parse_state(corpus.read_text("flag.asms"))


class TestEvaluator:
    def test_box_of_a_rule(self, flag):
        assert evaluate(parse_lformula("[c := true] c = true", flag.signature), flag)
        assert not evaluate(parse_lformula("[c := true] c = false", flag.signature), flag)

    def test_diamond_of_an_undefined_rule(self, flag):
        rule = parse_rule("choose x with x != x do c := x enddo", flag.signature)
        phi = parse_lformula("c = c", flag.signature)
        assert not evaluate(diamond(rule, phi, flag.signature), flag)
        assert evaluate(parse_lformula("[choose x with x != x do c := x enddo] c = true", flag.signature), flag)

    def test_box_over_inconsistent_set_is_true(self, flag):
        phi = Box(X, parse_lformula("c = true and c = false", flag.signature))
        zeta = Valuation({X: update_set([("c", (), "true"), ("c", (), "false")])})
        assert evaluate(phi, flag, zeta)

    def test_box_applies_the_set(self, flag):
        phi = Box(X, parse_lformula("c = true", flag.signature))
        assert evaluate(phi, flag, Valuation({X: update_set([("c", (), "true")])}))
        assert not evaluate(phi, flag, Valuation({X: update_set([])}))

    def test_upd_atom(self, flag):
        phi = Upd(parse_rule("c := true", flag.signature), X)
        assert evaluate(phi, flag, Valuation({X: update_set([("c", (), "true")])}))
        assert not evaluate(phi, flag, Valuation({X: update_set([])}))

    def test_membership_atom(self, flag):
        phi = parse_lformula("@X(c, (), true)", flag.signature)
        assert evaluate(phi, flag, Valuation({X: update_set([("c", (), "true")])}))
        assert not evaluate(phi, flag, Valuation({X: update_set([("c", (), "false")])}))

    def test_predicate_quantifier(self, flag):
        assert evaluate(parse_lformula("exists @X ([@X] c = true)", flag.signature), flag)
        assert not evaluate(parse_lformula("forall @X ([@X] c = true)", flag.signature), flag)

    def test_unbound_variable(self, flag):
        with pytest.raises(UnboundVariable):
            evaluate(parse_lformula("c = x", flag.signature), flag)

    def test_holds_closes_free_variables(self, flag):
        assert holds(parse_lformula("c = x or c != x", flag.signature), flag)
        assert not holds(parse_lformula("c = x", flag.signature), flag)
        assert holds(parse_lformula("c = x", flag.signature), flag, Valuation({point("x"): "false"}))

    def test_closure(self, flag):
        phi = closure(parse_lformula("c = x", flag.signature))
        assert isinstance(phi, Forall) and phi.var == point("x")
        assert closure(phi) == phi


class TestPredicates:
    @pytest.mark.parametrize("text", RULES)
    def test_wcon_formula_agrees(self, flag, text):
        rule = parse_rule(text, flag.signature)
        assert evaluate(wcon_formula(rule, flag.signature), flag) == wcon(rule, flag)

    @pytest.mark.parametrize("text", RULES)
    def test_scon_formula_agrees(self, flag, text):
        rule = parse_rule(text, flag.signature)
        assert evaluate(scon_formula(rule, flag.signature), flag) == scon(rule, flag)

    @pytest.mark.parametrize(
        "text, weak, strong",
        [
            ("c := true", True, True),
            ("c := true c := false", False, False),
            ("choose x with x != x do c := x enddo", False, True),
            ("choose x with x = x do c := x enddo c := true", True, False),
        ],
    )
    def test_consistency(self, flag, text, weak, strong):
        rule = parse_rule(text, flag.signature)
        assert wcon(rule, flag) is weak
        assert scon(rule, flag) is strong

    @pytest.mark.parametrize(
        "first, second, expected",
        [("c := true", "c := true", True), ("c := true", "c := false", False), ("c := true", "choose x with x = x do c := x enddo", True)],
    )
    def test_joinable(self, flag, first, second, expected):
        r1, r2 = parse_rule(first, flag.signature), parse_rule(second, flag.signature)
        assert joinable(r1, r2, flag) is expected
        assert evaluate(joinable_formula(r1, r2, flag.signature), flag) is expected

    def test_con(self, flag):
        rule = parse_rule("choose x with x = x do c := x enddo", flag.signature)
        assert con(rule, update_set([("c", (), "false")]), flag)
        assert not con(rule, update_set([]), flag)

    def test_compatible(self):
        u1 = update_set([("c", (), "true"), ("f", ("a",), "a")])
        assert compatible(u1, update_set([("c", (), "true")]))
        assert not compatible(u1, update_set([("f", ("a",), "b")]))

    def test_rules_equivalent(self, flag):
        a, b = parse_rule("c := true", flag.signature), parse_rule("c := false", flag.signature)
        assert rules_equivalent(Par(a, b), Par(b, a), [flag])
        assert not rules_equivalent(a, b, [flag])


class TestDomains:
    def test_first_predicate_sort(self, flag):
        values = list(enumerate_domain(Sort.PRED1, flag))
        assert len(values) == 4
        assert values[0] == frozenset()

    def test_second_predicate_sort_size(self, flag):
        assert domain_size(Sort.PRED2, flag) == 16

    def test_cap(self, flag):
        with pytest.raises(ResourceLimit, match="max_pred_enum"):
            enumerate_domain(Sort.PRED1, flag, Limits(max_pred_enum=3))

    def test_individual_sort(self, flag):
        with pytest.raises(SortError, match="not a predicate sort"):
            enumerate_domain(Sort.POINT, flag)


class TestSchemas:
    def test_propositional_instance(self):
        x, y = point("x"), point("y")
        phi = instantiate_schema("P1", {"phi": Eq(x, x), "psi": Eq(y, y)}, Signature())
        assert str(phi) == "(x = x -> (y = y -> x = x))"

    def test_unknown_schema(self, flag):
        with pytest.raises(IllFormedInstantiation, match="Unknown schema"):
            instantiate_schema("Z9", {}, flag.signature)

    def test_extra_binding(self, flag):
        phi = parse_lformula("c = true", flag.signature)
        with pytest.raises(IllFormedInstantiation, match="no metavariables"):
            instantiate_schema("M4", {"phi": phi, "X": X, "psi": phi}, flag.signature)

    def test_missing_binding(self, flag):
        with pytest.raises(IllFormedInstantiation, match="needs a binding"):
            instantiate_schema("M4", {"X": X}, flag.signature)

    def test_side_condition(self, flag):
        rule = parse_rule("c := true", flag.signature)
        phi = parse_lformula("[@Y] c = true", flag.signature)
        with pytest.raises(IllFormedInstantiation, match="neither static nor pure"):
            instantiate_schema("M7", {"r": rule, "X": X, "phi": phi}, flag.signature)

    def test_axiom_or_rule(self, flag):
        phi = parse_lformula("c = true", flag.signature)
        with pytest.raises(IllFormedInstantiation, match="inference rule"):
            instantiate_schema("M3", {"phi": phi, "psi": phi}, flag.signature)
        with pytest.raises(IllFormedInstantiation, match="is an axiom"):
            instantiate_rule("P1", {"phi": phi, "psi": phi}, flag.signature)

    def test_modus_ponens(self, flag):
        phi = parse_lformula("c = true", flag.signature)
        psi = parse_lformula("c != false", flag.signature)
        premises, conclusion = instantiate_rule("M3", {"phi": phi, "psi": psi}, flag.signature)
        assert premises[0] == phi
        assert conclusion == psi

    def test_necessitation_rule(self, flag):
        phi = parse_lformula("c = c", flag.signature)
        premises, conclusion = instantiate_rule("M2", {"phi": phi, "X": X}, flag.signature)
        assert premises == (phi,)
        assert conclusion == Box(X, phi)


class TestValidation:
    def test_report_line(self):
        report = validate_schema("M4", trials=5, seed=1)
        assert report.ok
        assert report.line() == "M4, 5, 0, 1"

    @pytest.mark.parametrize("schema_id", ["M1", "M5", "A2", "U1", "M3", "UI"])
    def test_sound_schemas(self, schema_id):
        assert validate_schema(schema_id, trials=20, seed=3).ok

    @pytest.mark.slow
    @pytest.mark.parametrize("schema_id", [*AXIOM_IDS, *POINTWISE_RULES])
    def test_every_schema_holds_on_a_hundred_instances(self, schema_id):
        report = validate_schema(schema_id, trials=100, seed=0)
        assert report.counterexamples == ()
        assert report.line() == f"{schema_id}, 100, 0, 0"

    @pytest.mark.parametrize("schema_id", MUTATION_IDS)
    def test_mutations_are_refuted(self, schema_id):
        report = validate_schema(schema_id, trials=200, seed=0)
        assert not report.ok
        assert report.as_dict()["examples"]

    def test_replay(self):
        first = validate_schema("M5-converse", trials=50, seed=9)
        second = validate_schema("M5-converse", trials=50, seed=9)
        assert first.line() == second.line()
        assert [c.trial for c in first.counterexamples] == [c.trial for c in second.counterexamples]

    def test_certified_rules_are_not_pointwise(self):
        with pytest.raises(ValueError, match="inference rule"):
            validate_schema("UG")

    @pytest.mark.parametrize("lemma_id", ["box-conjunction", "update-hit", "update-miss", "wcon-update", "par-commutes"])
    def test_lemmas(self, lemma_id):
        assert validate_lemma(lemma_id, trials=20, seed=4).ok

    @pytest.mark.slow
    @pytest.mark.parametrize("lemma_id", sorted(LEMMA_GENERATORS))
    def test_every_lemma_holds_on_a_hundred_instances(self, lemma_id):
        report = validate_lemma(lemma_id, trials=100, seed=0)
        assert report.counterexamples == ()
        assert report.trials == 100

    def test_unknown_lemma(self):
        with pytest.raises(ValueError, match="Unknown lemma"):
            validate_lemma("box-magic")

    def test_validate_all(self):
        reports = validate_all(trials=2, seed=0, include_mutations=True)
        assert [r.schema for r in reports][: len(AXIOM_IDS)] == list(AXIOM_IDS)
        assert len(reports) == len(AXIOM_IDS) + 4 + len(MUTATION_IDS)

    def test_sampler_is_reproducible(self):
        assert Sampler(5, "small").state() == Sampler(5, "small").state()
        assert [c.state() for c in Sampler(5).spawn(3)] == [c.state() for c in Sampler(5).spawn(3)]
