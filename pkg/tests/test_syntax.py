import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from asmbase.core import Sort
from asmbase.errors import IllFormedInstantiation, SortError
from asmbase.logic import PROFILES, Sampler
from asmbase.parser import parse_lformula, parse_rule
from asmbase.syntax import (
    App,
    Box,
    Choose,
    Eq,
    Forall,
    FreshNames,
    Par,
    UpdateRule,
    alpha_equivalent,
    canonical_names,
    check_rule,
    format_rule,
    free_variables,
    is_closed,
    is_deterministic,
    is_pure,
    is_static,
    node_count,
    point,
    substitute,
)
from asmbase.syntax.terms import algo, pred1

seeds = st.integers(min_value=0, max_value=2**32 - 1)


@pytest.fixture
def signature():
    return PROFILES["small"].signature


class TestFreeVariables:
    def test_choose_binds_its_variable(self, signature):
        rule = parse_rule("choose x with f(x) = y do f(x) := y enddo", signature)
        assert free_variables(rule) == {point("y")}
        assert not is_closed(rule)

    def test_closed_rule(self, signature):
        rule = parse_rule("forall x with f(x) = x do f(x) := x enddo", signature)
        assert is_closed(rule)

    def test_box_mentions_its_variable(self, signature):
        phi = parse_lformula("[@X] f(x) = x", signature)
        assert free_variables(phi) == {pred1("X"), point("x")}

    def test_node_count(self):
        assert node_count(Eq(point("x"), App("f", (point("y"),)))) == 4


class TestSideConditions:
    def test_static(self, signature):
        assert is_static(parse_lformula("k(x) = x and e = $u", signature), signature)
        assert not is_static(parse_lformula("f(x) = x", signature), signature)

    def test_pure(self, signature):
        assert is_pure(parse_lformula("forall x (f(x) = x or not $u = e)", signature))
        assert not is_pure(parse_lformula("[@X] x = x", signature))
        assert not is_pure(parse_lformula("@X(c, (), x)", signature))


class TestSubstitution:
    def test_free_occurrences_only(self, signature):
        phi = parse_lformula("x = y and forall x (x = y)", signature)
        result = substitute(phi, {point("x"): App("c")})
        assert alpha_equivalent(result, parse_lformula("c = y and forall x (x = y)", signature))

    def test_capture_raises(self, signature):
        phi = parse_lformula("forall x (x = y)", signature)
        with pytest.raises(IllFormedInstantiation, match="captured"):
            substitute(phi, {point("y"): point("x")})

    def test_capture_renames_on_request(self, signature):
        phi = parse_lformula("forall x (x = y)", signature)
        result = substitute(phi, {point("y"): point("x")}, rename=True)
        assert isinstance(result, Forall) and result.var != point("x")
        assert alpha_equivalent(result, parse_lformula("forall z (z = x)", signature))

    def test_rule_binders(self, signature):
        rule = parse_rule("choose x with f(x) = y do f(x) := y enddo", signature)
        with pytest.raises(IllFormedInstantiation):
            substitute(rule, {point("y"): point("x")})

    def test_predicate_needs_predicate_variable(self, signature):
        phi = parse_lformula("[@X] x = x", signature)
        with pytest.raises(IllFormedInstantiation, match="pred1 variable"):
            substitute(phi, {pred1("X"): point("x")})
        assert substitute(phi, {pred1("X"): pred1("Y")}) == Box(pred1("Y"), Eq(point("x"), point("x")))

    def test_fresh_names(self):
        names = FreshNames(["x", "x1", "x2"])
        assert names.fresh("x", Sort.POINT) == point("x3")
        assert names.fresh("x7", Sort.ALGO) == algo("x4")


class TestAlphaEquivalence:
    def test_renamed_binders(self, signature):
        a = parse_lformula("forall x (exists y (f(x) = y))", signature)
        b = parse_lformula("forall y (exists x (f(y) = x))", signature)
        assert alpha_equivalent(a, b)

    def test_free_variables_matter(self, signature):
        assert not alpha_equivalent(parse_lformula("x = y", signature), parse_lformula("x = x", signature))

    def test_binder_sort_matters(self, signature):
        a = Forall(point("x"), Eq(point("x"), point("x")))
        b = Forall(algo("x"), Eq(algo("x"), algo("x")))
        assert not alpha_equivalent(a, b)

    def test_canonical_names(self, signature):
        a = parse_lformula("forall x (exists y (f(x) = y))", signature)
        b = parse_lformula("forall z (exists x (f(z) = x))", signature)
        assert canonical_names(a) == canonical_names(b)


class TestRuleChecks:
    def test_kind_must_match(self, signature):
        with pytest.raises(SortError, match="not an update of a secondary"):
            check_rule(UpdateRule("f", (point("x"),), point("x"), signature["g"].kind), signature)

    def test_arity(self, signature):
        with pytest.raises(SortError, match="expects 1 arguments"):
            check_rule(UpdateRule("f", (), point("x")), signature)

    def test_deterministic(self, signature):
        assert is_deterministic(parse_rule("forall x with x = x do f(x) := x enddo c := true", signature))
        assert not is_deterministic(parse_rule("choose x with x = x do f(x) := x enddo", signature))


class TestPrinter:
    def test_rule_layout(self, signature):
        rule = parse_rule("if c = x then par c := x f(x) := c endpar endif", signature)
        assert format_rule(rule) == "if c = x then\n  par\n    c := x\n    f(x) := c\n  endpar\nendif"
        assert format_rule(rule, inline=True) == "if c = x then par c := x f(x) := c endpar endif"

    def test_abbreviations_survive(self, signature):
        text = "forall x ((exists y (f(y) = x) and (f(x) = x -> (c = x or not [@X] c = x))))"
        assert str(parse_lformula(text, signature)) == text

    @settings(max_examples=60, deadline=None)
    @given(seeds)
    def test_sampled_formulas_round_trip(self, seed):
        sampler = Sampler(seed, "small")
        signature = PROFILES["small"].signature
        phi = sampler.formula()
        assert alpha_equivalent(parse_lformula(str(phi), signature), phi)

    @settings(max_examples=60, deadline=None)
    @given(seeds)
    def test_sampled_rules_round_trip(self, seed):
        sampler = Sampler(seed, "small")
        signature = PROFILES["small"].signature
        rule = sampler.rule()
        assert parse_rule(format_rule(rule), signature) == rule

    def test_nested_par_round_trip(self, signature):
        a, b, c = (UpdateRule("c", (), App(v)) for v in ("true", "false", "true"))
        rule = Par(Par(a, b), c)
        assert parse_rule(format_rule(rule), signature) == rule

    def test_choose_prints_sigil(self):
        rule = Choose(algo("u"), Eq(algo("u"), algo("u")), UpdateRule("e", (), algo("u")))
        assert format_rule(rule, inline=True) == "choose $u with $u = $u do e := $u enddo"
