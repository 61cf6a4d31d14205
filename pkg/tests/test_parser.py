import pytest
from asmbase import corpus
from asmbase.core import Kind, Signature, Sort, TaggedUpdate, Update
from asmbase.errors import AsmSyntaxError, SortError
from asmbase.parser import (
    format_state,
    parse_binding,
    parse_derivation,
    parse_guard,
    parse_lformula,
    parse_machine,
    parse_rule,
    parse_state,
    parse_term,
    parse_update_set,
)
from asmbase.syntax import (
    App,
    AxiomUse,
    Choose,
    Cond,
    Forall,
    Hypothesis,
    Par,
    RuleUse,
    Seq,
    Upd,
    UpdateRule,
    Var,
    point,
)


@pytest.fixture
def signature():
    return Signature.from_groups(
        primary={"f": (1, True), "c": (0, True), "k": (1, False)},
        secondary={"g": (1, True)},
        bridge={"h": (1, True)},
    )


@pytest.fixture
def flag():
    return parse_state(corpus.read_text("flag.asms"))


class TestRules:
    def test_update_kind_from_signature(self, signature):
        assert parse_rule("g($u) := $u", signature).kind is Kind.SECONDARY
        assert parse_rule("h(x) := $u", signature).kind is Kind.BRIDGE

    def test_juxtaposed_rules_form_a_par(self, signature):
        rule = parse_rule("c := true f(c) := c g($u) := $u", signature)
        assert isinstance(rule, Par)
        assert isinstance(rule.right, Par)

    def test_seq_block(self, signature):
        rule = parse_rule("seq c := true c := false endseq", signature)
        assert isinstance(rule, Seq)

    def test_conditional(self, signature):
        rule = parse_rule("if c = true then c := false endif", signature)
        assert isinstance(rule, Cond)

    def test_multi_binder_choose(self, signature):
        rule = parse_rule("choose x, y with f(x) = y do f(x) := y enddo", signature)
        assert isinstance(rule, Choose) and rule.var == point("x")
        assert isinstance(rule.body, Choose) and rule.body.var == point("y")
        assert rule.bounded

    def test_algorithmic_choose_is_unbounded(self, signature):
        rule = parse_rule("choose $u with g($u) = $u do g($u) := $u enddo", signature)
        assert not rule.bounded

    def test_forall_needs_point_binder(self, signature):
        with pytest.raises(SortError, match="point variables only"):
            parse_rule("forall $u with g($u) = $u do g($u) := $u enddo", signature)

    def test_function_cannot_be_bound(self, signature):
        with pytest.raises(SortError, match="cannot be bound"):
            parse_rule("choose c with c = true do c := false enddo", signature)

    def test_static_update(self, signature):
        with pytest.raises(SortError, match="static"):
            parse_rule("k(x) := x", signature)

    def test_ill_sorted_value(self, signature):
        with pytest.raises(SortError, match="algorithmic term"):
            parse_rule("g($u) := x", signature)

    def test_undeclared_update(self, signature):
        with pytest.raises(SortError, match="undeclared"):
            parse_rule("nope := true", signature)

    def test_syntax_error_is_positioned(self, signature):
        with pytest.raises(AsmSyntaxError) as error:
            parse_rule("c := true\nc := := false", signature)
        assert error.value.line == 2

    def test_without_signature_names_are_variables(self):
        assert parse_term("x") == point("x")
        assert parse_term("f(x, true)") == App("f", (point("x"), App("true")))


class TestFormulas:
    def test_box_of_a_rule(self, signature):
        phi = parse_lformula("[c := true] c = true", signature)
        assert isinstance(phi, Forall) and phi.var.sort is Sort.PRED1
        assert "upd(c := true, @X)" in str(phi)

    def test_fresh_variable_avoids_clashes(self, signature):
        phi = parse_lformula("[c := true] @X(c, (), true)", signature)
        assert phi.var == Var("X1", Sort.PRED1)

    def test_membership_atoms(self, signature):
        phi = parse_lformula("@X(f, x, y) and @@Y(g, $u, $v, true)", signature)
        assert "@X(f, x, y)" in str(phi)
        assert "@@Y(g, $u, $v, true)" in str(phi)

    def test_upd_atom(self, signature):
        phi = parse_lformula("upd(c := true, @X)", signature)
        assert isinstance(phi, Upd) and isinstance(phi.rule, UpdateRule)

    def test_macro_needs_signature(self):
        with pytest.raises(SortError, match="needs a signature"):
            parse_lformula("wcon(c := true)")

    def test_membership_of_static_function(self, signature):
        with pytest.raises(SortError, match="static"):
            parse_lformula("@X(k, x, y)", signature)

    def test_equality_across_sorts(self, signature):
        with pytest.raises(SortError, match="Equality"):
            parse_lformula("x = $u", signature)


class TestGuards:
    def test_first_order_guard(self, signature):
        text = "c = true or exists x (f(x) = c)"
        assert parse_guard(text, signature) == parse_lformula(text, signature)

    def test_guard_rejects_upd_atoms(self, signature):
        with pytest.raises(SortError, match="first-order"):
            parse_guard("upd(c := true, @X)", signature)

    def test_guard_rejects_predicate_quantifiers(self, signature):
        with pytest.raises(SortError, match="predicate variable"):
            parse_guard("forall @X (@X(c, (), true))", signature)

    def test_guard_checks_sorts(self, signature):
        with pytest.raises(SortError, match="Equality"):
            parse_guard("x = $u", signature)


class TestMachines:
    def test_rule_definitions_are_inlined(self, flag):
        machine = parse_machine("rule set = c := true; rule main = set; final: c = true;", flag.signature)
        assert machine.main == machine.rules["set"]
        assert str(machine.final) == "c = true"

    def test_main_is_required(self, flag):
        with pytest.raises(SortError, match="main"):
            parse_machine("rule set = c := true;", flag.signature)

    def test_main_must_be_closed(self, flag):
        with pytest.raises(SortError, match="not closed"):
            parse_machine("rule main = c := x;", flag.signature)

    def test_undefined_reference(self, flag):
        with pytest.raises(SortError, match="undefined rule"):
            parse_machine("rule main = missing;", flag.signature)

    @pytest.mark.parametrize("name", corpus.available("machine"))
    def test_bundled_machines_parse(self, name):
        state_name = "word_pairs.asms" if name.startswith("word") else (
            "kruskal_4.asms" if name.startswith("kruskal") else "flag.asms"
        )
        s = parse_state(corpus.read_text(state_name))
        machine = parse_machine(corpus.read_text(name), s.signature)
        assert "main" in machine.rules


class TestStateFiles:
    @pytest.mark.parametrize("name", corpus.available("state"))
    def test_format_then_parse(self, name):
        s = parse_state(corpus.read_text(name))
        assert parse_state(format_state(s)) == s

    def test_undeclared_row(self):
        text = "primary-carrier: true, false\nsecondary-carrier: 0\nfunctions:\n  c = true\n"
        with pytest.raises(AsmSyntaxError) as error:
            parse_state(text)
        assert error.value.line == 4

    def test_duplicate_declaration(self):
        text = (
            "primary-carrier: true, false\nsecondary-carrier: 0\nfunctions:\n"
            "  c: primary dynamic arity 0 default false\n"
            "  c: primary dynamic arity 0 default false\n"
        )
        with pytest.raises(AsmSyntaxError, match="declared twice"):
            parse_state(text)

    def test_missing_carrier(self):
        with pytest.raises(AsmSyntaxError, match="secondary-carrier"):
            parse_state("primary-carrier: true, false\nfunctions:\n")

    def test_row_outside_carrier(self):
        text = "primary-carrier: true, false\nsecondary-carrier: 0\nfunctions:\n  c: primary dynamic arity 0 default zz\n"
        with pytest.raises(ValueError, match="point carrier"):
            parse_state(text)


class TestUpdateSetLiterals:
    def test_plain(self, flag):
        assert parse_update_set("{c := true}", flag) == {Update("c", (), "true")}
        assert parse_update_set("{}", flag) == frozenset()

    def test_inconsistent_sets_are_allowed(self, flag):
        assert len(parse_update_set("{c := true, c := false}", flag)) == 2

    def test_tagged(self, flag):
        assert parse_update_set("{c := true @ false}", flag, tagged=True) == {TaggedUpdate("c", (), "true", "false")}

    def test_missing_tag(self, flag):
        with pytest.raises(AsmSyntaxError, match="tag"):
            parse_update_set("{c := true}", flag, tagged=True)

    def test_braces_required(self, flag):
        with pytest.raises(AsmSyntaxError, match="braces"):
            parse_update_set("c := true", flag)

    def test_static_function(self, flag):
        with pytest.raises(ValueError, match="static"):
            parse_update_set("{true := false}", flag)


class TestBindings:
    def test_point(self, flag):
        assert parse_binding("x=true", flag) == (point("x"), "true")

    def test_algorithmic(self, flag):
        assert parse_binding("$u=0", flag) == (Var("u", Sort.ALGO), "0")

    def test_predicate(self, flag):
        var, value = parse_binding("@X={c := true}", flag)
        assert var == Var("X", Sort.PRED1)
        assert value == {Update("c", (), "true")}

    def test_second_predicate_sort(self, flag):
        var, value = parse_binding("@@Y={c := true @ true}", flag)
        assert var.sort is Sort.PRED2
        assert value == {TaggedUpdate("c", (), "true", "true")}

    def test_value_outside_carrier(self, flag):
        with pytest.raises(ValueError, match="point carrier"):
            parse_binding("x=0", flag)

    def test_malformed(self, flag):
        with pytest.raises(AsmSyntaxError, match="NAME=VALUE"):
            parse_binding("x", flag)


class TestDerivations:
    def test_modus_ponens(self):
        derivation = parse_derivation(
            corpus.read_text("modus_ponens.asmd"),
            lambda name: parse_state(corpus.read_text(name)).signature,
        )
        assert derivation.signature_file == "flag.asms"
        assert len(derivation.hypotheses) == 2
        assert [line.number for line in derivation.lines] == [1, 2, 3, 4, 5]
        assert isinstance(derivation.lines[0].justification, Hypothesis)
        third = derivation.lines[2].justification
        assert isinstance(third, RuleUse) and third.schema == "M3" and third.premises == (1, 2)
        fourth = derivation.lines[3].justification
        assert isinstance(fourth, AxiomUse) and set(fourth.bindings) == {"phi", "psi"}

    def test_missing_header(self, flag):
        with pytest.raises(AsmSyntaxError, match="signature"):
            parse_derivation("1. true = true ; axiom EQ1 {t: true}", lambda name: flag.signature)
