import itertools
import time

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from asmbase import corpus
from asmbase.config import Limits
from asmbase.core import EMPTY, EMPTY_FAMILY, Update, is_consistent, update_set
from asmbase.errors import ResourceLimit, UnboundVariable
from asmbase.logic import Sampler
from asmbase.parser import parse_machine, parse_rule, parse_state
from asmbase.semantics import (
    Valuation,
    brute_force_delta,
    delta,
    is_defined,
    run,
    successors,
)
from asmbase.syntax import Par, Seq, free_variables, point

seeds = st.integers(min_value=0, max_value=2**32 - 1)


def load(machine_name: str, state_name: str):
    s = parse_state(corpus.read_text(state_name))
    return parse_machine(corpus.read_text(machine_name), s.signature), s


@pytest.fixture
def flag():
    return parse_state(corpus.read_text("flag.asms"))


@pytest.fixture
def cells():
    return parse_state(
        "primary-carrier: true, false, a, b\n"
        "secondary-carrier: 0, 1\n"
        "functions:\n"
        "  f: primary dynamic arity 1 default a\n"
        "  g: secondary dynamic arity 1 default 0\n"
        "  pa: primary static arity 0 default a\n"
        "  pb: primary static arity 0 default b\n"
    )


@pytest.fixture
def two_flags():
    return parse_state(
        "primary-carrier: true, false\n"
        "secondary-carrier: 0\n"
        "functions:\n"
        "  c: primary dynamic arity 0 default false\n"
        "  d: primary dynamic arity 0 default false\n"
    )


class TestDelta:
    def test_update(self, flag):
        assert delta(parse_rule("c := true", flag.signature), flag) == {update_set([("c", (), "true")])}

    def test_false_guard_yields_empty_update_set(self, flag):
        rule = parse_rule("if c = true then c := false endif", flag.signature)
        assert delta(rule, flag) == EMPTY_FAMILY

    def test_choose_without_witness_is_undefined(self, cells):
        rule = parse_rule("choose x with x != x do f(x) := x enddo", cells.signature)
        assert delta(rule, cells) == frozenset()
        assert not is_defined(rule, cells)

    def test_forall_without_witness_is_skip(self, cells):
        rule = parse_rule("forall x with x != x do f(x) := x enddo", cells.signature)
        assert delta(rule, cells) == EMPTY_FAMILY

    def test_forall_joins_every_witness(self, cells):
        rule = parse_rule("forall x with f(x) = pa do f(x) := pb enddo", cells.signature)
        (u,) = delta(rule, cells)
        assert u == update_set([("f", (x,), "b") for x in ("true", "false", "a", "b")])

    def test_forall_of_choices_combines(self, cells):
        rule = parse_rule(
            "forall x with x = pa or x = pb do choose $v with $v = $v do g($v) := $v enddo enddo",
            cells.signature,
        )
        # Each witness writes one of two updates; duplicates collapse.
        assert len(delta(rule, cells)) == 3

    def test_choose_collects_witnesses(self, cells):
        rule = parse_rule("choose x with x = pa or x = pb do f(x) := x enddo", cells.signature)
        assert delta(rule, cells) == {update_set([("f", ("a",), "a")]), update_set([("f", ("b",), "b")])}

    def test_algorithmic_choose(self, cells):
        rule = parse_rule("choose $v with $v = $v do g($v) := $v enddo", cells.signature)
        assert len(delta(rule, cells)) == 2

    def test_par_may_be_inconsistent(self, flag):
        (u,) = delta(parse_rule("c := true c := false", flag.signature), flag)
        assert not is_consistent(u)

    def test_seq_reads_the_intermediate_state(self, flag):
        rule = parse_rule("seq c := true if c = true then c := false endif endseq", flag.signature)
        assert delta(rule, flag) == {update_set([("c", (), "false")])}

    def test_seq_keeps_inconsistent_first_sets(self, flag):
        rule = parse_rule("seq par c := true c := false endpar c := true endseq", flag.signature)
        assert delta(rule, flag) == {update_set([("c", (), "true"), ("c", (), "false")])}

    def test_free_variable_needs_a_value(self, cells):
        rule = parse_rule("f(x) := pb", cells.signature)
        with pytest.raises(UnboundVariable):
            delta(rule, cells)
        zeta = Valuation({point("x"): "true"})
        assert delta(rule, cells, zeta) == {update_set([("f", ("true",), "b")])}

    def test_family_cap(self):
        machine, s = load("word_pairs.asmr", "word_pairs.asms")
        with pytest.raises(ResourceLimit, match="max_family"):
            delta(machine.main, s, limits=Limits(max_family=2))

    def test_set_cap(self, cells):
        rule = parse_rule("forall x with x = x do f(x) := pb enddo", cells.signature)
        with pytest.raises(ResourceLimit, match="max_set"):
            delta(rule, cells, limits=Limits(max_set=2))


class TestAlgebraicLaws:
    @settings(max_examples=40, deadline=None)
    @given(seeds)
    def test_matches_brute_force(self, seed):
        sampler = Sampler(seed, "small")
        s = sampler.state()
        rule = sampler.rule()
        zeta = sampler.valuation(s, free_variables(rule))
        assert delta(rule, s, zeta) == brute_force_delta(rule, s, zeta)

    @settings(max_examples=40, deadline=None)
    @given(seeds)
    def test_par_commutes(self, seed):
        sampler = Sampler(seed, "small")
        s = sampler.state()
        first, second = sampler.rule(depth=1), sampler.rule(depth=1)
        zeta = sampler.valuation(s, free_variables(Par(first, second)))
        assert delta(Par(first, second), s, zeta) == delta(Par(second, first), s, zeta)

    @settings(max_examples=40, deadline=None)
    @given(seeds)
    def test_seq_associates(self, seed):
        sampler = Sampler(seed, "small")
        s = sampler.state()
        a, b, c = sampler.rule(depth=0), sampler.rule(depth=1), sampler.rule(depth=0)
        zeta = sampler.valuation(s, free_variables(Seq(a, Seq(b, c))))
        assert delta(Seq(Seq(a, b), c), s, zeta) == delta(Seq(a, Seq(b, c)), s, zeta)


def word_pair_oracle(s) -> set:
    """Every pair of words the machine may write in one step, by nested loops."""
    blank = s.value("blank")
    letters = [a for a in s.secondary if a != blank]
    found = set()
    for n in s.primary:
        below = [i for i in s.primary if s.value("lt", (i, n)) == "true"]
        for i in below:
            others = [j for j in below if j != i]
            for a, b in itertools.permutations(letters, 2):
                for rest in itertools.product(itertools.product(letters, repeat=2), repeat=len(others)):
                    rows = {i: (a, b), **dict(zip(others, rest))}
                    found.add(tuple(rows.get(p, (blank, blank)) for p in s.primary))
    return found


def words(t) -> tuple:
    return tuple((t.value("v", (p,)), t.value("w", (p,))) for p in t.primary)


class TestWordPairs:
    @pytest.fixture
    def machine_and_state(self):
        return load("word_pairs.asmr", "word_pairs.asms")

    def test_successors_match_oracle(self, machine_and_state):
        machine, s = machine_and_state
        reached = {words(t) for t in successors(machine.main, s)}
        assert len(reached) == 14
        assert reached == word_pair_oracle(s)

    def test_matches_brute_force(self, machine_and_state):
        machine, s = machine_and_state
        assert delta(machine.main, s) == brute_force_delta(machine.main, s)

    def test_every_run_ends_after_one_step(self, machine_and_state):
        machine, s = machine_and_state
        report = run(machine, s)
        assert report.trace_count == 14
        assert len(report.terminal) == 14
        assert not report.non_terminating
        assert all(len(trace) == 2 for trace in report.traces)


class TestDegenerateMachines:
    def test_skip_loops_forever(self):
        machine, s = load("skip.asmr", "flag.asms")
        assert successors(machine.main, s) == {s}
        report = run(machine, s, max_steps=3)
        assert report.non_terminating
        assert report.trace_count == 0
        assert report.terminal == ()
        assert report.steps == 3

    def test_clash_is_stuck(self):
        machine, s = load("clash.asmr", "flag.asms")
        (u,) = delta(machine.main, s)
        assert u == {Update("c", (), "true"), Update("c", (), "false")}
        assert successors(machine.main, s) == frozenset()
        report = run(machine, s)
        assert report.stuck == (s,)
        assert not report.non_terminating
        assert report.trace_count == 0

    def test_clash_sampled(self):
        machine, s = load("clash.asmr", "flag.asms")
        report = run(machine, s, mode="sample", seed=5)
        assert report.stuck == (s,)
        assert report.traces == ((s,),)

    def test_branching_machine_without_final_state(self, two_flags):
        machine = parse_machine(
            "rule main = choose x with x = x do d := x enddo ; final: c = true ;",
            two_flags.signature,
        )
        started = time.monotonic()
        report = run(machine, two_flags)
        assert time.monotonic() - started < 5
        assert report.non_terminating
        assert report.trace_count == 0
        assert report.traces == ()
        assert report.steps == 64

    def test_branching_machine_lists_only_complete_runs(self, two_flags):
        machine = parse_machine(
            "rule main = choose x with x = x do c := x enddo ; final: c = true ;",
            two_flags.signature,
        )
        report = run(machine, two_flags)
        assert report.non_terminating
        assert report.trace_count == 64
        assert sorted(len(trace) for trace in report.traces) == list(range(2, 66))
        assert all(trace[-1].value("c", ()) == "true" for trace in report.traces)

    def test_empty_update_set_applies_as_skip(self, flag):
        assert flag.apply(EMPTY) == flag


def spanning_graph(s) -> nx.Graph:
    graph = nx.Graph()
    graph.add_nodes_from(x for x in s.primary if s.value("V", (x,)) == "true")
    for x in s.primary:
        if s.value("E", (x,)) == "true":
            graph.add_edge(s.value("first", (x,)), s.value("second", (x,)), weight=int(s.value("weight", (x,))))
    return graph


def tree_edges(t) -> frozenset:
    return frozenset(
        frozenset((t.value("first", (x,)), t.value("second", (x,))))
        for x in t.primary
        if t.value("T", (x,)) == "true"
    )


def mst_weight(graph: nx.Graph) -> int:
    return int(nx.minimum_spanning_tree(graph).size(weight="weight"))


class TestKruskal:
    def test_one_step_adds_the_lightest_edge(self):
        machine, s = load("kruskal.asmr", "kruskal_4.asms")
        nexts = successors(machine.main, s)
        assert len(nexts) == 2
        for t in nexts:
            assert t.dynamic_rows()["T"] == {("e12",): "true", ("e21",): "true"}
            assert t.value("label", ("v1",)) == t.value("label", ("v2",))
            assert t.value("label", ("v3",)) == "v3"

    @pytest.mark.parametrize(
        "state_name, weight",
        [("kruskal_4.asms", 6), ("kruskal_5.asms", 8), ("kruskal_6_ties.asms", 8)],
    )
    def test_every_run_builds_a_minimum_spanning_tree(self, state_name, weight):
        machine, s = load("kruskal.asmr", state_name)
        graph = spanning_graph(s)
        assert mst_weight(graph) == weight
        report = run(machine, s)
        assert report.trace_count > 0
        assert report.stuck == ()
        assert not report.non_terminating
        for t in report.terminal:
            edges = tree_edges(t)
            tree = graph.edge_subgraph(tuple(e) for e in edges)
            assert set(tree.nodes) == set(graph.nodes)
            assert nx.is_tree(tree)
            assert tree.size(weight="weight") == weight

    def test_tied_weights_reach_every_minimum_tree(self):
        machine, s = load("kruskal.asmr", "kruskal_6_ties.asms")
        report = run(machine, s)
        assert len({tree_edges(t) for t in report.terminal}) == 9

    def test_tree_is_stored_in_both_orientations(self):
        machine, s = load("kruskal.asmr", "kruskal_5.asms")
        for t in run(machine, s).terminal:
            for x in t.primary:
                if t.value("T", (x,)) == "true":
                    reverse = t.value("pair", (t.value("second", (x,)), t.value("first", (x,))))
                    assert t.value("T", (reverse,)) == "true"

    def test_sampled_run_is_reproducible(self):
        machine, s = load("kruskal.asmr", "kruskal_6_ties.asms")
        first = run(machine, s, mode="sample", seed=11)
        second = run(machine, s, mode="sample", seed=11)
        assert first == second
        assert first.trace_count == 1
        assert first.steps == 5
        assert spanning_graph(s).edge_subgraph(tuple(e) for e in tree_edges(first.terminal[0])).size(weight="weight") == 8


class TestRunErrors:
    def test_unknown_mode(self, flag):
        machine = parse_machine("rule main = c := true; final: c = true;", flag.signature)
        with pytest.raises(ValueError, match="mode"):
            run(machine, flag, mode="bfs")

    def test_start_must_be_initial(self, flag):
        machine = parse_machine("rule main = c := true; initial: c = true; final: c = true;", flag.signature)
        with pytest.raises(ValueError, match="initial"):
            run(machine, flag)

    def test_trace_cap(self):
        machine, s = load("word_pairs.asmr", "word_pairs.asms")
        report = run(machine, s, limits=Limits(max_traces=3))
        assert report.trace_count == 14
        assert len(report.traces) == 3
