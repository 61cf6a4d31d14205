import pytest
from asmbase.core import (
    EMPTY,
    Kind,
    Signature,
    State,
    Update,
    apply,
    is_consistent,
    project,
    seq_merge,
    sorted_family,
    tagged_update_set,
    untag,
    update_set,
)
from asmbase.errors import InconsistentUpdateSet, SortError


@pytest.fixture
def signature():
    return Signature.from_groups(
        primary={"f": (1, True), "k": (1, False)},
        secondary={"g": (1, True)},
        bridge={"h": (1, True)},
    )


@pytest.fixture
def state(signature):
    return State(
        signature,
        ["true", "false", "a"],
        ["0", "1"],
        {"f": "a", "k": "true", "g": "0", "h": "1"},
        {"f": {("true",): "false"}},
    )


class TestSignature:
    def test_booleans_are_builtin(self, signature):
        assert signature["true"].kind is Kind.PRIMARY
        assert not signature["false"].dynamic

    def test_groups(self, signature):
        assert signature.primary_functions["f"] == (1, True)
        assert signature.bridge_functions == {"h": (1, True)}
        assert [s.name for s in signature.dynamic] == ["f", "g", "h"]

    def test_duplicate_name(self):
        with pytest.raises(SortError, match="declared twice"):
            Signature.from_groups(primary={"f": (1, True)}, secondary={"f": (1, True)})

    def test_reserved_name(self):
        with pytest.raises(SortError, match="reserved"):
            Signature.from_groups(primary={"choose": (0, True)})

    def test_unknown_symbol(self, signature):
        with pytest.raises(SortError, match="Unknown"):
            signature["nope"]


class TestState:
    def test_values_and_defaults(self, state):
        assert state.value("f", ("true",)) == "false"
        assert state.value("f", ("a",)) == "a"
        assert state.value("true") == "true"
        assert state.codomain("h") == ("0", "1")

    def test_rows_at_default_are_dropped(self, signature):
        s = State(signature, ["true", "false"], ["0"], {"f": "true", "k": "true", "g": "0", "h": "0"}, {"f": {("true",): "true"}})
        assert s.graph("f") == {}

    def test_extensional_equality(self, signature):
        written_one_way = State(
            signature, ["true", "false"], ["0"], {"f": "true", "k": "true", "g": "0", "h": "0"}, {"f": {("false",): "false"}}
        )
        written_other_way = State(
            signature, ["true", "false"], ["0"], {"f": "false", "k": "true", "g": "0", "h": "0"}, {"f": {("true",): "true"}}
        )
        assert written_one_way == written_other_way
        assert hash(written_one_way) == hash(written_other_way)

    def test_overlapping_carriers(self, signature):
        with pytest.raises(ValueError, match="disjoint"):
            State(signature, ["true", "false", "0"], ["0"], {"f": "true", "k": "true", "g": "0", "h": "0"})

    def test_missing_booleans(self, signature):
        with pytest.raises(ValueError, match="boolean"):
            State(signature, ["a"], ["0"], {"f": "a", "k": "a", "g": "0", "h": "0"})

    def test_missing_default(self, signature):
        with pytest.raises(ValueError, match="no default"):
            State(signature, ["true", "false"], ["0"], {"f": "true"})

    def test_value_outside_carrier(self, signature):
        with pytest.raises(ValueError, match="not in the algorithmic carrier"):
            State(signature, ["true", "false"], ["0"], {"f": "true", "k": "true", "g": "0", "h": "true"})

    def test_locations_cover_dynamic_functions(self, state):
        assert len(list(state.locations())) == 3 + 2 + 3


class TestApply:
    def test_empty_update_set(self, state):
        assert apply(state, EMPTY) is state

    def test_update(self, state):
        t = apply(state, update_set([("f", ("a",), "true"), ("g", ("1",), "1")]))
        assert t.value("f", ("a",)) == "true"
        assert t.value("g", ("1",)) == "1"
        assert state.value("f", ("a",)) == "a"

    def test_inconsistent(self, state):
        with pytest.raises(InconsistentUpdateSet, match="f\\(a\\)"):
            apply(state, update_set([("f", ("a",), "true"), ("f", ("a",), "false")]))

    def test_static_function(self, state):
        with pytest.raises(ValueError, match="static"):
            apply(state, update_set([("k", ("a",), "false")]))

    def test_kind_mismatch(self, state):
        with pytest.raises(ValueError, match="carrier"):
            apply(state, update_set([("h", ("a",), "true")]))

    def test_write_back_default(self, state):
        t = apply(state, update_set([("f", ("true",), "a")]))
        assert t.graph("f") == {}
        assert t.dynamic_rows()["f"] == {}


class TestUpdateSets:
    def test_consistency(self):
        assert is_consistent(update_set([("f", ("a",), "1"), ("f", ("b",), "1")]))
        assert not is_consistent(update_set([("f", ("a",), "1"), ("f", ("a",), "2")]))

    def test_seq_merge_keeps_untouched_locations(self):
        d1 = update_set([("f", ("a",), "1"), ("f", ("b",), "1")])
        d2 = update_set([("f", ("a",), "2")])
        assert seq_merge(d1, d2) == update_set([("f", ("a",), "2"), ("f", ("b",), "1")])

    def test_project_and_untag(self):
        tagged = tagged_update_set([("f", ("a",), "1", "true"), ("f", ("b",), "1", "false")])
        assert project(tagged, "true") == {Update("f", ("a",), "1")}
        assert untag(tagged) == update_set([("f", ("a",), "1"), ("f", ("b",), "1")])

    def test_sorted_family_orders_by_size(self):
        small = update_set([("f", ("b",), "1")])
        large = update_set([("f", ("a",), "1"), ("f", ("b",), "2")])
        assert sorted_family({large, small, EMPTY}) == [EMPTY, small, large]
