import pytest

from asmbase import corpus
from asmbase.errors import LineError
from asmbase.parser import parse_lformula, parse_state
from asmbase.proof import OK, OK_MODULO, check, check_file, load_derivation

DERIVATIONS = corpus.available("derivation")


@pytest.fixture
def workspace(tmp_path):
    (tmp_path / "flag.asms").write_text(corpus.read_text("flag.asms"))
    return tmp_path


def write(directory, text: str, name: str = "derivation.asmd"):
    path = directory / name
    path.write_text(text)
    return path


def edited(name: str, old: str, new: str) -> str:
    text = corpus.read_text(name)
    assert old in text
    return text.replace(old, new)


class TestBundledDerivations:
    @pytest.mark.parametrize("name", DERIVATIONS)
    def test_checks(self, name):
        report = check_file(corpus.path(name))
        assert report.status == OK
        assert [r.number for r in report.lines] == [line.number for line in load_derivation(corpus.path(name)).lines]

    def test_report_lines(self):
        report = check_file(corpus.path("modus_ponens.asmd"))
        assert [r.justification for r in report.lines] == ["hyp", "hyp", "M3(1, 2)", "axiom P1", "M3(3, 4)"]
        assert report.as_dict()["status"] == OK

    def test_copied_next_to_its_signature(self, workspace):
        path = write(workspace, corpus.read_text("necessitation.asmd"))
        assert check_file(path).status == OK


class TestRejections:
    def reject(self, workspace, text: str, line: int, reason: str, hypotheses=()):
        with pytest.raises(LineError, match=reason) as error:
            check_file(write(workspace, text), hypotheses)
        assert error.value.line == line

    def test_premises_in_the_wrong_order(self, workspace):
        text = edited("modus_ponens.asmd", "by M3 (1, 2)", "by M3 (2, 1)")
        self.reject(workspace, text, 3, "premise 1 should be")

    def test_premise_from_the_future(self, workspace):
        text = edited("modus_ponens.asmd", "by M3 (1, 2)", "by M3 (1, 5)")
        self.reject(workspace, text, 3, "not an earlier line")

    def test_wrong_premise_count(self, workspace):
        text = edited("modus_ponens.asmd", "by M3 (1, 2)", "by M3 (1)")
        self.reject(workspace, text, 3, "takes 2 premises")

    def test_wrong_axiom_instance(self, workspace):
        text = edited("modus_ponens.asmd", "psi: c = true}", "psi: c = false}")
        self.reject(workspace, text, 4, "not the P1 instance")

    def test_unknown_hypothesis(self, workspace):
        text = edited("modus_ponens.asmd", "hypothesis: c = true;\n", "")
        self.reject(workspace, text, 1, "not one of the hypotheses")

    def test_hypotheses_can_be_supplied(self, workspace):
        text = edited("modus_ponens.asmd", "hypothesis: c = true;\n", "")
        flag = parse_state(corpus.read_text("flag.asms"))
        report = check_file(write(workspace, text), [parse_lformula("c = true", flag.signature)])
        assert report.status == OK

    def test_mutation_is_not_an_axiom(self, workspace):
        text = corpus.read_text("modus_ponens.asmd") + "6. true = true ; axiom M5-converse {phi: c = true, X: @X}\n"
        self.reject(workspace, text, 6, "not an axiom of the proof system")

    def test_rule_cited_as_axiom(self, workspace):
        text = corpus.read_text("modus_ponens.asmd") + "6. c != false ; axiom M3 {phi: c = true, psi: c != false}\n"
        self.reject(workspace, text, 6, "cite it with 'by'")

    def test_axiom_cited_as_rule(self, workspace):
        text = corpus.read_text("modus_ponens.asmd") + "6. c != false ; by P1 (3)\n"
        self.reject(workspace, text, 6, "cite it with 'axiom'")

    def test_uncertified_rule_takes_no_certificate(self, workspace):
        text = edited("modus_ponens.asmd", "by M3 (1, 2)", "by M3 (1, 2) cert axiomatic")
        self.reject(workspace, text, 3, "takes no certificate")

    def test_generalisation_needs_a_certificate(self, workspace):
        text = edited("necessitation.asmd", ' cert finite ["flag.asms"]', "")
        self.reject(workspace, text, 5, "needs a certificate")

    def test_missing_certificate_state(self, workspace):
        text = edited("necessitation.asmd", '["flag.asms"]', '["missing.asms"]')
        self.reject(workspace, text, 5, "certificate state missing.asms")

    def test_side_condition_of_m7(self, workspace):
        text = edited("stable_under_rule.asmd", "phi: x = y}", "phi: [@Y] x = y}")
        self.reject(workspace, text, 2, "neither static nor pure")


class TestCertificates:
    def test_axiomatic_certificate(self, workspace):
        text = edited("necessitation.asmd", 'cert finite ["flag.asms"]', "cert axiomatic")
        report = check_file(write(workspace, text))
        assert report.status == OK_MODULO
        assert report.lines[4].status == OK_MODULO
        assert report.lines[0].status == OK

    def test_relative_base_directory(self, workspace):
        derivation = load_derivation(write(workspace, corpus.read_text("necessitation.asmd")))
        assert check(derivation, base_dir=workspace).status == OK
