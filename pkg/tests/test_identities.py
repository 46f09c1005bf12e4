from fractions import Fraction

import pytest

from src.analyzers.identities import (
    SUITES,
    SuiteSettings,
    check_bijectivity,
    check_qzero_equivalence,
    check_tableau_weights,
    check_weight_identity,
    run_suite,
    summarize_by_identity,
)
from src.combinatorics.kernels import ParamContext
from src.utils.reports import IdentityReport

ONE = ParamContext.build(1, ["2"], "1/2")
TWO = ParamContext.build(2, ["2", "3"], "1/2")


def test_bijectivity_small():
    report = check_bijectivity(1, 3)
    assert report.passed, report.failures[:3]
    # one shape check per word, then the census and the pair count
    assert report.instances_checked == 8 + 2


@pytest.mark.slow
def test_bijectivity_two_letters_four_steps():
    report = check_bijectivity(2, 4)
    assert report.passed
    assert report.instances_checked == 256 + 2


def test_qzero_equivalence():
    assert check_qzero_equivalence(2, 2).passed


@pytest.mark.parametrize("pc, m", [(ONE, 3), (TWO, 2), (TWO.with_q(0), 2)])
def test_weight_identity(pc, m):
    report = check_weight_identity(pc, m)
    assert report.passed, report.failures[:3]


def test_tableau_weights():
    assert check_tableau_weights(TWO, 2).passed


def test_suite_registry_names():
    assert {"pieri", "eigen", "littlewood", "intertwining", "doob", "qzero-equivalence", "bijectivity"} <= set(SUITES)


@pytest.mark.parametrize("name", sorted(SUITES))
def test_every_suite_passes_on_small_settings(name):
    report = run_suite(name, SuiteSettings(TWO, 2, 2))
    assert report.passed, report.failures[:3]
    assert report.instances_checked > 0


def test_unknown_suite():
    with pytest.raises(ValueError):
        run_suite("riemann", SuiteSettings(ONE, 2, 2))


def test_doob_suite_falls_back_to_the_classic_chain(capsys):
    assert run_suite("doob", SuiteSettings(ONE, 2, 2)).passed
    assert "q = 0" in capsys.readouterr().err


def test_summarize_by_identity():
    combined = IdentityReport("combined")
    failing = IdentityReport("pieri")
    failing.record({"lambda": "(1)"}, Fraction(1), Fraction(2))
    combined.absorb(failing)
    combined.absorb(IdentityReport("littlewood"))
    assert summarize_by_identity(combined) == {"pieri": 1}


def test_bijectivity_reports_the_number_of_words():
    assert check_bijectivity(1, 3).counts == {"words": 8}
    payload = run_suite("bijectivity", SuiteSettings(TWO, 4, 2)).to_json()
    assert payload["passed"] is True
    assert payload["words"] == 256
    assert payload["checked"] > payload["words"]


@pytest.mark.slow
@pytest.mark.parametrize("n", [1, 2])
def test_bijectivity_five_steps(n):
    report = check_bijectivity(n, 5)
    assert report.passed, report.failures[:3]
    assert report.instances_checked == (2 * n) ** 5 + 2


@pytest.mark.slow
@pytest.mark.parametrize("n", [1, 2])
def test_qzero_equivalence_entries_up_to_four(n):
    report = check_qzero_equivalence(n, 4)
    assert report.passed, report.failures[:3]


@pytest.mark.slow
@pytest.mark.parametrize("m", [3, 4])
@pytest.mark.parametrize("pc", [ONE, TWO, TWO.with_q(0), TWO.with_q("2/3")])
def test_weight_identity_up_to_four_letters(pc, m):
    report = check_weight_identity(pc, m)
    assert report.passed, report.failures[:3]
    assert report.instances_checked > 0
