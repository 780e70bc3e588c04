import logging

from gallai.logger import Logger


def test_outcome_levels(caplog):
    log = Logger("operators.q5_lemma.q5_lemma")
    assert log.check == "q5_lemma"
    with caplog.at_level(logging.INFO):
        log.outcome(True, colorings=115975)
        log.outcome(False)
    passed, failed = caplog.records
    assert passed.levelno == logging.INFO
    assert passed.getMessage() == "check=q5_lemma passed=True colorings=115975"
    assert failed.levelno == logging.WARNING
    assert failed.getMessage() == "check=q5_lemma passed=False"


def test_timed_reports_through_debug(caplog, monkeypatch):
    monkeypatch.setenv("GALLAI_VERBOSE", "1")
    log = Logger("operators.lattice_forcing.lattice_forcing")
    with caplog.at_level(logging.INFO):
        with log.timed("propagation"):
            pass
    assert caplog.records[-1].getMessage().startswith("propagation took ")
