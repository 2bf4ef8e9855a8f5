import pytest

from models.report import Verdict
from services.lemma_service import LemmaSuite, Outcome


def always_verified(ctx):
    return Outcome(Verdict.VERIFIED)


def test_register_and_get_check():
    s = LemmaSuite(checks={})
    s.register_check('NoB4', always_verified)
    got = s.get_check('NoB4')
    assert got is always_verified
    assert hasattr(s, 'NoB4')


def test_unregister_check():
    s = LemmaSuite(checks={})
    s.register_check('NoB4', always_verified)
    s.unregister_check('NoB4')
    assert s.get_check('NoB4') is None
    assert not hasattr(s, 'NoB4')


def test_list_checks():
    s = LemmaSuite(checks={})
    s.register_check('NoB4', always_verified)
    s.register_check('NoB7', always_verified)
    assert s.list_checks() == {'NoB4': always_verified, 'NoB7': always_verified}


def test_default_suite_registers_every_lemma():
    assert len(LemmaSuite().list_checks()) == 14


def test_names_must_be_lemma_ids():
    s = LemmaSuite(checks={})
    with pytest.raises(ValueError):
        s.register_check('', always_verified)
    with pytest.raises(ValueError):
        s.register_check('dummy', always_verified)


def test_registered_check_runs():
    s = LemmaSuite(checks={})
    s.register_check('NoB4', always_verified)
    report = s.check('NoB4', {'r': 3})
    assert report.verdict is Verdict.VERIFIED
    assert report.params == {'r': 3}
    assert len(s.parameter_points(2)) == 1
