import pytest

from internal.errors import InputError
from models.report import LemmaId, TrialMode, Verdict
from services.lemma_service import LemmaSuite


@pytest.fixture
def suite():
    return LemmaSuite()


def test_no_two_linkages_small_wall(suite):
    report = suite.check("NoTwoLinkages", {"r": 2})
    assert report.verdict is Verdict.VERIFIED
    assert report.params == {"r": 2}
    assert report.stats["nodes"] > 0
    assert report.stats["searches"]


def test_no_b4(suite):
    report = suite.check(LemmaId.NO_B4, {"r": 2})
    assert report.verdict is Verdict.VERIFIED
    assert report.witness is None


def test_b6_packing_has_a_packing_witness(suite):
    report = suite.check("B6Packing", {"n": 1, "r": 0})
    assert report.verdict is Verdict.VERIFIED
    assert report.witness["kind"] == "packing"
    assert report.trial.mode is TrialMode.EXHAUSTIVE
    assert report.trial.count == 1
    assert not report.sampled


def test_packing_defaults(suite):
    report = suite.check("B9PackingWithB2")
    assert report.params == {"n": 1, "r": 0}
    assert report.verdict is Verdict.VERIFIED


def test_parameter_errors(suite):
    with pytest.raises(InputError):
        suite.check("NoSuchLemma", {"r": 1})
    with pytest.raises(InputError):
        suite.check("NoB4", {"r": 0})
    with pytest.raises(InputError):
        suite.check("NoB4", {"n": 1})
    with pytest.raises(InputError):
        suite.check("B6Packing", {"n": 0, "r": 0})
    with pytest.raises(InputError):
        suite.check("B6Packing", {"n": 1, "r": -1})
    with pytest.raises(InputError):
        suite.check("NoB4", {"r": "two"})


def test_budget_one_exceeds_every_check(suite):
    for lid in (LemmaId.NO_TWO_LINKAGES, LemmaId.B6_PACKING, LemmaId.GSTAR_EXPANSION_LINKAGE):
        report = suite.check(lid, budget=1)
        assert report.verdict is Verdict.BUDGET_EXCEEDED
        assert report.notes


def test_run_all_smallest_size(suite):
    reports = suite.run_all(max_r=1)
    assert [r.lemma_id for r in reports] == list(LemmaId)
    assert all(r.verdict is Verdict.VERIFIED for r in reports)
    packing = {r.lemma_id: r.params for r in reports if "n" in r.params}
    assert packing[LemmaId.B6_PACKING] == {"n": 1, "r": 0}
    assert packing[LemmaId.B9_PACKING_WITH_B2] == {"n": 1, "r": 0}


def test_run_all_rejects_zero(suite):
    with pytest.raises(InputError):
        suite.run_all(max_r=0)


def test_sampled_trials_are_flagged():
    suite = LemmaSuite()
    suite.exhaustive_limit = 1
    suite.sample_count = 20
    report = suite.check("B6Packing", {"n": 1, "r": 1})
    assert report.verdict is Verdict.VERIFIED
    assert report.sampled
    assert report.trial.mode is TrialMode.SAMPLED
    assert report.trial.seed is not None


@pytest.mark.slow
def test_run_all_is_deterministic_across_workers(suite):
    one = [r.deterministic_json() for r in suite.run_all(max_r=2, workers=1)]
    four = [r.deterministic_json() for r in suite.run_all(max_r=2, workers=4)]
    assert one == four


@pytest.mark.slow
def test_b6_packing_deletes_every_single_edge(suite):
    report = suite.check("B6Packing", {"n": 2, "r": 1})
    assert report.verdict is Verdict.VERIFIED
    assert report.trial.mode is TrialMode.EXHAUSTIVE
    assert report.trial.count == 333
    assert report.trial.universe == 333


@pytest.mark.parametrize("lemma_id", ["B3CenterBottleneck", "NoB4OverB3", "NoB5OverB3"])
def test_b3_based_checks_are_vacuous_on_a_two_layer_wall(suite, lemma_id):
    # W(2) - {a, b} has 11 vertices, a B3 needs 13
    report = suite.check(lemma_id, {"r": 2})
    assert report.verdict is Verdict.VERIFIED
    assert report.vacuous


def test_b2_bottleneck_two_layers(suite):
    report = suite.check("B2Bottleneck", {"r": 2})
    assert report.verdict is Verdict.VERIFIED
    assert any("disjoint exits from a B2" in note for note in report.notes)


def test_no_b7_two_layers(suite):
    report = suite.check("NoB7", {"r": 2})
    assert report.verdict is Verdict.VERIFIED
    assert "path shapes tried: none, outer, spoke, centre-edge" in report.notes
    assert len(report.stats["searches"]) == 7


@pytest.mark.parametrize("lemma_id", ["B7PackingWithCD", "B8PackingWithB1"])
def test_exterior_packings_single_copy(suite, lemma_id):
    report = suite.check(lemma_id, {"n": 1, "r": 0})
    assert report.verdict is Verdict.VERIFIED
    assert report.witness["kind"] == "packing"
    assert report.trial.count == 1


@pytest.mark.slow
@pytest.mark.parametrize("lemma_id", ["B3CenterBottleneck", "NoB4OverB3", "NoB5OverB3", "B2Bottleneck", "NoB7"])
def test_three_layer_checks(suite, lemma_id):
    report = suite.check(lemma_id, {"r": 3})
    assert report.verdict is Verdict.VERIFIED


@pytest.mark.slow
def test_b2_bottleneck_records_the_exit_bound(suite):
    report = suite.check("B2Bottleneck", {"r": 3})
    assert report.verdict is Verdict.VERIFIED
    assert "exit bound checked inside enumerated B3 embeddings only" in report.notes


@pytest.mark.slow
def test_no_two_linkages_three_layers(suite):
    report = suite.check("NoTwoLinkages", {"r": 3})
    assert report.verdict is Verdict.VERIFIED
    assert report.witness["kind"] == "linkage"


@pytest.mark.slow
def test_hitting_robust_two_fold(suite):
    report = suite.check("HittingRobust", {"r": 2})
    assert report.verdict is Verdict.VERIFIED
    assert report.trial.size == 1
    assert report.witness is not None


@pytest.mark.slow
@pytest.mark.parametrize("lemma_id", ["B7PackingWithCD", "B8PackingWithB1"])
def test_exterior_packings_survive_one_deletion(suite, lemma_id):
    report = suite.check(lemma_id, {"n": 1, "r": 1})
    assert report.verdict is Verdict.VERIFIED
    assert report.trial.count == report.trial.universe


@pytest.mark.slow
def test_run_all_two_layers_verifies_everything(suite):
    reports = suite.run_all(max_r=2)
    assert [r.lemma_id for r in reports] == list(LemmaId)
    assert {r.lemma_id: r.verdict for r in reports} == {lid: Verdict.VERIFIED for lid in LemmaId}
