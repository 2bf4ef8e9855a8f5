import json
import os

from models.report import DeletionTrial, LemmaId, LemmaReport, TrialMode, Verdict
from repositories.report_repository import ReportRepository, report_file_name


def make_report(lemma_id=LemmaId.B6_PACKING, **params):
    return LemmaReport(
        lemma_id=lemma_id,
        params=params or {"n": 1, "r": 0},
        verdict=Verdict.VERIFIED,
        trial=DeletionTrial(mode=TrialMode.EXHAUSTIVE, size=0, count=1, universe=56),
        stats={"nodes": 3},
        wall_clock=0.25,
    )


def test_file_names():
    assert report_file_name(make_report()) == "B6Packing-n1-r0.json"
    assert report_file_name(make_report(LemmaId.NO_B4, r=2)) == "NoB4-r2.json"


def test_save_load_and_list(tmp_path):
    repo = ReportRepository(str(tmp_path / "out"))
    assert repo.list_reports() == []
    first = make_report()
    second = make_report(LemmaId.NO_B4, r=2)
    path = repo.save_report(first)
    repo.save_report(second)
    repo.save_summary([first, second])
    assert repo.load_report(path) == first
    names = [os.path.basename(p) for p in repo.list_reports()]
    assert names == ["B6Packing-n1-r0.json", "NoB4-r2.json"]


def test_summary_drops_wall_clock(tmp_path):
    repo = ReportRepository(str(tmp_path))
    path = repo.save_summary([make_report()])
    with open(path, encoding="utf-8") as f:
        summary = json.load(f)
    assert "wall_clock" not in summary["reports"][0]
    assert summary["reports"][0]["verdict"] == "verified"
