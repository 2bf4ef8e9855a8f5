import logging
import os
from typing import List

from models.report import LemmaReport, ReportSummary

logger = logging.getLogger(__name__)


def report_file_name(report: LemmaReport) -> str:
    """``<LemmaId>-<params>.json`` with parameters in key order, e.g. ``B6Packing-n1-r0.json``."""
    params = "-".join(f"{k}{v}" for k, v in sorted(report.params.items()))
    stem = f"{report.lemma_id.value}-{params}" if params else report.lemma_id.value
    return f"{stem}.json"


class ReportRepository:
    def __init__(self, out_dir: str):
        self.out_dir = out_dir

    def _ensure_dir(self) -> None:
        if not os.path.exists(self.out_dir):
            os.makedirs(self.out_dir)

    def save_report(self, report: LemmaReport) -> str:
        """Write one report and return its path."""
        self._ensure_dir()
        path = os.path.join(self.out_dir, report_file_name(report))
        with open(path, "w", encoding="utf-8") as f:
            f.write(report.model_dump_json(indent=2))
            f.write("\n")
        logger.debug(f"saved {report.lemma_id.value} report to {path}")
        return path

    def load_report(self, path: str) -> LemmaReport:
        with open(path, "r", encoding="utf-8") as f:
            return LemmaReport.model_validate_json(f.read())

    def list_reports(self) -> List[str]:
        if not os.path.isdir(self.out_dir):
            return []
        return sorted(
            os.path.join(self.out_dir, name)
            for name in os.listdir(self.out_dir)
            if name.endswith(".json") and name != "summary.json"
        )

    def save_summary(self, reports: List[LemmaReport]) -> str:
        self._ensure_dir()
        path = os.path.join(self.out_dir, "summary.json")
        with open(path, "w", encoding="utf-8") as f:
            f.write(ReportSummary(reports=reports).model_dump_json(indent=2, exclude={"reports": {"__all__": {"wall_clock"}}}))
            f.write("\n")
        logger.info(f"saved summary of {len(reports)} reports to {path}")
        return path
