import logging
import os
import sys
from typing import Dict, List, Optional, TextIO, Tuple

from dot_export import export_dot
from figures import build_figure_host, construct_figure_embedding
from generators import build_gstar, gen_brick_wall, gen_condensed_wall, gen_elementary_grid, gen_wall
from graph_document import (
    CertificateDocument,
    CertificateKind,
    dump_certificate,
    read_certificate,
    read_graph,
    serialize,
    write_certificate,
)
from handlers.error_handler import EXIT_BUDGET, EXIT_NEGATIVE, EXIT_OK
from internal.errors import InputError
from models.embedding import Embedding, Linkage, Packing, SearchConstraints, SearchResult, SearchStatus
from models.graph import LabeledGraph
from models.report import LemmaReport, ReportSummary, TrialMode, Verdict
from models.specs import CondensedWallSpec, GStarSpec, WallSpec
from repositories.report_repository import ReportRepository
from services.embedding_service import (
    find_edge_disjoint_packing,
    find_linkage,
    find_topological_minor,
    find_two_edge_disjoint_linkages,
    verify_embedding,
    verify_linkage,
    verify_packing,
)
from services.lemma_service import LemmaSuite
from services.pattern_service import reduce_pattern, resolve_pattern

logger = logging.getLogger(__name__)

_STATUS_EXIT = {
    SearchStatus.FOUND: EXIT_OK,
    SearchStatus.NONE: EXIT_NEGATIVE,
    SearchStatus.BUDGET_EXCEEDED: EXIT_BUDGET,
}

_VERDICT_EXIT = {
    Verdict.VERIFIED: EXIT_OK,
    Verdict.REFUTED: EXIT_NEGATIVE,
    Verdict.BUDGET_EXCEEDED: EXIT_BUDGET,
}


def _pairs(text: Optional[List[str]], what: str) -> Dict[str, str]:
    found = {}
    for item in text or []:
        if "=" not in item:
            raise InputError(f"{what} must look like key=value, got {item!r}")
        key, value = item.split("=", 1)
        found[key] = value
    return found


class CommandHandlerService:
    """One method per subcommand; each returns the process exit code."""

    def __init__(self, config: dict, out: TextIO = None, err: TextIO = None):
        self.config = config
        self.out = out or sys.stdout
        self.err = err or sys.stderr
        self.suite = LemmaSuite(config)

    def _emit(self, text: str, path: Optional[str] = None) -> None:
        if path:
            with open(path, "w", encoding="utf-8") as f:
                f.write(text)
            logger.info(f"wrote {path}")
        else:
            self.out.write(text)

    def _budget(self, args) -> Optional[int]:
        return args.budget if args.budget is not None else self.suite.node_budget

    def _pattern(self, spec: str):
        if os.path.exists(spec):
            graph = read_graph(spec)
            return reduce_pattern(graph, graph.name)
        return resolve_pattern(spec)

    def _report_search(self, result: SearchResult, host: LabeledGraph, cert_out: Optional[str]) -> int:
        if result.found:
            doc = CertificateDocument.of(result.witness(), host.name)
            if cert_out:
                write_certificate(doc, cert_out)
            else:
                self.out.write(dump_certificate(doc) + "\n")
        else:
            self.err.write(
                f"{result.status.value}: {result.stats.nodes} nodes"
                f"{', ' + result.stats.certificate if result.stats.certificate else ''}\n"
            )
        return _STATUS_EXIT[result.status]

    @staticmethod
    def _shape(args) -> Tuple[int, int]:
        if args.rows is None or args.columns is None:
            raise InputError(f"{args.family} needs --rows and --columns")
        return args.rows, args.columns

    def gen(self, args) -> int:
        family = args.family
        if family == "grid":
            g = gen_elementary_grid(*self._shape(args))
        elif family == "wall":
            g, _ = gen_wall(WallSpec(*self._shape(args)))
        elif family == "condensed-wall":
            g = gen_condensed_wall(CondensedWallSpec(args.size, jump_edges=not args.no_jumps))
        elif family == "brick-wall":
            if not args.id:
                raise InputError("brick-wall needs --id")
            g, _ = gen_brick_wall(args.id)
        elif family == "gstar":
            g = build_gstar(GStarSpec(rows=args.rows or 6, columns=args.columns or 4, multiplicity=args.size))
        elif family == "figure-host":
            if not args.figure:
                raise InputError("figure-host needs --figure")
            g, gadget = build_figure_host(args.figure, args.size, copies=args.copies, jump_edges=not args.no_jumps)
            if args.cert_out:
                placement = construct_figure_embedding(args.figure, args.offset, g, gadget)
                if placement.embedding is None:
                    raise InputError(f"{args.figure} needs its exterior gadget to give an embedding")
                write_certificate(CertificateDocument.of(placement.embedding, g.name), args.cert_out)
        else:
            raise InputError(f"unknown family: {family}")
        self._emit(serialize(g), args.out)
        return EXIT_OK

    def embed(self, args) -> int:
        host = read_graph(args.host)
        pattern = self._pattern(args.pattern)
        constraints = SearchConstraints(
            forbidden=frozenset(args.forbid or ()),
            pins=_pairs(args.pin, "--pin"),
            budget=self._budget(args),
        )
        result = find_topological_minor(host, pattern, constraints)
        return self._report_search(result, host, args.cert_out)

    def linkage(self, args) -> int:
        host = read_graph(args.host)
        if args.two:
            result = find_two_edge_disjoint_linkages(host, budget=self._budget(args))
        else:
            result = find_linkage(host, budget=self._budget(args))
        return self._report_search(result, host, args.cert_out)

    def pack(self, args) -> int:
        host = read_graph(args.host)
        pattern = self._pattern(args.pattern)
        result = find_edge_disjoint_packing(host, pattern, args.k, SearchConstraints(budget=self._budget(args)))
        return self._report_search(result, host, args.cert_out)

    def verify(self, args) -> int:
        """Re-check a certificate against its host graph."""
        host = read_graph(args.host)
        doc = read_certificate(args.cert)
        doc.check_references(host)
        witness = doc.to_object()
        if isinstance(witness, Embedding):
            ok = verify_embedding(host, witness, self._pattern(args.pattern or witness.pattern_id))
        elif isinstance(witness, Linkage):
            ok = verify_linkage(host, witness)
        elif isinstance(witness, tuple):
            ok = all(verify_linkage(host, x) for x in witness) and not (witness[0].edges() & witness[1].edges())
        elif isinstance(witness, Packing):
            ok = verify_packing(host, witness, self._pattern(args.pattern or witness.pattern_id))
        else:
            raise InputError(f"{doc.kind.value} certificates are not checked against a graph")
        self.err.write(f"{doc.kind.value} certificate {'valid' if ok else 'invalid'}\n")
        return EXIT_OK if ok else EXIT_NEGATIVE

    def _trial(self, args) -> Optional[TrialMode]:
        return TrialMode(args.trial) if args.trial else None

    def verify_lemma(self, args) -> int:
        params = {}
        if args.size is not None:
            params["r"] = args.size
        if args.n is not None:
            params["n"] = args.n
        report = self.suite.check(
            args.id, params, budget=args.budget, trial=self._trial(args), seed=args.seed
        )
        if args.out:
            ReportRepository(args.out).save_report(report)
        self.out.write(dump_certificate(CertificateDocument(kind=CertificateKind.LEMMA_REPORT, report=report)) + "\n")
        self.err.write(report.summary_row() + "\n")
        return _VERDICT_EXIT[report.verdict]

    def run_all(self, args) -> int:
        reports = self.suite.run_all(
            max_r=args.max_r, trial=self._trial(args), seed=args.seed, workers=args.workers, budget=args.budget
        )
        if args.out:
            repo = ReportRepository(args.out)
            for report in reports:
                repo.save_report(report)
            repo.save_summary(reports)
        self.out.write(ReportSummary(reports=reports).table() + "\n")
        return self._overall(reports)

    @staticmethod
    def _overall(reports: List[LemmaReport]) -> int:
        verdicts = {r.verdict for r in reports}
        if Verdict.REFUTED in verdicts:
            return EXIT_NEGATIVE
        if Verdict.BUDGET_EXCEEDED in verdicts:
            return EXIT_BUDGET
        return EXIT_OK

    def export_dot(self, args) -> int:
        g = read_graph(args.graph)
        overlays = [read_certificate(path) for path in args.overlay or ()]
        self._emit(export_dot(g, overlays), args.out)
        return EXIT_OK
