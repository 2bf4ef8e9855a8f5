import json

import pytest

from main import cli


@pytest.fixture
def config(tmp_path):
    path = tmp_path / "search.json"
    path.write_text(
        json.dumps(
            {
                "app": {"log_level": "WARNING", "log_file": str(tmp_path / "logs" / "app.log")},
                "search": {"node_budget": 10_000_000, "witness_cap": None},
                "trials": {"exhaustive_limit": 100_000, "sample_count": 100, "seed": 7},
                "suite": {"max_r": 1, "workers": 1, "mixed_samples": 100},
            }
        )
    )
    return str(path)


def run(config, *args):
    return cli(["--config", config, *args])


def wall_file(config, tmp_path, size=2):
    path = tmp_path / f"w{size}.graph"
    assert run(config, "gen", "condensed-wall", "--size", str(size), "--out", str(path)) == 0
    return str(path)


def test_gen_prints_document(config, capsys):
    assert run(config, "gen", "condensed-wall", "--size", "5") == 0
    out = capsys.readouterr().out
    assert sum(1 for l in out.splitlines() if l.startswith("v ")) == 58
    assert "graph W5 v=58 e=110" in out


def test_gen_brick_wall_needs_id(config, capsys):
    assert run(config, "gen", "brick-wall") == 2
    assert "error: InputError" in capsys.readouterr().err


@pytest.mark.parametrize("family", ["grid", "wall"])
def test_gen_grid_and_wall_need_a_shape(config, capsys, family):
    assert run(config, "gen", family) == 2
    assert run(config, "gen", family, "--rows", "2") == 2
    assert "needs --rows and --columns" in capsys.readouterr().err


def test_gen_grid_with_shape(config, capsys):
    assert run(config, "gen", "grid", "--rows", "2", "--columns", "3") == 0
    assert "graph grid2x3 v=6 e=7" in capsys.readouterr().out


def test_gen_figure_host_with_embedding(config, tmp_path):
    cert = tmp_path / "b3-layer.json"
    out = tmp_path / "host.graph"
    assert run(config, "gen", "figure-host", "--figure", "b3-layer", "--size", "6", "--cert-out", str(cert), "--out", str(out)) == 0
    assert run(config, "verify", "--host", str(out), "--cert", str(cert)) == 0


def test_embed_b4_avoiding_ab_is_refuted(config, tmp_path, capsys):
    host = wall_file(config, tmp_path)
    assert run(config, "embed", "--host", host, "--pattern", "B4", "--forbid", "a", "--forbid", "b") == 1
    assert "none:" in capsys.readouterr().err


def test_embed_b1_is_found(config, tmp_path, capsys):
    host = wall_file(config, tmp_path)
    assert run(config, "embed", "--host", host, "--pattern", "B1") == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["kind"] == "embedding"
    assert doc["graph"] == "W2"


def test_linkage_then_verify(config, tmp_path):
    host = wall_file(config, tmp_path)
    cert = tmp_path / "link.json"
    assert run(config, "linkage", "--host", host, "--cert-out", str(cert)) == 0
    assert run(config, "verify", "--host", host, "--cert", str(cert)) == 0
    assert run(config, "linkage", "--host", host, "--two") == 1


def test_pack(config, tmp_path):
    host = wall_file(config, tmp_path)
    assert run(config, "pack", "--host", host, "--pattern", "B1", "-k", "1") == 0


def test_verify_lemma(config, tmp_path, capsys):
    out_dir = tmp_path / "reports"
    assert run(config, "verify-lemma", "--id", "NoTwoLinkages", "--size", "2", "--out", str(out_dir)) == 0
    captured = capsys.readouterr()
    doc = json.loads(captured.out)
    assert doc["kind"] == "lemma-report"
    assert doc["report"]["verdict"] == "verified"
    assert "NoTwoLinkages" in captured.err
    assert (out_dir / "NoTwoLinkages-r2.json").exists()


def test_budget_exit_code(config):
    assert run(config, "verify-lemma", "--id", "NoTwoLinkages", "--size", "2", "--budget", "1") == 3


def test_input_errors(config, tmp_path):
    assert run(config, "gen", "nonsense") == 2
    assert run(config, "verify-lemma", "--id", "NoB4", "--size", "0") == 2
    assert run(config, "linkage", "--host", str(tmp_path / "missing.graph")) == 2
    assert cli(["--config", str(tmp_path / "missing.json"), "gen", "grid", "--rows", "2", "--columns", "2"]) == 2


def test_export_dot_with_overlay(config, tmp_path):
    host = wall_file(config, tmp_path)
    cert = tmp_path / "link.json"
    dot = tmp_path / "w2.dot"
    assert run(config, "linkage", "--host", host, "--cert-out", str(cert)) == 0
    assert run(config, "export-dot", "--graph", host, "--overlay", str(cert), "--out", str(dot)) == 0
    text = dot.read_text()
    assert text.startswith('graph "W2" {')
    assert "color=red" in text


def test_run_all_writes_reports(config, tmp_path, capsys):
    out_dir = tmp_path / "all"
    assert run(config, "run-all", "--max-r", "1", "--out", str(out_dir)) == 0
    assert "verified" in capsys.readouterr().out
    summary = json.loads((out_dir / "summary.json").read_text())
    assert len(summary["reports"]) == 14
    assert len([p for p in out_dir.iterdir() if p.name != "summary.json"]) == 14
    assert (tmp_path / "logs" / "app.log").exists()
