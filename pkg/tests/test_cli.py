from __future__ import annotations

import json

import pytest

from knowsearch.cli import main

from conftest import write_corpus
from test_experiment import HAND_DOCS


@pytest.fixture
def hand_corpus(tmp_path):
    return write_corpus(tmp_path / "hand.jsonl", HAND_DOCS)


def test_synth_roundtrip(tmp_path, capsys):
    out = tmp_path / "c.jsonl"
    code = main(["synth", "--patents", "12", "--vocab", "30", "--seed", "3", "--out", str(out)])
    assert code == 0
    assert out.exists()
    assert len(out.read_text().splitlines()) == 12


def test_synth_bad_params_exit_2(tmp_path):
    out = tmp_path / "c.jsonl"
    assert main(["synth", "--patents", "0", "--seed", "3", "--out", str(out)]) == 2


def test_extract_prints_elements(hand_corpus, capsys):
    assert main(["extract", "--corpus", str(hand_corpus), "--patent", "F1"]) == 0
    output = capsys.readouterr().out
    assert "probe tip" in output
    assert "PKEs:" in output and "SKEs:" in output


def test_extract_missing_patent_exit_3(hand_corpus):
    assert main(["extract", "--corpus", str(hand_corpus), "--patent", "ZZ"]) == 3


def test_extract_missing_file_exit_3(tmp_path):
    assert main(["extract", "--corpus", str(tmp_path / "nope.jsonl"), "--patent", "X"]) == 3


def test_build_pkn_and_simulate(tmp_path, hand_corpus, capsys):
    pkn_path = tmp_path / "f1.pkn"
    assert main(["build-pkn", "--corpus", str(hand_corpus), "--focal", "F1",
                 "--out", str(pkn_path)]) == 0
    assert pkn_path.exists()
    trace_path = tmp_path / "trace.csv"
    assert main(["simulate", "--pkn", str(pkn_path), "--rule", "familiarity",
                 "--trace", str(trace_path)]) == 0
    out = capsys.readouterr().out
    assert "tsc=3.0" in out
    rows = trace_path.read_text().splitlines()
    assert rows[0] == "focal_id,rule,step,selected_ke,cost,cumulative_tsc,skes_found"
    assert len(rows) == 1 + 3


def test_simulate_bad_pkn_exit_3(tmp_path):
    bad = tmp_path / "bad.pkn"
    bad.write_text("not a pkn\n")
    assert main(["simulate", "--pkn", str(bad), "--rule", "bfs",
                 "--trace", str(tmp_path / "t.csv")]) == 3


def test_experiment_and_stats_commands(tmp_path, hand_corpus, capsys):
    config = {
        "corpus_path": str(hand_corpus),
        "output_dir": str(tmp_path / "out"),
        "focal_ids": ["F1"],
    }
    cfg_path = tmp_path / "config.json"
    cfg_path.write_text(json.dumps(config))
    assert main(["experiment", "--config", str(cfg_path), "--no-figures"]) == 0
    runs = tmp_path / "out" / "runs.csv"
    assert runs.exists()
    assert not (tmp_path / "out" / "figures").exists()

    stats_out = tmp_path / "restats.json"
    assert main(["stats", "--runs", str(runs), "--out", str(stats_out)]) == 0
    payload = json.loads(stats_out.read_text())
    assert payload["n_patents_completed"] == 1


def test_experiment_bad_config_exit_2(tmp_path):
    cfg_path = tmp_path / "config.json"
    cfg_path.write_text(json.dumps({"output_dir": "x"}))
    assert main(["experiment", "--config", str(cfg_path)]) == 2


def test_experiment_config_not_json_exit_2(tmp_path):
    cfg_path = tmp_path / "config.json"
    cfg_path.write_text("{nope")
    assert main(["experiment", "--config", str(cfg_path)]) == 2


def test_experiment_no_usable_focal_exit_4(tmp_path):
    from conftest import record

    docs = [
        record("D1", "The base layer", "The base layer is used with the top mask.",
               "2001-01-01", "2002-01-01"),
        record("F1", "The probe tip", "The quantum dot is used with the probe tip.",
               "2010-01-01", "2011-01-01", focal=True),
    ]
    corpus = write_corpus(tmp_path / "c.jsonl", docs)
    cfg_path = tmp_path / "config.json"
    cfg_path.write_text(
        json.dumps(
            {
                "corpus_path": str(corpus),
                "output_dir": str(tmp_path / "out"),
                "focal_ids": ["F1"],
                "figures": False,
            }
        )
    )
    assert main(["experiment", "--config", str(cfg_path)]) == 4


def test_stats_missing_file_exit_3(tmp_path):
    assert main(["stats", "--runs", str(tmp_path / "no.csv"), "--out", str(tmp_path / "s.json")]) == 3


def test_report_command(tmp_path, hand_corpus):
    config = {
        "corpus_path": str(hand_corpus),
        "output_dir": str(tmp_path / "out"),
        "focal_ids": ["F1"],
        "figures": False,
    }
    cfg_path = tmp_path / "config.json"
    cfg_path.write_text(json.dumps(config))
    assert main(["experiment", "--config", str(cfg_path)]) == 0
    figdir = tmp_path / "figs"
    assert main(["report", "--runs", str(tmp_path / "out" / "runs.csv"),
                 "--out", str(figdir)]) == 0
    assert (figdir / "cost_violins.png").exists()
