from __future__ import annotations

from knowsearch.experiment import emit_report, run_experiment

from test_experiment import make_config
from conftest import write_corpus
from test_experiment import HAND_DOCS


def test_full_figure_set_rendered(tmp_path):
    path = write_corpus(tmp_path / "hand.jsonl", HAND_DOCS)
    config = make_config(tmp_path, path)
    report = run_experiment(config)
    written = emit_report(report, config.output_dir, figures=True)
    figdir = tmp_path / "out" / "figures"
    names = {p.name for p in figdir.iterdir()}
    assert "cost_violins.png" in names
    assert "search_progress.png" in names
    assert "tsc_vs_density.png" in names
    # single patent: size/density are constant, scatter still renders
    assert "tsc_vs_size.png" in names
    assert all(p.exists() for p in written)


def test_figures_skipped_when_disabled(tmp_path):
    path = write_corpus(tmp_path / "hand.jsonl", HAND_DOCS)
    config = make_config(tmp_path, path)
    report = run_experiment(config)
    emit_report(report, config.output_dir, figures=False)
    assert not (tmp_path / "out" / "figures").exists()
