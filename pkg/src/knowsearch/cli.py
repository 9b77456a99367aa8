"""Command-line interface.

Subcommands: synth, extract, build-pkn, simulate, experiment, stats,
report.  Exit codes: 0 success, 2 configuration error, 3 data error,
4 no usable focal patents.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .corpus import load_corpus
from .errors import (
    ConfigError,
    DataError,
    KnowsearchError,
    NoUsableFocalPatents,
)
from .experiment import (
    ExperimentConfig,
    compute_aggregates,
    emit_report,
    read_runs_csv,
    run_experiment,
    stats_json_text,
    trace_csv_text,
)
from .extraction import extract_focal_elements
from .network import build_pkn, load_pkn, network_stats, save_pkn
from .search import ALL_RULES, SearchRule, run_search
from .synthesis import SynthParams, gen_synthetic_corpus

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_DATA = 3
EXIT_NO_FOCAL = 4


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="knowsearch",
        description="Simulate knowledge-search costs on prior-knowledge networks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("synth", help="generate a synthetic corpus file")
    p.add_argument("--patents", type=int, default=SynthParams.n_patents)
    p.add_argument("--vocab", type=int, default=SynthParams.vocab_size)
    p.add_argument("--phrases-per-abstract", type=int, default=SynthParams.phrases_per_abstract)
    p.add_argument("--date-start", default=SynthParams.date_range[0])
    p.add_argument("--date-end", default=SynthParams.date_range[1])
    p.add_argument("--citation-p-zero", type=float, default=SynthParams.citation_p_zero)
    p.add_argument("--citation-mean", type=float, default=SynthParams.citation_mean)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out", required=True)

    p = sub.add_parser("extract", help="print a patent's problem/solution elements")
    p.add_argument("--corpus", required=True)
    p.add_argument("--patent", required=True)

    p = sub.add_parser("build-pkn", help="build and save a prior-knowledge network")
    p.add_argument("--corpus", required=True)
    p.add_argument("--focal", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--threshold", type=float, default=0.7)

    p = sub.add_parser("simulate", help="run one search rule on a saved network")
    p.add_argument("--pkn", required=True)
    p.add_argument("--rule", required=True, choices=[r.value for r in ALL_RULES])
    p.add_argument("--trace", required=True)
    p.add_argument("--max-steps", type=int, default=None)

    p = sub.add_parser("experiment", help="run the full configured experiment")
    p.add_argument("--config", required=True)
    p.add_argument("--parallelism", type=int, default=None, help="override config value")
    p.add_argument("--output-dir", default=None, help="override config value")
    p.add_argument("--no-figures", action="store_true")

    p = sub.add_parser("stats", help="recompute aggregate statistics from runs.csv")
    p.add_argument("--runs", required=True)
    p.add_argument("--out", required=True)

    p = sub.add_parser("report", help="render figures from an experiment output directory")
    p.add_argument("--runs", required=True)
    p.add_argument("--out", required=True, help="directory for the rendered figures")

    return parser


def _cmd_synth(args) -> int:
    params = SynthParams(
        n_patents=args.patents,
        vocab_size=args.vocab,
        phrases_per_abstract=args.phrases_per_abstract,
        date_range=(args.date_start, args.date_end),
        citation_p_zero=args.citation_p_zero,
        citation_mean=args.citation_mean,
        seed=args.seed,
    )
    n = gen_synthetic_corpus(params, args.out)
    print(f"wrote {n} records to {args.out}")
    return EXIT_OK


def _cmd_extract(args) -> int:
    corpus = load_corpus(args.corpus)
    doc = corpus.get(args.patent)
    if doc is None:
        raise DataError(f"patent {args.patent!r} not in corpus")
    elements = extract_focal_elements(doc)
    print(f"patent {doc.id}")
    print("PKEs:")
    for ke in elements.pkes:
        print(f"  {ke.key}")
    print("SKEs:")
    for ke in elements.skes:
        print(f"  {ke.key}")
    return EXIT_OK


def _cmd_build_pkn(args) -> int:
    corpus = load_corpus(args.corpus)
    doc = corpus.get(args.focal)
    if doc is None:
        raise DataError(f"patent {args.focal!r} not in corpus")
    pkn, prd = build_pkn(corpus, doc, threshold=args.threshold)
    save_pkn(pkn, args.out)
    stats = network_stats(pkn)
    print(
        f"wrote {args.out}: {stats.total_nodes} nodes, {stats.total_edges} edges, "
        f"LCC {stats.lcc_node_count} (density {stats.lcc_density:.4f}), "
        f"PRD {len(prd.doc_ids)} docs, {len(prd.expansion_log)} expansions"
    )
    return EXIT_OK


def _cmd_simulate(args) -> int:
    pkn = load_pkn(args.pkn)
    result = run_search(pkn, SearchRule(args.rule), max_steps=args.max_steps)
    Path(args.trace).write_text(
        trace_csv_text(pkn.focal_id or "", result.rule.value, result.trace),
        encoding="utf-8",
    )
    print(
        f"{result.rule.value}: tsc={result.tsc!r} nsn={result.nsn} "
        f"terminated={result.terminated.value} trace={args.trace}"
    )
    return EXIT_OK


def _cmd_experiment(args) -> int:
    config = ExperimentConfig.from_file(args.config)
    if args.parallelism is not None:
        config.parallelism = args.parallelism
    if args.output_dir is not None:
        config.output_dir = args.output_dir
    if args.no_figures:
        config.figures = False
    config.validate()
    report = run_experiment(config)
    written = emit_report(report, config.output_dir, figures=config.figures)
    n_complete = report.aggregates["n_patents_completed"]
    print(
        f"experiment complete: {n_complete} patents x {len(report.rules)} rules, "
        f"{len(report.exclusions)} exclusions, {len(written)} files in {config.output_dir}"
    )
    return EXIT_OK


def _cmd_stats(args) -> int:
    records = read_runs_csv(args.runs)
    if not records:
        raise DataError(f"{args.runs}: no records")
    present = {r.rule for r in records}
    unknown = present - {r.value for r in ALL_RULES}
    if unknown:
        raise DataError(f"{args.runs}: unknown rules {sorted(unknown)}")
    rules = [r for r in ALL_RULES if r.value in present]
    aggregates = compute_aggregates(records, rules)
    Path(args.out).write_text(stats_json_text(aggregates), encoding="utf-8")
    print(f"wrote {args.out}")
    return EXIT_OK


def _cmd_report(args) -> int:
    from .figures import (
        plot_cost_violins,
        plot_tsc_vs_density,
        plot_tsc_vs_size,
        plot_value_dispersion,
    )

    records = read_runs_csv(args.runs)
    if not records:
        raise DataError(f"{args.runs}: no records")
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    written = []
    for result in (
        plot_cost_violins(records, out / "cost_violins.png"),
        plot_tsc_vs_size(records, out / "tsc_vs_size.png"),
        plot_tsc_vs_density(records, out / "tsc_vs_density.png"),
        plot_value_dispersion(records, out / "tsc_std_by_value.png"),
    ):
        if result is not None:
            written.append(result)
    print(f"rendered {len(written)} figures in {out}")
    return EXIT_OK


_COMMANDS = {
    "synth": _cmd_synth,
    "extract": _cmd_extract,
    "build-pkn": _cmd_build_pkn,
    "simulate": _cmd_simulate,
    "experiment": _cmd_experiment,
    "stats": _cmd_stats,
    "report": _cmd_report,
}


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except NoUsableFocalPatents as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NO_FOCAL
    except (DataError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except KnowsearchError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
