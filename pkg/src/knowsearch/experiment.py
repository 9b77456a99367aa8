"""Experiment orchestration: corpus -> focal sampling -> networks ->
five-rule search -> aggregate statistics -> report files.

The orchestrator owns all mutation and file I/O.  Per-patent work is a
pure function of the immutable corpus, so patents can be fanned out to a
process pool; results are merged by sorting on (focal_id, rule), making
output bytes independent of worker count and completion order.
"""
from __future__ import annotations

import csv
import io
import json
import math
import os
import random
import re
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from .corpus import Corpus, categorize_value, load_corpus
from .errors import (
    BudgetExceeded,
    ConfigError,
    ConstantX,
    DataError,
    DegenerateInput,
    KnowsearchError,
    NoUsableFocalPatents,
    UncoverableSkes,
)
from .extraction import extract_focal_elements
from .network import build_pkn, check_searchability, network_stats
from .prd import ExpansionEntry
from .search import ALL_RULES, SearchRule, SearchStep, Termination, run_search
from .stats import (
    PairedMatrix,
    descriptive,
    friedman_test,
    kruskal_wallis,
    linear_fit,
    nemenyi_posthoc,
    variance_homogeneity,
)

SAMPLING_ALGORITHM = "uniform-without-replacement/mt19937"

_VALUE_ORDER = ("zero_cited", "medium_cited", "highly_cited")

RUNS_CSV_COLUMNS = (
    "focal_id",
    "rule",
    "tsc",
    "nsn",
    "terminated",
    "lcc_nodes",
    "lcc_density",
    "value_category",
)

TRACE_CSV_COLUMNS = (
    "focal_id",
    "rule",
    "step",
    "selected_ke",
    "cost",
    "cumulative_tsc",
    "skes_found",
)


@dataclass
class ExperimentConfig:
    corpus_path: str
    output_dir: str
    focal_ids: list[str] | None = None
    sample_size: int | None = None
    seed: int | None = None
    rules: list[SearchRule] = field(default_factory=lambda: list(ALL_RULES))
    similarity_threshold: float = 0.7
    max_steps: int | None = None
    parallelism: int = 1
    figures: bool = True

    def validate(self) -> None:
        if not self.corpus_path:
            raise ConfigError("corpus_path is required")
        if not self.output_dir:
            raise ConfigError("output_dir is required")
        has_ids = bool(self.focal_ids)
        has_sample = self.sample_size is not None
        if has_ids == has_sample:
            raise ConfigError("exactly one of focal_ids or sample_size must be given")
        if has_sample:
            if self.sample_size < 1:
                raise ConfigError("sample_size must be >= 1")
            if self.seed is None:
                raise ConfigError("seed is required when sampling")
        if not self.rules:
            raise ConfigError("at least one rule must be configured")
        if len(set(self.rules)) != len(self.rules):
            raise ConfigError("duplicate rules configured")
        if not 0.0 < self.similarity_threshold <= 1.0:
            raise ConfigError("similarity_threshold must be in (0, 1]")
        if self.max_steps is not None and self.max_steps < 1:
            raise ConfigError("max_steps must be >= 1")
        if self.parallelism < 1:
            raise ConfigError("parallelism must be >= 1")

    @classmethod
    def from_dict(cls, obj: dict) -> "ExperimentConfig":
        if not isinstance(obj, dict):
            raise ConfigError("config must be a JSON object")
        known = {
            "corpus_path",
            "output_dir",
            "focal_ids",
            "sample_size",
            "seed",
            "rules",
            "similarity_threshold",
            "max_steps",
            "parallelism",
            "figures",
        }
        unknown = set(obj) - known
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        rules_raw = obj.get("rules")
        if rules_raw is None:
            rules = list(ALL_RULES)
        else:
            try:
                rules = [SearchRule(r) for r in rules_raw]
            except ValueError as exc:
                raise ConfigError(f"bad rule name: {exc}") from None
        cfg = cls(
            corpus_path=obj.get("corpus_path", ""),
            output_dir=obj.get("output_dir", ""),
            focal_ids=list(obj["focal_ids"]) if obj.get("focal_ids") else None,
            sample_size=obj.get("sample_size"),
            seed=obj.get("seed"),
            rules=rules,
            similarity_threshold=obj.get("similarity_threshold", 0.7),
            max_steps=obj.get("max_steps"),
            parallelism=obj.get("parallelism", 1),
            figures=obj.get("figures", True),
        )
        cfg.validate()
        return cfg

    @classmethod
    def from_file(cls, path: str | Path) -> "ExperimentConfig":
        try:
            obj = json.loads(Path(path).read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from None
        return cls.from_dict(obj)


@dataclass(frozen=True)
class RunRecord:
    focal_id: str
    rule: str
    tsc: float
    nsn: int
    terminated: str
    lcc_nodes: int
    lcc_density: float
    value_category: str | None


@dataclass(frozen=True)
class Exclusion:
    focal_id: str
    stage: str
    reason: str


@dataclass
class PatentOutcome:
    focal_id: str
    exclusion: Exclusion | None = None
    records: list[RunRecord] = field(default_factory=list)
    traces: dict[str, tuple[SearchStep, ...]] = field(default_factory=dict)
    expansion_log: tuple[ExpansionEntry, ...] = ()


@dataclass
class ExperimentReport:
    records: list[RunRecord]
    exclusions: list[Exclusion]
    aggregates: dict
    sampling: dict
    outcomes: list[PatentOutcome]
    rules: list[SearchRule]


def process_focal(
    corpus: Corpus,
    focal_id: str,
    rules: list[SearchRule],
    threshold: float,
    max_steps: int | None,
) -> PatentOutcome:
    """Run the whole per-patent pipeline; never raises on data conditions."""
    outcome = PatentOutcome(focal_id=focal_id)
    doc = corpus.get(focal_id)
    if doc is None:
        outcome.exclusion = Exclusion(focal_id, "lookup", "id not in corpus")
        return outcome
    try:
        elements = extract_focal_elements(doc)
    except KnowsearchError as exc:
        outcome.exclusion = Exclusion(focal_id, "extraction", str(exc))
        return outcome
    try:
        pkn, prd = build_pkn(corpus, doc, elements, threshold=threshold)
    except UncoverableSkes as exc:
        outcome.exclusion = Exclusion(focal_id, "prd", str(exc))
        return outcome
    outcome.expansion_log = prd.expansion_log
    searchability = check_searchability(pkn)
    if not searchability.searchable:
        outcome.exclusion = Exclusion(focal_id, "searchability", searchability.reason())
        return outcome
    stats = network_stats(pkn)
    try:
        category = categorize_value(doc).value
    except KnowsearchError:
        category = None
    records = []
    for rule in rules:
        try:
            result = run_search(pkn, rule, max_steps=max_steps)
        except BudgetExceeded as exc:
            outcome.exclusion = Exclusion(focal_id, "search", f"{rule.value}: {exc}")
            outcome.records = []
            outcome.traces = {}
            return outcome
        if result.terminated is not Termination.COMPLETED:
            outcome.exclusion = Exclusion(
                focal_id, "search", f"{rule.value} exhausted the frontier"
            )
            outcome.records = []
            outcome.traces = {}
            return outcome
        records.append(
            RunRecord(
                focal_id=focal_id,
                rule=rule.value,
                tsc=result.tsc,
                nsn=result.nsn,
                terminated=result.terminated.value,
                lcc_nodes=stats.lcc_node_count,
                lcc_density=stats.lcc_density,
                value_category=category,
            )
        )
        outcome.traces[rule.value] = result.trace
    outcome.records = records
    return outcome


_WORKER_STATE: dict = {}


def _init_worker(corpus, rules, threshold, max_steps):
    _WORKER_STATE["args"] = (corpus, rules, threshold, max_steps)


def _worker_task(focal_id: str) -> PatentOutcome:
    corpus, rules, threshold, max_steps = _WORKER_STATE["args"]
    return process_focal(corpus, focal_id, rules, threshold, max_steps)


def select_focal_ids(corpus: Corpus, config: ExperimentConfig) -> tuple[list[str], dict]:
    """Explicit list, or a seeded uniform sample of focal candidates."""
    if config.focal_ids:
        missing = [f for f in config.focal_ids if corpus.get(f) is None]
        if missing:
            raise DataError(f"focal ids not in corpus: {missing}")
        ids = list(config.focal_ids)
        meta = {"algorithm": "explicit", "focal_ids": sorted(ids)}
        return ids, meta
    pool = [d.id for d in corpus.focal_candidates()]
    if not pool:
        raise NoUsableFocalPatents({"corpus": "no focal candidates flagged"})
    if config.sample_size > len(pool):
        raise ConfigError(
            f"sample_size {config.sample_size} exceeds candidate pool of {len(pool)}"
        )
    ids = random.Random(config.seed).sample(pool, config.sample_size)
    meta = {
        "algorithm": SAMPLING_ALGORITHM,
        "seed": config.seed,
        "sample_size": config.sample_size,
        "pool_size": len(pool),
        "focal_ids": sorted(ids),
    }
    return ids, meta


def run_experiment(config: ExperimentConfig, corpus: Corpus | None = None) -> ExperimentReport:
    """Execute the configured experiment; deterministic for a fixed config
    regardless of parallelism."""
    config.validate()
    if corpus is None:
        corpus = load_corpus(config.corpus_path)
    focal_ids, sampling = select_focal_ids(corpus, config)
    focal_ids = sorted(set(focal_ids))

    rules = list(config.rules)
    if config.parallelism == 1 or len(focal_ids) <= 1:
        outcomes = [
            process_focal(corpus, f, rules, config.similarity_threshold, config.max_steps)
            for f in focal_ids
        ]
    else:
        with ProcessPoolExecutor(
            max_workers=config.parallelism,
            initializer=_init_worker,
            initargs=(corpus, rules, config.similarity_threshold, config.max_steps),
        ) as pool:
            outcomes = list(pool.map(_worker_task, focal_ids))
    outcomes.sort(key=lambda o: o.focal_id)

    records = sorted(
        (r for o in outcomes for r in o.records), key=lambda r: (r.focal_id, r.rule)
    )
    exclusions = sorted(
        (o.exclusion for o in outcomes if o.exclusion), key=lambda e: e.focal_id
    )
    if not records:
        raise NoUsableFocalPatents({e.focal_id: f"{e.stage}: {e.reason}" for e in exclusions})

    aggregates = compute_aggregates(records, rules)
    return ExperimentReport(
        records=records,
        exclusions=exclusions,
        aggregates=aggregates,
        sampling=sampling,
        outcomes=outcomes,
        rules=rules,
    )


# --- aggregate statistics -------------------------------------------------


def _json_safe(x):
    if isinstance(x, float) and not math.isfinite(x):
        return None
    return x


def _report_dict(report) -> dict:
    out = {
        "statistic": _json_safe(report.statistic),
        "p_value": _json_safe(report.p_value),
    }
    if report.effect_size is not None:
        out["effect_size"] = _json_safe(report.effect_size)
    if report.df is not None:
        out["df"] = report.df
    if report.group_sizes is not None:
        out["group_sizes"] = list(report.group_sizes)
    return out


def _not_applicable(reason: str) -> dict:
    return {"applicable": False, "reason": reason}


def _descriptives_dict(values) -> dict:
    d = descriptive(values)
    return {
        "n": d.n,
        "mean": d.mean,
        "median": d.median,
        "std": d.std,
        "min": d.min,
        "max": d.max,
    }


def compute_aggregates(records: list[RunRecord], rules: list[SearchRule]) -> dict:
    """Tables 2-4 style statistics over complete-case patents."""
    rule_names = [r.value for r in rules]
    by_patent: dict[str, dict[str, RunRecord]] = {}
    for rec in records:
        by_patent.setdefault(rec.focal_id, {})[rec.rule] = rec
    complete = sorted(
        fid for fid, per_rule in by_patent.items() if set(per_rule) >= set(rule_names)
    )

    agg: dict = {
        "rules": rule_names,
        "n_patents_completed": len(complete),
    }

    def matrix(metric: str) -> PairedMatrix:
        rows = tuple(
            tuple(float(getattr(by_patent[fid][r], metric)) for r in rule_names)
            for fid in complete
        )
        return PairedMatrix(tuple(complete), tuple(rule_names), rows)

    for metric in ("tsc", "nsn"):
        key = metric
        if len(complete) >= 2 and len(rule_names) >= 2:
            m = matrix(metric)
            agg.setdefault("friedman", {})[key] = _report_dict(friedman_test(m))
            nem = nemenyi_posthoc(m)
            agg.setdefault("nemenyi", {})[key] = {
                "mean_ranks": {t: nem.mean_ranks[t] for t in sorted(nem.mean_ranks)},
                "pairs": [
                    {
                        "a": pc.a,
                        "b": pc.b,
                        "statistic": _json_safe(pc.report.statistic),
                        "p_value": _json_safe(pc.report.p_value),
                        "cohens_d": _json_safe(pc.report.effect_size),
                    }
                    for pc in nem.pairs
                ],
            }
        else:
            reason = "needs >= 2 rules and >= 2 complete patents"
            agg.setdefault("friedman", {})[key] = _not_applicable(reason)
            agg.setdefault("nemenyi", {})[key] = _not_applicable(reason)

    descriptives: dict = {}
    kruskal: dict = {}
    variance: dict = {}
    fits: dict = {}
    for rule in rule_names:
        tscs = [by_patent[f][rule].tsc for f in complete]
        nsns = [float(by_patent[f][rule].nsn) for f in complete]
        if tscs:
            descriptives[rule] = {
                "tsc": _descriptives_dict(tscs),
                "nsn": _descriptives_dict(nsns),
            }
        groups = []
        sizes_by_cat = {}
        for cat in _VALUE_ORDER:
            vals = [
                by_patent[f][rule].tsc
                for f in complete
                if by_patent[f][rule].value_category == cat
            ]
            if vals:
                groups.append(vals)
                sizes_by_cat[cat] = len(vals)
        if len(groups) >= 2:
            kw = kruskal_wallis(groups)
            kruskal[rule] = {**_report_dict(kw), "categories": sizes_by_cat}
        else:
            kruskal[rule] = _not_applicable("needs >= 2 non-empty value categories")
        big_groups = [g for g in groups if len(g) >= 2]
        if len(big_groups) >= 2:
            variance[rule] = _report_dict(variance_homogeneity(big_groups))
        else:
            variance[rule] = _not_applicable("needs >= 2 value categories of size >= 2")
        fit_entry = {}
        for x_name, xs in (
            ("lcc_nodes", [float(by_patent[f][rule].lcc_nodes) for f in complete]),
            ("lcc_density", [by_patent[f][rule].lcc_density for f in complete]),
        ):
            try:
                fit = linear_fit(xs, tscs)
                fit_entry[f"tsc_vs_{x_name}"] = {
                    "slope": fit.slope,
                    "intercept": fit.intercept,
                    "r_squared": fit.r_squared,
                }
            except (ConstantX, DegenerateInput):
                fit_entry[f"tsc_vs_{x_name}"] = _not_applicable("constant or insufficient x")
        fits[rule] = fit_entry
    agg["descriptives"] = descriptives
    agg["kruskal_by_value"] = kruskal
    agg["variance_by_value"] = variance
    agg["fits"] = fits
    return agg


# --- report emission ------------------------------------------------------


def _write_atomic(path: Path, text: str) -> None:
    tmp = path.with_name(path.name + ".tmp")
    tmp.write_text(text, encoding="utf-8")
    os.replace(tmp, path)


def _csv_text(header, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def _safe_name(raw: str) -> str:
    return re.sub(r"[^A-Za-z0-9._-]", "_", raw)


def runs_csv_text(records: list[RunRecord]) -> str:
    rows = [
        (
            r.focal_id,
            r.rule,
            r.tsc,
            r.nsn,
            r.terminated,
            r.lcc_nodes,
            r.lcc_density,
            r.value_category or "",
        )
        for r in records
    ]
    return _csv_text(RUNS_CSV_COLUMNS, rows)


def trace_csv_text(focal_id: str, rule: str, steps) -> str:
    rows = [
        (focal_id, rule, s.index, s.key, s.cost, s.cumulative, s.skes_found)
        for s in steps
    ]
    return _csv_text(TRACE_CSV_COLUMNS, rows)


def stats_json_text(aggregates: dict, sampling: dict | None = None) -> str:
    doc = dict(aggregates)
    if sampling is not None:
        doc["sampling"] = sampling
    return json.dumps(doc, indent=2, sort_keys=True, allow_nan=False) + "\n"


def emit_report(report: ExperimentReport, output_dir: str | Path, figures: bool = True) -> list[Path]:
    """Write runs.csv, stats.json, exclusions.csv, expansions.csv, traces/,
    progress/, and (optionally) rendered figures. Returns written paths."""
    out = Path(output_dir)
    out.mkdir(parents=True, exist_ok=True)
    written: list[Path] = []

    runs_path = out / "runs.csv"
    _write_atomic(runs_path, runs_csv_text(report.records))
    written.append(runs_path)

    stats_path = out / "stats.json"
    _write_atomic(stats_path, stats_json_text(report.aggregates, report.sampling))
    written.append(stats_path)

    excl_path = out / "exclusions.csv"
    _write_atomic(
        excl_path,
        _csv_text(
            ("focal_id", "stage", "reason"),
            [(e.focal_id, e.stage, e.reason) for e in report.exclusions],
        ),
    )
    written.append(excl_path)

    expansion_rows = []
    for outcome in report.outcomes:
        for i, entry in enumerate(outcome.expansion_log, start=1):
            expansion_rows.append(
                (outcome.focal_id, i, entry.ske_key, entry.retrievals, entry.prd_size)
            )
    exp_path = out / "expansions.csv"
    _write_atomic(
        exp_path,
        _csv_text(
            ("focal_id", "iteration", "appended_ske", "retrievals", "prd_size"),
            expansion_rows,
        ),
    )
    written.append(exp_path)

    traces_dir = out / "traces"
    traces_dir.mkdir(exist_ok=True)
    progress_dir = out / "progress"
    progress_dir.mkdir(exist_ok=True)
    for outcome in report.outcomes:
        if not outcome.traces:
            continue
        progress_rows = []
        for rule in sorted(outcome.traces):
            steps = outcome.traces[rule]
            path = traces_dir / f"{_safe_name(outcome.focal_id)}__{rule}.csv"
            _write_atomic(path, trace_csv_text(outcome.focal_id, rule, steps))
            written.append(path)
            for s in steps:
                progress_rows.append((rule, s.index, s.cumulative, s.skes_found))
        ppath = progress_dir / f"{_safe_name(outcome.focal_id)}.csv"
        _write_atomic(
            ppath,
            _csv_text(("rule", "step", "cumulative_tsc", "skes_found"), progress_rows),
        )
        written.append(ppath)

    if figures:
        from .figures import render_report_figures

        written.extend(render_report_figures(report, out / "figures"))
    return written


def read_runs_csv(path: str | Path) -> list[RunRecord]:
    """Parse a runs.csv back into records (for the stats/report commands)."""
    records = []
    try:
        with open(path, newline="", encoding="utf-8") as fh:
            reader = csv.DictReader(fh)
            if reader.fieldnames is None or set(RUNS_CSV_COLUMNS) - set(reader.fieldnames):
                raise DataError(f"{path}: missing runs.csv columns")
            for row in reader:
                records.append(
                    RunRecord(
                        focal_id=row["focal_id"],
                        rule=row["rule"],
                        tsc=float(row["tsc"]),
                        nsn=int(row["nsn"]),
                        terminated=row["terminated"],
                        lcc_nodes=int(row["lcc_nodes"]),
                        lcc_density=float(row["lcc_density"]),
                        value_category=row["value_category"] or None,
                    )
                )
    except OSError as exc:
        raise DataError(f"cannot read {path}: {exc}") from None
    except ValueError as exc:
        raise DataError(f"{path}: {exc}") from None
    return records
