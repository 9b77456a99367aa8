"""Knowledge-search cost simulation on prior-knowledge networks."""

from .corpus import Corpus, PatentDoc, ValueCategory, categorize_value, load_corpus
from .extraction import (
    FocalElements,
    KnowledgeElement,
    TaggedToken,
    chunk_noun_phrases,
    extract_focal_elements,
    pos_tag,
)
from .network import (
    NetworkStats,
    PriorKnowledgeNetwork,
    Provenance,
    Searchability,
    build_adjacency_network,
    build_pkn,
    build_semantic_network,
    check_searchability,
    load_pkn,
    merge_networks,
    network_stats,
    node_birthdates,
    save_pkn,
)
from .prd import Prd, PrdSpec, build_prd, match_query
from .search import (
    ALL_RULES,
    SearchResult,
    SearchRule,
    SearchState,
    Termination,
    init_state,
    run_search,
    select_next,
    step_cost,
)
from .similarity import phrase_similarity, word_similarity
from .experiment import (
    ExperimentConfig,
    ExperimentReport,
    RunRecord,
    emit_report,
    run_experiment,
)
from .synthesis import SynthParams, gen_synthetic_corpus

__version__ = "0.1.0"

__all__ = [
    "ALL_RULES",
    "Corpus",
    "ExperimentConfig",
    "ExperimentReport",
    "FocalElements",
    "KnowledgeElement",
    "NetworkStats",
    "PatentDoc",
    "Prd",
    "PrdSpec",
    "PriorKnowledgeNetwork",
    "Provenance",
    "RunRecord",
    "Searchability",
    "SearchResult",
    "SearchRule",
    "SearchState",
    "SynthParams",
    "TaggedToken",
    "Termination",
    "ValueCategory",
    "build_adjacency_network",
    "build_pkn",
    "build_prd",
    "build_semantic_network",
    "categorize_value",
    "check_searchability",
    "chunk_noun_phrases",
    "emit_report",
    "extract_focal_elements",
    "gen_synthetic_corpus",
    "init_state",
    "load_corpus",
    "load_pkn",
    "match_query",
    "merge_networks",
    "network_stats",
    "node_birthdates",
    "phrase_similarity",
    "pos_tag",
    "run_experiment",
    "run_search",
    "save_pkn",
    "select_next",
    "step_cost",
    "word_similarity",
]
