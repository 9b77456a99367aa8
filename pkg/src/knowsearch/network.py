"""Prior-knowledge network construction.

The adjacency network counts consecutive co-occurrences of knowledge
elements within sentences of the related documents' abstracts.  The
semantic network links element pairs whose phrase similarity clears a
threshold.  Merging keeps the adjacency count wherever both networks
define an edge.  The result is a simple undirected weighted graph with
per-node birthdates (earliest publication date of a containing document).
"""
from __future__ import annotations

from dataclasses import dataclass
from datetime import date
from enum import Enum
from pathlib import Path
from typing import Iterable, Mapping

import networkx as nx

from .corpus import Corpus, PatentDoc
from .errors import PknFormatError
from .extraction import FocalElements, doc_sentence_kes, extract_focal_elements
from .matching import text_contains
from .prd import Prd, build_prd
from .similarity import max_possible_similarity, phrase_similarity

DEFAULT_SIMILARITY_THRESHOLD = 0.7


class Provenance(str, Enum):
    ADJACENCY = "adjacency"
    SEMANTIC = "semantic"


@dataclass
class PriorKnowledgeNetwork:
    """Merged search space for one focal patent.

    Node attributes: ``birthdate``, ``degree``, ``strength``.
    Edge attributes: ``weight``, ``provenance``.
    """

    graph: nx.Graph
    focal_id: str | None = None
    focal_pubdate: date | None = None
    pke_keys: frozenset[str] = frozenset()
    ske_keys: frozenset[str] = frozenset()

    def nodes(self) -> list[str]:
        return sorted(self.graph.nodes)

    def weight(self, u: str, v: str) -> float:
        return self.graph[u][v]["weight"]

    def birthdate(self, key: str) -> date:
        return self.graph.nodes[key]["birthdate"]

    def degree(self, key: str) -> int:
        return self.graph.nodes[key]["degree"]

    def strength(self, key: str) -> float:
        return self.graph.nodes[key]["strength"]


@dataclass(frozen=True)
class NetworkStats:
    lcc_node_count: int
    lcc_density: float
    total_nodes: int
    total_edges: int


@dataclass(frozen=True)
class Searchability:
    searchable: bool
    missing_pkes: tuple[str, ...] = ()
    missing_skes: tuple[str, ...] = ()
    unreachable_skes: tuple[str, ...] = ()

    def reason(self) -> str:
        bits = []
        if self.missing_pkes:
            bits.append(f"PKEs absent from network: {list(self.missing_pkes)}")
        if self.missing_skes:
            bits.append(f"SKEs absent from network: {list(self.missing_skes)}")
        if self.unreachable_skes:
            bits.append(f"SKEs unreachable from PKEs: {list(self.unreachable_skes)}")
        return "; ".join(bits) or "searchable"


def build_adjacency_network(corpus: Corpus, prd: Prd) -> nx.Graph:
    """Count consecutive KE pairs per sentence over PRD abstracts."""
    g = nx.Graph()
    for doc_id in sorted(prd.doc_ids):
        doc = corpus.index[doc_id]
        for sentence in doc_sentence_kes(doc, "abstract"):
            keys = [ke.key for ke in sentence]
            for key in keys:
                g.add_node(key)
            for left, right in zip(keys, keys[1:]):
                if left == right:
                    continue  # simple graph: no self-loops
                if g.has_edge(left, right):
                    g[left][right]["weight"] += 1
                else:
                    g.add_edge(left, right, weight=1)
    return g


def build_semantic_network(
    nodes: Iterable[str], threshold: float = DEFAULT_SIMILARITY_THRESHOLD
) -> nx.Graph:
    """Link node pairs whose phrase similarity reaches the threshold."""
    if not 0.0 < threshold <= 1.0:
        raise ValueError(f"threshold must be in (0, 1], got {threshold}")
    keys = sorted(set(nodes))
    lengths = {k: len(k.split()) for k in keys}
    g = nx.Graph()
    g.add_nodes_from(keys)
    for i, u in enumerate(keys):
        lu = lengths[u]
        for v in keys[i + 1 :]:
            if max_possible_similarity(lu, lengths[v]) < threshold:
                continue
            s = phrase_similarity(u, v)
            if s >= threshold:
                g.add_edge(u, v, weight=s)
    return g


def node_birthdates(corpus: Corpus, prd: Prd, keys: Iterable[str]) -> dict[str, date]:
    """Earliest publication date among PRD docs containing each key."""
    docs = sorted(
        (corpus.index[d] for d in prd.doc_ids),
        key=lambda d: (d.publication_date, d.id),
    )
    births: dict[str, date] = {}
    for key in keys:
        for doc in docs:
            if text_contains(corpus.search_text(doc.id), key):
                births[key] = doc.publication_date
                break
    return births


def merge_networks(
    an: nx.Graph, sn: nx.Graph, birthdates: Mapping[str, date]
) -> PriorKnowledgeNetwork:
    """Union the two graphs; adjacency counts win on co-defined pairs."""
    g = nx.Graph()
    for key in set(an.nodes) | set(sn.nodes):
        if key not in birthdates:
            raise PknFormatError(f"no birthdate for node {key!r}")
        g.add_node(key, birthdate=birthdates[key])
    for u, v, data in an.edges(data=True):
        g.add_edge(u, v, weight=data["weight"], provenance=Provenance.ADJACENCY)
    for u, v, data in sn.edges(data=True):
        if not g.has_edge(u, v):
            g.add_edge(u, v, weight=data["weight"], provenance=Provenance.SEMANTIC)
    _refresh_node_stats(g)
    return PriorKnowledgeNetwork(graph=g)


def _refresh_node_stats(g: nx.Graph) -> None:
    for key in g.nodes:
        g.nodes[key]["degree"] = g.degree(key)
        g.nodes[key]["strength"] = float(
            sum(data["weight"] for _, _, data in g.edges(key, data=True))
        )


def build_pkn(
    corpus: Corpus,
    focal: PatentDoc,
    elements: FocalElements | None = None,
    threshold: float = DEFAULT_SIMILARITY_THRESHOLD,
    prd: Prd | None = None,
) -> tuple[PriorKnowledgeNetwork, Prd]:
    """Full construction for one focal patent: PRD, networks, merge."""
    if elements is None:
        elements = extract_focal_elements(focal)
    if prd is None:
        prd = build_prd(corpus, focal, elements)
    an = build_adjacency_network(corpus, prd)
    sn = build_semantic_network(an.nodes, threshold=threshold)
    births = node_birthdates(corpus, prd, an.nodes)
    pkn = merge_networks(an, sn, births)
    pkn.focal_id = focal.id
    pkn.focal_pubdate = focal.publication_date
    pkn.pke_keys = elements.pke_keys()
    pkn.ske_keys = elements.ske_keys()
    return pkn, prd


def network_stats(pkn: PriorKnowledgeNetwork) -> NetworkStats:
    """Size and density of the largest connected component."""
    g = pkn.graph
    total_nodes = g.number_of_nodes()
    total_edges = g.number_of_edges()
    if total_nodes == 0:
        return NetworkStats(0, 0.0, 0, 0)
    components = [sorted(c) for c in nx.connected_components(g)]
    # Largest first; equal sizes resolved by smallest member key.
    components.sort(key=lambda c: (-len(c), c[0]))
    lcc = components[0]
    v = len(lcc)
    if v <= 1:
        density = 0.0
    else:
        e = g.subgraph(lcc).number_of_edges()
        density = 2.0 * e / (v * (v - 1))
    return NetworkStats(v, density, total_nodes, total_edges)


def check_searchability(
    pkn: PriorKnowledgeNetwork,
    pke_keys: Iterable[str] | None = None,
    ske_keys: Iterable[str] | None = None,
) -> Searchability:
    """A focal patent is searchable when at least one PKE is a network
    node and every SKE sits in a component reachable from the PKEs."""
    pkes = frozenset(pke_keys) if pke_keys is not None else pkn.pke_keys
    skes = frozenset(ske_keys) if ske_keys is not None else pkn.ske_keys
    g = pkn.graph
    present_pkes = {k for k in pkes if k in g}
    missing_pkes = tuple(sorted(pkes - present_pkes))
    if not present_pkes:
        return Searchability(
            False,
            missing_pkes=missing_pkes,
            missing_skes=tuple(sorted(k for k in skes if k not in g)),
        )
    reachable: set[str] = set()
    for comp in nx.connected_components(g):
        if comp & present_pkes:
            reachable |= comp
    missing_skes = tuple(sorted(k for k in skes if k not in g))
    unreachable = tuple(sorted(k for k in skes if k in g and k not in reachable))
    ok = not missing_skes and not unreachable
    return Searchability(ok, missing_pkes, missing_skes, unreachable)


# --- persistence ---------------------------------------------------------

_HEADER = "#knowsearch-pkn\tv1"


def _format_weight(w) -> str:
    if isinstance(w, int) or (isinstance(w, float) and w.is_integer()):
        return str(int(w))
    return repr(float(w))


def save_pkn(pkn: PriorKnowledgeNetwork, path: str | Path) -> None:
    """Write the tab-separated node/edge table format (sorted, stable)."""
    g = pkn.graph
    lines = [_HEADER]
    lines.append(f"#focal_id\t{pkn.focal_id or ''}")
    lines.append(f"#focal_pubdate\t{pkn.focal_pubdate.isoformat() if pkn.focal_pubdate else ''}")
    lines.append("#nodes\tkey\tdegree\tstrength\tbirthdate\tis_pke\tis_ske")
    for key in sorted(g.nodes):
        attrs = g.nodes[key]
        lines.append(
            "\t".join(
                [
                    key,
                    str(attrs["degree"]),
                    repr(attrs["strength"]),
                    attrs["birthdate"].isoformat(),
                    "1" if key in pkn.pke_keys else "0",
                    "1" if key in pkn.ske_keys else "0",
                ]
            )
        )
    lines.append("#edges\tkey_i\tkey_j\tweight\tprovenance")
    for u, v in sorted(tuple(sorted(e)) for e in g.edges):
        data = g[u][v]
        lines.append("\t".join([u, v, _format_weight(data["weight"]), data["provenance"].value]))
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def load_pkn(path: str | Path) -> PriorKnowledgeNetwork:
    """Read a saved network and re-validate its node statistics."""
    lines = Path(path).read_text(encoding="utf-8").splitlines()
    if not lines or lines[0] != _HEADER:
        raise PknFormatError(f"{path}: not a knowsearch PKN file")
    g = nx.Graph()
    pkes: set[str] = set()
    skes: set[str] = set()
    focal_id: str | None = None
    focal_pubdate: date | None = None
    section = None
    for line_no, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        parts = line.split("\t")
        if parts[0] == "#focal_id":
            focal_id = parts[1] or None
            continue
        if parts[0] == "#focal_pubdate":
            focal_pubdate = date.fromisoformat(parts[1]) if len(parts) > 1 and parts[1] else None
            continue
        if parts[0] in ("#nodes", "#edges"):
            section = parts[0]
            continue
        try:
            if section == "#nodes":
                key, degree, strength, birth, is_pke, is_ske = parts
                g.add_node(
                    key,
                    degree=int(degree),
                    strength=float(strength),
                    birthdate=date.fromisoformat(birth),
                )
                if is_pke == "1":
                    pkes.add(key)
                if is_ske == "1":
                    skes.add(key)
            elif section == "#edges":
                u, v, weight, provenance = parts
                prov = Provenance(provenance)
                w = int(weight) if prov is Provenance.ADJACENCY else float(weight)
                if u == v:
                    raise ValueError("self-loop")
                g.add_edge(u, v, weight=w, provenance=prov)
            else:
                raise ValueError("content before a section header")
        except (ValueError, KeyError) as exc:
            raise PknFormatError(f"{path}:{line_no}: {exc}") from None
    for key in g.nodes:
        attrs = g.nodes[key]
        strength = float(sum(d["weight"] for _, _, d in g.edges(key, data=True)))
        if attrs.get("degree") != g.degree(key) or abs(attrs.get("strength", 0.0) - strength) > 1e-9:
            raise PknFormatError(f"{path}: node {key!r} degree/strength mismatch")
    return PriorKnowledgeNetwork(
        graph=g,
        focal_id=focal_id,
        focal_pubdate=focal_pubdate,
        pke_keys=frozenset(pkes),
        ske_keys=frozenset(skes),
    )
